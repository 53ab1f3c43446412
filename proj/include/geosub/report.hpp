#pragma once

// Structured reports: ordered sections of key/value fields rendered either
// as flat machine text (key=value lines, blank line between sections) or as
// an indented human layout.

#include <string>
#include <utility>
#include <vector>

namespace geosub {

class Report {
 public:
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> fields;
  };

  Report& section(std::string name);
  Report& add(std::string key, std::string value);
  Report& add(std::string key, bool value);
  Report& add(std::string key, long long value);
  Report& add(std::string key, int value) { return add(std::move(key), static_cast<long long>(value)); }
  Report& add(std::string key, std::size_t value) {
    return add(std::move(key), static_cast<long long>(value));
  }
  Report& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }

  const std::vector<Section>& sections() const { return sections_; }
  std::string machine() const;
  std::string human() const;

 private:
  std::vector<Section> sections_;
};

}  // namespace geosub
