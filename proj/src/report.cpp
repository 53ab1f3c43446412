#include "geosub/report.hpp"

#include <algorithm>

namespace geosub {

Report& Report::section(std::string name) {
  sections_.push_back(Section{std::move(name), {}});
  return *this;
}

Report& Report::add(std::string key, std::string value) {
  if (sections_.empty()) section("result");
  // values stay on one line
  std::replace(value.begin(), value.end(), '\n', ' ');
  sections_.back().fields.emplace_back(std::move(key), std::move(value));
  return *this;
}

Report& Report::add(std::string key, bool value) {
  return add(std::move(key), std::string(value ? "true" : "false"));
}

Report& Report::add(std::string key, long long value) {
  return add(std::move(key), std::to_string(value));
}

std::string Report::machine() const {
  std::string out;
  for (std::size_t i = 0; i < sections_.size(); ++i) {
    if (i) out += "\n";
    out += "section=" + sections_[i].name + "\n";
    for (const auto& [k, v] : sections_[i].fields) out += k + "=" + v + "\n";
  }
  return out;
}

std::string Report::human() const {
  std::string out;
  for (const auto& s : sections_) {
    out += "[" + s.name + "]\n";
    std::size_t width = 0;
    for (const auto& f : s.fields) width = std::max(width, f.first.size());
    for (const auto& [k, v] : s.fields) {
      out += "  " + k + std::string(width - k.size(), ' ') + " : " + v + "\n";
    }
  }
  return out;
}

}  // namespace geosub
