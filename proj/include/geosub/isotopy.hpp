#pragma once

// Isotopy classes of the circles of a partitioned surface.

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "geosub/partition.hpp"

namespace geosub {

struct IsotopyClass {
  CircleRef representative;  // smallest member
  std::set<CircleRef> members;

  friend bool operator==(const IsotopyClass&, const IsotopyClass&) = default;
};

class IsotopyIndex {
 public:
  explicit IsotopyIndex(const PartitionedSurface& p);

  std::size_t class_count() const { return classes_.size(); }
  std::size_t class_of(const CircleRef& c) const;
  const IsotopyClass& at(std::size_t cls) const { return classes_.at(cls); }
  const std::vector<IsotopyClass>& classes() const { return classes_; }
  bool isotopic(const CircleRef& a, const CircleRef& b) const {
    return class_of(a) == class_of(b);
  }
  /// Classes containing an ambient boundary circle.
  std::set<std::size_t> boundary_classes() const;

 private:
  std::vector<IsotopyClass> classes_;
  std::vector<std::pair<CircleRef, std::size_t>> lookup_;
};

/// Human-readable name of a circle: its edge label when present, otherwise
/// the glued slots, or the boundary slot.
std::string circle_name(const PartitionedSurface& p, const CircleRef& c);

}  // namespace geosub
