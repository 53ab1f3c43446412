#include "geosub/isotopy.hpp"

#include <algorithm>
#include <numeric>

#include "geosub/error.hpp"

namespace geosub {

IsotopyIndex::IsotopyIndex(const PartitionedSurface& p) {
  const std::vector<CircleRef> all = p.circles();
  std::vector<std::size_t> parent(all.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  // On the Klein bottle with one hole generic circles are classified by
  // separability; everywhere else the annulus-chain relation is used.
  const bool klein = ambient_type(p) == SurfaceType{-2, 1, 0};
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (find(i) == find(j)) continue;
      const bool same = klein ? circles_isotopic(p, all[i], all[j])
                              : circles_isotopic_unguarded(p, all[i], all[j]);
      if (same) parent[find(i)] = find(j);
    }
  }
  std::vector<long> slot(all.size(), -1);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto root = find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(classes_.size());
      classes_.push_back(IsotopyClass{all[i], {}});
    }
    auto& cls = classes_[static_cast<std::size_t>(slot[root])];
    cls.members.insert(all[i]);
    cls.representative = *cls.members.begin();
    lookup_.emplace_back(all[i], static_cast<std::size_t>(slot[root]));
  }
  std::sort(lookup_.begin(), lookup_.end());
}

std::size_t IsotopyIndex::class_of(const CircleRef& c) const {
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(), c,
                             [](const auto& x, const CircleRef& y) { return x.first < y; });
  if (it == lookup_.end() || it->first != c) {
    throw ModelError(ErrorCode::InvalidModel, "unknown circle");
  }
  return it->second;
}

std::set<std::size_t> IsotopyIndex::boundary_classes() const {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    for (const auto& m : classes_[i].members) {
      if (!m.is_edge()) out.insert(i);
    }
  }
  return out;
}

std::string circle_name(const PartitionedSurface& p, const CircleRef& c) {
  if (!c.is_edge()) return "boundary:" + to_string(c.slot);
  const auto& g = p.edges().at(c.edge);
  if (g.label) return *g.label;
  return to_string(g.a) + "~" + to_string(g.b);
}

}  // namespace geosub
