#include "geosub/curve_complex.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "geosub/error.hpp"

namespace geosub {

namespace {

EdgeId representative_edge(const IsotopyClass& c) { return c.representative.edge; }

void require_valid(const PartitionedSurface& p, const Simplex& s) {
  if (make_simplex(p, s) != s) {
    throw ModelError(ErrorCode::InvalidSimplex, "simplex is not in canonical form");
  }
}

}  // namespace

std::vector<IsotopyClass> eligible_vertices(const PartitionedSurface& p) {
  const IsotopyIndex iso(p);
  const auto boundary = iso.boundary_classes();
  std::vector<IsotopyClass> out;
  for (std::size_t i = 0; i < iso.class_count(); ++i) {
    const auto& c = iso.at(i);
    if (!c.representative.is_edge() || boundary.contains(i)) continue;
    if (!is_generic_circle(p, c.representative)) continue;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const IsotopyClass& a, const IsotopyClass& b) {
    return representative_edge(a) < representative_edge(b);
  });
  return out;
}

Simplex make_simplex(const PartitionedSurface& p, const std::vector<EdgeId>& edges) {
  const auto vertices = eligible_vertices(p);
  Simplex out;
  for (auto e : edges) {
    auto it = std::find_if(vertices.begin(), vertices.end(), [&](const IsotopyClass& c) {
      return c.members.contains(CircleRef::of_edge(e));
    });
    if (it == vertices.end()) {
      throw ModelError(ErrorCode::InvalidSimplex, "edge " + std::to_string(e) + " is not a vertex");
    }
    const EdgeId rep = representative_edge(*it);
    if (std::find(out.begin(), out.end(), rep) != out.end()) {
      throw ModelError(ErrorCode::InvalidSimplex, "isotopic vertices");
    }
    out.push_back(rep);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ReducedFlag is_reduced(const PartitionedSurface& p, const Simplex& s) {
  require_valid(p, s);
  ReducedFlag f;
  for (auto v : s) {
    for (const auto& c : cut_components(p, {v})) {
      if (c.type == SurfaceType{-2, 1, 0}) {
        f.offending_vertices.push_back(v);
        break;
      }
    }
  }
  f.reduced = f.offending_vertices.empty();
  return f;
}

Simplex phi(const PartitionedSurface& p, const Simplex& s) {
  if (ambient_type(p) == SurfaceType{-4, 0, 0}) {
    throw ModelError(ErrorCode::AmbientExcluded, "ambient is a connected sum of four projective planes");
  }
  require_valid(p, s);
  const IsotopyIndex iso(p);
  std::vector<EdgeId> image;
  for (auto v : s) {
    EdgeId target = v;
    for (const auto& c : cut_components(p, {v})) {
      if (c.type != SurfaceType{-2, 1, 0}) continue;
      const auto core = klein_core_edge(p, c.pieces);
      if (!core) {
        throw ModelError(ErrorCode::KleinCoreUnrepresentable,
                         "Klein bottle cut off by a vertex has no core edge");
      }
      target = iso.at(iso.class_of(CircleRef::of_edge(*core))).representative.edge;
      break;
    }
    if (std::find(image.begin(), image.end(), target) == image.end()) image.push_back(target);
  }
  return make_simplex(p, image);
}

namespace {

// Pieces of one annular region between members of the class, preferring a
// region that contains an ambient boundary circle.
std::optional<PieceSet> class_region(const PartitionedSurface& p, const IsotopyClass& c) {
  std::vector<EdgeId> edges;
  for (const auto& m : c.members)
    if (m.is_edge()) edges.push_back(m.edge);
  if (edges.empty()) return std::nullopt;
  std::optional<PieceSet> chosen;
  const auto free = p.free_slots();
  for (const auto& comp : cut_components(p, edges)) {
    if (comp.type != SurfaceType{0, 2, 0}) continue;
    bool foreign = false, touches_boundary = false;
    for (const auto& s : free) {
      if (!comp.pieces.contains(s.piece)) continue;
      if (c.members.contains(CircleRef::of_boundary(s))) {
        touches_boundary = true;
      } else {
        foreign = true;
      }
    }
    if (foreign) continue;
    if (comp.cut_slots.size() + (touches_boundary ? 1 : 0) != 2) continue;
    if (comp.cut_slots.size() == 2 && p.edge_at(comp.cut_slots[0]) == p.edge_at(comp.cut_slots[1])) {
      continue;
    }
    if (touches_boundary) return comp.pieces;
    if (!chosen) chosen = comp.pieces;
  }
  return chosen;
}

}  // namespace

SigmaSubsurfaces m_sigma_joint(const PartitionedSurface& p, const std::vector<Simplex>& simplices) {
  const IsotopyIndex iso(p);
  std::vector<std::set<std::size_t>> classes(simplices.size());
  std::set<std::size_t> needed = iso.boundary_classes();
  const auto boundary = needed;
  for (std::size_t j = 0; j < simplices.size(); ++j) {
    if (simplices[j].empty()) throw ModelError(ErrorCode::InvalidSimplex, "empty simplex");
    require_valid(p, simplices[j]);
    for (auto v : simplices[j]) {
      const auto cls = iso.class_of(CircleRef::of_edge(v));
      classes[j].insert(cls);
      needed.insert(cls);
    }
  }
  SigmaSubsurfaces out{p, {}};
  std::map<std::size_t, PieceSet> region;
  for (auto cls : needed) {
    const auto& c = iso.at(cls);
    auto r = class_region(p, c);
    if (boundary.contains(cls) && r) {
      // A region between two edges does not contain the boundary circle.
      bool has_slot = false;
      for (const auto& s : p.free_slots())
        if (r->contains(s.piece) && c.members.contains(CircleRef::of_boundary(s))) has_slot = true;
      if (!has_slot) r.reset();
    }
    if (r) {
      region[cls] = *r;
      continue;
    }
    Insertion ins = c.representative.is_edge()
                        ? insert_annulus(out.ambient, c.representative.edge)
                        : insert_collar(out.ambient, c.representative.slot);
    out.ambient = std::move(ins.surface);
    region[cls] = {ins.piece};
  }
  for (std::size_t j = 0; j < simplices.size(); ++j) {
    PieceSet excluded;
    for (auto cls : boundary) excluded.insert(region[cls].begin(), region[cls].end());
    for (auto cls : classes[j]) excluded.insert(region[cls].begin(), region[cls].end());
    PieceSet sel;
    for (const auto& piece : out.ambient.pieces())
      if (!excluded.contains(piece.id)) sel.insert(piece.id);
    out.selections.push_back(std::move(sel));
  }
  return out;
}

SubsurfaceSelection m_sigma(const PartitionedSurface& p, const Simplex& s) {
  auto joint = m_sigma_joint(p, {s});
  return {std::move(joint.ambient), std::move(joint.selections.front())};
}

bool stab_commensurable(const PartitionedSurface& p, const Simplex& s0, const Simplex& s1) {
  const auto joint = m_sigma_joint(p, {s0, s1});
  return commensurable({joint.ambient, joint.selections[0]}, {joint.ambient, joint.selections[1]})
      .commensurable;
}

std::vector<Simplex> enumerate_simplices(const PartitionedSurface& p, int max_dim,
                                         bool reduced_only) {
  std::vector<EdgeId> reps;
  for (const auto& c : eligible_vertices(p)) reps.push_back(representative_edge(c));
  std::vector<Simplex> out;
  const std::size_t n = reps.size();
  const std::size_t max_size = static_cast<std::size_t>(std::max(max_dim, -1) + 1);
  for (std::size_t size = 1; size <= std::min(n, max_size); ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      Simplex s;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) s.push_back(reps[i]);
      if (!reduced_only || is_reduced(p, s).reduced) out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

NcsReport ncs_check(const PartitionedSurface& p, int max_dim, bool include_nonreduced) {
  const auto start = std::chrono::steady_clock::now();
  NcsReport r;
  r.vertices = eligible_vertices(p).size();
  r.enumerated = enumerate_simplices(p, max_dim, !include_nonreduced);
  r.simplices = r.enumerated.size();
  for (std::size_t i = 0; i < r.enumerated.size(); ++i) {
    for (std::size_t j = i + 1; j < r.enumerated.size(); ++j) {
      NcsPair pair{r.enumerated[i], r.enumerated[j],
                   stab_commensurable(p, r.enumerated[i], r.enumerated[j])};
      ++r.pairs;
      if (pair.commensurable) r.violations.push_back(pair);
      r.all_pairs.push_back(std::move(pair));
    }
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string simplex_name(const PartitionedSurface& p, const Simplex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += circle_name(p, CircleRef::of_edge(s[i]));
  }
  return out + "}";
}

std::string ncs_graph(const PartitionedSurface& p, const NcsReport& r) {
  std::string out = "graph ncs {\n";
  for (std::size_t i = 0; i < r.enumerated.size(); ++i) {
    out += "  s" + std::to_string(i) + " [label=\"" + simplex_name(p, r.enumerated[i]) + "\"];\n";
  }
  auto index = [&](const Simplex& s) {
    return std::find(r.enumerated.begin(), r.enumerated.end(), s) - r.enumerated.begin();
  };
  for (const auto& pair : r.all_pairs) {
    if (!pair.commensurable) continue;
    out += "  s" + std::to_string(index(pair.first)) + " -- s" +
           std::to_string(index(pair.second)) + ";\n";
  }
  return out + "}\n";
}

}  // namespace geosub
