#include "geosub/commensurability.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "geosub/error.hpp"

namespace geosub {

namespace {

SubsurfaceSelection side_of(const SelectionPair& p, int side) {
  return {p.ambient, side == 0 ? p.n0 : p.n1};
}

PieceSet& pieces_of(SelectionPair& p, int side) { return side == 0 ? p.n0 : p.n1; }

bool is_annulus(const SurfaceType& t) { return t == SurfaceType{0, 2, 0}; }

std::vector<std::size_t> boundary_class_list(const IsotopyIndex& iso, const Component& c) {
  std::vector<std::size_t> out;
  for (auto e : c.boundary) out.push_back(iso.class_of(CircleRef::of_edge(e)));
  std::sort(out.begin(), out.end());
  return out;
}

std::set<std::size_t> boundary_classes(const IsotopyIndex& iso, const std::vector<Component>& cs) {
  std::set<std::size_t> out;
  for (const auto& c : cs)
    for (auto e : c.boundary) out.insert(iso.class_of(CircleRef::of_edge(e)));
  return out;
}

// True unless the common part is empty or a union of unpunctured annuli;
// components meeting only in collars are disjoint up to isotopy.
bool overlaps_essentially(const PartitionedSurface& p, const PieceSet& a, const PieceSet& b) {
  PieceSet common;
  for (const auto& x : a)
    if (b.contains(x)) common.insert(x);
  for (const auto& c : components_of_set(p, common))
    if (c.type != SurfaceType{0, 2, 0}) return true;
  return false;
}

bool components_isotopic(const PartitionedSurface& p, const IsotopyIndex& iso, const Component& u,
                         const Component& v) {
  if (u.type != v.type) return false;
  if (u.pieces == v.pieces) return true;
  if (is_annulus(u.type)) return iso.isotopic(meridian(u), meridian(v));
  return boundary_class_list(iso, u) == boundary_class_list(iso, v) &&
         overlaps_essentially(p, u.pieces, v.pieces);
}

// Classes of the basic circles of a side without Klein components.
std::set<std::size_t> basic_class_set(const IsotopyIndex& iso, const std::vector<Component>& cs) {
  std::set<std::size_t> out;
  for (const auto& c : cs) {
    if (is_annulus(c.type)) {
      out.insert(iso.class_of(meridian(c)));
    } else {
      for (auto e : c.boundary) out.insert(iso.class_of(CircleRef::of_edge(e)));
    }
  }
  return out;
}

PieceSet minus(const PieceSet& a, const PieceSet& b) {
  PieceSet out;
  for (const auto& x : a)
    if (!b.contains(x)) out.insert(x);
  return out;
}

}  // namespace

std::string to_string(KleinMode m) {
  return m == KleinMode::Neighbourhood ? "neighbourhood" : "complement";
}

std::string to_string(CommensuratorKind k) {
  return k == CommensuratorKind::StabOnly ? "StabOnly" : "StabSemidirectZ2";
}

std::vector<ComponentMatch> isotopic_components(const SubsurfaceSelection& n0,
                                                const SubsurfaceSelection& n1) {
  if (!(n0.ambient == n1.ambient)) {
    throw ModelError(ErrorCode::DifferentAmbient, "selections live in different ambients");
  }
  const auto c0 = components(n0);
  const auto c1 = components(n1);
  std::vector<ComponentMatch> out;
  if (c0.empty() || c1.empty()) return out;
  const IsotopyIndex iso(n0.ambient);
  std::vector<bool> used(c1.size(), false);
  for (const auto& u : c0) {
    for (std::size_t j = 0; j < c1.size(); ++j) {
      if (used[j] || !components_isotopic(n0.ambient, iso, u, c1[j])) continue;
      used[j] = true;
      out.push_back({u.pieces, c1[j].pieces});
      break;
    }
  }
  return out;
}

bool strip_one_common(SelectionPair& pair, ComponentMatch* stripped) {
  const auto matches = isotopic_components(side_of(pair, 0), side_of(pair, 1));
  if (matches.empty()) return false;
  const ComponentMatch m = matches.front();
  const PieceSet r0 = minus(pair.n0, m.first);
  const PieceSet r1 = minus(pair.n1, m.second);
  if (overlaps_essentially(pair.ambient, m.first, r1) ||
      overlaps_essentially(pair.ambient, m.second, r0)) {
    throw ModelError(ErrorCode::CommonComponentOverlap,
                     "common component overlaps a non-common component");
  }
  const IsotopyIndex iso(pair.ambient);
  const auto b0 = boundary_classes(iso, components_of_set(pair.ambient, r0));
  const auto b1 = boundary_classes(iso, components_of_set(pair.ambient, r1));
  auto wanted = [&](const PieceSet& common, const std::set<std::size_t>& own,
                    const std::set<std::size_t>& other) {
    std::vector<EdgeId> out;
    std::set<std::size_t> done;
    for (const auto& c : components_of_set(pair.ambient, common)) {
      for (auto e : c.boundary) {
        const auto cls = iso.class_of(CircleRef::of_edge(e));
        if (other.contains(cls) && !own.contains(cls) && done.insert(cls).second) {
          out.push_back(e);
        }
      }
    }
    return out;
  };
  const auto add0 = wanted(m.first, b0, b1);
  const auto add1 = wanted(m.second, b1, b0);
  pair.n0 = r0;
  pair.n1 = r1;
  for (auto e : add0) {
    auto ins = insert_annulus(pair.ambient, e);
    pair.ambient = std::move(ins.surface);
    pair.n0.insert(ins.piece);
  }
  for (auto e : add1) {
    auto ins = insert_annulus(pair.ambient, e);
    pair.ambient = std::move(ins.surface);
    pair.n1.insert(ins.piece);
  }
  if (stripped) *stripped = m;
  return true;
}

SelectionPair strip_common(const SubsurfaceSelection& n0, const SubsurfaceSelection& n1,
                           std::vector<ComponentMatch>* stripped) {
  if (!(n0.ambient == n1.ambient)) {
    throw ModelError(ErrorCode::DifferentAmbient, "selections live in different ambients");
  }
  SelectionPair pair{n0.ambient, n0.selected, n1.selected};
  ComponentMatch m;
  while (strip_one_common(pair, &m)) {
    if (stripped) stripped->push_back(m);
  }
  return pair;
}

KleinReduction klein_reduce(SelectionPair& pair, int side) {
  KleinReduction out;
  for (;;) {
    const auto comps = components_of_set(pair.ambient, pieces_of(pair, side));
    auto it = std::find_if(comps.begin(), comps.end(), [](const Component& c) {
      return c.type == SurfaceType{-2, 1, 0};
    });
    if (it == comps.end()) return out;
    const Component k = *it;
    const auto core_edge = klein_core_edge(pair.ambient, k.pieces);
    if (!core_edge) {
      throw ModelError(ErrorCode::KleinCoreUnrepresentable, "Klein component without core edge");
    }
    const IsotopyIndex iso(pair.ambient);
    const auto core = iso.class_of(CircleRef::of_edge(*core_edge));
    const auto rim = iso.class_of(CircleRef::of_edge(k.boundary.at(0)));
    std::vector<std::size_t> complement_classes{core, core, rim};
    std::sort(complement_classes.begin(), complement_classes.end());
    std::optional<KleinMatch> match;
    for (const auto& l : components_of_set(pair.ambient, pieces_of(pair, 1 - side))) {
      if (is_annulus(l.type) && iso.class_of(meridian(l)) == core) {
        match = KleinMatch{k.pieces, l.pieces, KleinMode::Neighbourhood, side};
      } else if (l.type == SurfaceType{0, 3, 0} && boundary_class_list(iso, l) == complement_classes) {
        match = KleinMatch{k.pieces, l.pieces, KleinMode::Complement, side};
      }
      if (match) break;
    }
    if (!match) {
      out.unmatched = k.pieces;
      return out;
    }
    out.matches.push_back(*match);
    out.changed = true;

    PieceSet& mine = pieces_of(pair, side);
    const PieceSet rest = minus(mine, k.pieces);
    const auto rest_classes = boundary_classes(iso, components_of_set(pair.ambient, rest));
    const EdgeId rim_edge = k.boundary.at(0);
    mine = rest;
    if (auto piece = klein_core_piece(pair.ambient, k.pieces)) {
      mine.insert(*piece);
    } else {
      auto ins = insert_annulus(pair.ambient, *core_edge);
      pair.ambient = std::move(ins.surface);
      mine.insert(ins.piece);
    }
    if (!rest_classes.contains(rim)) {
      auto ins = insert_annulus(pair.ambient, rim_edge);
      pair.ambient = std::move(ins.surface);
      mine.insert(ins.piece);
    }
  }
}

std::optional<std::string> geometric_criterion(const SelectionPair& reduced) {
  const auto c0 = components_of_set(reduced.ambient, reduced.n0);
  const auto c1 = components_of_set(reduced.ambient, reduced.n1);
  for (const auto* cs : {&c0, &c1}) {
    for (const auto& c : *cs) {
      if (c.type == SurfaceType{-2, 1, 0}) {
        throw std::logic_error("geometric criterion applied to a Klein component");
      }
      if (!is_pantalon_or_skirt(c.type) && !is_annulus(c.type)) return obstruction::NonVaComponent;
    }
  }
  for (const auto& u : c0) {
    if (is_annulus(u.type)) continue;
    for (const auto& v : c1) {
      if (!is_annulus(v.type) && overlaps_essentially(reduced.ambient, u.pieces, v.pieces)) {
        return obstruction::BoundaryMismatch;
      }
    }
  }
  if (c0.empty() && c1.empty()) return std::nullopt;
  const IsotopyIndex iso(reduced.ambient);
  struct Count {
    int faces[2] = {0, 0};
    int annuli[2] = {0, 0};
  };
  std::map<std::size_t, Count> counts;
  for (int side = 0; side < 2; ++side) {
    for (const auto& c : side == 0 ? c0 : c1) {
      if (is_annulus(c.type)) {
        ++counts[iso.class_of(meridian(c))].annuli[side];
      } else {
        for (auto e : c.boundary) ++counts[iso.class_of(CircleRef::of_edge(e))].faces[side];
      }
    }
  }
  // Every circle class is either interior to S (a face of N_0 meeting a face
  // of N_1) or a boundary circle of S carried by an annulus of one side.
  for (const auto& [cls, n] : counts) {
    if (n.faces[0] + n.faces[1] > 2) return obstruction::BoundaryMismatch;
    for (int i = 0; i < 2; ++i) {
      const bool other = n.faces[1 - i] + n.annuli[1 - i] > 0;
      if (n.faces[i] > 0 && !other) return obstruction::BoundaryMismatch;
      if (n.annuli[i] > 0 && !other) return obstruction::BasicCirclesDiffer;
    }
  }
  return std::nullopt;
}

CommensurabilityVerdict commensurable(const SubsurfaceSelection& n0,
                                      const SubsurfaceSelection& n1,
                                      const CommensurabilityOptions& opts) {
  if (!(n0.ambient == n1.ambient)) {
    throw ModelError(ErrorCode::DifferentAmbient, "selections live in different ambients");
  }
  if (ambient_type(n0.ambient) == SurfaceType{-2, 0, 0}) {
    throw ModelError(ErrorCode::AmbientExcluded, "ambient Klein bottle");
  }
  for (const auto* n : {&n0, &n1}) {
    if (!is_essential(*n) || !is_generic_subsurface(*n)) {
      throw ModelError(ErrorCode::NotGeneric, "subsurface is not generic");
    }
  }
  CommensurabilityVerdict v;
  SelectionPair pair{n0.ambient, n0.selected, n1.selected};
  pair.ambient = refine_klein_components(pair.ambient, {&pair.n0, &pair.n1});

  auto finish_false = [&](const char* code) {
    v.commensurable = false;
    v.obstruction = code;
    v.reduced = pair;
    return v;
  };

  for (;;) {
    bool changed = false;
    ComponentMatch m;
    while (strip_one_common(pair, &m)) {
      v.stripped_common.push_back(m);
      changed = true;
    }
    for (int side = 0; side < 2; ++side) {
      auto r = klein_reduce(pair, side);
      v.klein_matches.insert(v.klein_matches.end(), r.matches.begin(), r.matches.end());
      if (r.unmatched) return finish_false(obstruction::KleinUnmatched);
      changed = changed || r.changed;
    }
    if (!changed) break;
  }
  v.reduced = pair;

  const auto c0 = components_of_set(pair.ambient, pair.n0);
  const auto c1 = components_of_set(pair.ambient, pair.n1);
  std::optional<std::string> verdict;
  for (const auto* cs : {&c0, &c1}) {
    for (const auto& c : *cs) {
      if (!is_pantalon_or_skirt(c.type) && !is_annulus(c.type)) verdict = obstruction::NonVaComponent;
    }
  }
  if (!verdict && !(c0.empty() && c1.empty())) {
    const IsotopyIndex iso(pair.ambient);
    const auto s0 = basic_class_set(iso, c0);
    const auto s1 = basic_class_set(iso, c1);
    if (s0 != s1) {
      // A boundary class of a non-annular component missing on the other side
      // violates the boundary condition itself.
      verdict = obstruction::BasicCirclesDiffer;
      for (int side = 0; side < 2 && *verdict == obstruction::BasicCirclesDiffer; ++side) {
        const auto& other = side == 0 ? s1 : s0;
        for (const auto& c : side == 0 ? c0 : c1) {
          if (is_annulus(c.type)) continue;
          for (auto e : c.boundary) {
            if (!other.contains(iso.class_of(CircleRef::of_edge(e)))) {
              verdict = obstruction::BoundaryMismatch;
            }
          }
        }
      }
    }
  }
  if (opts.cross_check) {
    const auto geometric = geometric_criterion(pair);
    if (geometric.has_value() != verdict.has_value()) {
      throw std::logic_error("commensurability decision paths disagree");
    }
  }
  if (verdict) return finish_false(verdict->c_str());

  v.commensurable = true;
  Certificate cert;
  cert.basic_circles_0 = basic_circles({pair.ambient, pair.n0});
  cert.basic_circles_1 = basic_circles({pair.ambient, pair.n1});
  cert.stripped_common = v.stripped_common;
  cert.klein_matches = v.klein_matches;
  v.certificate = std::move(cert);
  return v;
}

StabStarDescriptor stab_star_descriptor(const SubsurfaceSelection& n) {
  if (!is_essential(n) || !is_generic_subsurface(n)) {
    throw ModelError(ErrorCode::NotGeneric, "subsurface is not generic");
  }
  StabStarDescriptor d;
  PieceSet selected = n.selected;
  d.ambient = refine_klein_components(n.ambient, {&selected});
  PieceSet rest = selected;
  std::vector<EdgeId> special_boundary;
  for (const auto& c : components_of_set(d.ambient, selected)) {
    if (is_va_component_type(c.type)) continue;
    d.special_components.push_back(c.pieces);
    for (const auto& x : c.pieces) rest.erase(x);
    special_boundary.insert(special_boundary.end(), c.boundary.begin(), c.boundary.end());
  }
  if (selected.empty()) return d;
  const IsotopyIndex iso(d.ambient);
  std::vector<std::size_t> seen;
  auto add = [&](std::size_t cls) {
    if (std::find(seen.begin(), seen.end(), cls) == seen.end()) seen.push_back(cls);
  };
  if (!rest.empty()) {
    const auto bc = basic_circles({d.ambient, rest});
    for (const auto& cls : bc.circles) add(iso.class_of(cls.representative));
  }
  for (auto e : special_boundary) add(iso.class_of(CircleRef::of_edge(e)));
  for (auto cls : seen) d.curve_set.push_back(iso.at(cls));
  return d;
}

CommensuratorCase commensurator_case(const SubsurfaceSelection& n) {
  const auto comps = components(n);
  for (const auto& c : comps) {
    if (c.type == SurfaceType{-2, 1, 0} || is_annulus(c.type)) {
      throw ModelError(ErrorCode::ForbiddenComponents,
                       "Klein bottle with one hole or annulus component");
    }
  }
  if (!is_injective(n)) throw ModelError(ErrorCode::NotInjective, "subsurface is not injective");
  CommensuratorCase out;
  const bool closed = ambient_type(n.ambient).boundary == 0;
  const bool va = std::all_of(comps.begin(), comps.end(),
                              [](const Component& c) { return is_va_component_type(c.type); });
  if (!closed || !va || comps.empty()) return out;

  // The swap must exchange N with the closure of its complement: look for a
  // type-preserving involution of the component graph exchanging the parts.
  const auto rest = complement_components(n);
  if (rest.size() != comps.size()) return out;
  const std::size_t k = comps.size();
  std::vector<std::vector<int>> mult(k, std::vector<int>(k, 0));
  auto owner = [](const std::vector<Component>& cs, const PieceId& id) {
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (cs[i].pieces.contains(id)) return i;
    return cs.size();
  };
  for (auto e : boundary_edges(n)) {
    const auto& g = n.ambient.edges()[e];
    const bool a_in = n.selected.contains(g.a.piece);
    const auto u = owner(comps, a_in ? g.a.piece : g.b.piece);
    const auto w = owner(rest, a_in ? g.b.piece : g.a.piece);
    ++mult[u][w];
  }
  std::vector<std::size_t> phi(k);
  for (std::size_t i = 0; i < k; ++i) phi[i] = i;
  bool found = false;
  do {
    bool ok = true;
    std::vector<std::size_t> inv(k);
    for (std::size_t i = 0; i < k; ++i) inv[phi[i]] = i;
    for (std::size_t i = 0; i < k && ok; ++i) {
      if (comps[i].type != rest[phi[i]].type) ok = false;
      for (std::size_t j = 0; j < k && ok; ++j) {
        if (mult[i][j] != mult[inv[j]][phi[i]]) ok = false;
      }
    }
    found = ok;
  } while (!found && std::next_permutation(phi.begin(), phi.end()));
  if (!found) return out;
  out.kind = CommensuratorKind::StabSemidirectZ2;
  out.direct_product = std::all_of(comps.begin(), comps.end(), [](const Component& c) {
    const auto tag = classify_piece(c.type).tag;
    return tag == PieceTag::PantalonII || tag == PieceTag::PantalonIII || tag == PieceTag::SkirtII;
  });
  return out;
}

}  // namespace geosub
