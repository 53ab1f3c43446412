#include "geosub/subsurface.hpp"

#include <algorithm>

#include "geosub/error.hpp"

namespace geosub {

namespace {

void check_selection(const SubsurfaceSelection& n) {
  for (const auto& id : n.selected) {
    if (!n.ambient.has_piece(id)) throw ModelError(ErrorCode::UnknownPiece, id);
  }
}

}  // namespace

std::vector<Component> components_of_set(const PartitionedSurface& p, const PieceSet& set) {
  std::vector<Component> out;
  if (set.empty()) return out;
  for (auto& c : cut_components(p, {}, set)) {
    Component comp{std::move(c.pieces), c.type, {}};
    for (EdgeId e = 0; e < p.edges().size(); ++e) {
      const bool a = comp.pieces.contains(p.edges()[e].a.piece);
      const bool b = comp.pieces.contains(p.edges()[e].b.piece);
      if (a != b) comp.boundary.push_back(e);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

namespace {

PieceSet complement_of(const SubsurfaceSelection& n) {
  PieceSet out;
  for (const auto& piece : n.ambient.pieces()) {
    if (!n.selected.contains(piece.id)) out.insert(piece.id);
  }
  return out;
}

bool trivial_mcg_side(const SurfaceType& t) {
  return t == SurfaceType{0, 1, 0} || t == SurfaceType{0, 1, 1} || t == SurfaceType{-1, 1, 0};
}

bool has_free_slot(const PartitionedSurface& p, const Component& c) {
  for (const auto& id : c.pieces) {
    for (const auto& s : p.piece(id).slots) {
      if (!p.edge_at({id, s})) return true;
    }
  }
  return false;
}

bool is_annulus(const Component& c) { return c.type == SurfaceType{0, 2, 0}; }

void require_essential(const SubsurfaceSelection& n) {
  if (!is_essential(n)) throw ModelError(ErrorCode::NotEssential, "subsurface is not essential");
}

}  // namespace

std::vector<Component> components(const SubsurfaceSelection& n) {
  check_selection(n);
  return components_of_set(n.ambient, n.selected);
}

std::vector<Component> complement_components(const SubsurfaceSelection& n) {
  check_selection(n);
  return components_of_set(n.ambient, complement_of(n));
}

std::vector<EdgeId> boundary_edges(const SubsurfaceSelection& n) {
  check_selection(n);
  std::vector<EdgeId> out;
  const auto& edges = n.ambient.edges();
  for (EdgeId e = 0; e < edges.size(); ++e) {
    if (n.selected.contains(edges[e].a.piece) != n.selected.contains(edges[e].b.piece)) {
      out.push_back(e);
    }
  }
  return out;
}

CircleRef meridian(const Component& c) { return CircleRef::of_edge(c.boundary.at(0)); }

bool is_essential(const SubsurfaceSelection& n) {
  check_selection(n);
  if (n.selected.size() == n.ambient.pieces().size()) {
    throw ModelError(ErrorCode::SelectionIsAll, "N = M");
  }
  if (n.selected.empty()) return true;
  const auto comps = components(n);
  for (const auto& c : comps) {
    if (trivial_mcg_side(c.type) || has_free_slot(n.ambient, c)) return false;
  }
  for (const auto& c : complement_components(n)) {
    if (c.type == SurfaceType{0, 1, 0}) return false;
  }
  const bool any_annulus = std::any_of(comps.begin(), comps.end(), is_annulus);
  if (any_annulus) {
    const IsotopyIndex iso(n.ambient);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (!is_annulus(comps[i])) continue;
      const auto m = iso.class_of(meridian(comps[i]));
      for (std::size_t j = 0; j < comps.size(); ++j) {
        if (j == i) continue;
        for (auto e : comps[j].boundary) {
          if (iso.class_of(CircleRef::of_edge(e)) == m) return false;
        }
      }
    }
  }
  return true;
}

bool is_generic_subsurface(const SubsurfaceSelection& n) {
  require_essential(n);
  for (auto e : boundary_edges(n)) {
    if (!is_generic_circle(n.ambient, CircleRef::of_edge(e))) return false;
  }
  return true;
}

std::vector<ExteriorCylinder> exterior_cylinders(const SubsurfaceSelection& n) {
  require_essential(n);
  std::vector<ExteriorCylinder> out;
  for (const auto& c : complement_components(n)) {
    if (!is_annulus(c) || c.boundary.size() != 2 || has_free_slot(n.ambient, c)) continue;
    out.push_back(ExteriorCylinder{c.pieces, c.boundary[0], c.boundary[1]});
  }
  return out;
}

KernelDescription kernel_description(const SubsurfaceSelection& n) {
  if (ambient_type(n.ambient) == SurfaceType{-2, 0, 0}) {
    throw ModelError(ErrorCode::AmbientExcluded, "ambient Klein bottle");
  }
  require_essential(n);
  KernelDescription k;
  const auto comps = components(n);
  std::set<EdgeId> annulus_edges;
  for (const auto& c : comps) {
    if (is_annulus(c)) {
      annulus_edges.insert(c.boundary.begin(), c.boundary.end());
      if (!is_generic_circle(n.ambient, meridian(c))) k.nongeneric_meridians.push_back(meridian(c));
      continue;
    }
    for (auto e : c.boundary) {
      if (!is_generic_circle(n.ambient, CircleRef::of_edge(e))) {
        k.nongeneric_boundary.push_back(CircleRef::of_edge(e));
      }
    }
  }
  for (const auto& cyl : exterior_cylinders(n)) {
    if (annulus_edges.contains(cyl.b) || annulus_edges.contains(cyl.b_prime)) continue;
    k.exterior_cylinder_pairs.emplace_back(CircleRef::of_edge(cyl.b),
                                           CircleRef::of_edge(cyl.b_prime));
  }
  k.rank = static_cast<int>(k.nongeneric_boundary.size() + k.nongeneric_meridians.size() +
                            k.exterior_cylinder_pairs.size());
  return k;
}

namespace {

void injectivity_guard(const SubsurfaceSelection& n) {
  const auto m = ambient_type(n.ambient);
  if (m == SurfaceType{1, 0, 0} || m == SurfaceType{-2, 0, 0}) {
    throw ModelError(ErrorCode::AmbientExcluded, "ambient " + to_string(m));
  }
}

}  // namespace

bool is_injective(const SubsurfaceSelection& n) {
  injectivity_guard(n);
  return kernel_description(n).rank == 0;
}

bool is_injective_by_complement(const SubsurfaceSelection& n) {
  injectivity_guard(n);
  require_essential(n);
  for (const auto& c : complement_components(n)) {
    if (trivial_mcg_side(c.type)) return false;
  }
  return exterior_cylinders(n).empty();
}

VaVerdict virtually_abelian_verdict(const SubsurfaceSelection& n) {
  require_essential(n);
  VaVerdict v;
  for (auto& c : components(n)) {
    if (!is_va_component_type(c.type)) {
      v.virtually_abelian = false;
      v.offending = std::move(c);
      break;
    }
  }
  return v;
}

bool is_virtually_abelian(const SubsurfaceSelection& n) {
  return virtually_abelian_verdict(n).virtually_abelian;
}

std::optional<EdgeId> klein_core_edge(const PartitionedSurface& p, const PieceSet& component) {
  for (EdgeId e = 0; e < p.edges().size(); ++e) {
    const auto& g = p.edges()[e];
    if (!component.contains(g.a.piece) || !component.contains(g.b.piece)) continue;
    if (cut_components(p, {e}, component).size() == 1) return e;
  }
  return std::nullopt;
}

std::optional<PieceId> klein_core_piece(const PartitionedSurface& p, const PieceSet& component) {
  for (const auto& id : component) {
    const Piece& piece = p.piece(id);
    if (piece.type != SurfaceType{0, 2, 0}) continue;
    const auto e1 = p.edge_at({id, piece.slots[0]});
    const auto e2 = p.edge_at({id, piece.slots[1]});
    if (!e1 || !e2) continue;
    if (!component.contains(p.other_end(*e1, id).piece) ||
        !component.contains(p.other_end(*e2, id).piece)) {
      continue;
    }
    if (cut_components(p, {*e1}, component).size() == 1) return id;
  }
  return std::nullopt;
}

namespace {

// Replaces a connected set of pieces by a single piece of the given type.
std::pair<PartitionedSurface, PieceId> collapse(const PartitionedSurface& p, const PieceSet& set,
                                                const SurfaceType& type) {
  const PieceId id = p.fresh_id("K_" + *set.begin());
  std::vector<Piece> pieces;
  for (const auto& x : p.pieces()) {
    if (!set.contains(x.id)) pieces.push_back(x);
  }
  Piece merged{id, type, {}};
  std::vector<GluingEdge> edges;
  int next = 1;
  for (const auto& g : p.edges()) {
    const bool a = set.contains(g.a.piece);
    const bool b = set.contains(g.b.piece);
    if (a && b) continue;
    GluingEdge h = g;
    if (a || b) {
      SlotRef& inner = a ? h.a : h.b;
      inner = SlotRef{id, std::to_string(next++)};
      merged.slots.push_back(inner.slot);
    }
    edges.push_back(std::move(h));
  }
  for (const auto& s : p.free_slots()) {
    if (set.contains(s.piece)) merged.slots.push_back(std::to_string(next++));
  }
  if (static_cast<int>(merged.slots.size()) != type.boundary) {
    throw ModelError(ErrorCode::InvalidModel, "collapsed pieces have wrong boundary count");
  }
  pieces.push_back(std::move(merged));
  return {PartitionedSurface(std::move(pieces), std::move(edges)), id};
}

}  // namespace

PartitionedSurface refine_klein_components(const PartitionedSurface& ambient,
                                           std::vector<PieceSet*> selections,
                                           std::vector<PieceId>* refined) {
  PartitionedSurface cur = ambient;
  for (;;) {
    // smallest components first: refining a Klein piece shared by several
    // selections can give a larger component its core edge
    std::vector<Component> todo;
    for (PieceSet* sel : selections) {
      for (const auto& c : components_of_set(cur, *sel)) {
        if (c.type == SurfaceType{-2, 1, 0} && !klein_core_edge(cur, c.pieces)) todo.push_back(c);
      }
    }
    if (todo.empty()) return cur;
    std::stable_sort(todo.begin(), todo.end(), [](const Component& a, const Component& b) {
      return a.pieces.size() < b.pieces.size();
    });
    auto partial = [&](const Component& c) {
      for (PieceSet* other : selections) {
        const auto shared = std::count_if(c.pieces.begin(), c.pieces.end(),
                                          [&](const PieceId& x) { return other->contains(x); });
        if (shared != 0 && static_cast<std::size_t>(shared) != c.pieces.size()) return true;
      }
      return false;
    };
    // a component shared only up to collar annuli of another selection is
    // refined without those annuli
    for (auto& c : todo) {
      if (!partial(c)) continue;
      PieceSet core = c.pieces;
      for (PieceSet* o : selections) {
        PieceSet shared;
        for (const auto& x : c.pieces)
          if (o->contains(x)) shared.insert(x);
        if (shared.empty() || shared.size() == c.pieces.size()) continue;
        const auto parts = components_of_set(cur, shared);
        if (std::all_of(parts.begin(), parts.end(),
                        [](const Component& a) { return a.type == SurfaceType{0, 2, 0}; })) {
          for (const auto& x : shared) core.erase(x);
        }
      }
      for (const auto& sub : components_of_set(cur, core)) {
        if (sub.type == SurfaceType{-2, 1, 0}) c = sub;
      }
    }
    auto it = std::find_if_not(todo.begin(), todo.end(), partial);
    if (it == todo.end()) {
      throw ModelError(ErrorCode::KleinCoreUnrepresentable,
                       "Klein component shared partially between selections");
    }
    const Component c = *it;
    PieceId k = *c.pieces.begin();
    if (c.pieces.size() > 1) {
      auto [collapsed, id] = collapse(cur, c.pieces, c.type);
      cur = std::move(collapsed);
      k = id;
      for (PieceSet* other : selections) {
        if (!other->contains(*c.pieces.begin())) continue;
        for (const auto& x : c.pieces) other->erase(x);
        other->insert(k);
      }
    }
    auto r = refine_klein(cur, k);
    cur = std::move(r.surface);
    for (PieceSet* other : selections) {
      if (other->erase(k)) {
        other->insert(r.core);
        other->insert(r.rest);
      }
    }
    if (refined) refined->push_back(k);
  }
}

BasicCircles basic_circles(const SubsurfaceSelection& n) {
  if (ambient_type(n.ambient) == SurfaceType{-2, 0, 0}) {
    throw ModelError(ErrorCode::AmbientExcluded, "ambient Klein bottle");
  }
  if (!is_essential(n) || !is_generic_subsurface(n)) {
    throw ModelError(ErrorCode::NotGeneric, "subsurface is not generic");
  }
  if (!is_virtually_abelian(n)) {
    throw ModelError(ErrorCode::NotVirtuallyAbelian, "subsurface is not virtually abelian");
  }
  BasicCircles out;
  out.selected = n.selected;
  out.ambient = refine_klein_components(n.ambient, {&out.selected}, &out.refined_klein);
  const SubsurfaceSelection refined{out.ambient, out.selected};
  const IsotopyIndex iso(out.ambient);
  std::vector<std::size_t> seen;
  auto add = [&](const CircleRef& c) {
    const auto cls = iso.class_of(c);
    if (std::find(seen.begin(), seen.end(), cls) != seen.end()) return;
    seen.push_back(cls);
  };
  for (const auto& c : components(refined)) {
    if (is_annulus(c)) {
      add(meridian(c));
      continue;
    }
    if (c.type == SurfaceType{-2, 1, 0}) add(CircleRef::of_edge(*klein_core_edge(out.ambient, c.pieces)));
    for (auto e : c.boundary) add(CircleRef::of_edge(e));
  }
  for (const auto& cyl : exterior_cylinders(refined)) {
    out.exterior_cylinder_alternatives.emplace_back(CircleRef::of_edge(cyl.b),
                                                    CircleRef::of_edge(cyl.b_prime));
  }
  for (auto cls : seen) out.circles.push_back(iso.at(cls));
  out.rank = static_cast<int>(out.circles.size());
  return out;
}

}  // namespace geosub
