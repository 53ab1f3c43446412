#include "geosub/partition.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "geosub/error.hpp"

namespace geosub {

std::string to_string(const SlotRef& s) { return s.piece + "." + s.slot; }

PartitionedSurface::PartitionedSurface(std::vector<Piece> pieces, std::vector<GluingEdge> edges)
    : pieces_(std::move(pieces)), edges_(std::move(edges)) {
  if (pieces_.empty()) throw ModelError(ErrorCode::InvalidModel, "no pieces");
  build_index();
}

void PartitionedSurface::build_index() {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& p = pieces_[i];
    if (!index_.emplace(p.id, i).second) {
      throw ModelError(ErrorCode::DuplicateId, "piece " + p.id);
    }
    if (p.type.boundary < 0 || p.type.punctures < 0) {
      throw ModelError(ErrorCode::InvalidModel, "negative counts on piece " + p.id);
    }
    if (static_cast<int>(p.slots.size()) != p.type.boundary) {
      throw ModelError(ErrorCode::InvalidModel, "slot count of piece " + p.id);
    }
    std::set<std::string> seen(p.slots.begin(), p.slots.end());
    if (seen.size() != p.slots.size()) {
      throw ModelError(ErrorCode::DuplicateId, "slot label on piece " + p.id);
    }
  }
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    const GluingEdge& g = edges_[e];
    for (const SlotRef* s : {&g.a, &g.b}) {
      if (!has_slot(*s)) throw ModelError(ErrorCode::DanglingReference, to_string(*s));
      if (!slot_edge_.emplace(*s, e).second) {
        throw ModelError(ErrorCode::DoubleGlue, to_string(*s));
      }
    }
    if (g.a.piece == g.b.piece) {
      throw ModelError(ErrorCode::InvalidModel, "piece " + g.a.piece + " glued to itself");
    }
  }
  // connectivity
  std::vector<std::vector<std::size_t>> adj(pieces_.size());
  for (const auto& g : edges_) {
    adj[index_.at(g.a.piece)].push_back(index_.at(g.b.piece));
    adj[index_.at(g.b.piece)].push_back(index_.at(g.a.piece));
  }
  std::vector<bool> seen(pieces_.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (auto v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  if (reached != pieces_.size()) {
    throw ModelError(ErrorCode::Disconnected, "gluing graph is not connected");
  }
}

std::size_t PartitionedSurface::piece_index(const PieceId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ModelError(ErrorCode::UnknownPiece, id);
  return it->second;
}

bool PartitionedSurface::has_slot(const SlotRef& s) const {
  auto it = index_.find(s.piece);
  if (it == index_.end()) return false;
  const auto& slots = pieces_[it->second].slots;
  return std::find(slots.begin(), slots.end(), s.slot) != slots.end();
}

std::optional<EdgeId> PartitionedSurface::edge_at(const SlotRef& s) const {
  auto it = slot_edge_.find(s);
  if (it == slot_edge_.end()) return std::nullopt;
  return it->second;
}

std::vector<SlotRef> PartitionedSurface::free_slots() const {
  std::vector<SlotRef> out;
  for (const auto& p : pieces_) {
    for (const auto& s : p.slots) {
      SlotRef ref{p.id, s};
      if (!slot_edge_.contains(ref)) out.push_back(std::move(ref));
    }
  }
  return out;
}

std::vector<CircleRef> PartitionedSurface::circles() const {
  std::vector<CircleRef> out;
  for (EdgeId e = 0; e < edges_.size(); ++e) out.push_back(CircleRef::of_edge(e));
  for (auto& s : free_slots()) out.push_back(CircleRef::of_boundary(std::move(s)));
  return out;
}

const SlotRef& PartitionedSurface::other_end(EdgeId e, const PieceId& from) const {
  const auto& g = edges_.at(e);
  return g.a.piece == from ? g.b : g.a;
}

PieceId PartitionedSurface::fresh_id(const std::string& base) const {
  if (!has_piece(base)) return base;
  for (int i = 2;; ++i) {
    PieceId candidate = base + "_" + std::to_string(i);
    if (!has_piece(candidate)) return candidate;
  }
}

PartitionedSurface canonicalize(const PartitionedSurface& p) {
  std::vector<Piece> pieces = p.pieces();
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& x, const Piece& y) { return x.id < y.id; });
  std::vector<GluingEdge> edges = p.edges();
  for (auto& g : edges) {
    if (g.b < g.a) std::swap(g.a, g.b);
  }
  std::sort(edges.begin(), edges.end(), [](const GluingEdge& x, const GluingEdge& y) {
    return std::tie(x.a, x.b, x.flip, x.label) < std::tie(y.a, y.b, y.flip, y.label);
  });
  return PartitionedSurface(std::move(pieces), std::move(edges));
}

namespace {

// Connected components of the pieces in `mask` using edges not in `removed`.
std::vector<std::vector<std::size_t>> index_components(const PartitionedSurface& p,
                                                       const std::vector<bool>& mask,
                                                       const std::vector<bool>& removed) {
  const auto& pieces = p.pieces();
  std::vector<std::vector<std::size_t>> adj(pieces.size());
  for (EdgeId e = 0; e < p.edges().size(); ++e) {
    if (removed[e]) continue;
    const auto u = p.piece_index(p.edges()[e].a.piece);
    const auto v = p.piece_index(p.edges()[e].b.piece);
    if (!mask[u] || !mask[v]) continue;
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<bool> seen(pieces.size(), false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < pieces.size(); ++s) {
    if (!mask[s] || seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (auto v : adj[comp[head]]) {
        if (!seen[v]) {
          seen[v] = true;
          comp.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// Type of a connected union of pieces; edges in `removed` count as cut.
// Orientability: a spanning-tree orientation assignment must be consistent
// with every flip bit; nonorientable pieces make parities irrelevant.
SurfaceType assemble_indices(const PartitionedSurface& p, const std::vector<bool>& mask,
                             const std::vector<bool>& removed) {
  const auto& pieces = p.pieces();
  int chi = 0, punctures = 0, slots = 0;
  bool orientable = true;
  std::size_t count = 0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!mask[i]) continue;
    ++count;
    chi += euler_characteristic(pieces[i].type);
    punctures += pieces[i].type.punctures;
    slots += pieces[i].type.boundary;
    if (!pieces[i].type.orientable()) orientable = false;
  }
  struct Link {
    std::size_t to;
    bool flip;
  };
  std::vector<std::vector<Link>> adj(pieces.size());
  int internal = 0;
  for (EdgeId e = 0; e < p.edges().size(); ++e) {
    if (removed[e]) continue;
    const auto& g = p.edges()[e];
    const auto u = p.piece_index(g.a.piece);
    const auto v = p.piece_index(g.b.piece);
    if (!mask[u] || !mask[v]) continue;
    ++internal;
    adj[u].push_back({v, g.flip});
    adj[v].push_back({u, g.flip});
  }
  std::vector<int> side(pieces.size(), -1);
  std::size_t start = 0;
  while (start < pieces.size() && !mask[start]) ++start;
  if (start == pieces.size()) throw ModelError(ErrorCode::Disconnected, "empty component");
  side[start] = 0;
  std::vector<std::size_t> order{start};
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto u = order[head];
    for (const auto& l : adj[u]) {
      const int want = side[u] ^ (l.flip ? 1 : 0);
      if (side[l.to] < 0) {
        side[l.to] = want;
        order.push_back(l.to);
      } else if (side[l.to] != want) {
        orientable = false;
      }
    }
  }
  if (order.size() != count) {
    throw ModelError(ErrorCode::Disconnected, "piece set is not connected");
  }
  const int boundary = slots - 2 * internal;
  auto t = type_from_invariants(chi, orientable, boundary, punctures);
  if (!t) throw ModelError(ErrorCode::InvalidModel, "inconsistent invariants");
  return *t;
}

std::vector<bool> mask_of(const PartitionedSurface& p, const PieceSet& set) {
  std::vector<bool> mask(p.pieces().size(), false);
  for (const auto& id : set) mask[p.piece_index(id)] = true;
  return mask;
}

EdgeId require_edge(const PartitionedSurface& p, const CircleRef& c) {
  if (!c.is_edge()) throw ModelError(ErrorCode::NotAnEdge, "ambient boundary circle");
  if (c.edge >= p.edges().size()) {
    throw ModelError(ErrorCode::NotAnEdge, "no edge " + std::to_string(c.edge));
  }
  return c.edge;
}

}  // namespace

SurfaceType assemble_type(const PartitionedSurface& p, const PieceSet& component) {
  if (component.empty()) throw ModelError(ErrorCode::Disconnected, "empty piece set");
  return assemble_indices(p, mask_of(p, component),
                          std::vector<bool>(p.edges().size(), false));
}

SurfaceType ambient_type(const PartitionedSurface& p) {
  return assemble_indices(p, std::vector<bool>(p.pieces().size(), true),
                          std::vector<bool>(p.edges().size(), false));
}

std::vector<CutComponent> cut_components(const PartitionedSurface& p,
                                         const std::vector<EdgeId>& removed_list,
                                         const std::optional<PieceSet>& pieces) {
  std::vector<bool> removed(p.edges().size(), false);
  for (auto e : removed_list) removed.at(e) = true;
  std::vector<bool> mask = pieces ? mask_of(p, *pieces)
                                  : std::vector<bool>(p.pieces().size(), true);
  std::vector<CutComponent> out;
  for (const auto& comp : index_components(p, mask, removed)) {
    std::vector<bool> cmask(p.pieces().size(), false);
    CutComponent c;
    for (auto i : comp) {
      cmask[i] = true;
      c.pieces.insert(p.pieces()[i].id);
    }
    c.type = assemble_indices(p, cmask, removed);
    for (auto e : removed_list) {
      const auto& g = p.edges()[e];
      if (c.pieces.contains(g.a.piece)) c.cut_slots.push_back(g.a);
      if (c.pieces.contains(g.b.piece)) c.cut_slots.push_back(g.b);
    }
    out.push_back(std::move(c));
  }
  return out;
}

CutResult cut(const PartitionedSurface& p, const CircleRef& c) {
  const EdgeId e = require_edge(p, c);
  CutResult r;
  r.components = cut_components(p, {e});
  if (r.components.size() == 1) {
    auto edges = p.edges();
    edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(e));
    r.surface = PartitionedSurface(p.pieces(), std::move(edges));
  }
  return r;
}

bool is_separating(const PartitionedSurface& p, EdgeId e) {
  return cut_components(p, {e}).size() > 1;
}

namespace {

bool is_bad_side(const SurfaceType& t) {
  return t == SurfaceType{0, 1, 0} || t == SurfaceType{0, 1, 1} || t == SurfaceType{-1, 1, 0};
}

bool bounds_disk(const PartitionedSurface& p, EdgeId e) {
  for (const auto& c : cut_components(p, {e})) {
    if (c.type == SurfaceType{0, 1, 0}) return true;
  }
  return false;
}

bool in_guard_list(const SurfaceType& t) {
  if (t == SurfaceType{1, 0, 0} || t == SurfaceType{-2, 0, 0}) return true;
  if (t.genus == 0 && t.boundary + t.punctures <= 4) return true;
  if (t.genus == -1 && 2 * t.boundary + t.punctures <= 2) return true;
  return false;
}

}  // namespace

bool is_generic_circle(const PartitionedSurface& p, const CircleRef& c) {
  const EdgeId e = require_edge(p, c);
  for (const auto& comp : cut_components(p, {e})) {
    if (is_bad_side(comp.type)) return false;
  }
  return true;
}

bool is_essential_circle(const PartitionedSurface& p, const CircleRef& c) {
  return !bounds_disk(p, require_edge(p, c));
}

bool circles_isotopic_unguarded(const PartitionedSurface& p, const CircleRef& a,
                                const CircleRef& b) {
  if (a == b) return true;
  if (!a.is_edge() && !b.is_edge()) return false;
  if (!a.is_edge()) return circles_isotopic_unguarded(p, b, a);
  if (b.is_edge() && bounds_disk(p, a.edge) && bounds_disk(p, b.edge)) return true;

  std::vector<EdgeId> removed{a.edge};
  if (b.is_edge()) removed.push_back(b.edge);
  const auto& ga = p.edges()[a.edge];
  for (const auto& comp : cut_components(p, removed)) {
    if (comp.type != SurfaceType{0, 2, 0}) continue;
    // The two boundary circles of the annulus must be one side of a and one
    // side of b.
    std::vector<SlotRef> rim = comp.cut_slots;
    for (const auto& s : p.free_slots()) {
      if (comp.pieces.contains(s.piece)) rim.push_back(s);
    }
    if (rim.size() != 2) continue;
    auto side_of_a = [&](const SlotRef& s) { return s == ga.a || s == ga.b; };
    auto side_of_b = [&](const SlotRef& s) {
      if (!b.is_edge()) return s == b.slot;
      const auto& gb = p.edges()[b.edge];
      return s == gb.a || s == gb.b;
    };
    if ((side_of_a(rim[0]) && side_of_b(rim[1])) || (side_of_a(rim[1]) && side_of_b(rim[0]))) {
      return true;
    }
  }
  return false;
}

bool circles_isotopic(const PartitionedSurface& p, const CircleRef& a, const CircleRef& b) {
  for (const CircleRef* c : {&a, &b}) {
    if (c->is_edge()) {
      require_edge(p, *c);
    } else if (!p.has_slot(c->slot) || p.edge_at(c->slot)) {
      throw ModelError(ErrorCode::InvalidModel, "not an ambient boundary slot");
    }
  }
  if (a == b) return true;
  const SurfaceType m = ambient_type(p);
  if (m == SurfaceType{-2, 1, 0}) {
    // Generic two-sided circles fall into exactly two classes: the boundary
    // class (separating) and the nonseparating class.
    auto generic = [&](const CircleRef& c) { return !c.is_edge() || is_generic_circle(p, c); };
    auto separating = [&](const CircleRef& c) {
      return !c.is_edge() || is_separating(p, c.edge);
    };
    if (generic(a) && generic(b)) return separating(a) == separating(b);
    return circles_isotopic_unguarded(p, a, b);
  }
  if (in_guard_list(m) && !(a.is_edge() && b.is_edge())) {
    throw ModelError(ErrorCode::AmbiguousAmbient,
                     "isotopy with boundary circles on ambient " + to_string(m));
  }
  return circles_isotopic_unguarded(p, a, b);
}

PartitionedSurface normalize(const PartitionedSurface& p, const PieceSet& keep) {
  PartitionedSurface cur = p;
  for (;;) {
    bool changed = false;
    for (const auto& piece : cur.pieces()) {
      if (piece.type != SurfaceType{0, 2, 0} || keep.contains(piece.id)) continue;
      const auto e1 = cur.edge_at({piece.id, piece.slots[0]});
      const auto e2 = cur.edge_at({piece.id, piece.slots[1]});
      if (!e1 || !e2) continue;
      const auto& g1 = cur.edges()[*e1];
      const auto& g2 = cur.edges()[*e2];
      if (g1.label || g2.label) continue;
      const SlotRef far1 = cur.other_end(*e1, piece.id);
      const SlotRef far2 = cur.other_end(*e2, piece.id);
      if (far1.piece == far2.piece) continue;
      const EdgeId keep_e = std::min(*e1, *e2);
      const EdgeId drop_e = std::max(*e1, *e2);
      // Far ends keep the orientation of the surviving edge's slots.
      GluingEdge merged{keep_e == *e1 ? far1 : far2, keep_e == *e1 ? far2 : far1,
                        g1.flip != g2.flip, std::nullopt};
      auto edges = cur.edges();
      edges[keep_e] = merged;
      edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(drop_e));
      auto pieces = cur.pieces();
      std::erase_if(pieces, [&](const Piece& x) { return x.id == piece.id; });
      cur = PartitionedSurface(std::move(pieces), std::move(edges));
      changed = true;
      break;
    }
    if (!changed) return cur;
  }
}

Insertion insert_annulus(const PartitionedSurface& p, EdgeId e) {
  if (e >= p.edges().size()) throw ModelError(ErrorCode::NotAnEdge, std::to_string(e));
  const PieceId id = p.fresh_id("ann" + std::to_string(e));
  auto pieces = p.pieces();
  pieces.push_back(Piece{id, SurfaceType{0, 2, 0}, {"1", "2"}});
  auto edges = p.edges();
  const SlotRef far = edges[e].b;
  edges[e].b = SlotRef{id, "1"};
  edges.push_back(GluingEdge{SlotRef{id, "2"}, far, false, edges[e].label});
  return {PartitionedSurface(std::move(pieces), std::move(edges)), id};
}

Insertion insert_collar(const PartitionedSurface& p, const SlotRef& boundary_slot) {
  if (!p.has_slot(boundary_slot) || p.edge_at(boundary_slot)) {
    throw ModelError(ErrorCode::InvalidModel, "not an ambient boundary slot: " +
                                                  to_string(boundary_slot));
  }
  const PieceId id = p.fresh_id("collar_" + boundary_slot.piece + "_" + boundary_slot.slot);
  auto pieces = p.pieces();
  pieces.push_back(Piece{id, SurfaceType{0, 2, 0}, {"1", "2"}});
  auto edges = p.edges();
  edges.push_back(GluingEdge{boundary_slot, SlotRef{id, "2"}, false, std::nullopt});
  return {PartitionedSurface(std::move(pieces), std::move(edges)), id};
}

KleinRefinement refine_klein(const PartitionedSurface& p, const PieceId& k) {
  if (!p.has_piece(k)) {
    throw ModelError(ErrorCode::NotKleinBottleOneHole, "no piece " + k);
  }
  const Piece& old = p.piece(k);
  if (old.type != SurfaceType{-2, 1, 0}) {
    throw ModelError(ErrorCode::NotKleinBottleOneHole, k + " has type " + to_string(old.type));
  }
  const PieceId core = p.fresh_id(k + "_core");
  const PieceId rest = p.fresh_id(k + "_rest");
  std::vector<Piece> pieces;
  for (const auto& x : p.pieces()) {
    if (x.id == k) {
      pieces.push_back(Piece{core, SurfaceType{0, 2, 0}, {"1", "2"}});
      pieces.push_back(Piece{rest, SurfaceType{0, 3, 0}, {"1", "2", "3"}});
    } else {
      pieces.push_back(x);
    }
  }
  const SlotRef old_slot{k, old.slots[0]};
  auto edges = p.edges();
  for (auto& g : edges) {
    if (g.a == old_slot) g.a = SlotRef{rest, "3"};
    if (g.b == old_slot) g.b = SlotRef{rest, "3"};
  }
  const std::string label = "klein-core(" + k + ")";
  edges.push_back(GluingEdge{SlotRef{core, "1"}, SlotRef{rest, "1"}, false, label});
  edges.push_back(GluingEdge{SlotRef{core, "2"}, SlotRef{rest, "2"}, true, label});
  return {PartitionedSurface(std::move(pieces), std::move(edges)), core, rest};
}

}  // namespace geosub
