#pragma once

// Gluing-graph model of an ambient surface: elementary pieces whose boundary
// slots are glued in pairs along circles. Unglued slots are the boundary
// circles of the ambient surface.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "geosub/surface.hpp"

namespace geosub {

using PieceId = std::string;
using PieceSet = std::set<PieceId>;
using EdgeId = std::size_t;

struct SlotRef {
  PieceId piece;
  std::string slot;

  friend bool operator==(const SlotRef&, const SlotRef&) = default;
  friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

std::string to_string(const SlotRef& s);

struct Piece {
  PieceId id;
  SurfaceType type;
  std::vector<std::string> slots;  // one label per boundary circle

  friend bool operator==(const Piece&, const Piece&) = default;
};

struct GluingEdge {
  SlotRef a;
  SlotRef b;
  bool flip = false;  // odd parity: the gluing does not match induced orientations
  std::optional<std::string> label;

  friend bool operator==(const GluingEdge&, const GluingEdge&) = default;
};

/// A circle of the model: either the gluing circle of an edge or an ambient
/// boundary circle sitting at an unglued slot.
struct CircleRef {
  enum class Kind { Edge, AmbientBoundary };

  Kind kind = Kind::Edge;
  EdgeId edge = 0;
  SlotRef slot;

  static CircleRef of_edge(EdgeId e) { return {Kind::Edge, e, {}}; }
  static CircleRef of_boundary(SlotRef s) {
    return {Kind::AmbientBoundary, 0, std::move(s)};
  }
  bool is_edge() const { return kind == Kind::Edge; }

  friend bool operator==(const CircleRef&, const CircleRef&) = default;
  friend auto operator<=>(const CircleRef&, const CircleRef&) = default;
};

class PartitionedSurface {
 public:
  PartitionedSurface() = default;
  /// Validates the model: unique ids and slot labels, slot counts matching
  /// types, every slot glued at most once, no piece glued to itself, and a
  /// connected gluing graph.
  PartitionedSurface(std::vector<Piece> pieces, std::vector<GluingEdge> edges);

  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<GluingEdge>& edges() const { return edges_; }

  bool has_piece(const PieceId& id) const { return index_.contains(id); }
  std::size_t piece_index(const PieceId& id) const;
  const Piece& piece(const PieceId& id) const { return pieces_[piece_index(id)]; }

  std::optional<EdgeId> edge_at(const SlotRef& s) const;
  bool has_slot(const SlotRef& s) const;
  /// Unglued slots in piece order, i.e. the boundary circles of M.
  std::vector<SlotRef> free_slots() const;
  /// Every edge circle followed by every ambient boundary circle.
  std::vector<CircleRef> circles() const;
  /// The piece on the far side of `from` across edge e.
  const SlotRef& other_end(EdgeId e, const PieceId& from) const;

  PieceId fresh_id(const std::string& base) const;

  friend bool operator==(const PartitionedSurface& x, const PartitionedSurface& y) {
    return x.pieces_ == y.pieces_ && x.edges_ == y.edges_;
  }

 private:
  void build_index();

  std::vector<Piece> pieces_;
  std::vector<GluingEdge> edges_;
  std::map<PieceId, std::size_t> index_;
  std::map<SlotRef, EdgeId> slot_edge_;
};

/// Pieces sorted by id, each edge oriented with a < b, edges sorted.
PartitionedSurface canonicalize(const PartitionedSurface& p);

SurfaceType assemble_type(const PartitionedSurface& p, const PieceSet& component);
SurfaceType ambient_type(const PartitionedSurface& p);

struct CutComponent {
  PieceSet pieces;
  SurfaceType type;
  std::vector<SlotRef> cut_slots;  // slots of the cut edges lying in this component
};

struct CutResult {
  PartitionedSurface surface;  // the input with the edges relabeled ambient boundary
  std::vector<CutComponent> components;
};

/// Cut along one edge circle. `surface` is only populated when the cut
/// leaves M connected; components are always listed.
CutResult cut(const PartitionedSurface& p, const CircleRef& c);

/// Components after removing a set of edges, restricted to `pieces` (all
/// pieces when nullopt).
std::vector<CutComponent> cut_components(const PartitionedSurface& p,
                                         const std::vector<EdgeId>& removed,
                                         const std::optional<PieceSet>& pieces = std::nullopt);

bool is_generic_circle(const PartitionedSurface& p, const CircleRef& c);
bool is_essential_circle(const PartitionedSurface& p, const CircleRef& c);
/// True iff cutting along the edge disconnects M.
bool is_separating(const PartitionedSurface& p, EdgeId e);

/// Annulus-chain isotopy of circles. Refuses (AmbiguousAmbient) on the small
/// exceptional ambients when an ambient boundary circle is involved. On the
/// Klein bottle with one hole, generic circles are compared by separability.
bool circles_isotopic(const PartitionedSurface& p, const CircleRef& a, const CircleRef& b);

/// Same relation without the ambient guard; used internally where the
/// ambient has already been validated.
bool circles_isotopic_unguarded(const PartitionedSurface& p, const CircleRef& a,
                                const CircleRef& b);

/// Merges every unpunctured annulus piece whose two slots are glued along
/// unlabeled edges into a single edge, unless the piece is in `keep` or the
/// merge would glue a piece to itself. Idempotent.
PartitionedSurface normalize(const PartitionedSurface& p, const PieceSet& keep = {});

struct Insertion {
  PartitionedSurface surface;
  PieceId piece;
};

/// Replaces edge e by an annulus piece: edge e keeps its index and now ends at
/// slot "1" of the annulus; a new unflipped edge from slot "2" is appended.
Insertion insert_annulus(const PartitionedSurface& p, EdgeId e);

/// Adds a collar annulus at an ambient boundary slot. The slot becomes glued
/// to the collar's slot "2"; the collar's slot "1" is the new boundary circle.
Insertion insert_collar(const PartitionedSurface& p, const SlotRef& boundary_slot);

struct KleinRefinement {
  PartitionedSurface surface;
  PieceId core;  // annulus around the nonseparating two-sided circle
  PieceId rest;  // the complementary pantalon
};

/// Replaces a Klein bottle with one hole by a core annulus glued to a
/// pantalon of type III along two slots, one of them flipped. Both new edges
/// carry the label "klein-core(<id>)".
KleinRefinement refine_klein(const PartitionedSurface& p, const PieceId& k);

}  // namespace geosub
