#include "geosub/surface.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

#include "geosub/error.hpp"
#include "geosub/partition.hpp"

namespace geosub {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoDecomposition: return "NoDecomposition";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NotAnEdge: return "NotAnEdge";
    case ErrorCode::AmbiguousAmbient: return "AmbiguousAmbient";
    case ErrorCode::NotKleinBottleOneHole: return "NotKleinBottleOneHole";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::UnknownPiece: return "UnknownPiece";
    case ErrorCode::SelectionIsAll: return "SelectionIsAll";
    case ErrorCode::NotEssential: return "NotEssential";
    case ErrorCode::NotGeneric: return "NotGeneric";
    case ErrorCode::NotVirtuallyAbelian: return "NotVirtuallyAbelian";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::AmbientExcluded: return "AmbientExcluded";
    case ErrorCode::ForbiddenComponents: return "ForbiddenComponents";
    case ErrorCode::DifferentAmbient: return "DifferentAmbient";
    case ErrorCode::CommonComponentOverlap: return "CommonComponentOverlap";
    case ErrorCode::KleinCoreUnrepresentable: return "KleinCoreUnrepresentable";
    case ErrorCode::InvalidSimplex: return "InvalidSimplex";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::DoubleGlue: return "DoubleGlue";
  }
  return "Unknown";
}

std::ostream& operator<<(std::ostream& os, const SurfaceType& t) {
  return os << "(" << t.genus << "," << t.boundary << "," << t.punctures << ")";
}

std::string to_string(const SurfaceType& t) {
  std::ostringstream os;
  os << t;
  return os.str();
}

int euler_characteristic(const SurfaceType& t) {
  if (t.genus >= 0) return 2 - 2 * t.genus - t.boundary - t.punctures;
  return 2 + t.genus - t.boundary - t.punctures;
}

std::optional<SurfaceType> type_from_invariants(int chi, bool orientable, int boundary,
                                                int punctures) {
  const int deficit = 2 - chi - boundary - punctures;
  if (orientable) {
    if (deficit < 0 || deficit % 2 != 0) return std::nullopt;
    return SurfaceType{deficit / 2, boundary, punctures};
  }
  if (deficit < 1) return std::nullopt;
  return SurfaceType{-deficit, boundary, punctures};
}

PieceClass classify_piece(const SurfaceType& t) {
  const auto [g, r, s] = t;
  if (g == 0) {
    if (r == 1 && s == 2) return {PieceTag::PantalonI};
    if (r == 2 && s == 1) return {PieceTag::PantalonII};
    if (r == 3 && s == 0) return {PieceTag::PantalonIII};
    if (r == 2 && s == 0) return {PieceTag::Annulus};
    if (r == 2 && s >= 2) return {PieceTag::PuncturedAnnulus};
    if (r == 1) return {PieceTag::Disk, s};
    return {PieceTag::Other};
  }
  if (g == -1) {
    if (r == 1 && s == 1) return {PieceTag::SkirtI};
    if (r == 2 && s == 0) return {PieceTag::SkirtII};
    if (r == 1 && s == 0) return {PieceTag::MobiusStrip};
    return {PieceTag::Other};
  }
  if (g == -2 && r == 1 && s == 0) return {PieceTag::KleinBottleOneHole};
  if (g == -2 && r == 0 && s == 0) return {PieceTag::KleinBottle};
  if (g == 1 && r == 0 && s == 0) return {PieceTag::Torus};
  return {PieceTag::Other};
}

std::string to_string(PieceClass c) {
  switch (c.tag) {
    case PieceTag::PantalonI: return "PantalonI";
    case PieceTag::PantalonII: return "PantalonII";
    case PieceTag::PantalonIII: return "PantalonIII";
    case PieceTag::SkirtI: return "SkirtI";
    case PieceTag::SkirtII: return "SkirtII";
    case PieceTag::Annulus: return "Annulus";
    case PieceTag::PuncturedAnnulus: return "PuncturedAnnulus";
    case PieceTag::MobiusStrip: return "MobiusStrip";
    case PieceTag::KleinBottleOneHole: return "KleinBottleOneHole";
    case PieceTag::Disk: return "Disk(" + std::to_string(c.disk_punctures) + ")";
    case PieceTag::Torus: return "Torus";
    case PieceTag::KleinBottle: return "KleinBottle";
    case PieceTag::Other: return "Other";
  }
  return "Other";
}

bool is_pantalon_or_skirt(const SurfaceType& t) {
  switch (classify_piece(t).tag) {
    case PieceTag::PantalonI:
    case PieceTag::PantalonII:
    case PieceTag::PantalonIII:
    case PieceTag::SkirtI:
    case PieceTag::SkirtII:
      return true;
    default:
      return false;
  }
}

bool is_va_component_type(const SurfaceType& t) {
  const auto tag = classify_piece(t).tag;
  return is_pantalon_or_skirt(t) || tag == PieceTag::Annulus ||
         tag == PieceTag::KleinBottleOneHole;
}

bool admits_generic_circle(const SurfaceType& t) {
  if (t.genus == 0 && 2 * t.boundary + t.punctures <= 3) return false;
  if (t.genus == -1 && 2 * t.boundary + t.punctures <= 2) return false;
  return true;
}

McgProfile mcg_profile(const SurfaceType& t) {
  McgProfile m;
  const auto [g, r, s] = t;
  const bool trivial = (g == 0 && r <= 1 && s <= 1) || (g == -1 && s == 0 && r <= 1);
  if (trivial) {
    m.trivial = true;
    m.finite_order = 1;
    m.virtually_abelian = true;
    m.abelian_rank = 0;
    m.name = "trivial";
    return m;
  }
  auto free_abelian = [&m](int rank) {
    m.virtually_abelian = true;
    m.abelian_rank = rank;
    m.abelian_index = 1;
    m.name = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
  };
  switch (classify_piece(t).tag) {
    case PieceTag::Annulus: free_abelian(1); return m;
    case PieceTag::PantalonII: free_abelian(2); return m;  // also the punctured annulus
    case PieceTag::PantalonIII: free_abelian(3); return m;
    case PieceTag::SkirtII: free_abelian(2); return m;
    case PieceTag::PantalonI:
    case PieceTag::SkirtI:
      free_abelian(1);
      return m;
    case PieceTag::KleinBottleOneHole:
      m.virtually_abelian = true;
      m.abelian_rank = 2;
      m.abelian_index = 2;
      return m;
    case PieceTag::KleinBottle:
      m.finite_order = 4;
      m.virtually_abelian = true;
      m.abelian_rank = 0;
      m.name = "Z2xZ2";
      return m;
    default:
      break;
  }
  if (g == 1 && r == 0 && s <= 1) {
    m.virtually_abelian = false;
    m.name = "SL2Z";
    return m;
  }
  if (g == 0 && r == 1) {
    m.virtually_abelian = false;  // s >= 3 here; braid groups on >= 3 strings
    m.name = "braid_" + std::to_string(s);
    return m;
  }
  if (g == -1 && r == 0 && (s == 1 || s == 2)) {
    m.finite_order = s == 1 ? 2 : 8;
    m.virtually_abelian = true;
    m.abelian_rank = 0;
    m.name = s == 1 ? "Z2" : "D4";
    return m;
  }
  return m;
}

bool ps_decomposition_exists(const SurfaceType& t) {
  const auto [g, r, s] = t;
  if (g >= 0) return 2 * g + r + s > 2 && !(g == 0 && r == 0 && s == 3);
  return r + s - g > 2 && !(g == -1 && r == 0 && s == 2);
}

namespace {

enum class Leaf { Boundary, Puncture, Crosscap };

// A pantalon-shaped slot layout before leaves are absorbed into its type.
struct ProtoPiece {
  std::vector<int> link_slots;  // slot positions glued to other pieces
  std::vector<Leaf> leaves;
};

Piece realize(const PieceId& id, const ProtoPiece& pp) {
  int boundary = 0;
  int punctures = 0;
  int crosscaps = 0;
  for (Leaf l : pp.leaves) {
    if (l == Leaf::Boundary) ++boundary;
    if (l == Leaf::Puncture) ++punctures;
    if (l == Leaf::Crosscap) ++crosscaps;
  }
  const int r = static_cast<int>(pp.link_slots.size()) + boundary;
  Piece p{id, SurfaceType{-crosscaps, r, punctures}, {}};
  for (int i = 1; i <= r; ++i) p.slots.push_back(std::to_string(i));
  return p;
}

}  // namespace

PartitionedSurface build_ps_partition(const SurfaceType& t) {
  const int chi = euler_characteristic(t);
  const auto tag = classify_piece(t).tag;
  const bool small_piece = chi == -1 || tag == PieceTag::Annulus;
  if (!ps_decomposition_exists(t) && !(small_piece && (is_va_component_type(t) ||
                                                       tag == PieceTag::Annulus))) {
    throw ModelError(ErrorCode::NoDecomposition, "no pantalon-skirt decomposition of " +
                                                     to_string(t));
  }
  if (small_piece) {
    Piece p{"P1", t, {}};
    for (int i = 1; i <= t.boundary; ++i) p.slots.push_back(std::to_string(i));
    return PartitionedSurface({p}, {});
  }

  // Reduce to an orientable genus-h surface with leaves: boundary circles,
  // punctures, and one or two crosscaps absorbed into skirts.
  int handles = t.genus;
  int crosscaps = 0;
  if (t.genus < 0) {
    const int k = -t.genus;
    crosscaps = (k % 2 == 1) ? 1 : 2;
    handles = (k - crosscaps) / 2;
  }
  std::vector<Leaf> leaves;
  for (int i = 0; i < t.boundary; ++i) leaves.push_back(Leaf::Boundary);
  for (int i = 0; i < t.punctures; ++i) leaves.push_back(Leaf::Puncture);

  // Each proto piece has three slot positions 0..2; links are (piece, pos) pairs.
  std::vector<ProtoPiece> protos;
  struct Link {
    std::size_t pa;
    int sa;
    std::size_t pb;
    int sb;
  };
  std::vector<Link> links;

  if (handles == 0) {
    // Linear chain on n leaves; crosscaps sit at the two ends of the chain.
    std::vector<Leaf> seq;
    if (crosscaps >= 1) seq.push_back(Leaf::Crosscap);
    seq.insert(seq.end(), leaves.begin(), leaves.end());
    if (crosscaps == 2) seq.push_back(Leaf::Crosscap);
    const std::size_t n = seq.size();
    const std::size_t count = n - 2;
    protos.resize(count);
    protos[0].leaves = {seq[0], seq[1]};
    for (std::size_t i = 1; i + 1 < count; ++i) protos[i].leaves = {seq[i + 1]};
    protos[count - 1].leaves.push_back(seq[n - 2]);
    protos[count - 1].leaves.push_back(seq[n - 1]);
    for (std::size_t i = 0; i + 1 < count; ++i) links.push_back({i, 1, i + 1, 0});
  } else {
    // Ring of (handles - 1) handle blocks and one pantalon per leaf; closing
    // the ring contributes the last handle.
    std::vector<Leaf> ring_leaves = leaves;
    for (int i = 0; i < crosscaps; ++i) ring_leaves.push_back(Leaf::Crosscap);
    struct Segment {
      std::size_t in_piece;
      std::size_t out_piece;
    };
    std::vector<Segment> segments;
    for (int h = 0; h + 1 < handles; ++h) {
      const std::size_t x = protos.size();
      protos.push_back({});
      protos.push_back({});
      links.push_back({x, 0, x + 1, 0});
      links.push_back({x, 1, x + 1, 1});
      segments.push_back({x, x + 1});
    }
    for (Leaf l : ring_leaves) {
      const std::size_t x = protos.size();
      protos.push_back({});
      protos[x].leaves = {l};
      segments.push_back({x, x});
    }
    // in-slot of a handle block is position 2 of its first piece, out-slot is
    // position 2 of its second; leaf pantalons use positions 0 (in) and 1 (out).
    auto out_slot = [&](const Segment& s) { return s.in_piece == s.out_piece ? 1 : 2; };
    auto in_slot = [&](const Segment& s) { return s.in_piece == s.out_piece ? 0 : 2; };
    for (std::size_t i = 0; i < segments.size(); ++i) {
      const auto& cur = segments[i];
      const auto& nxt = segments[(i + 1) % segments.size()];
      links.push_back({cur.out_piece, out_slot(cur), nxt.in_piece, in_slot(nxt)});
    }
  }

  // Slot positions used by links, per proto; leaves occupy the remaining ones.
  std::vector<std::vector<int>> used(protos.size());
  for (const auto& l : links) {
    used[l.pa].push_back(l.sa);
    used[l.pb].push_back(l.sb);
  }
  std::vector<Piece> pieces;
  // position -> slot label within the realized piece
  std::vector<std::map<int, std::string>> label(protos.size());
  for (std::size_t i = 0; i < protos.size(); ++i) {
    protos[i].link_slots = used[i];
    Piece p = realize("P" + std::to_string(i + 1), protos[i]);
    // Links take the lowest labels in position order; boundary leaves follow.
    std::vector<int> positions = used[i];
    std::sort(positions.begin(), positions.end());
    for (std::size_t j = 0; j < positions.size(); ++j) {
      label[i][positions[j]] = p.slots[j];
    }
    pieces.push_back(std::move(p));
  }
  std::vector<GluingEdge> edges;
  for (const auto& l : links) {
    edges.push_back({SlotRef{pieces[l.pa].id, label[l.pa].at(l.sa)},
                     SlotRef{pieces[l.pb].id, label[l.pb].at(l.sb)}, false, std::nullopt});
  }
  return PartitionedSurface(std::move(pieces), std::move(edges));
}

}  // namespace geosub
