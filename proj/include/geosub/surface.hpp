#pragma once

// Topological types of compact connected surfaces and the facts about their
// mapping class groups that the rest of the library relies on.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace geosub {

class PartitionedSurface;

/// A compact connected surface M_{g,r}^s. Nonorientable surfaces carry a
/// negative genus: genus -k is the connected sum of k projective planes.
struct SurfaceType {
  int genus = 0;
  int boundary = 0;
  int punctures = 0;

  bool orientable() const { return genus >= 0; }
  bool closed() const { return boundary == 0; }

  friend bool operator==(const SurfaceType&, const SurfaceType&) = default;
  friend auto operator<=>(const SurfaceType&, const SurfaceType&) = default;
};

std::ostream& operator<<(std::ostream& os, const SurfaceType& t);
std::string to_string(const SurfaceType& t);

int euler_characteristic(const SurfaceType& t);

/// Inverse of euler_characteristic for a given orientability; nullopt when no
/// surface has these invariants.
std::optional<SurfaceType> type_from_invariants(int chi, bool orientable,
                                                int boundary, int punctures);

enum class PieceTag {
  PantalonI,
  PantalonII,
  PantalonIII,
  SkirtI,
  SkirtII,
  Annulus,
  PuncturedAnnulus,
  MobiusStrip,
  KleinBottleOneHole,
  Disk,
  Torus,
  KleinBottle,
  Other,
};

struct PieceClass {
  PieceTag tag = PieceTag::Other;
  int disk_punctures = 0;  // only meaningful for PieceTag::Disk

  friend bool operator==(const PieceClass&, const PieceClass&) = default;
};

std::string to_string(PieceClass c);

PieceClass classify_piece(const SurfaceType& t);

/// Pantalons of all three types, both skirts, annuli and Klein bottles with
/// one hole: the components allowed in a virtually abelian geometric subgroup.
bool is_va_component_type(const SurfaceType& t);
bool is_pantalon_or_skirt(const SurfaceType& t);

/// M admits a generic two-sided circle, i.e. M is neither M_{0,r}^s with
/// 2r+s <= 3 nor M_{-1,r}^s with 2r+s <= 2.
bool admits_generic_circle(const SurfaceType& t);

struct McgProfile {
  bool trivial = false;
  std::optional<std::int64_t> finite_order;
  std::optional<bool> virtually_abelian;
  std::optional<int> abelian_rank;
  /// Index of the free abelian twist subgroup, when the group is known to be
  /// virtually free abelian of rank abelian_rank.
  std::optional<int> abelian_index;
  std::optional<std::string> name;
};

McgProfile mcg_profile(const SurfaceType& t);

bool ps_decomposition_exists(const SurfaceType& t);

/// Canonical decomposition of t into pantalons and skirts. Surfaces of Euler
/// characteristic -1 (and the annulus) are returned as a single piece since
/// decomposing them would need a piece glued to itself.
PartitionedSurface build_ps_partition(const SurfaceType& t);

}  // namespace geosub
