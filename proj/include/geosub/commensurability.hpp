#pragma once

// Commensurability of geometric subgroups of two subsurfaces of the same
// ambient surface, and commensurator descriptors.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geosub/subsurface.hpp"

namespace geosub {

/// A pair of subsurfaces of one shared ambient.
struct SelectionPair {
  PartitionedSurface ambient;
  PieceSet n0;
  PieceSet n1;
};

struct ComponentMatch {
  PieceSet first;   // component of n0
  PieceSet second;  // component of n1
};

/// Components of n0 and n1 that are isotopic in M: annuli with isotopic
/// meridians, or homeomorphic components with the same boundary classes
/// whose common part is not just unpunctured annuli. Greedy matching in
/// component order.
std::vector<ComponentMatch> isotopic_components(const SubsurfaceSelection& n0,
                                                const SubsurfaceSelection& n1);

/// Removes one matched common component from both sides and adds regular
/// neighbourhoods of its boundary circles where required. Returns false when
/// there is nothing to strip.
bool strip_one_common(SelectionPair& pair, ComponentMatch* stripped = nullptr);
/// Strips until no common components are left.
SelectionPair strip_common(const SubsurfaceSelection& n0, const SubsurfaceSelection& n1,
                           std::vector<ComponentMatch>* stripped = nullptr);

enum class KleinMode { Neighbourhood, Complement };
std::string to_string(KleinMode m);

struct KleinMatch {
  PieceSet klein;    // the Klein bottle with one hole
  PieceSet partner;  // matching component on the opposite side
  KleinMode mode;
  int side = 0;  // side holding the Klein component
};

struct KleinReduction {
  bool changed = false;
  std::vector<KleinMatch> matches;
  std::optional<PieceSet> unmatched;  // a Klein component with no partner
};

/// Replaces each Klein-bottle-with-one-hole component on `side` by the
/// neighbourhood of its core circle, plus an annulus at its boundary when
/// that boundary is not parallel to the rest of the side.
KleinReduction klein_reduce(SelectionPair& pair, int side);

namespace obstruction {
inline constexpr const char* NonVaComponent = "non-VA-component";
inline constexpr const char* KleinUnmatched = "klein-unmatched";
inline constexpr const char* BasicCirclesDiffer = "basic-circles-differ";
inline constexpr const char* BoundaryMismatch = "boundary-mismatch";
}  // namespace obstruction

struct Certificate {
  BasicCircles basic_circles_0;
  BasicCircles basic_circles_1;
  std::vector<ComponentMatch> stripped_common;
  std::vector<KleinMatch> klein_matches;
};

struct CommensurabilityVerdict {
  bool commensurable = false;
  std::optional<Certificate> certificate;
  std::optional<std::string> obstruction;
  SelectionPair reduced;  // the pair after stripping and Klein reduction
  std::vector<ComponentMatch> stripped_common;
  std::vector<KleinMatch> klein_matches;
};

struct CommensurabilityOptions {
  bool cross_check = true;
};

CommensurabilityVerdict commensurable(const SubsurfaceSelection& n0,
                                      const SubsurfaceSelection& n1,
                                      const CommensurabilityOptions& opts = {});

/// Decision via the geometric characterization on a pair without common
/// components and Klein components: component types, the union S, and the
/// annulus conditions on its boundary. nullopt means "commensurable".
std::optional<std::string> geometric_criterion(const SelectionPair& reduced);

struct StabStarDescriptor {
  std::vector<PieceSet> special_components;
  std::vector<IsotopyClass> curve_set;
  PartitionedSurface ambient;
};

StabStarDescriptor stab_star_descriptor(const SubsurfaceSelection& n);

enum class CommensuratorKind { StabOnly, StabSemidirectZ2 };
std::string to_string(CommensuratorKind k);

struct CommensuratorCase {
  CommensuratorKind kind = CommensuratorKind::StabOnly;
  std::optional<bool> direct_product;
};

CommensuratorCase commensurator_case(const SubsurfaceSelection& n);

}  // namespace geosub
