#pragma once

// Subsurfaces N of M given as sets of pieces: essential / generic /
// injective predicates, the kernel of the inclusion-induced map, virtual
// abelianness and basic circles.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geosub/isotopy.hpp"
#include "geosub/partition.hpp"

namespace geosub {

struct SubsurfaceSelection {
  PartitionedSurface ambient;
  PieceSet selected;
};

struct Component {
  PieceSet pieces;
  SurfaceType type;
  std::vector<EdgeId> boundary;  // edges with exactly one end in the component
};

/// Connected components of N (induced gluing graph). Boundary edges are
/// listed in edge order.
std::vector<Component> components(const SubsurfaceSelection& n);
/// Components of an arbitrary piece set of p.
std::vector<Component> components_of_set(const PartitionedSurface& p, const PieceSet& set);
/// Components of the closure of M \ N.
std::vector<Component> complement_components(const SubsurfaceSelection& n);
std::vector<EdgeId> boundary_edges(const SubsurfaceSelection& n);

bool is_essential(const SubsurfaceSelection& n);
bool is_generic_subsurface(const SubsurfaceSelection& n);

struct ExteriorCylinder {
  PieceSet pieces;  // the complement component
  EdgeId b;
  EdgeId b_prime;
};

std::vector<ExteriorCylinder> exterior_cylinders(const SubsurfaceSelection& n);

struct KernelDescription {
  std::vector<CircleRef> nongeneric_boundary;   // a_i
  std::vector<CircleRef> nongeneric_meridians;  // c_i
  std::vector<std::pair<CircleRef, CircleRef>> exterior_cylinder_pairs;
  int rank = 0;
};

KernelDescription kernel_description(const SubsurfaceSelection& n);
bool is_injective(const SubsurfaceSelection& n);

/// Injectivity read off the complement (disk with < 2 punctures, Möbius
/// strip, or exterior cylinder). Same guards as is_injective.
bool is_injective_by_complement(const SubsurfaceSelection& n);

struct VaVerdict {
  bool virtually_abelian = true;
  std::optional<Component> offending;  // first component outside the list
};

VaVerdict virtually_abelian_verdict(const SubsurfaceSelection& n);
bool is_virtually_abelian(const SubsurfaceSelection& n);

struct BasicCircles {
  PartitionedSurface ambient;  // refined ambient the circles live in
  PieceSet selected;           // N inside the refined ambient
  std::vector<IsotopyClass> circles;
  int rank = 0;
  std::vector<std::pair<CircleRef, CircleRef>> exterior_cylinder_alternatives;  // (kept, dropped)
  std::vector<PieceId> refined_klein;  // Klein pieces replaced by refine_klein
};

BasicCircles basic_circles(const SubsurfaceSelection& n);

/// Refines every Klein-bottle-with-one-hole component of the given
/// selections so that its nonseparating two-sided circle is an edge. All
/// selections must live in `ambient`; they are rewritten in place.
PartitionedSurface refine_klein_components(const PartitionedSurface& ambient,
                                           std::vector<PieceSet*> selections,
                                           std::vector<PieceId>* refined = nullptr);

/// An edge inside a Klein-bottle-with-one-hole component that is
/// nonseparating in it, i.e. a representative of its core circle.
std::optional<EdgeId> klein_core_edge(const PartitionedSurface& p, const PieceSet& component);

/// An unpunctured annulus piece of the component whose slots are both glued
/// to core edges, when present.
std::optional<PieceId> klein_core_piece(const PartitionedSurface& p, const PieceSet& component);

/// Meridian of an annulus component: its first boundary edge.
CircleRef meridian(const Component& c);

}  // namespace geosub
