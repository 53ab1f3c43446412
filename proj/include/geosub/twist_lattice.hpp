#pragma once

// Free abelian twist lattices attached to subsurfaces, computed with the
// exact lattice layer independently of the combinatorial predicates.

#include "geosub/lattice.hpp"
#include "geosub/subsurface.hpp"

namespace geosub {

/// Free rank of the product of the component twist groups modulo the
/// exterior-cylinder identifications and the non-generic boundary twists.
int twist_lattice_rank(const SubsurfaceSelection& n);

/// Relation matrix of the boundary and meridian twists of N mapped to the
/// isotopy classes of M (a zero row for a twist that is trivial in M).
Matrix kernel_relation_matrix(const SubsurfaceSelection& n);

/// Rank of the kernel of the map described by kernel_relation_matrix.
int kernel_rank_oracle(const SubsurfaceSelection& n);

}  // namespace geosub
