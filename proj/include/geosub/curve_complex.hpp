#pragma once

// Partition-representable simplices of the complex of two-sided curves, the
// reduced subcomplex, the retraction onto it and stabilizer checks.

#include <optional>
#include <string>
#include <vector>

#include "geosub/commensurability.hpp"
#include "geosub/isotopy.hpp"
#include "geosub/subsurface.hpp"

namespace geosub {

/// A simplex is a set of vertex classes, each named by its smallest edge.
using Simplex = std::vector<EdgeId>;

/// Generic edge classes not isotopic to a boundary circle of M, by
/// representative edge.
std::vector<IsotopyClass> eligible_vertices(const PartitionedSurface& p);

/// Validates and canonicalizes: every edge eligible, classes pairwise
/// distinct, result is the sorted list of class representatives.
Simplex make_simplex(const PartitionedSurface& p, const std::vector<EdgeId>& edges);

struct ReducedFlag {
  bool reduced = true;
  std::vector<EdgeId> offending_vertices;
};

ReducedFlag is_reduced(const PartitionedSurface& p, const Simplex& s);

Simplex phi(const PartitionedSurface& p, const Simplex& s);

struct SigmaSubsurfaces {
  PartitionedSurface ambient;  // p with the neighbourhood annuli inserted
  std::vector<PieceSet> selections;
};

/// M_sigma for several simplices at once, realized in one common refinement
/// of p so that they can be compared.
SigmaSubsurfaces m_sigma_joint(const PartitionedSurface& p, const std::vector<Simplex>& simplices);
SubsurfaceSelection m_sigma(const PartitionedSurface& p, const Simplex& s);

bool stab_commensurable(const PartitionedSurface& p, const Simplex& s0, const Simplex& s1);

struct NcsPair {
  Simplex first;
  Simplex second;
  bool commensurable = false;
};

struct NcsReport {
  std::size_t vertices = 0;
  std::size_t simplices = 0;
  std::size_t pairs = 0;
  std::vector<NcsPair> violations;  // distinct simplices with commensurable stabilizers
  std::vector<NcsPair> all_pairs;   // every tested pair (for graph output)
  std::vector<Simplex> enumerated;
  double seconds = 0;
};

/// All simplices with at most max_dim+1 vertices (reduced ones only unless
/// include_nonreduced), pairwise stabilizer checks.
NcsReport ncs_check(const PartitionedSurface& p, int max_dim, bool include_nonreduced = false);

std::vector<Simplex> enumerate_simplices(const PartitionedSurface& p, int max_dim,
                                         bool reduced_only);

/// DOT text of the commensurability relation found by a sweep.
std::string ncs_graph(const PartitionedSurface& p, const NcsReport& r);

std::string simplex_name(const PartitionedSurface& p, const Simplex& s);

}  // namespace geosub
