#pragma once

// Randomized instances of the subgroup-index facts, checked on lattices.

#include <random>

#include "geosub/lattice.hpp"

namespace geosub {

using Rng = std::mt19937_64;

/// rows x cols, entries uniform in [-bound, bound].
Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound);
/// Nonsingular k x k matrix with entries in [-bound, bound].
Matrix random_nonsingular(Rng& rng, std::size_t k, long bound);
/// Random lattice in Z^n with at most n generators.
Lattice random_lattice(Rng& rng, std::size_t n, long bound);
/// Finite-index sublattice of g (generated by a nonsingular combination of
/// a basis of g).
Lattice random_finite_index_sublattice(Rng& rng, const Lattice& g, long bound);
/// Arbitrary sublattice of g.
Lattice random_sublattice(Rng& rng, const Lattice& g, long bound);

struct LatticeCheckConfig {
  std::size_t max_rank = 4;
  long bound = 10;
};

// Each check draws one instance and returns whether the fact holds on it.
bool check_homomorphic_image(Rng& rng, const LatticeCheckConfig& cfg = {});
bool check_intersection(Rng& rng, const LatticeCheckConfig& cfg = {});
bool check_product_index(Rng& rng, const LatticeCheckConfig& cfg = {});
bool check_centralized_sum(Rng& rng, const LatticeCheckConfig& cfg = {});

struct SemprodConverse {
  bool sums_equal_full = false;   // H0 + K = H1 + K = Z^2
  bool intersection_trivial = false;
  bool h_commensurable = true;    // H0 vs H1
};
/// H0 = <a>, H1 = <ab>, K = <b> in Z^2.
SemprodConverse semprod_converse_example();

}  // namespace geosub
