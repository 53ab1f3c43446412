#include "geosub/lattice_checks.hpp"

namespace geosub {

namespace {

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool divides(const Integer& d, const Integer& n) { return n % d == 0; }

}  // namespace

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long bound) {
  std::uniform_int_distribution<long> dist(-bound, bound);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

Matrix random_nonsingular(Rng& rng, std::size_t k, long bound) {
  for (;;) {
    Matrix m = random_matrix(rng, k, k, bound);
    if (determinant(m) != 0) return m;
  }
}

Lattice random_lattice(Rng& rng, std::size_t n, long bound) {
  return Lattice::from_rows(n, random_matrix(rng, pick(rng, 0, n), n, bound));
}

Lattice random_finite_index_sublattice(Rng& rng, const Lattice& g, long bound) {
  const Matrix b = lattice_basis(g);
  if (b.rows() == 0) return Lattice::from_rows(g.ambient_rank, Matrix(0, g.ambient_rank));
  // Small coefficients keep the indices brute-forceable in tests.
  const long c = std::min(bound, 3L);
  return Lattice::from_rows(g.ambient_rank, random_nonsingular(rng, b.rows(), c) * b);
}

Lattice random_sublattice(Rng& rng, const Lattice& g, long bound) {
  const Matrix b = lattice_basis(g);
  const std::size_t k = pick(rng, 0, b.rows() + 1);
  if (k == 0 || b.rows() == 0) return Lattice::from_rows(g.ambient_rank, Matrix(0, g.ambient_rank));
  return Lattice::from_rows(g.ambient_rank, random_matrix(rng, k, b.rows(), std::min(bound, 3L)) * b);
}

bool check_homomorphic_image(Rng& rng, const LatticeCheckConfig& cfg) {
  const std::size_t n = pick(rng, 1, cfg.max_rank);
  const std::size_t m = pick(rng, 1, cfg.max_rank);
  const Lattice g = random_lattice(rng, n, cfg.bound);
  const Lattice h = random_finite_index_sublattice(rng, g, cfg.bound);
  const Matrix pi = random_matrix(rng, n, m, cfg.bound);
  const auto gh = relative_index(g, h);
  const auto img = relative_index(image(g, pi), image(h, pi));
  return gh && img && divides(*img, *gh);
}

bool check_intersection(Rng& rng, const LatticeCheckConfig& cfg) {
  const std::size_t n = pick(rng, 1, cfg.max_rank);
  const Lattice g = random_lattice(rng, n, cfg.bound);
  const Lattice h = random_finite_index_sublattice(rng, g, cfg.bound);
  const Lattice k = random_sublattice(rng, g, cfg.bound);
  const auto gh = relative_index(g, h);
  const auto kk = relative_index(k, intersect(h, k));
  return gh && kk && divides(*kk, *gh);
}

bool check_product_index(Rng& rng, const LatticeCheckConfig& cfg) {
  const std::size_t n0 = pick(rng, 1, cfg.max_rank);
  const std::size_t n1 = pick(rng, 1, cfg.max_rank);
  const Lattice g0 = random_lattice(rng, n0, cfg.bound);
  const Lattice g1 = random_lattice(rng, n1, cfg.bound);
  const Lattice h0 = random_finite_index_sublattice(rng, g0, cfg.bound);
  const Lattice h1 = random_finite_index_sublattice(rng, g1, cfg.bound);
  return verify_index_product(g0, h0, g1, h1);
}

bool check_centralized_sum(Rng& rng, const LatticeCheckConfig& cfg) {
  const std::size_t n = pick(rng, 1, cfg.max_rank);
  const Lattice l = random_lattice(rng, n, cfg.bound);
  const Lattice h0 = random_finite_index_sublattice(rng, l, cfg.bound);
  const Lattice h1 = random_finite_index_sublattice(rng, l, cfg.bound);
  const Lattice k = random_lattice(rng, n, cfg.bound);
  if (!lattice_commensurable(h0, h1)) return false;
  const Lattice s0 = sum(h0, k), s1 = sum(h1, k);
  const Lattice core = sum(intersect(h0, h1), k);
  return lattice_commensurable(s0, s1) && relative_index(s0, core).has_value() &&
         relative_index(s1, core).has_value() && is_sublattice(core, intersect(s0, s1));
}

SemprodConverse semprod_converse_example() {
  const Lattice h0 = Lattice::from_rows(2, Matrix{{1, 0}});
  const Lattice h1 = Lattice::from_rows(2, Matrix{{1, 1}});
  const Lattice k = Lattice::from_rows(2, Matrix{{0, 1}});
  const Lattice z2 = Lattice::full(2);
  SemprodConverse r;
  r.sums_equal_full = relative_index(z2, sum(h0, k)) == Integer(1) &&
                      relative_index(z2, sum(h1, k)) == Integer(1);
  r.intersection_trivial = lattice_rank(intersect(h0, h1)) == 0;
  r.h_commensurable = lattice_commensurable(h0, h1);
  return r;
}

}  // namespace geosub
