#include "geosub/lattice.hpp"

#include <sstream>
#include <utility>

#include "geosub/error.hpp"

namespace geosub {

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ModelError(ErrorCode::DimensionMismatch, "ragged matrix");
    for (long x : r) data_.emplace_back(x);
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw ModelError(ErrorCode::DimensionMismatch, "matrix product");
  Matrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

Matrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Integer>> rows;
  std::stringstream all(text);
  std::string row;
  while (std::getline(all, row, ';')) {
    for (auto& ch : row)
      if (ch == ',') ch = ' ';
    std::stringstream rs(row);
    std::vector<Integer> r;
    std::string tok;
    while (rs >> tok) {
      Integer x;
      if (x.set_str(tok, 10) != 0) {
        throw ModelError(ErrorCode::SyntaxError, "bad matrix entry '" + tok + "'");
      }
      r.push_back(x);
    }
    if (!r.empty()) rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ModelError(ErrorCode::SyntaxError, "empty matrix");
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw ModelError(ErrorCode::DimensionMismatch, "ragged matrix");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::string format_matrix(const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ";";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += " ";
      out += m(i, j).get_str();
    }
  }
  return out;
}

Integer determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw ModelError(ErrorCode::DimensionMismatch, "determinant");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  Matrix a = m;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j));
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

SmithForm smith_normal_form(const Matrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  Matrix a = m, u = Matrix::identity(R), v = Matrix::identity(C), vi = Matrix::identity(C);
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < C; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < R; ++c) std::swap(u(i, c), u(j, c));
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < R; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < C; ++r) std::swap(v(r, i), v(r, j));
    for (std::size_t c = 0; c < C; ++c) std::swap(vi(i, c), vi(j, c));
  };
  // row_i -= q * row_t
  auto row_op = [&](std::size_t i, std::size_t t, const Integer& q) {
    for (std::size_t c = 0; c < C; ++c) a(i, c) -= q * a(t, c);
    for (std::size_t c = 0; c < R; ++c) u(i, c) -= q * u(t, c);
  };
  // col_j -= q * col_t
  auto col_op = [&](std::size_t j, std::size_t t, const Integer& q) {
    for (std::size_t r = 0; r < R; ++r) a(r, j) -= q * a(r, t);
    for (std::size_t r = 0; r < C; ++r) v(r, j) -= q * v(r, t);
    for (std::size_t c = 0; c < C; ++c) vi(t, c) += q * vi(j, c);
  };

  const std::size_t steps = std::min(R, C);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      bool found = false;
      std::size_t pr = 0, pc = 0;
      Integer best;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j) {
          if (a(i, j) == 0) continue;
          Integer mag = abs(a(i, j));
          if (!found || mag < best) {
            found = true;
            best = mag;
            pr = i;
            pc = j;
          }
        }
      if (!found) break;
      swap_rows(t, pr);
      swap_cols(t, pc);
      bool dirty = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        row_op(i, t, q);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        col_op(j, t, q);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < R && divides; ++i)
        for (std::size_t j = t + 1; j < C; ++j) {
          if (a(i, j) % a(t, t) != 0) {
            // row_t += row_i
            row_op(t, i, -1);
            divides = false;
            break;
          }
        }
      if (!divides) continue;
      if (a(t, t) < 0) {
        for (std::size_t c = 0; c < C; ++c) a(t, c) = -a(t, c);
        for (std::size_t c = 0; c < R; ++c) u(t, c) = -u(t, c);
      }
      break;
    }
  }
  SmithForm s{a, u, v, vi, {}};
  for (std::size_t t = 0; t < steps && a(t, t) != 0; ++t) s.diagonal.push_back(a(t, t));
  return s;
}

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return smith_normal_form(m).diagonal.size();
}

Lattice Lattice::from_rows(std::size_t n, const Matrix& rows) {
  if (rows.rows() != 0 && rows.cols() != n) {
    throw ModelError(ErrorCode::DimensionMismatch, "generator width");
  }
  return Lattice{n, rows.rows() == 0 ? Matrix(0, n) : rows};
}

Lattice Lattice::full(std::size_t n) { return Lattice{n, Matrix::identity(n)}; }

Matrix lattice_basis(const Lattice& h) {
  const std::size_t n = h.ambient_rank;
  if (h.generators.rows() == 0) return Matrix(0, n);
  const SmithForm s = smith_normal_form(h.generators);
  Matrix b(s.diagonal.size(), n);
  for (std::size_t i = 0; i < s.diagonal.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = s.diagonal[i] * s.v_inv(i, j);
  return b;
}

std::size_t lattice_rank(const Lattice& h) { return rank(h.generators); }

std::optional<Integer> subgroup_index(const Lattice& h) {
  if (h.generators.rows() == 0) {
    if (h.ambient_rank == 0) return Integer(1);
    return std::nullopt;
  }
  const SmithForm s = smith_normal_form(h.generators);
  if (s.diagonal.size() < h.ambient_rank) return std::nullopt;
  Integer index = 1;
  for (const auto& d : s.diagonal) index *= d;
  return index;
}

namespace {

void same_rank(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank != b.ambient_rank) {
    throw ModelError(ErrorCode::DimensionMismatch, "lattices in different ambient ranks");
  }
}

// Coordinates of v with respect to lattice_basis(h), or nullopt.
std::optional<std::vector<Integer>> coordinates(const SmithForm& s, std::size_t n,
                                                const std::vector<Integer>& v) {
  std::vector<Integer> w(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) w[j] += v[k] * s.v(k, j);
  std::vector<Integer> x;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < s.diagonal.size()) {
      if (w[i] % s.diagonal[i] != 0) return std::nullopt;
      x.push_back(w[i] / s.diagonal[i]);
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  return x;
}

std::vector<Integer> row(const Matrix& m, std::size_t i) {
  std::vector<Integer> r(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) r[j] = m(i, j);
  return r;
}

}  // namespace

bool contains(const Lattice& h, const std::vector<Integer>& v) {
  if (v.size() != h.ambient_rank) throw ModelError(ErrorCode::DimensionMismatch, "vector width");
  if (h.generators.rows() == 0) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }
  return coordinates(smith_normal_form(h.generators), h.ambient_rank, v).has_value();
}

bool is_sublattice(const Lattice& h, const Lattice& g) {
  same_rank(h, g);
  for (std::size_t i = 0; i < h.generators.rows(); ++i) {
    if (!contains(g, row(h.generators, i))) return false;
  }
  return true;
}

Lattice sum(const Lattice& a, const Lattice& b) {
  same_rank(a, b);
  Matrix m(a.generators.rows() + b.generators.rows(), a.ambient_rank);
  for (std::size_t i = 0; i < a.generators.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = a.generators(i, j);
  for (std::size_t i = 0; i < b.generators.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(a.generators.rows() + i, j) = b.generators(i, j);
  return Lattice{a.ambient_rank, m};
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  same_rank(a, b);
  const std::size_t n = a.ambient_rank;
  const Matrix A = lattice_basis(a), B = lattice_basis(b);
  if (A.rows() == 0 || B.rows() == 0) return Lattice{n, Matrix(0, n)};
  // x A = y B  <=>  [x y] [A; -B] = 0
  Matrix c(A.rows() + B.rows(), n);
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = A(i, j);
  for (std::size_t i = 0; i < B.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) c(A.rows() + i, j) = -B(i, j);
  const SmithForm s = smith_normal_form(c);
  const std::size_t r = s.diagonal.size();
  Matrix gens(c.rows() - r, n);
  for (std::size_t k = r; k < c.rows(); ++k)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < A.rows(); ++i) gens(k - r, j) += s.u(k, i) * A(i, j);
  return Lattice{n, gens};
}

std::optional<Integer> relative_index(const Lattice& g, const Lattice& h) {
  same_rank(g, h);
  if (!is_sublattice(h, g)) throw ModelError(ErrorCode::NotASubgroup, "h is not contained in g");
  const std::size_t n = g.ambient_rank;
  const std::size_t rg = lattice_rank(g);
  if (lattice_rank(h) < rg) return std::nullopt;
  if (rg == 0) return Integer(1);
  const SmithForm sg = smith_normal_form(g.generators);
  const Matrix hb = lattice_basis(h);
  Matrix x(rg, rg);
  for (std::size_t i = 0; i < rg; ++i) {
    auto c = coordinates(sg, n, row(hb, i));
    for (std::size_t j = 0; j < rg; ++j) x(i, j) = (*c)[j];
  }
  return abs(determinant(x));
}

bool lattice_commensurable(const Lattice& a, const Lattice& b) {
  same_rank(a, b);
  const auto ra = lattice_rank(a);
  return ra == lattice_rank(b) && ra == lattice_rank(sum(a, b));
}

Lattice image(const Lattice& h, const Matrix& pi) {
  if (pi.rows() != h.ambient_rank) throw ModelError(ErrorCode::DimensionMismatch, "projection");
  if (h.generators.rows() == 0) return Lattice{pi.cols(), Matrix(0, pi.cols())};
  return Lattice{pi.cols(), h.generators * pi};
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
  const std::size_t n = a.ambient_rank + b.ambient_rank;
  Matrix m(a.generators.rows() + b.generators.rows(), n);
  for (std::size_t i = 0; i < a.generators.rows(); ++i)
    for (std::size_t j = 0; j < a.ambient_rank; ++j) m(i, j) = a.generators(i, j);
  for (std::size_t i = 0; i < b.generators.rows(); ++i)
    for (std::size_t j = 0; j < b.ambient_rank; ++j)
      m(a.generators.rows() + i, a.ambient_rank + j) = b.generators(i, j);
  return Lattice{n, m};
}

bool verify_index_product(const Lattice& g0, const Lattice& h0, const Lattice& g1,
                          const Lattice& h1) {
  const auto i0 = relative_index(g0, h0);
  const auto i1 = relative_index(g1, h1);
  const auto prod = relative_index(direct_sum(g0, g1), direct_sum(h0, h1));
  if (!i0 || !i1) return !prod.has_value();
  return prod.has_value() && *prod == *i0 * *i1;
}

}  // namespace geosub
