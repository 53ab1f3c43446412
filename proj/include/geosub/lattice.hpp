#pragma once

// Exact integer linear algebra: Smith normal form and finitely generated
// subgroups of Z^n.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace geosub {

using Integer = mpz_class;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Parses "a b;c d" (rows separated by ';', entries by whitespace or ',').
Matrix parse_matrix(const std::string& text);
std::string format_matrix(const Matrix& m);

Integer determinant(const Matrix& m);

struct SmithForm {
  Matrix d;     // same shape as the input, diagonal d_1 | d_2 | ...
  Matrix u;     // unimodular, rows x rows
  Matrix v;     // unimodular, cols x cols
  Matrix v_inv;
  std::vector<Integer> diagonal;  // nonzero invariant factors
};

/// U * m * V = D. Pivot: smallest nonzero absolute value, ties broken by
/// row-major position.
SmithForm smith_normal_form(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Subgroup of Z^n generated by the rows of `generators`.
struct Lattice {
  std::size_t ambient_rank = 0;
  Matrix generators;

  static Lattice from_rows(std::size_t n, const Matrix& rows);
  static Lattice full(std::size_t n);
};

/// Index in Z^n; nullopt when infinite.
std::optional<Integer> subgroup_index(const Lattice& h);
bool contains(const Lattice& h, const std::vector<Integer>& v);
bool is_sublattice(const Lattice& h, const Lattice& g);
Lattice intersect(const Lattice& a, const Lattice& b);
Lattice sum(const Lattice& a, const Lattice& b);
std::size_t lattice_rank(const Lattice& h);
/// [g : h] for h <= g; nullopt when infinite. Throws NotASubgroup.
std::optional<Integer> relative_index(const Lattice& g, const Lattice& h);
bool lattice_commensurable(const Lattice& a, const Lattice& b);
/// Image under x -> x * pi (pi has ambient_rank rows).
Lattice image(const Lattice& h, const Matrix& pi);
Lattice direct_sum(const Lattice& a, const Lattice& b);
/// Checks [g0 + g1 : h0 + h1] = [g0 : h0][g1 : h1] on the direct sum.
bool verify_index_product(const Lattice& g0, const Lattice& h0, const Lattice& g1,
                          const Lattice& h1);

/// Row basis (Hermite-like, via SNF) of the lattice: rank x n.
Matrix lattice_basis(const Lattice& h);

}  // namespace geosub
