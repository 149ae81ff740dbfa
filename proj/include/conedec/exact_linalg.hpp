#pragma once

// Exact integer/rational linear algebra over GMP: determinants, adjugates,
// primitive reduction, dual cones and the cached Gamma bundle used by the
// decomposer to switch between a cone and its dual cheaply.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "conedec/errors.hpp"

namespace conedec {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense matrix stored column-major, so that each column (a cone generator)
/// is a contiguous span.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds a matrix whose j-th column is `columns[j]`.
  static Matrix from_columns(const std::vector<std::vector<T>>& columns) {
    if (columns.empty()) return {};
    Matrix m(columns.front().size(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != m.rows_) throw PreconditionError("ragged column list");
      for (std::size_t i = 0; i < m.rows_; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw PreconditionError("ragged row list");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<T>> tmp;
    for (const auto& r : rows) {
      tmp.emplace_back();
      for (long v : r) tmp.back().push_back(T(v));
    }
    return from_rows(tmp);
  }

  static Matrix from_columns(std::initializer_list<std::initializer_list<long>> columns) {
    std::vector<std::vector<T>> tmp;
    for (const auto& c : columns) {
      tmp.emplace_back();
      for (long v : c) tmp.back().push_back(T(v));
    }
    return from_columns(tmp);
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  [[nodiscard]] std::span<T> column(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  [[nodiscard]] std::span<const T> column(std::size_t c) const {
    return {data_.data() + c * rows_, rows_};
  }

  [[nodiscard]] std::vector<T> column_vector(std::size_t c) const {
    auto s = column(c);
    return {s.begin(), s.end()};
  }

  [[nodiscard]] std::vector<T> row(std::size_t r) const {
    std::vector<T> out(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out[j] = (*this)(r, j);
    return out;
  }

  void set_column(std::size_t c, std::span<const T> values) {
    if (values.size() != rows_) throw PreconditionError("column length mismatch");
    std::copy(values.begin(), values.end(), column(c).begin());
  }

  void negate_column(std::size_t c) {
    for (auto& v : column(c)) v = -v;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_{0};
  std::size_t cols_{0};
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

template <typename T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? " [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, std::span<const Integer> x);
RatVector operator*(const IntMatrix& a, std::span<const Rational> x);
RatMatrix to_rational(const IntMatrix& m);

/// Exact determinant. Cofactor expansion for d <= 3, fraction-free (Bareiss)
/// elimination otherwise. Singular input yields 0.
Integer determinant(const IntMatrix& m);

/// adj(m) with m * adj(m) = det(m) * I.
IntMatrix adjugate(const IntMatrix& m);

/// gcd of absolute values, gcd(0, x) = |x|.
Integer content(std::span<const Integer> v);

/// Divides every column by the gcd of its entries. Throws
/// DegenerateGeneratorError for a zero column.
IntMatrix primitive_reduce(const IntMatrix& m);
bool is_primitive(const IntMatrix& m);

/// Generators of the dual cone: sign(det A) times the columnwise primitive
/// reduction of adj(A)^T. Column j of the result is dual to column j of A.
IntMatrix dual(const IntMatrix& a);

/// Exact solve of a * x = b for a of full column rank. Returns nullopt when b
/// is not in the column space.
std::optional<RatVector> solve(const IntMatrix& a, std::span<const Integer> b);

/// Scales a rational vector by the lcm of its denominators.
IntVector clear_denominators(std::span<const Rational> v);
bool is_integral(std::span<const Rational> v);

/// Cached data (A, det A, A*, det A*, G) with A* G = adj(A)^T, G diagonal.
struct GammaBundle {
  IntMatrix a;
  Integer det_a;
  IntMatrix a_star;
  Integer det_a_star;
  IntVector g;  ///< diagonal of G

  [[nodiscard]] std::size_t dim() const noexcept { return a.cols(); }
  [[nodiscard]] Integer index() const { return abs(det_a); }
  [[nodiscard]] Integer dual_index() const { return abs(det_a_star); }
  /// adj(A), rebuilt from A* and G in O(d^2).
  [[nodiscard]] IntMatrix adjugate() const;

  friend bool operator==(const GammaBundle&, const GammaBundle&) = default;
};

/// Builds the bundle from scratch. `a` must be primitive and nonsingular.
GammaBundle make_gamma_bundle(const IntMatrix& a);

/// The bundle of A*, using G1 = G det(A*) / det(A); no adjugate is computed.
GammaBundle dual_gamma_bundle(const GammaBundle& b);

/// Bundle of A[(i -> gamma)] with gamma = A beta, via the product-form update
/// of the adjugate. beta[i] must be nonzero and gamma integral. gamma is used
/// as is; callers pass a primitive gamma to keep the result primitive.
GammaBundle update_gamma_bundle(const GammaBundle& b, std::size_t i, std::span<const Rational> beta);

/// Bundle of A with column j negated: A* gets column j negated, both
/// determinants and G change sign.
GammaBundle negate_column(const GammaBundle& b, std::size_t j);

/// Checks the defining identities of a bundle (used by tests and debug checks).
bool bundle_consistent(const GammaBundle& b);

}  // namespace conedec
