#include "conedec/exact_linalg.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

namespace conedec {

namespace {

void require_square(const IntMatrix& m, const char* what) {
  if (!m.square()) throw PreconditionError(std::string(what) + ": matrix is not square");
}

// Row-major scratch for elimination; column-major storage makes row swaps
// awkward.
using Rows = std::vector<IntVector>;

Rows to_rows(const IntMatrix& m) {
  Rows r(m.rows(), IntVector(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  return r;
}

Integer det3(const IntMatrix& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

Integer bareiss_det(Rows a) {
  const std::size_t n = a.size();
  Integer prev = 1;
  int sign = 1;
  Integer t;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a[p][k]) == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        t = a[k][k] * a[i][j];
        t -= a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign > 0 ? Integer(a[n - 1][n - 1]) : Integer(-a[n - 1][n - 1]);
}

IntMatrix minor_matrix(const IntMatrix& m, std::size_t skip_row, std::size_t skip_col) {
  const std::size_t n = m.rows();
  IntMatrix out(n - 1, n - 1);
  for (std::size_t i = 0, oi = 0; i < n; ++i) {
    if (i == skip_row) continue;
    for (std::size_t j = 0, oj = 0; j < n; ++j) {
      if (j == skip_col) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

IntMatrix cofactor_adjugate(const IntMatrix& m) {
  const std::size_t n = m.rows();
  IntMatrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Integer c = determinant(minor_matrix(m, j, i));
      adj(i, j) = ((i + j) % 2 == 0) ? c : Integer(-c);
    }
  return adj;
}

// Fraction-free Gauss-Jordan on [m | I]. Returns nullopt for singular input.
std::optional<IntMatrix> jordan_bareiss_adjugate(const IntMatrix& m) {
  const std::size_t n = m.rows();
  const std::size_t w = 2 * n;
  Rows a(n, IntVector(w));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
    a[i][n + i] = 1;
  }
  Integer prev = 1;
  int sign = 1;
  Integer t;
  for (std::size_t k = 0; k < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a[p][k]) == 0) ++p;
      if (p == n) return std::nullopt;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < w; ++j) {
        if (j == k) continue;
        t = a[k][k] * a[i][j];
        t -= a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  // Right block is det(PA) * A^{-1}; det(PA) = sign * det(A).
  IntMatrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) adj(i, j) = sign > 0 ? a[i][n + j] : Integer(-a[i][n + j]);
  return adj;
}

// Shared tail of bundle construction: given A, det(A) and adj(A), derive A*,
// G and det(A*).
GammaBundle finish_bundle(IntMatrix a, Integer det_a, const IntMatrix& adj) {
  const std::size_t n = a.rows();
  const int s = sgn(det_a);
  GammaBundle b;
  b.a_star = IntMatrix(n, n);
  b.g.resize(n);
  Integer prod_g = 1;
  for (std::size_t r = 0; r < n; ++r) {
    // Column r of adj(A)^T is row r of adj(A).
    Integer g = 0;
    for (std::size_t c = 0; c < n; ++c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), adj(r, c).get_mpz_t());
    for (std::size_t c = 0; c < n; ++c) {
      mpz_divexact(b.a_star(c, r).get_mpz_t(), adj(r, c).get_mpz_t(), g.get_mpz_t());
      if (s < 0) b.a_star(c, r) = -b.a_star(c, r);
    }
    b.g[r] = s > 0 ? g : Integer(-g);
    prod_g *= b.g[r];
  }
  // adj(A)^T = A* G, and det(adj A) = det(A)^{d-1}.
  Integer p;
  mpz_pow_ui(p.get_mpz_t(), det_a.get_mpz_t(), n - 1);
  mpz_divexact(b.det_a_star.get_mpz_t(), p.get_mpz_t(), prod_g.get_mpz_t());
  b.a = std::move(a);
  b.det_a = std::move(det_a);
  return b;
}

}  // namespace

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw PreconditionError("matrix product: shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Integer& bkj = b(k, j);
      if (sgn(bkj) == 0) continue;
      for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) += a(i, k) * bkj;
    }
  return out;
}

IntVector operator*(const IntMatrix& a, std::span<const Integer> x) {
  if (a.cols() != x.size()) throw PreconditionError("matrix-vector product: shape mismatch");
  IntVector out(a.rows());
  for (std::size_t k = 0; k < a.cols(); ++k)
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] += a(i, k) * x[k];
  return out;
}

RatVector operator*(const IntMatrix& a, std::span<const Rational> x) {
  if (a.cols() != x.size()) throw PreconditionError("matrix-vector product: shape mismatch");
  RatVector out(a.rows());
  for (std::size_t k = 0; k < a.cols(); ++k) {
    if (sgn(x[k]) == 0) continue;
    for (std::size_t i = 0; i < a.rows(); ++i) out[i] += a(i, k) * x[k];
  }
  return out;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, j);
  return out;
}

Integer determinant(const IntMatrix& m) {
  require_square(m, "determinant");
  switch (m.rows()) {
    case 0:
      return 1;
    case 1:
      return m(0, 0);
    case 2:
      return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return det3(m);
    default:
      return bareiss_det(to_rows(m));
  }
}

IntMatrix adjugate(const IntMatrix& m) {
  require_square(m, "adjugate");
  const std::size_t n = m.rows();
  if (n == 0) return {};
  if (n == 1) return IntMatrix::identity(1);
  if (n == 2) {
    IntMatrix adj(2, 2);
    adj(0, 0) = m(1, 1);
    adj(0, 1) = -m(0, 1);
    adj(1, 0) = -m(1, 0);
    adj(1, 1) = m(0, 0);
    return adj;
  }
  if (n == 3) return cofactor_adjugate(m);
  if (auto adj = jordan_bareiss_adjugate(m)) return *std::move(adj);
  // Singular: adj is still defined (rank <= 1), fall back to cofactors.
  return cofactor_adjugate(m);
}

Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntMatrix primitive_reduce(const IntMatrix& m) {
  IntMatrix out = m;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Integer g = content(m.column(j));
    if (sgn(g) == 0)
      throw DegenerateGeneratorError("primitive_reduce: column " + std::to_string(j) + " is zero");
    if (g == 1) continue;
    for (auto& v : out.column(j)) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

bool is_primitive(const IntMatrix& m) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (content(m.column(j)) != 1) return false;
  return true;
}

IntMatrix dual(const IntMatrix& a) {
  require_square(a, "dual");
  const Integer det = determinant(a);
  if (sgn(det) == 0) throw SingularMatrixError("dual: singular generator matrix");
  IntMatrix d = primitive_reduce(adjugate(a).transpose());
  if (sgn(det) < 0)
    for (std::size_t j = 0; j < d.cols(); ++j) d.negate_column(j);
  return d;
}

std::optional<RatVector> solve(const IntMatrix& a, std::span<const Integer> b) {
  const std::size_t rows = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != rows) throw PreconditionError("solve: right-hand side length mismatch");
  std::vector<RatVector> m(rows, RatVector(n + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    m[i][n] = b[i];
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < n; ++c, ++r) {
    std::size_t p = r;
    while (p < rows && sgn(m[p][c]) == 0) ++p;
    if (p == rows) throw SingularMatrixError("solve: matrix does not have full column rank");
    std::swap(m[r], m[p]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[r][j];
    }
  }
  for (std::size_t i = n; i < rows; ++i)
    if (sgn(m[i][n]) != 0) return std::nullopt;
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  return x;
}

IntVector clear_denominators(std::span<const Rational> v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num() * (l / v[i].get_den());
  return out;
}

bool is_integral(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.get_den() == 1; });
}

IntMatrix GammaBundle::adjugate() const {
  const std::size_t n = dim();
  IntMatrix adj(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) adj(r, c) = g[r] * a_star(c, r);
  return adj;
}

GammaBundle make_gamma_bundle(const IntMatrix& a) {
  require_square(a, "make_gamma_bundle");
  Integer det = determinant(a);
  if (sgn(det) == 0) throw SingularMatrixError("make_gamma_bundle: singular generator matrix");
  if (!is_primitive(a)) throw PreconditionError("make_gamma_bundle: generators are not primitive");
  const IntMatrix adj = adjugate(a);
  return finish_bundle(a, std::move(det), adj);
}

GammaBundle dual_gamma_bundle(const GammaBundle& b) {
  GammaBundle out;
  out.a = b.a_star;
  out.det_a = b.det_a_star;
  out.a_star = b.a;
  out.det_a_star = b.det_a;
  out.g.resize(b.g.size());
  Integer t;
  for (std::size_t i = 0; i < b.g.size(); ++i) {
    t = b.g[i] * b.det_a_star;
    if (!mpz_divisible_p(t.get_mpz_t(), b.det_a.get_mpz_t()))
      throw PreconditionError("dual_gamma_bundle: inconsistent bundle");
    mpz_divexact(out.g[i].get_mpz_t(), t.get_mpz_t(), b.det_a.get_mpz_t());
  }
  return out;
}

GammaBundle update_gamma_bundle(const GammaBundle& b, std::size_t i, std::span<const Rational> beta) {
  const std::size_t n = b.dim();
  if (beta.size() != n || i >= n) throw PreconditionError("update_gamma_bundle: bad index or length");
  if (sgn(beta[i]) == 0) throw SingularMatrixError("update_gamma_bundle: k_i = 0 makes the matrix singular");

  const RatVector gamma_q = b.a * beta;
  if (!is_integral(gamma_q)) throw PreconditionError("update_gamma_bundle: gamma = A beta is not integral");

  // beta = num / den with a common denominator.
  Integer den = 1;
  for (const auto& q : beta) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  IntVector num(n);
  for (std::size_t r = 0; r < n; ++r) num[r] = beta[r].get_num() * (den / beta[r].get_den());

  const IntMatrix adj = b.adjugate();
  IntMatrix adj_b(n, n);
  Integer t;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (r == i) {
        adj_b(r, c) = adj(i, c);
        continue;
      }
      t = num[i] * adj(r, c);
      t -= num[r] * adj(i, c);
      if (!mpz_divisible_p(t.get_mpz_t(), den.get_mpz_t()))
        throw PreconditionError("update_gamma_bundle: adjugate update is not integral");
      mpz_divexact(adj_b(r, c).get_mpz_t(), t.get_mpz_t(), den.get_mpz_t());
    }
  }

  IntMatrix a = b.a;
  IntVector gamma(n);
  for (std::size_t r = 0; r < n; ++r) gamma[r] = gamma_q[r].get_num();
  a.set_column(i, gamma);

  t = num[i] * b.det_a;
  Integer det_b;
  mpz_divexact(det_b.get_mpz_t(), t.get_mpz_t(), den.get_mpz_t());
  return finish_bundle(std::move(a), std::move(det_b), adj_b);
}

GammaBundle negate_column(const GammaBundle& b, std::size_t j) {
  GammaBundle out = b;
  out.a.negate_column(j);
  out.a_star.negate_column(j);
  out.det_a = -out.det_a;
  out.det_a_star = -out.det_a_star;
  for (auto& x : out.g) x = -x;
  return out;
}

bool bundle_consistent(const GammaBundle& b) {
  if (b.a.rows() != b.a.cols() || b.a_star.rows() != b.a.rows() || b.g.size() != b.a.cols()) return false;
  if (determinant(b.a) != b.det_a || determinant(b.a_star) != b.det_a_star) return false;
  const IntMatrix adj_t = adjugate(b.a).transpose();
  const std::size_t n = b.dim();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (b.a_star(r, c) * b.g[c] != adj_t(r, c)) return false;
  for (std::size_t c = 0; c < n; ++c)
    if (sgn(b.g[c]) != sgn(b.det_a)) return false;
  return true;
}

}  // namespace conedec
