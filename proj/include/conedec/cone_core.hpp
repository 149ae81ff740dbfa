#pragma once

// Cone decomposition identities: half-open/closed conversion, the closed-form
// primal step, the dual (indicator mod lower-dimensional cones) step, and the
// point-set partitions behind them.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "conedec/exact_linalg.hpp"

namespace conedec {

/// Simplicial cone { sum x_j g_j : x_j >= 0, x_j > 0 for j in open_set }.
/// `generators` is d x n with n <= d and full column rank; n < d only for the
/// lower-dimensional faces produced by face_decomposition.
struct HalfOpenCone {
  IntMatrix generators;
  std::vector<bool> open;  ///< open[j] marks facet j (coefficient of g_j) as strict

  static HalfOpenCone closed(IntMatrix g) {
    const std::size_t n = g.cols();
    return {std::move(g), std::vector<bool>(n, false)};
  }
  [[nodiscard]] std::size_t open_count() const;
  friend bool operator==(const HalfOpenCone&, const HalfOpenCone&) = default;
};

struct SignedCone {
  int sign = 1;
  IntMatrix generators;
  friend bool operator==(const SignedCone&, const SignedCone&) = default;
};

/// |det| of the primitive reduction.
Integer cone_index(const IntMatrix& a);

/// Exact membership by solving A x = m over the rationals.
bool contains(const HalfOpenCone& c, std::span<const Integer> m);

/// One child of a decomposition step, described relative to the parent:
/// column `replaced` becomes gamma (or -gamma), the columns in `negated` are
/// multiplied by -1, and the child carries `sign`.
struct ChildSpec {
  int sign = 1;
  std::size_t replaced = 0;
  bool negate_gamma = false;
  std::vector<std::size_t> negated;
};

/// Children of the closed-form primal step for coefficient vector beta.
/// Positive coefficients are taken first in ascending column order, then the
/// negative ones; zero coefficients produce nothing.
std::vector<ChildSpec> primal_children(std::span<const Rational> beta);

/// Children of the dual step: (sgn k_i, A[(i -> gamma)]) for every k_i != 0.
/// Requires at least one positive coefficient.
std::vector<ChildSpec> dual_children(std::span<const Rational> beta);

IntMatrix apply_child(const IntMatrix& a, const ChildSpec& spec, std::span<const Integer> gamma);

/// gamma = A beta scaled to a primitive integer vector. Throws when A beta is
/// zero or not integral.
IntVector primitive_gamma(const IntMatrix& a, std::span<const Rational> beta);

std::vector<SignedCone> primal_step(const IntMatrix& a, std::span<const Rational> beta);
std::vector<SignedCone> dual_step(const IntMatrix& a, std::span<const Rational> beta);

/// sigma(C^theta(A)) = (-1)^|theta| sigma(C(A[(theta -> -1)])).
SignedCone half_open_to_closed(const HalfOpenCone& c);

/// Half-open form of primal_step: every piece carries sign +1.
std::vector<HalfOpenCone> half_open_primal_step(const IntMatrix& a, std::span<const Rational> beta);

/// Partition of C(A) by gamma = sum_{i<r} k_i alpha_i, all k_i > 0:
/// pieces C^{[i-1]}(A[(i -> gamma)]) for i = 1..r (1-based).
std::vector<HalfOpenCone> interior_partition(const IntMatrix& a, std::span<const Rational> coefficients);

/// Faces F_i = C^{[i-1]}(A with column i deleted), i = 1..r-1 (1-based), and
/// the remaining half-open cone C^{[r-1]}(A).
std::pair<std::vector<HalfOpenCone>, HalfOpenCone> face_decomposition(const IntMatrix& a, std::size_t r);

}  // namespace conedec
