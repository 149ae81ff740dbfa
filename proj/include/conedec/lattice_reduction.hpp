#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "conedec/exact_linalg.hpp"

namespace conedec {

enum class Norm { one, infinity };

/// Default Lovasz parameter.
inline const Rational kDefaultLllDelta{99, 100};

/// An LLL-reduced basis; vectors[i] is the i-th basis vector.
struct ReducedBasis {
  std::vector<RatVector> vectors;
  [[nodiscard]] std::size_t dim() const noexcept { return vectors.size(); }
};

/// Exact integral LLL (fraction-free Gram-Schmidt via the integers d_i and
/// lambda_ij). Reduces `basis` in place; vectors must be linearly independent.
/// delta must lie in (1/4, 1).
void lll_reduce_integral(std::vector<IntVector>& basis, const Rational& delta);

/// LLL on the lattice spanned by the columns of a nonsingular rational matrix.
ReducedBasis lll_reduce(const RatMatrix& basis, const Rational& delta = kDefaultLllDelta);

/// True when `rb` is size-reduced and satisfies the Lovasz condition for delta.
/// Uses a rational Gram-Schmidt independent of the reduction itself.
bool is_lll_reduced(const ReducedBasis& rb, const Rational& delta);

Rational norm_of(std::span<const Rational> v, Norm norm);

/// Index of the basis vector of smallest norm; ties go to the lowest index.
std::size_t select_direction_index(const ReducedBasis& rb, Norm norm);
RatVector select_direction(const ReducedBasis& rb, Norm norm);

/// Replaces each k by k - round(k), rounding to nearest with ties toward
/// zero, so every entry ends up in [-1/2, 1/2]. Returns nullopt when the
/// result is the zero vector (the input was integral).
std::optional<RatVector> round_adjust(std::span<const Rational> beta);

/// Decomposition direction: gamma = A beta, gamma primitive.
struct Direction {
  RatVector beta;
  IntVector gamma;
};

struct PickOptions {
  Norm norm = Norm::one;
  bool adjust = true;
  Rational delta = kDefaultLllDelta;
};

/// LLL-reduced basis of L(A^{-1}) for the bundle's A, computed from adj(A).
ReducedBasis reduced_inverse_basis(const GammaBundle& bundle, const Rational& delta);

/// Picks a short nonzero, non-integral beta in L(A^{-1}): reduce, order the
/// basis by the chosen norm, optionally round-adjust, and fall back to the
/// next basis vector when a candidate is unusable. gamma is primitivized and
/// beta scaled with it. Requires ind(A) > 1.
Direction pick_beta(const GammaBundle& bundle, const PickOptions& options);

}  // namespace conedec
