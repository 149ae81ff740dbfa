#pragma once

// Brute-force ground truth over integer boxes. Membership here is decided by
// adjugate-based linear forms scanned one coordinate line at a time; nothing
// is shared with cone_core's solve-based contains().
//
// Identities between generating functions of simplicial cones are checked
// through a directional expansion: pick an integer vector l with l.b != 0 for
// every generator b in play, flip each generator with l.b < 0 (negate it,
// toggle its open flag, negate the cone's sign). The flipped cones all lie in
// {l.m > 0} plus the apex, their indicator sums are the coefficients of the
// Laurent expansions in direction l, and two rational functions agree iff
// these coefficients agree at every lattice point.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "conedec/cone_core.hpp"
#include "conedec/exact_linalg.hpp"

namespace conedec {

class OracleBudgetError : public std::runtime_error {
 public:
  explicit OracleBudgetError(const std::string& what) : std::runtime_error(what) {}
};

struct ParallelepipedSet {
  std::vector<IntVector> points;
};

/// Integer points m with A^{-1} m in [0,1)^d, scanned over the bounding box
/// of the parallelepiped's vertices. Throws OracleBudgetError when |det a|
/// exceeds `max_det`.
ParallelepipedSet enumerate_parallelepiped(const IntMatrix& a, const Integer& max_det = 10000);

struct VerifyFailure {
  IntVector point;
  std::int64_t expected = 0;
  std::int64_t got = 0;
};

struct VerifyReport {
  bool passed = true;
  int box_radius = 0;
  std::uint64_t points_checked = 0;
  std::uint64_t points_exempted = 0;
  std::optional<VerifyFailure> first_failure;
};

enum class Expansion {
  plain,        ///< compare indicator functions as they are
  directional,  ///< compare Laurent coefficients in direction l
};

struct CheckOptions {
  int radius = 6;
  Expansion expansion = Expansion::directional;
  std::optional<IntVector> direction;  ///< l for the directional expansion; chosen automatically if absent
  bool skip_lower_dim = false;         ///< plain mode only: exempt points on facet hyperplanes
};

struct SignedHalfOpenCone {
  int sign = 1;
  HalfOpenCone cone;
};

/// Box radius used by default for dimension d.
int default_box_radius(std::size_t d);

/// An integer l with l.b > 0 for every column b of `aligned` and l.b != 0 for
/// every column of every matrix in `others`. Deterministic.
IntVector aligned_direction(const IntMatrix& aligned, std::span<const IntMatrix> others);

/// Compares sum_lhs sign [m in C] with sum_rhs sign [m in C] over the box.
VerifyReport series_check(std::span<const SignedHalfOpenCone> lhs, std::span<const SignedHalfOpenCone> rhs,
                          const CheckOptions& options);

/// sum eps_i [m in C(B_i)] against [m in C(target)]. Without skip_lower_dim
/// the comparison is the directional one with l aligned to the target, so the
/// right side is the plain indicator of C(target). With skip_lower_dim the
/// plain indicators are compared off the facet hyperplanes of all cones.
VerifyReport signed_indicator_check(const IntMatrix& target, std::span<const SignedCone> parts, int box_radius,
                                    bool skip_lower_dim);

VerifyReport signed_indicator_check(const IntMatrix& target, std::span<const SignedCone> parts,
                                    const CheckOptions& options);

/// Every box point of C(target) lies in exactly one part, every other point
/// in none.
VerifyReport partition_check(const IntMatrix& target, std::span<const HalfOpenCone> parts, int box_radius);

struct Lemma33Report {
  VerifyReport single_open;    ///< C^{i}(A) = -C(A[i -> -1])
  VerifyReport open_set;       ///< C^theta(A) = (-1)^|theta| C(A[theta -> -1])
  VerifyReport line_and_face;  ///< C(A) + C(A[i -> -1]) = C(A with column i deleted)
  [[nodiscard]] bool passed() const {
    return single_open.passed && open_set.passed && line_and_face.passed;
  }
};

/// The three half-open/closed conversion identities for column i and open
/// set theta (theta[j] marks column j), compared coefficientwise.
Lemma33Report lemma33_check(const IntMatrix& a, std::size_t i, const std::vector<bool>& theta, int box_radius);

/// Number of box points in the closed cone generated by the columns of a.
std::uint64_t brute_force_cone_box_count(const IntMatrix& a, int box_radius);

/// Same for a half-open cone.
std::uint64_t brute_force_cone_box_count(const HalfOpenCone& c, int box_radius);

}  // namespace conedec
