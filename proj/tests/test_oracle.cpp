#include <doctest.h>

#include <algorithm>

#include "conedec/cone_core.hpp"
#include "conedec/oracle.hpp"
#include "support.hpp"

using namespace conedec;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::vector<IntVector> sorted(std::vector<IntVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

const IntMatrix kTwoByTwo = IntMatrix::from_columns({{1, 0}, {1, 2}});

}  // namespace

TEST_CASE("parallelepiped points") {
  CHECK(enumerate_parallelepiped(IntMatrix::identity(3)).points == std::vector<IntVector>{iv({0, 0, 0})});
  CHECK(sorted(enumerate_parallelepiped(kTwoByTwo).points) == std::vector<IntVector>{iv({0, 0}), iv({1, 1})});
  const auto axis = enumerate_parallelepiped(IntMatrix::from_columns({{1, 0}, {0, 7}})).points;
  REQUIRE(axis.size() == 7);
  for (long k = 0; k < 7; ++k) CHECK(axis[static_cast<std::size_t>(k)] == iv({0, k}));
}

TEST_CASE("parallelepiped of a 3x3 matrix") {
  // Frozen from a fractions-based scan of the bounding box.
  const IntMatrix a = IntMatrix::from_columns({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
  const std::vector<IntVector> expected{
      iv({0, 0, 0}), iv({1, 1, 1}), iv({1, 1, 2}), iv({1, 2, 1}), iv({1, 2, 2}), iv({1, 2, 3}),
      iv({1, 2, 4}), iv({1, 3, 2}), iv({1, 3, 3}), iv({1, 3, 4}), iv({2, 2, 1}), iv({2, 2, 2}),
      iv({2, 2, 3}), iv({2, 3, 1}), iv({2, 3, 2}), iv({2, 3, 3}), iv({2, 3, 4}), iv({2, 4, 4})};
  CHECK(sorted(enumerate_parallelepiped(a).points) == expected);
}

TEST_CASE("parallelepiped size equals |det| on random matrices") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = 2 + t % 3;
    const IntMatrix a = random_primitive(d, 8, rng);
    const Integer det = abs(determinant(a));
    if (det > 5000) continue;
    CHECK(Integer(enumerate_parallelepiped(a).points.size()) == det);
  }
}

TEST_CASE("parallelepiped budget") {
  const IntMatrix big = IntMatrix::from_columns({{1, 0}, {0, 20001}});
  CHECK_THROWS_AS(enumerate_parallelepiped(big), OracleBudgetError);
  CHECK(enumerate_parallelepiped(big, 30000).points.size() == 20001);
}

TEST_CASE("box counts") {
  CHECK(brute_force_cone_box_count(IntMatrix::identity(2), 2) == 9);
  CHECK(brute_force_cone_box_count(kTwoByTwo, 2) == 7);
  CHECK(brute_force_cone_box_count(kTwoByTwo, 6) == 37);
  CHECK(brute_force_cone_box_count(IntMatrix::identity(1), 10) == 11);
  CHECK(brute_force_cone_box_count(IntMatrix::from_columns({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}}), 4) == 43);
}

TEST_CASE("oracle membership agrees with the solve-based membership") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 30; ++t) {
    const std::size_t d = 2 + t % 3;
    const std::size_t n = t % 4 == 0 ? d - 1 : d;
    IntMatrix g(d, n);
    auto full_rank = [](const IntMatrix& m) {
      try {
        return solve(m, m.column(0)).has_value();
      } catch (const SingularMatrixError&) {
        return false;
      }
    };
    do {
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < d; ++i) g(i, j) = uniform_entry(rng, 3);
    } while (!full_rank(g));
    HalfOpenCone c = HalfOpenCone::closed(g);
    for (std::size_t j = 0; j < n; ++j) c.open[j] = uniform_entry(rng, 1) > 0;
    const int r = d == 4 ? 2 : 3;
    std::uint64_t expected = 0;
    IntVector m(d);
    std::vector<long> idx(d, -r);
    for (;;) {
      for (std::size_t k = 0; k < d; ++k) m[k] = idx[k];
      expected += contains(c, m) ? 1 : 0;
      std::size_t k = d;
      while (k > 0 && idx[k - 1] == r) idx[--k] = -r;
      if (k == 0) break;
      ++idx[k - 1];
    }
    CHECK(brute_force_cone_box_count(c, r) == expected);
  }
}

TEST_CASE("signed check on trivial and corrupted input") {
  const std::vector<SignedCone> id{{1, IntMatrix::identity(2)}};
  CHECK(signed_indicator_check(IntMatrix::identity(2), id, 4, false).passed);

  auto parts = primal_step(kTwoByTwo, RatVector{Rational(1, 2), Rational(1, 2)});
  REQUIRE(signed_indicator_check(kTwoByTwo, parts, 6, false).passed);
  parts[1].sign = -parts[1].sign;
  const VerifyReport bad = signed_indicator_check(kTwoByTwo, parts, 6, false);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.first_failure);
  CHECK(bad.first_failure->expected != bad.first_failure->got);
}

TEST_CASE("plain indicators do not satisfy the primal step identity") {
  // At the origin both pieces contain 0 and the signs cancel: 1 - 1 = 0,
  // while the target contains it. The identity holds for the series, which
  // the directional comparison checks.
  const auto parts = primal_step(kTwoByTwo, RatVector{Rational(1, 2), Rational(1, 2)});
  CheckOptions plain;
  plain.expansion = Expansion::plain;
  plain.radius = 6;
  const VerifyReport r = signed_indicator_check(kTwoByTwo, parts, plain);
  CHECK_FALSE(r.passed);
  CHECK(brute_force_cone_box_count(parts[0].generators, 0) == 1);
  CHECK(brute_force_cone_box_count(parts[1].generators, 0) == 1);
  CHECK(signed_indicator_check(kTwoByTwo, parts, 6, false).passed);
}

TEST_CASE("skip_lower_dim exempts facet hyperplanes") {
  // The dual step agrees with the target off the hyperplanes; the primal
  // step does not, its second piece reaches outside the target.
  const RatVector half{Rational(1, 2), Rational(1, 2)};
  const VerifyReport r = signed_indicator_check(kTwoByTwo, dual_step(kTwoByTwo, half), 6, true);
  CHECK(r.passed);
  CHECK_FALSE(signed_indicator_check(kTwoByTwo, primal_step(kTwoByTwo, half), 6, true).passed);
  CHECK(r.points_exempted > 0);
  CHECK(r.points_checked + r.points_exempted == 169);
}

TEST_CASE("partition check detects a double cover") {
  auto parts = interior_partition(IntMatrix::identity(2), RatVector{Rational(1), Rational(1)});
  REQUIRE(partition_check(IntMatrix::identity(2), parts, 6).passed);
  parts[1].open[0] = false;
  const VerifyReport r = partition_check(IntMatrix::identity(2), parts, 6);
  CHECK_FALSE(r.passed);
  REQUIRE(r.first_failure);
  CHECK(r.first_failure->got == 2);
}

TEST_CASE("conversion identities in one dimension") {
  // [x >= 0] + [x <= 0] over [-5, 5] counts 6 + 6, the face {0} counts 1:
  // the plain indicators disagree, the series agree.
  const IntMatrix pos = IntMatrix::identity(1);
  const IntMatrix neg = IntMatrix::from_columns({{-1}});
  CHECK(brute_force_cone_box_count(pos, 5) + brute_force_cone_box_count(neg, 5) == 12);
  CHECK(brute_force_cone_box_count(IntMatrix(1, 0), 5) == 1);
  const Lemma33Report r = lemma33_check(pos, 0, {true}, 5);
  CHECK(r.single_open.passed);
  CHECK(r.open_set.passed);
  CHECK(r.line_and_face.passed);
}

TEST_CASE("conversion identities in two and three dimensions") {
  CHECK(lemma33_check(IntMatrix::identity(2), 0, {true, false}, 5).passed());
  CHECK(lemma33_check(IntMatrix::identity(2), 1, {true, true}, 5).passed());
  std::mt19937_64 rng(43);
  for (int t = 0; t < 10; ++t) {
    const IntMatrix a = random_primitive(3, 5, rng);
    const std::vector<bool> theta{t % 2 == 0, t % 3 == 0, true};
    CHECK(lemma33_check(a, static_cast<std::size_t>(t) % 3, theta, 4).passed());
  }
}

TEST_CASE("aligned direction is positive on the aligned cone") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 20; ++t) {
    const IntMatrix a = random_primitive(3, 9, rng);
    const IntMatrix b = random_primitive(3, 9, rng);
    const std::vector<IntMatrix> others{b};
    const IntVector l = aligned_direction(a, others);
    for (std::size_t j = 0; j < 3; ++j) {
      Integer s = 0;
      for (std::size_t i = 0; i < 3; ++i) s += l[i] * a(i, j);
      CHECK(s > 0);
      Integer u = 0;
      for (std::size_t i = 0; i < 3; ++i) u += l[i] * b(i, j);
      CHECK(sgn(u) != 0);
    }
  }
}

TEST_CASE("large coefficients take the exact fallback path") {
  IntMatrix huge = IntMatrix::identity(2);
  huge(0, 1) = Integer("100000000000000000000000");
  CHECK(brute_force_cone_box_count(huge, 3) == 4);
}
