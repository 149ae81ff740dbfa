#include <doctest.h>

#include "conedec/lattice_reduction.hpp"
#include "support.hpp"

using namespace conedec;

namespace {

std::vector<IntVector> int_basis(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> out;
  for (const auto& r : rows) {
    out.emplace_back();
    for (long v : r) out.back().emplace_back(v);
  }
  return out;
}

RatVector rat(std::initializer_list<std::pair<long, long>> xs) {
  RatVector v;
  for (auto [n, d] : xs) {
    v.emplace_back(n, d);
    v.back().canonicalize();
  }
  return v;
}

ReducedBasis as_reduced(const std::vector<IntVector>& b) {
  ReducedBasis rb;
  for (const auto& v : b) rb.vectors.emplace_back(v.begin(), v.end());
  return rb;
}

}  // namespace

// Expected bases below come from a fractions-based LLL run with the same
// reduction order (size-reduce against k-1, Lovasz test, then the rest).
TEST_CASE("integral LLL on a three-dimensional textbook basis") {
  auto b = int_basis({{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}});
  lll_reduce_integral(b, Rational(3, 4));
  CHECK(b == int_basis({{0, 1, 0}, {1, 0, 1}, {-1, 0, 2}}));
}

TEST_CASE("integral LLL with the default delta") {
  auto b = int_basis({{105, 821, 404, 328}, {881, 667, 644, 927}, {181, 483, 87, 500}, {893, 834, 732, 441}});
  lll_reduce_integral(b, kDefaultLllDelta);
  CHECK(b == int_basis({{88, -171, -229, -314}, {269, 312, -142, 186}, {76, -338, -317, 172}, {519, -299, 470, -73}}));
  CHECK(is_lll_reduced(as_reduced(b), kDefaultLllDelta));

  auto c = int_basis({{11, -4, 1}, {-4, 8, -2}, {1, -2, 5}});
  lll_reduce_integral(c, kDefaultLllDelta);
  CHECK(c == int_basis({{1, -2, 5}, {3, -6, -3}, {7, 4, -1}}));
}

TEST_CASE("LLL output is reduced and spans the same lattice") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 60; ++t) {
    const std::size_t d = 2 + t % 5;
    const IntMatrix a = random_nonsingular(d, 40, rng);
    std::vector<IntVector> b;
    for (std::size_t j = 0; j < d; ++j) b.push_back(a.column_vector(j));
    lll_reduce_integral(b, kDefaultLllDelta);
    CHECK(is_lll_reduced(as_reduced(b), kDefaultLllDelta));
    const IntMatrix r = IntMatrix::from_columns(b);
    CHECK(abs(determinant(r)) == abs(determinant(a)));
    // every reduced vector is an integer combination of the input
    for (std::size_t j = 0; j < d; ++j) {
      const auto x = solve(a, r.column(j));
      REQUIRE(x);
      CHECK(is_integral(*x));
    }
  }
}

TEST_CASE("rational LLL on L(A^-1)") {
  const RatMatrix inv = to_rational(IntMatrix::from_columns({{2, 0}, {-1, 1}}));
  RatMatrix half(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) half(i, j) = inv(i, j) / 2;
  const ReducedBasis rb = lll_reduce(half);
  CHECK(rb.vectors[0] == rat({{-1, 2}, {1, 2}}));
  CHECK(rb.vectors[1] == rat({{1, 2}, {1, 2}}));
  CHECK(is_lll_reduced(rb, kDefaultLllDelta));
}

TEST_CASE("delta outside (1/4, 1) is rejected") {
  auto b = int_basis({{1, 0}, {0, 1}});
  CHECK_THROWS_AS(lll_reduce_integral(b, Rational(1, 4)), PreconditionError);
  CHECK_THROWS_AS(lll_reduce_integral(b, Rational(1)), PreconditionError);
}

TEST_CASE("norms and direction selection") {
  const RatVector v = rat({{1, 3}, {-2, 3}, {0, 1}});
  CHECK(norm_of(v, Norm::one) == 1);
  CHECK(norm_of(v, Norm::infinity) == Rational(2, 3));
  ReducedBasis rb;
  rb.vectors = {rat({{1, 1}, {1, 1}}), rat({{3, 2}, {0, 1}}), rat({{-1, 1}, {1, 1}})};
  CHECK(select_direction_index(rb, Norm::one) == 1);
  CHECK(select_direction_index(rb, Norm::infinity) == 0);  // tie between 0 and 2
  CHECK(select_direction(rb, Norm::one) == rb.vectors[1]);
}

TEST_CASE("round adjustment rounds ties toward zero") {
  const auto r = round_adjust(rat({{3, 4}, {-1, 2}, {1, 2}, {3, 2}, {-3, 2}, {-7, 3}}));
  REQUIRE(r);
  CHECK(*r == rat({{-1, 4}, {-1, 2}, {1, 2}, {1, 2}, {-1, 2}, {-1, 3}}));
  CHECK_FALSE(round_adjust(rat({{2, 1}, {-1, 1}})));
}

TEST_CASE("pick_beta on columns (1,0), (1,2)") {
  // Hand trace: adj columns (2,0), (-1,1) reduce to (-1,1), (1,1); both have
  // l1 norm 2, the first wins; beta = (-1/2, 1/2), gamma = (0, 1).
  const GammaBundle b = make_gamma_bundle(IntMatrix::from_columns({{1, 0}, {1, 2}}));
  const Direction dir = pick_beta(b, {});
  CHECK(dir.beta == rat({{-1, 2}, {1, 2}}));
  CHECK(dir.gamma == IntVector{Integer(0), Integer(1)});
}

TEST_CASE("pick_beta rejects unimodular cones") {
  CHECK_THROWS_AS(pick_beta(make_gamma_bundle(IntMatrix::identity(3)), {}), PreconditionError);
}

TEST_CASE("adjusted pick_beta halves the index") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 100; ++t) {
    const std::size_t d = 2 + t % 4;
    const IntMatrix a = random_primitive(d, 30, rng);
    const GammaBundle b = make_gamma_bundle(a);
    if (b.index() == 1) continue;
    for (Norm norm : {Norm::one, Norm::infinity}) {
      const Direction dir = pick_beta(b, {norm, true, kDefaultLllDelta});
      CHECK(content(dir.gamma) == 1);
      CHECK_FALSE(is_integral(dir.beta));
      const RatVector g = a * std::span<const Rational>(dir.beta);
      for (std::size_t i = 0; i < d; ++i) CHECK(g[i] == Rational(dir.gamma[i]));
      for (std::size_t i = 0; i < d; ++i) {
        CHECK(abs(dir.beta[i]) <= Rational(1, 2));
        // |det A[i -> gamma]| = |k_i| |det A|
        const Integer child = abs(determinant(testing_support::replace_column(a, i, dir.gamma)));
        CHECK(Rational(child) == abs(dir.beta[i]) * Rational(b.index()));
        CHECK(child <= b.index() / 2);
      }
    }
  }
}
