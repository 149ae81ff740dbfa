#include <doctest.h>

#include <algorithm>

#include "conedec/decomposer.hpp"
#include "conedec/oracle.hpp"
#include "support.hpp"

using namespace conedec;

namespace {

StrategyConfig config(Strategy s, Norm n = Norm::one, bool adjust = true) {
  StrategyConfig c;
  c.strategy = s;
  c.norm = n;
  c.adjust = adjust;
  return c;
}

constexpr Strategy kAll[] = {Strategy::pbarv, Strategy::dbarv, Strategy::pdbarv};

std::vector<std::pair<int, std::vector<IntVector>>> canonical(const std::vector<SignedCone>& cones) {
  std::vector<std::pair<int, std::vector<IntVector>>> out;
  for (const auto& c : cones) {
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < c.generators.cols(); ++j) cols.push_back(c.generators.column_vector(j));
    out.emplace_back(c.sign, std::move(cols));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("unimodular input is emitted as is") {
  for (Strategy s : kAll) {
    const auto r = decompose(IntMatrix::identity(3), config(s));
    REQUIRE(r.cones.size() == 1);
    CHECK(r.cones[0].sign == 1);
    CHECK(r.cones[0].generators == IntMatrix::identity(3));
    CHECK(r.stats.cones_emitted == 1);
    CHECK(r.stats.lll_calls == 0);
  }
}

TEST_CASE("two-dimensional example") {
  const IntMatrix a = IntMatrix::from_columns({{1, 0}, {1, 2}});
  std::vector<StepTrace> trace;
  const auto p = decompose(a, config(Strategy::pbarv));
  const auto pd = decompose(a, config(Strategy::pdbarv), [&](const StepTrace& t) { trace.push_back(t); });
  CHECK(p.cones.size() == 2);
  CHECK(canonical(p.cones) == canonical(pd.cones));
  REQUIRE(trace.size() == 1);
  CHECK_FALSE(trace[0].switched);
  CHECK(trace[0].index == 2);
  CHECK(pd.stats.space_switches == 0);
  CHECK(signed_indicator_check(a, p.cones, 6, false).passed);
  for (const auto& c : p.cones) CHECK(abs(determinant(c.generators)) == 1);
}

TEST_CASE("non-primitive and negatively oriented input") {
  const IntMatrix a = IntMatrix::from_columns({{0, 3}, {4, 2}});
  for (Strategy s : kAll) {
    const auto r = decompose(a, config(s));
    CHECK(signed_indicator_check(primitive_reduce(a), r.cones, 6, false).passed);
  }
}

TEST_CASE("all strategies and norms reproduce the cone") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 24; ++t) {
    const std::size_t d = 2 + t % 3;
    const IntMatrix a = random_primitive(d, 10, rng);
    for (Strategy s : kAll)
      for (Norm n : {Norm::one, Norm::infinity}) {
        const auto r = decompose(a, config(s, n, t % 5 != 4));
        for (const auto& c : r.cones) CHECK(abs(determinant(c.generators)) == 1);
        CHECK(signed_indicator_check(a, r.cones, d == 4 ? 4 : 6, false).passed);
      }
  }
}

TEST_CASE("streaming delivers the same sequence") {
  std::mt19937_64 rng(52);
  const IntMatrix a = random_primitive(4, 30, rng);
  for (Strategy s : kAll) {
    const auto r = decompose(a, config(s));
    std::vector<SignedCone> seen;
    const auto stats = decompose_streaming(a, config(s), [&](const SignedCone& c) {
      seen.push_back(c);
      return true;
    });
    CHECK(seen == r.cones);
    CHECK(stats.cones_emitted == r.stats.cones_emitted);
    CHECK(stats.lll_calls == r.stats.lll_calls);
    CHECK(decompose(a, config(s)).cones == r.cones);
  }
}

TEST_CASE("parallel mode yields the same multiset") {
  std::mt19937_64 rng(53);
  const IntMatrix a = random_primitive(4, 60, rng);
  for (Strategy s : kAll) {
    StrategyConfig par = config(s);
    par.threads = 3;
    const auto seq = decompose(a, config(s));
    const auto con = decompose(a, par);
    CHECK(canonical(seq.cones) == canonical(con.cones));
    CHECK(seq.stats.lll_calls == con.stats.lll_calls);
  }
}

TEST_CASE("trace invariants: halving and space choice") {
  std::mt19937_64 rng(54);
  for (int t = 0; t < 10; ++t) {
    const IntMatrix a = random_primitive(4, 50, rng);
    std::vector<StepTrace> trace;
    const auto r = decompose(a, config(Strategy::pdbarv), [&](const StepTrace& s) { trace.push_back(s); });
    CHECK(r.stats.lll_calls == trace.size());
    CHECK(r.stats.lll_calls <= r.stats.nodes_processed);
    for (const auto& s : trace) {
      CHECK(s.index <= s.dual_index);
      for (const auto& c : s.child_indices) CHECK(c <= s.index / 2);
    }
  }
}

TEST_CASE("budgets and aborts") {
  std::mt19937_64 rng(55);
  const IntMatrix a = random_primitive(4, 80, rng);
  StrategyConfig c = config(Strategy::pbarv);
  c.max_cones = 3;
  CHECK_THROWS_AS(decompose(a, c), BudgetExceededError);
  try {
    decompose(a, c);
  } catch (const BudgetExceededError& e) {
    CHECK(e.stats().cones_emitted == 4);
  }
  c = config(Strategy::pbarv);
  c.max_depth = 1;
  CHECK_THROWS_AS(decompose(a, c), BudgetExceededError);

  std::size_t calls = 0;
  const auto stats = decompose_streaming(a, config(Strategy::pdbarv), [&](const SignedCone&) { return ++calls < 5; });
  CHECK(calls == 5);
  CHECK(stats.aborted);
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(decompose(IntMatrix::from_columns({{1, 2}, {2, 4}}), {}), SingularMatrixError);
  StrategyConfig c;
  c.lll_delta = Rational(1, 5);
  CHECK_THROWS_AS(decompose(IntMatrix::identity(2), c), PreconditionError);
}

TEST_CASE("strategy comparison table") {
  const StrategyConfig cfgs[] = {config(Strategy::pbarv), config(Strategy::dbarv), config(Strategy::pdbarv)};
  for (const auto& row : compare_strategies(IntMatrix::identity(4), cfgs)) CHECK(row.cones == 1);

  std::mt19937_64 rng(56);
  const IntMatrix a = random_primitive(3, 40, rng);
  const auto rows = compare_strategies(a, cfgs);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(rows[i].cones == decompose(a, cfgs[i]).stats.cones_emitted);
}

TEST_CASE("string conversions") {
  CHECK(parse_strategy("dbarv") == Strategy::dbarv);
  CHECK_FALSE(parse_strategy("barvinok"));
  CHECK(parse_norm("linf") == Norm::infinity);
  CHECK(to_string(Strategy::pdbarv) == "pdbarv");
  CHECK(to_string(Norm::one) == "l1");
}
