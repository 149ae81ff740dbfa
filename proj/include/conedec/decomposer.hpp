#pragma once

// Worklist decomposition of a simplicial cone into signed unimodular cones.
//
// Three strategies share one engine:
//   pbarv  - primal space only, closed-form primal step throughout;
//   dbarv  - starts from the dual cone, dual step throughout, results dualized back;
//   pdbarv - at every non-unimodular node works on whichever of the cone and
//            its dual has the smaller index.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "conedec/cone_core.hpp"
#include "conedec/exact_linalg.hpp"
#include "conedec/lattice_reduction.hpp"

namespace conedec {

enum class Strategy { pbarv, dbarv, pdbarv };
enum class Space { primal, dual };

std::string_view to_string(Strategy s);
std::string_view to_string(Norm n);
std::optional<Strategy> parse_strategy(std::string_view s);
std::optional<Norm> parse_norm(std::string_view s);

struct SignedTaggedCone {
  int sign = 1;
  Space space = Space::primal;
  GammaBundle bundle;
  std::size_t depth = 1;
};

struct StrategyConfig {
  Strategy strategy = Strategy::pdbarv;
  Norm norm = Norm::one;
  bool adjust = true;
  Rational lll_delta = kDefaultLllDelta;
  std::optional<std::uint64_t> max_cones;
  std::optional<std::size_t> max_depth = 64;
  std::optional<double> max_seconds;  ///< wall clock
  unsigned threads = 1;               ///< > 1 processes independent subtrees concurrently
};

struct DecompositionStats {
  std::uint64_t cones_emitted = 0;
  std::uint64_t lll_calls = 0;
  std::uint64_t space_switches = 0;
  std::uint64_t nodes_processed = 0;  ///< non-unimodular cones decomposed
  std::size_t max_depth = 0;
  double elapsed_ms = 0;
  Integer root_index = 0;  ///< index of the root in the space it is first decomposed in
  bool aborted = false;    ///< the sink stopped the run
};

struct DecompositionResult {
  std::vector<SignedCone> cones;
  DecompositionStats stats;
};

/// Per-node record handed to an observer: the index actually decomposed
/// (after any space switch) and the indices of the children pushed.
struct StepTrace {
  std::size_t depth = 0;
  Space space = Space::primal;
  bool switched = false;
  Integer index;
  Integer dual_index;
  std::vector<Integer> child_indices;
  RatVector beta;  ///< step coefficients, after the dual-space sign fix
  const GammaBundle* bundle = nullptr;  ///< the node as decomposed; valid during the callback only
  std::vector<GammaBundle> child_bundles;
};

using StepObserver = std::function<void(const StepTrace&)>;
/// Receives each unimodular cone; returning false aborts the run.
using ConeSink = std::function<bool(const SignedCone&)>;

class BudgetExceededError : public std::runtime_error {
 public:
  BudgetExceededError(const std::string& what, DecompositionStats stats)
      : std::runtime_error(what), stats_(std::move(stats)) {}
  [[nodiscard]] const DecompositionStats& stats() const noexcept { return stats_; }

 private:
  DecompositionStats stats_;
};

/// Decomposes C(b) into signed unimodular cones. b is primitive-reduced first.
DecompositionResult decompose(const IntMatrix& b, const StrategyConfig& cfg, const StepObserver& observer = {});

/// Same traversal as decompose(), delivering cones one at a time.
DecompositionStats decompose_streaming(const IntMatrix& b, const StrategyConfig& cfg, const ConeSink& sink,
                                       const StepObserver& observer = {});

struct StrategyRow {
  StrategyConfig config;
  std::uint64_t cones = 0;
  std::uint64_t lll_calls = 0;
  double elapsed_ms = 0;
  bool budget_exceeded = false;
};

/// One counting run per configuration on the same input.
std::vector<StrategyRow> compare_strategies(const IntMatrix& b, std::span<const StrategyConfig> cfgs);

}  // namespace conedec
