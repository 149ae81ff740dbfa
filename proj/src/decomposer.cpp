#include "conedec/decomposer.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>

namespace conedec {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::pbarv:
      return "pbarv";
    case Strategy::dbarv:
      return "dbarv";
    case Strategy::pdbarv:
      return "pdbarv";
  }
  return "?";
}

std::string_view to_string(Norm n) { return n == Norm::one ? "l1" : "linf"; }

std::optional<Strategy> parse_strategy(std::string_view s) {
  if (s == "pbarv") return Strategy::pbarv;
  if (s == "dbarv") return Strategy::dbarv;
  if (s == "pdbarv") return Strategy::pdbarv;
  return std::nullopt;
}

std::optional<Norm> parse_norm(std::string_view s) {
  if (s == "l1" || s == "one") return Norm::one;
  if (s == "linf" || s == "infinity") return Norm::infinity;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

struct BudgetHit {
  std::string what;
};

class Engine {
 public:
  Engine(const StrategyConfig& cfg, const ConeSink& sink, const StepObserver& observer)
      : cfg_(cfg), sink_(sink), observer_(observer), start_(Clock::now()) {
    if (!(cfg.lll_delta > Rational(1, 4) && cfg.lll_delta < 1))
      throw PreconditionError("decompose: lll_delta must lie in (1/4, 1)");
  }

  DecompositionStats run(const IntMatrix& b) {
    const IntMatrix reduced = primitive_reduce(b);
    if (!reduced.square()) throw PreconditionError("decompose: generator matrix must be square");
    if (sgn(determinant(reduced)) == 0) throw SingularMatrixError("decompose: singular generator matrix");

    GammaBundle root = make_gamma_bundle(reduced);
    std::vector<SignedTaggedCone> stack;
    if (cfg_.strategy == Strategy::dbarv) {
      root_index_ = root.dual_index();
      stack.push_back({1, Space::dual, dual_gamma_bundle(root), 1});
    } else {
      root_index_ = root.index();
      if (cfg_.strategy == Strategy::pdbarv && root.index() > root.dual_index()) root_index_ = root.dual_index();
      stack.push_back({1, Space::primal, std::move(root), 1});
    }

    try {
      if (cfg_.threads <= 1) {
        drain(stack);
      } else {
        run_parallel(std::move(stack));
      }
    } catch (const BudgetHit& hit) {
      throw BudgetExceededError(hit.what, snapshot());
    }
    return snapshot();
  }

 private:
  DecompositionStats snapshot() const {
    DecompositionStats s;
    s.cones_emitted = cones_.load();
    s.lll_calls = lll_calls_.load();
    s.space_switches = switches_.load();
    s.nodes_processed = nodes_.load();
    s.max_depth = max_depth_.load();
    s.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    s.root_index = root_index_;
    s.aborted = aborted_.load();
    return s;
  }

  void drain(std::vector<SignedTaggedCone>& stack, std::size_t stop_at = 0) {
    while (!stack.empty() && !aborted_.load(std::memory_order_relaxed)) {
      if (stop_at != 0 && stack.size() >= stop_at) return;
      SignedTaggedCone node = std::move(stack.back());
      stack.pop_back();
      step(std::move(node), stack);
    }
  }

  void note_depth(std::size_t depth) {
    std::size_t cur = max_depth_.load(std::memory_order_relaxed);
    while (depth > cur && !max_depth_.compare_exchange_weak(cur, depth)) {
    }
  }

  void check_budgets(std::size_t depth) {
    if (cfg_.max_depth && depth > *cfg_.max_depth) throw BudgetHit{"decompose: depth budget exceeded"};
    if (cfg_.max_seconds) {
      const double secs = std::chrono::duration<double>(Clock::now() - start_).count();
      if (secs > *cfg_.max_seconds) throw BudgetHit{"decompose: time budget exceeded"};
    }
  }

  void emit(const SignedTaggedCone& node) {
    SignedCone cone{node.sign, node.space == Space::primal ? node.bundle.a : node.bundle.a_star};
    assert(is_primitive(cone.generators));
    assert(abs(determinant(cone.generators)) == 1);
    const std::uint64_t n = cones_.fetch_add(1) + 1;
    if (cfg_.max_cones && n > *cfg_.max_cones) throw BudgetHit{"decompose: cone budget exceeded"};
    bool keep_going = true;
    if (sink_) {
      if (cfg_.threads > 1) {
        std::lock_guard lock(sink_mutex_);
        keep_going = sink_(cone);
      } else {
        keep_going = sink_(cone);
      }
    }
    if (!keep_going) aborted_.store(true);
  }

  void step(SignedTaggedCone node, std::vector<SignedTaggedCone>& stack) {
    note_depth(node.depth);
    if (node.bundle.index() == 1) {
      emit(node);
      return;
    }
    nodes_.fetch_add(1, std::memory_order_relaxed);
    if ((nodes_.load(std::memory_order_relaxed) & 0xff) == 0) check_budgets(node.depth);

    bool switched = false;
    if (cfg_.strategy == Strategy::pdbarv && node.bundle.index() > node.bundle.dual_index()) {
      node.bundle = dual_gamma_bundle(node.bundle);
      node.space = node.space == Space::primal ? Space::dual : Space::primal;
      switched = true;
      switches_.fetch_add(1, std::memory_order_relaxed);
    }

    Direction dir = pick_beta(node.bundle, {cfg_.norm, cfg_.adjust, cfg_.lll_delta});
    lll_calls_.fetch_add(1, std::memory_order_relaxed);

    std::vector<ChildSpec> specs;
    if (node.space == Space::primal) {
      specs = primal_children(dir.beta);
    } else {
      if (std::none_of(dir.beta.begin(), dir.beta.end(), [](const Rational& k) { return sgn(k) > 0; })) {
        for (auto& k : dir.beta) k = -k;
        for (auto& x : dir.gamma) x = -x;
      }
      specs = dual_children(dir.beta);
    }

    const std::size_t child_depth = node.depth + 1;
    if (cfg_.max_depth && child_depth > *cfg_.max_depth) throw BudgetHit{"decompose: depth budget exceeded"};

    RatVector neg_beta;
    StepTrace trace;
    if (observer_) {
      trace.depth = node.depth;
      trace.space = node.space;
      trace.switched = switched;
      trace.index = node.bundle.index();
      trace.dual_index = node.bundle.dual_index();
      trace.bundle = &node.bundle;
      trace.beta = dir.beta;
    }
    // Children are pushed in reverse so that they are popped in step order.
    for (auto it = specs.rbegin(); it != specs.rend(); ++it) {
      const ChildSpec& spec = *it;
      GammaBundle child;
      if (spec.negate_gamma) {
        if (neg_beta.empty()) {
          neg_beta = dir.beta;
          for (auto& k : neg_beta) k = -k;
        }
        child = update_gamma_bundle(node.bundle, spec.replaced, neg_beta);
      } else {
        child = update_gamma_bundle(node.bundle, spec.replaced, dir.beta);
      }
      for (std::size_t j : spec.negated) child = negate_column(child, j);
      if (observer_) {
        trace.child_indices.push_back(child.index());
        trace.child_bundles.push_back(child);
      }
      stack.push_back({node.sign * spec.sign, node.space, std::move(child), child_depth});
    }
    if (observer_) {
      std::reverse(trace.child_indices.begin(), trace.child_indices.end());
      std::reverse(trace.child_bundles.begin(), trace.child_bundles.end());
      if (cfg_.threads > 1) {
        std::lock_guard lock(sink_mutex_);
        observer_(trace);
      } else {
        observer_(trace);
      }
    }
  }

  void run_parallel(std::vector<SignedTaggedCone> stack) {
    // Expand breadth until there is enough independent work, then hand whole
    // subtrees to workers.
    const std::size_t target = static_cast<std::size_t>(cfg_.threads) * 8;
    drain(stack, target);
    if (stack.empty()) return;

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      try {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= stack.size() || aborted_.load()) return;
          std::vector<SignedTaggedCone> local;
          local.push_back(std::move(stack[i]));
          drain(local);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        aborted_.store(true);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < cfg_.threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failure) {
      aborted_.store(false);
      std::rethrow_exception(failure);
    }
  }

  const StrategyConfig& cfg_;
  const ConeSink& sink_;
  const StepObserver& observer_;
  Clock::time_point start_;
  Integer root_index_;
  std::mutex sink_mutex_;
  std::atomic<std::uint64_t> cones_{0};
  std::atomic<std::uint64_t> lll_calls_{0};
  std::atomic<std::uint64_t> switches_{0};
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<std::size_t> max_depth_{0};
  std::atomic<bool> aborted_{false};
};

}  // namespace

DecompositionStats decompose_streaming(const IntMatrix& b, const StrategyConfig& cfg, const ConeSink& sink,
                                       const StepObserver& observer) {
  Engine engine(cfg, sink, observer);
  return engine.run(b);
}

DecompositionResult decompose(const IntMatrix& b, const StrategyConfig& cfg, const StepObserver& observer) {
  DecompositionResult result;
  result.stats = decompose_streaming(
      b, cfg,
      [&result](const SignedCone& c) {
        result.cones.push_back(c);
        return true;
      },
      observer);
  return result;
}

std::vector<StrategyRow> compare_strategies(const IntMatrix& b, std::span<const StrategyConfig> cfgs) {
  std::vector<StrategyRow> rows;
  rows.reserve(cfgs.size());
  for (const auto& cfg : cfgs) {
    StrategyRow row;
    row.config = cfg;
    try {
      const auto stats = decompose_streaming(b, cfg, {});
      row.cones = stats.cones_emitted;
      row.lll_calls = stats.lll_calls;
      row.elapsed_ms = stats.elapsed_ms;
    } catch (const BudgetExceededError& e) {
      row.cones = e.stats().cones_emitted;
      row.lll_calls = e.stats().lll_calls;
      row.elapsed_ms = e.stats().elapsed_ms;
      row.budget_exceeded = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace conedec
