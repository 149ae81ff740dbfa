#include "conedec/cli.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conedec/decomposer.hpp"
#include "conedec/matrix_io.hpp"
#include "conedec/oracle.hpp"
#include "conedec/random_input.hpp"

namespace conedec {

namespace {

using nlohmann::json;

struct RunOptions {
  std::string input;
  std::string strategy = "pdbarv";
  std::string norm = "l1";
  bool no_adjust = false;
  std::string delta = "99/100";
  std::string output;
  bool stats_only = false;
  std::string format = "json";
  std::optional<std::uint64_t> max_cones;
  std::optional<std::size_t> max_depth;
  std::optional<double> max_seconds;
  unsigned threads = 1;
};

void add_run_options(CLI::App& cmd, RunOptions& o) {
  cmd.add_option("matrix", o.input, "matrix file")->required();
  cmd.add_option("--strategy", o.strategy, "pbarv | dbarv | pdbarv")
      ->check(CLI::IsMember({"pbarv", "dbarv", "pdbarv"}))
      ->capture_default_str();
  cmd.add_option("--norm", o.norm, "l1 | linf")->check(CLI::IsMember({"l1", "linf"}))->capture_default_str();
  cmd.add_flag("--no-adjust", o.no_adjust, "keep LLL coefficients unrounded");
  cmd.add_option("--delta", o.delta, "LLL parameter p/q in (1/4, 1)")->capture_default_str();
  cmd.add_option("--output", o.output, "write the document here instead of stdout");
  cmd.add_option("--format", o.format, "json | text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  cmd.add_option("--max-cones", o.max_cones, "cone budget");
  cmd.add_option("--max-depth", o.max_depth, "depth budget (default 64)");
  cmd.add_option("--max-seconds", o.max_seconds, "wall-clock budget");
  cmd.add_option("--threads", o.threads, "worker threads")->capture_default_str();
}

Rational parse_delta(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw ParseError("--delta: not a rational number: " + s);
  q.canonicalize();
  return q;
}

StrategyConfig make_config(const RunOptions& o) {
  StrategyConfig cfg;
  cfg.strategy = *parse_strategy(o.strategy);
  cfg.norm = *parse_norm(o.norm);
  cfg.adjust = !o.no_adjust;
  cfg.lll_delta = parse_delta(o.delta);
  cfg.max_cones = o.max_cones;
  if (o.max_depth) cfg.max_depth = o.max_depth;
  cfg.max_seconds = o.max_seconds;
  cfg.threads = std::max(1u, o.threads);
  return cfg;
}

json input_json(const MatrixFile& f) { return {{"path", f.path}, {"fnv1a64", f.hash}}; }

void write_document(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string cone_text(const SignedCone& c) {
  std::ostringstream s;
  s << (c.sign > 0 ? "+1" : "-1");
  for (std::size_t j = 0; j < c.generators.cols(); ++j) {
    s << (j ? " ;" : " ");
    for (const auto& x : c.generators.column(j)) s << ' ' << x.get_str();
  }
  return s.str();
}

std::string stats_text(const DecompositionStats& s) {
  std::ostringstream t;
  t << "cones " << s.cones_emitted << "\nlll_calls " << s.lll_calls << "\nspace_switches " << s.space_switches
    << "\nmax_depth " << s.max_depth << "\nroot_index " << s.root_index.get_str() << "\nelapsed_ms " << std::fixed
    << std::setprecision(1) << s.elapsed_ms << '\n';
  return t.str();
}

// Runs the configured decomposition, keeping cones only when asked to.
DecompositionStats run_decompose(const IntMatrix& a, const StrategyConfig& cfg, std::vector<SignedCone>* keep) {
  if (keep == nullptr) return decompose_streaming(a, cfg, {});
  return decompose_streaming(a, cfg, [keep](const SignedCone& c) {
    keep->push_back(c);
    return true;
  });
}

int cmd_decompose(const RunOptions& o, std::ostream& out) {
  const MatrixFile file = read_matrix_file(o.input);
  const StrategyConfig cfg = make_config(o);
  std::vector<SignedCone> cones;
  json record{{"dim", file.dim()},
              {"strategy", o.strategy},
              {"norm", o.norm},
              {"input", input_json(file)},
              {"config", config_to_json(cfg)}};
  DecompositionStats stats;
  int code = kExitOk;
  try {
    stats = run_decompose(file.generators, cfg, o.stats_only ? nullptr : &cones);
  } catch (const BudgetExceededError& e) {
    stats = e.stats();
    cones.clear();
    record["budget_exceeded"] = true;
    record["error"] = e.what();
    code = kExitBudget;
  }
  record["cone_count"] = stats.cones_emitted;
  record["stats"] = stats_to_json(stats);
  if (!o.stats_only && code == kExitOk) {
    json pairs = json::array();
    for (const auto& c : cones) pairs.push_back(cone_to_json(c));
    record["sign_cone_pairs"] = std::move(pairs);
  }

  std::string doc;
  if (o.format == "json") {
    doc = record.dump(2) + "\n";
  } else {
    std::ostringstream t;
    t << "# " << file.path << " dim " << file.dim() << " strategy " << o.strategy << " norm " << o.norm << '\n';
    if (code == kExitBudget) t << "budget exceeded\n";
    t << stats_text(stats);
    if (!o.stats_only)
      for (const auto& c : cones) t << cone_text(c) << '\n';
    doc = t.str();
  }
  write_document(o.output, doc, out);
  return code;
}

int cmd_verify(const RunOptions& o, std::optional<int> radius, std::optional<std::size_t> flip_sign,
               std::ostream& out) {
  const MatrixFile file = read_matrix_file(o.input);
  const StrategyConfig cfg = make_config(o);
  std::vector<SignedCone> cones;
  DecompositionStats stats;
  try {
    stats = run_decompose(file.generators, cfg, &cones);
  } catch (const BudgetExceededError& e) {
    json record{{"input", input_json(file)}, {"budget_exceeded", true}, {"error", e.what()}};
    write_document(o.output, record.dump(2) + "\n", out);
    return kExitBudget;
  }
  if (flip_sign) {
    if (*flip_sign >= cones.size()) throw ParseError("--test-flip-sign: no such cone");
    cones[*flip_sign].sign = -cones[*flip_sign].sign;
  }
  const int r = radius.value_or(default_box_radius(file.dim()));
  const IntMatrix target = primitive_reduce(file.generators);
  const VerifyReport report = signed_indicator_check(target, cones, r, false);

  json rep{{"passed", report.passed},
           {"box_radius", report.box_radius},
           {"points_checked", report.points_checked},
           {"points_exempted", report.points_exempted}};
  if (report.first_failure) {
    json point = json::array();
    for (const auto& x : report.first_failure->point) point.push_back(integer_to_json(x));
    rep["first_failure"] = {{"point", std::move(point)},
                            {"expected", report.first_failure->expected},
                            {"got", report.first_failure->got}};
  } else {
    rep["first_failure"] = nullptr;
  }
  json record{{"dim", file.dim()},        {"strategy", o.strategy},      {"norm", o.norm},
              {"input", input_json(file)}, {"config", config_to_json(cfg)}, {"cone_count", stats.cones_emitted},
              {"stats", stats_to_json(stats)}, {"report", std::move(rep)}};
  std::string doc;
  if (o.format == "json") {
    doc = record.dump(2) + "\n";
  } else {
    std::ostringstream t;
    t << (report.passed ? "PASS" : "FAIL") << ' ' << file.path << " cones " << stats.cones_emitted << " radius " << r
      << " points " << report.points_checked << '\n';
    if (report.first_failure) {
      t << "first failure at";
      for (const auto& x : report.first_failure->point) t << ' ' << x.get_str();
      t << ": expected " << report.first_failure->expected << ", got " << report.first_failure->got << '\n';
    }
    doc = t.str();
  }
  write_document(o.output, doc, out);
  return report.passed ? kExitOk : kExitVerifyFailed;
}

struct GenOptions {
  std::size_t dim = 4;
  std::size_t count = 1;
  std::optional<long> entry_bound;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string prefix = "random";
};

int cmd_gen_random(const GenOptions& o, std::ostream& out) {
  const long bound = o.entry_bound.value_or(default_entry_bound(o.dim));
  std::filesystem::create_directories(o.out_dir);
  std::mt19937_64 rng(o.seed);
  for (std::size_t k = 0; k < o.count; ++k) {
    const IntMatrix a = random_nonsingular(o.dim, bound, rng);
    std::ostringstream name;
    name << o.prefix << "_d" << o.dim << "_s" << o.seed << "_" << std::setw(3) << std::setfill('0') << k << ".mat";
    const auto path = std::filesystem::path(o.out_dir) / name.str();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << "# seed " << o.seed << " draw " << k << " entries in [-" << bound << ", " << bound << "]\n"
      << format_matrix(a);
    out << path.string() << '\n';
  }
  return kExitOk;
}

struct BenchOptions {
  std::vector<std::size_t> dims{4};
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::optional<double> budget_seconds;
  unsigned jobs = 1;
  std::string output;
};

struct BenchCell {
  std::uint64_t cones = 0;
  std::uint64_t lll_calls = 0;
  double elapsed_ms = 0;
  bool over_budget = false;
};

int cmd_bench(const BenchOptions& o, std::ostream& out) {
  constexpr Strategy kOrder[] = {Strategy::pbarv, Strategy::dbarv, Strategy::pdbarv};
  struct Job {
    std::size_t dim;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (auto d : o.dims)
    for (std::size_t t = 0; t < o.trials; ++t) jobs.push_back({d, o.seed + t});
  std::vector<std::array<BenchCell, 3>> cells(jobs.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < jobs.size();) {
      std::mt19937_64 rng(jobs[k].seed);
      const IntMatrix a = random_nonsingular(jobs[k].dim, default_entry_bound(jobs[k].dim), rng);
      for (std::size_t s = 0; s < 3; ++s) {
        StrategyConfig cfg;
        cfg.strategy = kOrder[s];
        cfg.max_seconds = o.budget_seconds;
        BenchCell& cell = cells[k][s];
        try {
          const auto st = decompose_streaming(a, cfg, {});
          cell = {st.cones_emitted, st.lll_calls, st.elapsed_ms, false};
        } catch (const BudgetExceededError& e) {
          cell = {e.stats().cones_emitted, e.stats().lll_calls, e.stats().elapsed_ms, true};
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, o.jobs); ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv << "dim,seed,strategy,cones,lll_calls,elapsed_ms\n";
  std::size_t k = 0;
  for (auto d : o.dims) {
    double ratio_sum = 0;
    std::size_t counted = 0;
    double total_ms = 0;
    for (std::size_t t = 0; t < o.trials; ++t, ++k) {
      for (std::size_t s = 0; s < 3; ++s) {
        const BenchCell& c = cells[k][s];
        total_ms += c.elapsed_ms;
        csv << d << ',' << jobs[k].seed << ',' << to_string(kOrder[s]) << ',';
        if (c.over_budget)
          csv << "budget_exceeded";
        else
          csv << c.cones;
        csv << ',' << c.lll_calls << ',' << std::fixed << std::setprecision(1) << c.elapsed_ms << '\n';
      }
      const auto& row = cells[k];
      if (row[0].over_budget || row[1].over_budget || row[2].over_budget) continue;
      ratio_sum += static_cast<double>(std::min(row[0].cones, row[1].cones)) / static_cast<double>(row[2].cones);
      ++counted;
    }
    // Summary: mean of min(pbarv, dbarv) / pdbarv over the trials that
    // finished, and how many did.
    csv << d << ",all,mean_ratio,";
    if (counted)
      csv << std::fixed << std::setprecision(6) << ratio_sum / static_cast<double>(counted);
    else
      csv << "nan";
    csv << ',' << counted << ',' << std::fixed << std::setprecision(1) << total_ms << '\n';
  }
  write_document(o.output, csv.str(), out);
  return kExitOk;
}

std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> dims;
  std::stringstream in(s);
  for (std::string tok; std::getline(in, tok, ',');) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != tok.size() || v < 1 || v > 16) throw ParseError("--dims: bad dimension '" + tok + "'");
    dims.push_back(v);
  }
  if (dims.empty()) throw ParseError("--dims: empty list");
  return dims;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Signed unimodular decomposition of simplicial cones"};
  app.require_subcommand(1);

  RunOptions dec;
  auto* decompose_cmd = app.add_subcommand("decompose", "decompose a cone and print the signed unimodular cones");
  add_run_options(*decompose_cmd, dec);
  decompose_cmd->add_flag("--stats-only", dec.stats_only, "omit the cone list");

  RunOptions ver;
  std::optional<int> radius;
  std::optional<std::size_t> flip_sign;
  auto* verify_cmd = app.add_subcommand("verify", "decompose, then check the result against a brute-force count");
  add_run_options(*verify_cmd, ver);
  verify_cmd->add_option("--radius", radius, "box radius (default by dimension)")->check(CLI::Range(0, 1000));
  verify_cmd->add_option("--test-flip-sign", flip_sign, "negate the sign of this cone before checking")
      ->group("");

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-random", "write seeded random nonsingular matrices");
  gen_cmd->add_option("--dim", gen.dim, "dimension")->required()->check(CLI::Range(1, 16));
  gen_cmd->add_option("--count", gen.count, "number of matrices")->capture_default_str();
  gen_cmd->add_option("--entry-bound", gen.entry_bound, "entries in [-b, b] (default 100, or 30 for d >= 7)")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "seed")->capture_default_str();
  gen_cmd->add_option("--out-dir", gen.out_dir, "output directory")->capture_default_str();
  gen_cmd->add_option("--prefix", gen.prefix, "file name prefix")->capture_default_str();

  BenchOptions bench;
  std::string dims = "4";
  auto* bench_cmd = app.add_subcommand("bench", "compare the three strategies on seeded random cones (CSV)");
  bench_cmd->add_option("--dims", dims, "comma-separated dimensions")->capture_default_str();
  bench_cmd->add_option("--trials", bench.trials, "matrices per dimension")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "seed of the first trial")->capture_default_str();
  bench_cmd->add_option("--budget-seconds", bench.budget_seconds, "per-run wall-clock budget");
  bench_cmd->add_option("--jobs", bench.jobs, "concurrent trials")->capture_default_str();
  bench_cmd->add_option("--output", bench.output, "write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "conedec: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    if (decompose_cmd->parsed()) return cmd_decompose(dec, out);
    if (verify_cmd->parsed()) return cmd_verify(ver, radius, flip_sign, out);
    if (gen_cmd->parsed()) return cmd_gen_random(gen, out);
    if (bench_cmd->parsed()) {
      bench.dims = parse_dims(dims);
      return cmd_bench(bench, out);
    }
  } catch (const ParseError& e) {
    err << "conedec: " << e.what() << '\n';
    return kExitParse;
  } catch (const SingularMatrixError& e) {
    err << "conedec: " << e.what() << '\n';
    return kExitSingular;
  } catch (const DegenerateGeneratorError& e) {
    err << "conedec: " << e.what() << '\n';
    return kExitSingular;
  } catch (const BudgetExceededError& e) {
    err << "conedec: " << e.what() << '\n';
    return kExitBudget;
  } catch (const PreconditionError& e) {
    err << "conedec: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    err << "conedec: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace conedec
