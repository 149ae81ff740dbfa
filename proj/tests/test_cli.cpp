#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "conedec/cli.hpp"
#include "conedec/matrix_io.hpp"
#include "conedec/oracle.hpp"

using namespace conedec;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "conedec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "conedec_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("matrix file format") {
  const IntMatrix a = parse_matrix("# a comment\n\n2\n1 0\n\n# generator two\n1 2\n");
  CHECK(a == IntMatrix::from_columns({{1, 0}, {1, 2}}));
  CHECK(parse_matrix(format_matrix(a)) == a);
  CHECK(parse_matrix("1\n-123456789012345678901234567890\n")(0, 0) == Integer("-123456789012345678901234567890"));
  CHECK_THROWS_AS(parse_matrix("2\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2\n1 0 3\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2\n1 x\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix("2\n1 0\n0 1\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_matrix(""), ParseError);
}

TEST_CASE("cone list round trip through JSON") {
  IntMatrix big = IntMatrix::identity(2);
  big(0, 1) = Integer("-99999999999999999999999");
  const std::vector<SignedCone> cones{{1, IntMatrix::identity(2)}, {-1, big}};
  nlohmann::json record;
  record["sign_cone_pairs"] = nlohmann::json::array();
  for (const auto& c : cones) record["sign_cone_pairs"].push_back(cone_to_json(c));
  const auto back = cones_from_record(nlohmann::json::parse(record.dump()));
  CHECK(back == cones);
  CHECK(record["sign_cone_pairs"][1]["generators"][1][0].is_string());
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("decompose the identity") {
  const auto path = write_file("id2.mat", "2\n1 0\n0 1\n");
  const Run r = run({"decompose", path});
  REQUIRE(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["cone_count"] == 1);
  CHECK(doc["sign_cone_pairs"].size() == 1);
  CHECK(doc["sign_cone_pairs"][0]["sign"] == 1);
  CHECK(doc["strategy"] == "pdbarv");
  CHECK(doc["norm"] == "l1");
  CHECK(doc["input"]["fnv1a64"].get<std::string>().size() == 16);
}

TEST_CASE("decompose output re-parses and verifies") {
  const auto path = write_file("m3.mat", "3\n2 1 0\n1 3 1\n0 1 4\n");
  const auto out = (scratch() / "m3.json").string();
  for (const char* s : {"pbarv", "dbarv", "pdbarv"}) {
    const Run r = run({"decompose", path, "--strategy", s, "--output", out});
    REQUIRE(r.code == kExitOk);
    const auto doc = nlohmann::json::parse(slurp(out));
    const auto cones = cones_from_record(doc);
    CHECK(cones.size() == doc["cone_count"].get<std::size_t>());
    const IntMatrix target = IntMatrix::from_columns({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
    CHECK(signed_indicator_check(target, cones, 5, false).passed);
  }
  const Run stats = run({"decompose", path, "--stats-only", "--format", "text"});
  CHECK(stats.code == kExitOk);
  CHECK(stats.out.find("cones ") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"decompose", write_file("bad.mat", "2\n1 0\n")}).code == kExitParse);
  CHECK(run({"decompose", (scratch() / "missing.mat").string()}).code == kExitParse);
  CHECK(run({"decompose", write_file("sing.mat", "2\n1 2\n2 4\n")}).code == kExitSingular);
  CHECK(run({"decompose", write_file("zero.mat", "2\n0 0\n1 1\n")}).code == kExitSingular);
  CHECK(run({"decompose", write_file("ok.mat", "2\n1 0\n1 2\n"), "--strategy", "nope"}).code == kExitParse);
  CHECK(run({"frobnicate"}).code == kExitParse);
  const auto big = write_file("big.mat", "3\n31 -7 12\n5 29 -3\n-11 4 37\n");
  const Run budget = run({"decompose", big, "--max-cones", "2"});
  CHECK(budget.code == kExitBudget);
  CHECK(nlohmann::json::parse(budget.out)["budget_exceeded"] == true);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("verify passes and detects an injected corruption") {
  const auto path = write_file("v3.mat", "3\n3 -1 2\n1 4 -2\n2 0 5\n");
  for (const char* s : {"pbarv", "dbarv", "pdbarv"}) {
    const Run r = run({"verify", path, "--strategy", s, "--radius", "5"});
    CHECK(r.code == kExitOk);
    CHECK(nlohmann::json::parse(r.out)["report"]["passed"] == true);
  }
  const Run bad = run({"verify", path, "--radius", "5", "--test-flip-sign", "0"});
  CHECK(bad.code == kExitVerifyFailed);
  const auto doc = nlohmann::json::parse(bad.out);
  CHECK(doc["report"]["passed"] == false);
  CHECK(doc["report"]["first_failure"]["point"].size() == 3);
  CHECK(run({"verify", write_file("vid.mat", "2\n1 0\n0 1\n")}).code == kExitOk);
}

TEST_CASE("random generation is reproducible") {
  const auto dir1 = (scratch() / "gen1").string();
  const auto dir2 = (scratch() / "gen2").string();
  fs::remove_all(dir1);
  fs::remove_all(dir2);
  REQUIRE(run({"gen-random", "--dim", "4", "--count", "3", "--seed", "1", "--out-dir", dir1}).code == kExitOk);
  REQUIRE(run({"gen-random", "--dim", "4", "--count", "3", "--seed", "1", "--out-dir", dir2}).code == kExitOk);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir1)) {
    ++files;
    const std::string text = slurp(e.path());
    CHECK(text == slurp(fs::path(dir2) / e.path().filename()));
    const IntMatrix a = parse_matrix(text);
    CHECK(sgn(determinant(a)) != 0);
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t i = 0; i < 4; ++i) CHECK(abs(a(i, j)) <= 100);
  }
  CHECK(files == 3);

  const auto dir7 = (scratch() / "gen7").string();
  fs::remove_all(dir7);
  const Run r7 = run({"gen-random", "--dim", "7", "--count", "2", "--seed", "9", "--out-dir", dir7});
  REQUIRE(r7.code == kExitOk);
  for (const auto& e : fs::directory_iterator(dir7)) {
    const IntMatrix a = parse_matrix(slurp(e.path()));
    for (std::size_t j = 0; j < 7; ++j)
      for (std::size_t i = 0; i < 7; ++i) CHECK(abs(a(i, j)) <= 30);
  }
}

TEST_CASE("bench CSV layout") {
  const Run r = run({"bench", "--dims", "2", "--trials", "2", "--seed", "3"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  REQUIRE(lines.size() == 8);
  CHECK(lines[0] == "dim,seed,strategy,cones,lll_calls,elapsed_ms");
  CHECK(lines[1].rfind("2,3,pbarv,", 0) == 0);
  CHECK(lines[3].rfind("2,3,pdbarv,", 0) == 0);
  CHECK(lines[4].rfind("2,4,pbarv,", 0) == 0);
  CHECK(lines[7].rfind("2,all,mean_ratio,", 0) == 0);
  CHECK(r.out.find('\r') == std::string::npos);
  const Run j = run({"bench", "--dims", "2", "--trials", "2", "--seed", "3", "--jobs", "2"});
  // elapsed times differ between runs; compare everything else
  auto strip = [](const std::string& csv) {
    std::istringstream s(csv);
    std::string out;
    for (std::string l; std::getline(s, l);) out += l.substr(0, l.rfind(',')) + "\n";
    return out;
  };
  CHECK(strip(j.out) == strip(r.out));
}
