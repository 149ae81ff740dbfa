#include "conedec/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace conedec {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

bool skip_line(std::string_view line) {
  const auto p = line.find_first_not_of(" \t\r");
  return p == std::string_view::npos || line[p] == '#';
}

Integer parse_integer(const std::string& tok, std::size_t line_no) {
  Integer x;
  const std::string body = (!tok.empty() && tok[0] == '+') ? tok.substr(1) : tok;
  if (body.empty() || x.set_str(body, 10) != 0)
    throw ParseError("line " + std::to_string(line_no) + ": not an integer: '" + tok + "'");
  return x;
}

}  // namespace

IntMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  long d = -1;
  std::vector<IntVector> gens;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_line(line)) continue;
    std::istringstream fields(line);
    std::vector<std::string> toks;
    for (std::string t; fields >> t;) toks.push_back(t);
    if (d < 0) {
      if (toks.size() != 1) throw ParseError("line " + std::to_string(line_no) + ": expected the dimension");
      const Integer v = parse_integer(toks[0], line_no);
      if (v < 1 || v > 64) throw ParseError("line " + std::to_string(line_no) + ": dimension out of range");
      d = v.get_si();
      continue;
    }
    if (static_cast<long>(gens.size()) == d)
      throw ParseError("line " + std::to_string(line_no) + ": more than " + std::to_string(d) + " generators");
    if (static_cast<long>(toks.size()) != d)
      throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(d) + " integers, got " +
                       std::to_string(toks.size()));
    IntVector g;
    for (const auto& t : toks) g.push_back(parse_integer(t, line_no));
    gens.push_back(std::move(g));
  }
  if (d < 0) throw ParseError("missing dimension line");
  if (static_cast<long>(gens.size()) != d)
    throw ParseError("expected " + std::to_string(d) + " generators, found " + std::to_string(gens.size()));
  return IntMatrix::from_columns(gens);
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  const std::string bytes = buf.str();
  MatrixFile out;
  out.path = path;
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(bytes);
  out.hash = hex.str();
  try {
    out.generators = parse_matrix(bytes);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  return out;
}

std::string format_matrix(const IntMatrix& a) {
  std::ostringstream out;
  out << a.cols() << '\n';
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) out << (i ? " " : "") << a(i, j).get_str();
    out << '\n';
  }
  return out.str();
}

json integer_to_json(const Integer& x) {
  if (mpz_fits_slong_p(x.get_mpz_t()) != 0) return json(static_cast<std::int64_t>(x.get_si()));
  return json(x.get_str());
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad integer string in JSON");
    return x;
  }
  throw ParseError("expected an integer in JSON");
}

json cone_to_json(const SignedCone& c) {
  json gens = json::array();
  for (std::size_t j = 0; j < c.generators.cols(); ++j) {
    json g = json::array();
    for (const auto& x : c.generators.column(j)) g.push_back(integer_to_json(x));
    gens.push_back(std::move(g));
  }
  return {{"sign", c.sign}, {"generators", std::move(gens)}};
}

SignedCone cone_from_json(const json& j) {
  SignedCone c;
  c.sign = j.at("sign").get<int>();
  if (c.sign != 1 && c.sign != -1) throw ParseError("cone sign must be +1 or -1");
  std::vector<IntVector> gens;
  for (const auto& g : j.at("generators")) {
    IntVector v;
    for (const auto& x : g) v.push_back(integer_from_json(x));
    gens.push_back(std::move(v));
  }
  c.generators = IntMatrix::from_columns(gens);
  return c;
}

json stats_to_json(const DecompositionStats& s) {
  return {{"cones_emitted", s.cones_emitted},   {"lll_calls", s.lll_calls},
          {"space_switches", s.space_switches}, {"nodes_processed", s.nodes_processed},
          {"max_depth", s.max_depth},           {"elapsed_ms", s.elapsed_ms},
          {"root_index", s.root_index.get_str()}};
}

json config_to_json(const StrategyConfig& cfg) {
  json j{{"strategy", std::string(to_string(cfg.strategy))},
         {"norm", std::string(to_string(cfg.norm))},
         {"adjust", cfg.adjust},
         {"lll_delta", cfg.lll_delta.get_str()},
         {"threads", cfg.threads}};
  j["max_cones"] = cfg.max_cones ? json(*cfg.max_cones) : json(nullptr);
  j["max_depth"] = cfg.max_depth ? json(*cfg.max_depth) : json(nullptr);
  j["max_seconds"] = cfg.max_seconds ? json(*cfg.max_seconds) : json(nullptr);
  return j;
}

std::vector<SignedCone> cones_from_record(const json& record) {
  std::vector<SignedCone> out;
  for (const auto& c : record.at("sign_cone_pairs")) out.push_back(cone_from_json(c));
  return out;
}

}  // namespace conedec
