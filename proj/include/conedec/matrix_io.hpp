#pragma once

// Matrix files and JSON run records.
//
// Matrix file: first non-comment line holds d, then d lines of d integers,
// one generator per line. Lines starting with '#' and blank lines are skipped.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "conedec/cone_core.hpp"
#include "conedec/decomposer.hpp"
#include "conedec/exact_linalg.hpp"

namespace conedec {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct MatrixFile {
  std::string path;
  std::string hash;  ///< FNV-1a 64 of the raw bytes, hex
  IntMatrix generators;
  [[nodiscard]] std::size_t dim() const { return generators.cols(); }
};

std::uint64_t fnv1a64(std::string_view bytes);

/// Parses the matrix file format; column j of the result is line j.
IntMatrix parse_matrix(std::string_view text);

MatrixFile read_matrix_file(const std::string& path);

/// Inverse of parse_matrix.
std::string format_matrix(const IntMatrix& a);

/// Integers that fit in int64 become JSON numbers, larger ones strings.
nlohmann::json integer_to_json(const Integer& x);
Integer integer_from_json(const nlohmann::json& j);

/// Generators listed as rows, one per generator.
nlohmann::json cone_to_json(const SignedCone& c);
SignedCone cone_from_json(const nlohmann::json& j);

nlohmann::json stats_to_json(const DecompositionStats& s);
nlohmann::json config_to_json(const StrategyConfig& cfg);

/// Reads the sign_cone_pairs array of a run record.
std::vector<SignedCone> cones_from_record(const nlohmann::json& record);

}  // namespace conedec
