#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "paretosdp/problem.hpp"

namespace paretosdp {

/// Seeded random instance: f_j = x'Q_j x / n^2 - q_j'x / n on [-1, 1]^n, with
/// Q_j symmetric and all entries uniform in [-1, 1].
struct GeneratorSpec {
  std::string kind = "random_box_qp";
  int n = 6;
  std::uint64_t seed = 0;

  bool operator==(const GeneratorSpec&) const = default;
};

BicriteriaProblem make_random_box_qp(int n, std::uint64_t seed);

/// A problem file: term lists for f1, f2 and the constraints, or a generator.
struct ProblemFile {
  std::vector<std::string> variables;
  BicriteriaProblem problem;
  std::optional<GeneratorSpec> generator;

  bool operator==(const ProblemFile& other) const;
};

/// Throws std::invalid_argument with the offending field on malformed input.
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);
std::string emit_problem(const ProblemFile& file);

/// Shortest round-trip decimal representation, independent of the locale.
std::string format_double(double v);

}  // namespace paretosdp
