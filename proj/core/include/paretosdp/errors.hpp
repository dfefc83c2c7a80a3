#pragma once

#include <stdexcept>
#include <string>

namespace paretosdp {

/// A relaxation turned out infeasible (empty S, or a ball radius too small).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The two criteria do not conflict: the sublevel interval [a1, b1] collapses.
class DegenerateProblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The interior-point solver stopped without a usable solution.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace paretosdp
