#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "paretosdp/polynomial.hpp"
#include "paretosdp/relax.hpp"

namespace paretosdp {

enum class SolveStatus { Optimal, Infeasible, Unbounded, MaxIter, NumericalTrouble };

std::string to_string(SolveStatus s);

struct SolverOptions {
  /// Relative duality gap |p - d| / (1 + |p| + |d|).
  double gap_tol = 1e-7;
  /// Relative primal and dual residual norms.
  double feas_tol = 1e-7;
  int max_iter = 200;
  /// Iteration log on standard error.
  bool verbose = false;
};

/// Result of a moment SDP solve.
///
/// The moment problem  min c'z  s.t. F_b(z) PSD, z[e_k] = a_k  is paired with
/// its SOS dual  max sum_k q_k a_k  s.t. A(X) + E'q = c, X_b PSD. The
/// multipliers q are reported in the order of MomentSDP::equalities, so for a
/// parametric relaxation q_coeffs[k] is the coefficient of y^k in q(y).
struct SdpSolution {
  SolveStatus status = SolveStatus::NumericalTrouble;
  Eigen::VectorXd z;
  std::vector<double> q_coeffs;
  double objective_primal = 0.0;
  double objective_dual = 0.0;
  double gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  /// Gram matrices of the SOS multipliers, one per block.
  std::vector<Eigen::MatrixXd> dual_blocks;

  /// Optimal, or stopped at the iteration limit with a gap that still makes
  /// the dual polynomial a near-optimal certificate.
  bool usable() const;
};

/// Primal-dual path-following interior-point method with Nesterov-Todd
/// scaling and Mehrotra predictor-corrector steps. Dense linear algebra;
/// single-threaded and deterministic.
SdpSolution solve(const MomentSDP& sdp, const SolverOptions& opts = {});

/// q_{2d}(y) = sum_k q_k y^k from a parametric relaxation of order d.
///
/// Throws SolverError when the solution carries no usable multipliers, or
/// when the gap is too large for q to be 1/d-optimal.
Polynomial extract_dual_polynomial(const SdpSolution& sol, int d);

}  // namespace paretosdp
