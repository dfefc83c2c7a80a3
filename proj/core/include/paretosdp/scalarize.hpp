#pragma once

#include <span>
#include <vector>

#include "paretosdp/problem.hpp"
#include "paretosdp/relax.hpp"
#include "paretosdp/sdp_solver.hpp"

namespace paretosdp {

struct CriterionBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct StaticSolve {
  MomentSDP sdp;
  SdpSolution sol;
};

/// Order-d relaxation of min { objective : constraints >= 0 } with no parameter.
StaticSolve minimize_relaxed(const Polynomial& objective, std::span<const Polynomial> constraints,
                             int d, const SolverOptions& opts = {});

/// Relaxation bounds lower <= min_S f_j and upper >= max_S f_j from the
/// order-d moment relaxations of min f_j and min -f_j over S.
///
/// Throws InfeasibleError when a relaxation is infeasible and SolverError
/// when the solver gives no usable answer.
CriterionBounds criterion_bounds(const BicriteriaProblem& prob, int which, int d,
                                 const SolverOptions& opts = {});

/// g_1..g_m followed by the redundant ball M - |x|^2.
std::vector<Polynomial> feasible_set_constraints(const BicriteriaProblem& prob);

/// y f1 + (1 - y) f2 over [0, 1] x S.
ParametricPOP build_weighted_sum(const BicriteriaProblem& prob);

/// min omega over omega >= y f~1 / C, omega >= (1 - y) f~2 / C, omega in [0, 1],
/// where f~j = f_j - lower_j + margin_j and margin_j = margin_fraction * (upper_j - lower_j).
ParametricPOP build_chebyshev(const BicriteriaProblem& prob, int d_bounds,
                              double margin_fraction = 1e-3, const SolverOptions& opts = {});

/// min f2 over S with (f1 - a1) / (b1 - a1) <= y.
///
/// a1 is the relaxation lower bound of f1 and b1 the relaxation value of
/// min { f1 : f2 <= min f2 + tol } with tol = 1e-6 (1 + |min f2|). Throws
/// DegenerateProblemError when b1 - a1 <= 1e-8 (1 + |a1|).
ParametricPOP build_sublevel(const BicriteriaProblem& prob, int d_bounds,
                             const SolverOptions& opts = {});

ParametricPOP build(const BicriteriaProblem& prob, Method method, int d_bounds,
                    const SolverOptions& opts = {});

}  // namespace paretosdp
