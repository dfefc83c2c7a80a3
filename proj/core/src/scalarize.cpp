#include "paretosdp/scalarize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "paretosdp/errors.hpp"
#include "paretosdp/relax.hpp"

namespace paretosdp {

Polynomial BicriteriaProblem::ball() const {
  const std::size_t n = nvars();
  Polynomial b = Polynomial::constant(n, box_radius_sq);
  for (std::size_t i = 0; i < n; ++i) {
    const Polynomial xi = Polynomial::variable(n, i);
    b -= xi * xi;
  }
  return b;
}

void BicriteriaProblem::validate() const {
  const std::size_t n = f1.nvars();
  if (n == 0) throw std::invalid_argument("problem: at least one decision variable is required");
  if (f2.nvars() != n) throw std::invalid_argument("problem: f1 and f2 have different variable counts");
  for (const auto& g : constraints) {
    if (g.nvars() != n) throw std::invalid_argument("problem: constraint has the wrong number of variables");
  }
  if (!(box_radius_sq > 0.0) || !std::isfinite(box_radius_sq)) {
    throw std::invalid_argument("problem: box_radius_sq must be positive");
  }
}

char method_tag(Method m) {
  switch (m) {
    case Method::WeightedSum: return 'a';
    case Method::Chebyshev: return 'b';
    case Method::Sublevel: return 'c';
  }
  return '?';
}

Method parse_method(std::string_view tag) {
  if (tag == "a" || tag == "A") return Method::WeightedSum;
  if (tag == "b" || tag == "B") return Method::Chebyshev;
  if (tag == "c" || tag == "C") return Method::Sublevel;
  throw std::invalid_argument("unknown method '" + std::string(tag) + "' (expected a, b or c)");
}

StaticSolve minimize_relaxed(const Polynomial& objective, std::span<const Polynomial> constraints,
                             int d, const SolverOptions& opts) {
  StaticSolve out;
  out.sdp = assemble_static(objective, constraints, d);
  out.sol = solve(out.sdp, opts);
  return out;
}

namespace {

double relaxed_min(const Polynomial& objective, std::span<const Polynomial> constraints, int d,
                   const SolverOptions& opts, const char* what) {
  const StaticSolve r = minimize_relaxed(objective, constraints, d, opts);
  if (r.sol.status == SolveStatus::Infeasible) {
    throw InfeasibleError(std::string(what) + ": relaxation is infeasible (empty feasible set or ball radius too small)");
  }
  if (!r.sol.usable()) {
    throw SolverError(std::string(what) + ": solver stopped with status " + to_string(r.sol.status));
  }
  return r.sol.objective_primal;
}

Polynomial lift_x(const Polynomial& p, std::size_t nvars) { return p.embed(nvars, 1); }

// Shared part of every scalarization: S lifted to (y, x, ...) plus y in [0, 1].
std::vector<Polynomial> base_constraints(const BicriteriaProblem& prob, std::size_t nvars) {
  std::vector<Polynomial> out;
  for (const auto& g : feasible_set_constraints(prob)) out.push_back(lift_x(g, nvars));
  const Polynomial y = Polynomial::variable(nvars, 0);
  out.push_back(y);
  out.push_back(Polynomial::constant(nvars, 1.0) - y);
  return out;
}

}  // namespace

std::vector<Polynomial> feasible_set_constraints(const BicriteriaProblem& prob) {
  std::vector<Polynomial> out = prob.constraints;
  out.push_back(prob.ball());
  return out;
}

CriterionBounds criterion_bounds(const BicriteriaProblem& prob, int which, int d,
                                 const SolverOptions& opts) {
  prob.validate();
  if (which != 1 && which != 2) throw std::invalid_argument("criterion_bounds: which must be 1 or 2");
  const Polynomial& f = which == 1 ? prob.f1 : prob.f2;
  const auto s = feasible_set_constraints(prob);
  CriterionBounds b;
  b.lower = relaxed_min(f, s, d, opts, "criterion_bounds");
  b.upper = -relaxed_min(-f, s, d, opts, "criterion_bounds");
  return b;
}

ParametricPOP build_weighted_sum(const BicriteriaProblem& prob) {
  prob.validate();
  ParametricPOP pop;
  pop.n_prime = prob.nvars();
  pop.method = Method::WeightedSum;
  const std::size_t nv = pop.nvars();
  const Polynomial y = Polynomial::variable(nv, 0);
  const Polynomial one = Polynomial::constant(nv, 1.0);
  pop.objective = y * pop.lift(prob.f1) + (one - y) * pop.lift(prob.f2);
  pop.constraints = base_constraints(prob, nv);
  return pop;
}

ParametricPOP build_chebyshev(const BicriteriaProblem& prob, int d_bounds, double margin_fraction,
                              const SolverOptions& opts) {
  prob.validate();
  if (!(margin_fraction >= 0.0)) throw std::invalid_argument("build_chebyshev: margin must be >= 0");
  const CriterionBounds b1 = criterion_bounds(prob, 1, d_bounds, opts);
  const CriterionBounds b2 = criterion_bounds(prob, 2, d_bounds, opts);

  ParametricPOP pop;
  pop.n_prime = prob.nvars() + 1;
  pop.method = Method::Chebyshev;
  pop.data.shift1 = b1.lower - margin_fraction * std::max(0.0, b1.upper - b1.lower);
  pop.data.shift2 = b2.lower - margin_fraction * std::max(0.0, b2.upper - b2.lower);
  const double c = std::max(b1.upper - pop.data.shift1, b2.upper - pop.data.shift2);
  // Both criteria constant: any positive C keeps the ratios in [0, 1].
  pop.data.scale_c = c > 0.0 ? c : 1.0;

  const std::size_t nv = pop.nvars();
  const Polynomial y = Polynomial::variable(nv, 0);
  const Polynomial omega = Polynomial::variable(nv, nv - 1);
  const Polynomial one = Polynomial::constant(nv, 1.0);
  const Polynomial g1 = affine_scale(pop.lift(prob.f1), pop.data.shift1, pop.data.scale_c);
  const Polynomial g2 = affine_scale(pop.lift(prob.f2), pop.data.shift2, pop.data.scale_c);

  pop.objective = omega;
  pop.constraints = base_constraints(prob, nv);
  pop.constraints.push_back(omega - y * g1);
  pop.constraints.push_back(omega - (one - y) * g2);
  pop.constraints.push_back(omega);
  pop.constraints.push_back(one - omega);
  return pop;
}

ParametricPOP build_sublevel(const BicriteriaProblem& prob, int d_bounds, const SolverOptions& opts) {
  prob.validate();
  const auto s = feasible_set_constraints(prob);
  const double a1 = relaxed_min(prob.f1, s, d_bounds, opts, "build_sublevel");
  const double m2 = relaxed_min(prob.f2, s, d_bounds, opts, "build_sublevel");
  const double tol_b = 1e-6 * (1.0 + std::abs(m2));
  auto near_opt = s;
  near_opt.push_back(Polynomial::constant(prob.nvars(), m2 + tol_b) - prob.f2);
  const double b1 = relaxed_min(prob.f1, near_opt, d_bounds, opts, "build_sublevel");
  if (b1 - a1 <= 1e-8 * (1.0 + std::abs(a1))) {
    std::ostringstream os;
    os << "no Pareto trade-off detected (a1 = " << a1 << ", b1 = " << b1 << ")";
    throw DegenerateProblemError(os.str());
  }

  ParametricPOP pop;
  pop.n_prime = prob.nvars();
  pop.method = Method::Sublevel;
  pop.data.a1 = a1;
  pop.data.b1 = b1;
  const std::size_t nv = pop.nvars();
  pop.objective = pop.lift(prob.f2);
  pop.constraints = base_constraints(prob, nv);
  pop.constraints.push_back(Polynomial::variable(nv, 0) - affine_scale(pop.lift(prob.f1), a1, b1 - a1));
  return pop;
}

ParametricPOP build(const BicriteriaProblem& prob, Method method, int d_bounds,
                    const SolverOptions& opts) {
  switch (method) {
    case Method::WeightedSum: return build_weighted_sum(prob);
    case Method::Chebyshev: return build_chebyshev(prob, d_bounds, 1e-3, opts);
    case Method::Sublevel: return build_sublevel(prob, d_bounds, opts);
  }
  throw std::invalid_argument("build: unknown method");
}

}  // namespace paretosdp
