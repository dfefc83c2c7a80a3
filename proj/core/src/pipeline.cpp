#include "paretosdp/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "paretosdp/errors.hpp"
#include "paretosdp/scalarize.hpp"

namespace paretosdp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Relative eigenvalue threshold for the rank of the order-one moment matrix.
constexpr double kRankTol = 1e-4;

void check_density_degree(const BicriteriaProblem& prob, int d, int s) {
  const int deg = std::max(prob.f1.degree(), prob.f2.degree());
  if (s < 0 || s > 2 * d - deg) {
    std::ostringstream os;
    os << "density degree s=" << s << " must satisfy 0 <= s <= 2d - max(deg f1, deg f2) = "
       << 2 * d << " - " << deg << " = " << 2 * d - deg << "; lower s or raise the order d";
    throw std::invalid_argument(os.str());
  }
}

int order_one_rank(const MomentSDP& sdp, const Eigen::VectorXd& z) {
  const Basis rows(sdp.z_basis.nvars(), 1);
  const Eigen::Index k = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      m(r, c) = z[static_cast<Eigen::Index>(sdp.z_basis.position(rows[static_cast<std::size_t>(r)] * rows[static_cast<std::size_t>(c)]))];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  if (!(top > 0.0)) return 0;
  return static_cast<int>((ev.array() > kRankTol * top).count());
}

}  // namespace

MomentVector extract_generalized_moments(const MomentSDP& sdp, std::span<const double> z,
                                         const Polynomial& f, int s, int criterion) {
  const std::size_t nv = sdp.z_basis.nvars();
  const Polynomial lifted = f.nvars() == nv ? f : f.embed(nv, 1);
  const int limit = 2 * sdp.order - lifted.degree();
  if (s < 0 || s > limit) {
    std::ostringstream os;
    os << "extract_generalized_moments: s=" << s << " needs s <= 2d - deg f = " << limit
       << "; increase the relaxation order d";
    throw std::invalid_argument(os.str());
  }
  MomentVector m;
  m.s = s;
  m.criterion = criterion;
  const Polynomial y = Polynomial::variable(nv, 0);
  Polynomial yk = Polynomial::constant(nv, 1.0);
  for (int k = 0; k <= s; ++k) {
    m.values.push_back(eval_linear_functional(sdp, z, yk * lifted));
    yk = yk * y;
  }
  return m;
}

BicriteriaProblem unit_ball_scaled(const BicriteriaProblem& prob) {
  prob.validate();
  const std::vector<double> factors(prob.nvars(), std::sqrt(prob.box_radius_sq));
  BicriteriaProblem out;
  out.f1 = prob.f1.scale_variables(factors);
  out.f2 = prob.f2.scale_variables(factors);
  for (const auto& g : prob.constraints) out.constraints.push_back(g.scale_variables(factors));
  out.box_radius_sq = 1.0;
  return out;
}

namespace {

int bounds_order(const BicriteriaProblem& prob, const PipelineOptions& opts) {
  if (opts.bounds_order > 0) return opts.bounds_order;
  const auto s = feasible_set_constraints(prob);
  const int d0 = std::max(min_order(prob.f1, s), min_order(prob.f2, s));
  // The sublevel bound b1 also carries f2 as a constraint; min_order covers it via f2.
  return std::max(kDefaultBoundsOrder, d0);
}

struct Prepared {
  BicriteriaProblem prob;
  ParametricPOP pop;
};

Prepared prepare(const BicriteriaProblem& prob, Method method, const PipelineOptions& opts) {
  prob.validate();
  Prepared p;
  p.prob = opts.normalize ? unit_ball_scaled(prob) : prob;
  p.pop = build(p.prob, method, bounds_order(p.prob, opts), opts.solver);
  return p;
}

void record(ParetoRun& run, const SdpSolution& sol) {
  run.status = sol.status;
  run.iterations = sol.iterations;
  run.rho_primal = sol.objective_primal;
  run.rho_dual = sol.objective_dual;
  run.gap = sol.gap;
}

}  // namespace

ParetoRun run_method_ab(const BicriteriaProblem& prob, Method method, int d, int s,
                        const PipelineOptions& opts) {
  if (method == Method::Sublevel) {
    throw std::invalid_argument("run_method_ab: method c yields an underestimator, use run_method_c");
  }
  prob.validate();
  check_density_degree(prob, d, s);
  ParetoRun run;
  run.method = method;
  run.relax_order = d;
  run.density_degree = s;

  auto t = Clock::now();
  const Prepared p = prepare(prob, method, opts);
  run.data = p.pop.data;
  run.times.build = seconds_since(t);

  t = Clock::now();
  const MomentSDP sdp = assemble(p.pop, d);
  run.times.assemble = seconds_since(t);

  t = Clock::now();
  const SdpSolution sol = solve(sdp, opts.solver);
  run.times.solve = seconds_since(t);
  record(run, sol);
  if (!sol.usable()) return run;

  t = Clock::now();
  const std::span<const double> z(sol.z.data(), static_cast<std::size_t>(sol.z.size()));
  run.m1 = extract_generalized_moments(sdp, z, p.pop.lift(p.prob.f1), s, 1);
  run.m2 = extract_generalized_moments(sdp, z, p.pop.lift(p.prob.f2), s, 2);
  run.h1 = recover_density(run.m1);
  run.h2 = recover_density(run.m2);
  run.times.recover = seconds_since(t);
  return run;
}

ParetoRun run_method_c(const BicriteriaProblem& prob, int d, const PipelineOptions& opts) {
  ParetoRun run;
  run.method = Method::Sublevel;
  run.relax_order = d;

  auto t = Clock::now();
  const Prepared p = prepare(prob, Method::Sublevel, opts);
  run.data = p.pop.data;
  run.times.build = seconds_since(t);

  t = Clock::now();
  const MomentSDP sdp = assemble(p.pop, d);
  run.times.assemble = seconds_since(t);

  t = Clock::now();
  const SdpSolution sol = solve(sdp, opts.solver);
  run.times.solve = seconds_since(t);
  record(run, sol);
  if (!sol.usable()) return run;

  t = Clock::now();
  try {
    run.q = extract_dual_polynomial(sol, d);
  } catch (const SolverError&) {
    run.q.reset();
  }
  run.times.recover = seconds_since(t);
  return run;
}

std::string DiscretizationRow::status_label() const {
  std::string s = to_string(status);
  if (non_unique_suspect) s += "+non-unique-suspect";
  return s;
}

double DiscretizationTable::optimal_fraction() const {
  if (rows.empty()) return 0.0;
  const auto ok = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.ok(); });
  return static_cast<double>(ok) / static_cast<double>(rows.size());
}

DiscretizationTable discretize(const BicriteriaProblem& prob, Method method, int n, int d,
                               const PipelineOptions& opts) {
  if (n < 2) throw std::invalid_argument("discretize: the grid needs at least 2 points");
  const Prepared p = prepare(prob, method, opts);
  const std::size_t nx = p.pop.nvars() - 1;  // x and, for method b, omega
  const Polynomial f1 = p.prob.f1.embed(nx, 0);
  const Polynomial f2 = p.prob.f2.embed(nx, 0);
  const std::vector<double> grid = uniform_grid(n);

  DiscretizationTable table;
  table.method = method;
  table.order = d;
  table.data = p.pop.data;
  table.rows.resize(grid.size());

  auto solve_row = [&](std::size_t i) {
    DiscretizationRow& row = table.rows[i];
    row.lambda = grid[i];
    const Polynomial objective = p.pop.objective.substitute(0, row.lambda);
    std::vector<Polynomial> constraints;
    for (const auto& c : p.pop.constraints) {
      Polynomial frozen = c.substitute(0, row.lambda);
      if (frozen.degree() > 0) {
        constraints.push_back(std::move(frozen));
      } else if (frozen.coefficient(Monomial::constant(nx)) < 0.0) {
        row.status = SolveStatus::Infeasible;
        return;
      }
    }
    const StaticSolve r = minimize_relaxed(objective, constraints, d, opts.solver);
    row.status = r.sol.status;
    row.value = r.sol.objective_primal;
    const std::span<const double> z(r.sol.z.data(), static_cast<std::size_t>(r.sol.z.size()));
    row.f1_star = eval_linear_functional(r.sdp, z, f1);
    row.f2_star = eval_linear_functional(r.sdp, z, f2);
    row.non_unique_suspect = row.ok() && order_one_rank(r.sdp, r.sol.z) > 1;
  };

  unsigned workers = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(grid.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) solve_row(i);
    return table;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < grid.size(); i = next++) solve_row(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return table;
}

}  // namespace paretosdp
