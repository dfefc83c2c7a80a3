#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "paretosdp/density.hpp"
#include "paretosdp/errors.hpp"
#include "paretosdp/pipeline.hpp"
#include "paretosdp/problem_io.hpp"
#include "paretosdp/scalarize.hpp"

namespace {

using namespace paretosdp;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 2, kInfeasible = 3, kSolver = 4 };

struct Common {
  std::string file;
  std::string out_format = "csv";
  std::string out_path;
  int order = 5;
  int grid = 100;
  double gap_tol = 1e-7;
  double feas_tol = 1e-7;
  int max_iter = 200;
  std::optional<std::uint64_t> seed;
  bool verbose = false;

  SolverOptions solver() const {
    SolverOptions o;
    o.gap_tol = gap_tol;
    o.feas_tol = feas_tol;
    o.max_iter = max_iter;
    o.verbose = verbose;
    return o;
  }

  PipelineOptions pipeline() const {
    PipelineOptions p;
    p.solver = solver();
    if (const char* t = std::getenv("PARETO_THREADS")) {
      const int n = std::atoi(t);
      if (n > 0) p.threads = static_cast<unsigned>(n);
    }
    return p;
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_grid, bool with_format) {
  cmd->add_option("file", c.file, "problem file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--order", c.order, "relaxation order d")->check(CLI::PositiveNumber);
  if (with_grid) cmd->add_option("--grid", c.grid, "number of lambda samples N")->check(CLI::Range(2, 1000000));
  if (with_format) cmd->add_option("--out", c.out_format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-o,--output", c.out_path, "write to this file instead of standard output");
  cmd->add_option("--gap-tol", c.gap_tol, "relative duality gap tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--feas-tol", c.feas_tol, "relative feasibility tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iter", c.max_iter, "interior-point iteration limit")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "override the seed of a generated instance");
  cmd->add_flag("--verbose", c.verbose, "solver log and stage timings on standard error");
}

BicriteriaProblem load(const Common& c) {
  ProblemFile f = load_problem(c.file);
  if (c.seed) {
    if (!f.generator) throw std::invalid_argument("--seed only applies to generated instances");
    f.generator->seed = *c.seed;
    f.problem = make_random_box_qp(f.generator->n, f.generator->seed);
  }
  return f.problem;
}

void write(const Common& c, const std::string& text) {
  if (c.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out_path);
  if (!out) throw std::runtime_error("cannot write '" + c.out_path + "'");
  out << text;
}

void report_times(const Common& c, const ParetoRun& run) {
  if (!c.verbose) return;
  std::cerr << "build " << run.times.build << " s, assemble " << run.times.assemble << " s, solve "
            << run.times.solve << " s, recover " << run.times.recover << " s\n";
}

int solver_failure(const ParetoRun& run) {
  std::cerr << "error: solver stopped with status " << to_string(run.status) << " (gap "
            << run.gap << ")\n";
  return run.status == SolveStatus::Infeasible ? kInfeasible : kSolver;
}

json density_json(const DensityEstimate& h) {
  return {{"degree", h.s}, {"monomial", h.coeffs}, {"legendre", h.legendre}};
}

int cmd_bounds(const Common& c, int which) {
  const BicriteriaProblem prob = load(c);
  const CriterionBounds b = criterion_bounds(prob, which, c.order, c.solver());
  json j = {{"which", which}, {"order", c.order}, {"lower", b.lower}, {"upper", b.upper}};
  write(c, j.dump(2) + "\n");
  return kOk;
}

int cmd_curve(const Common& c, const std::string& method_tag, int s) {
  const Method method = parse_method(method_tag);
  if (method == Method::Sublevel) throw std::invalid_argument("curve takes --method a or b; use 'under' for method c");
  const BicriteriaProblem prob = load(c);
  const ParetoRun run = run_method_ab(prob, method, c.order, s, c.pipeline());
  report_times(c, run);
  if (!run.has_outputs()) return solver_failure(run);
  if (run.h1->ill_conditioned) {
    std::cerr << "warning: density degree " << s << " is close to the double-precision limit\n";
  }
  const auto grid = uniform_grid(c.grid);
  const auto curve = parametric_curve(*run.h1, *run.h2, c.grid);
  if (c.out_format == "json") {
    json pts = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      pts.push_back({{"lambda", grid[i]}, {"h1", curve[i].first}, {"h2", curve[i].second}});
    }
    json j = {{"method", std::string(1, method_tag[0])},
              {"order", c.order},
              {"status", to_string(run.status)},
              {"rho_primal", run.rho_primal},
              {"rho_dual", run.rho_dual},
              {"gap", run.gap},
              {"h1", density_json(*run.h1)},
              {"h2", density_json(*run.h2)},
              {"moments1", run.m1.values},
              {"moments2", run.m2.values},
              {"curve", pts}};
    write(c, j.dump(2) + "\n");
    return kOk;
  }
  std::string csv = "lambda,h1,h2\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv += format_double(grid[i]) + "," + format_double(curve[i].first) + "," +
           format_double(curve[i].second) + "\n";
  }
  write(c, csv);
  return kOk;
}

int cmd_under(const Common& c) {
  const BicriteriaProblem prob = load(c);
  const ParetoRun run = run_method_c(prob, c.order, c.pipeline());
  report_times(c, run);
  if (!run.has_outputs()) return solver_failure(run);
  const auto grid = uniform_grid(c.grid);
  std::vector<double> q(static_cast<std::size_t>(2 * c.order + 1), 0.0);
  for (const auto& [m, coef] : run.q->terms()) q[static_cast<std::size_t>(m.degree())] = coef;
  if (c.out_format == "json") {
    json pts = json::array();
    for (double l : grid) {
      pts.push_back({{"lambda", l}, {"f1_of_lambda", run.f1_level(l)}, {"q2d", run.q->evaluate(std::vector<double>{l})}});
    }
    json j = {{"order", c.order},
              {"status", to_string(run.status)},
              {"a1", run.data.a1},
              {"b1", run.data.b1},
              {"rho_primal", run.rho_primal},
              {"rho_dual", run.rho_dual},
              {"gap", run.gap},
              {"q_coeffs", q},
              {"curve", pts}};
    write(c, j.dump(2) + "\n");
    return kOk;
  }
  std::string csv = "lambda,f1_of_lambda,q2d\n";
  for (double l : grid) {
    csv += format_double(l) + "," + format_double(run.f1_level(l)) + "," +
           format_double(run.q->evaluate(std::vector<double>{l})) + "\n";
  }
  write(c, csv);
  return kOk;
}

int cmd_discretize(const Common& c, const std::string& method_tag) {
  const BicriteriaProblem prob = load(c);
  const DiscretizationTable t = discretize(prob, parse_method(method_tag), c.grid, c.order, c.pipeline());
  std::string csv = "lambda,value,f1_star,f2_star,status\n";
  int suspects = 0;
  for (const auto& r : t.rows) {
    csv += format_double(r.lambda) + "," + format_double(r.value) + "," +
           format_double(r.f1_star) + "," + format_double(r.f2_star) + "," +
           r.status_label() + "\n";
    suspects += r.non_unique_suspect ? 1 : 0;
  }
  write(c, csv);
  if (suspects > 0) std::cerr << "warning: " << suspects << " rows look like non-unique minimizers\n";
  if (t.optimal_fraction() < 0.9) {
    std::cerr << "error: only " << 100.0 * t.optimal_fraction() << "% of rows solved to optimality\n";
    return kSolver;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pareto curve approximation for bicriteria polynomial problems"};
  app.require_subcommand(1);

  Common c;
  int which = 1;
  std::string method = "a";
  int s = 6;

  auto* bounds = app.add_subcommand("bounds", "relaxation bounds on one criterion over S");
  add_common(bounds, c, false, false);
  bounds->add_option("--which", which, "criterion index")->check(CLI::IsMember({1, 2}));

  auto* curve = app.add_subcommand("curve", "density estimates h1, h2 of the Pareto curve (methods a, b)");
  add_common(curve, c, true, true);
  curve->add_option("--method", method, "scalarization")->check(CLI::IsMember({"a", "b"}));
  curve->add_option("--density-degree", s, "degree s of h1 and h2")->check(CLI::NonNegativeNumber);

  auto* under = app.add_subcommand("under", "polynomial underestimator of lambda -> f2*(lambda) (method c)");
  add_common(under, c, true, true);

  auto* disc = app.add_subcommand("discretize", "solve the scalarized problem on a lambda grid");
  add_common(disc, c, true, false);
  disc->add_option("--method", method, "scalarization")->check(CLI::IsMember({"a", "b", "c"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*bounds) return cmd_bounds(c, which);
    if (*curve) return cmd_curve(c, method, s);
    if (*under) return cmd_under(c);
    if (*disc) return cmd_discretize(c, method);
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const DegenerateProblemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInfeasible;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolver;
  }
  return kUsage;
}
