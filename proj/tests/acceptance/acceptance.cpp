// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "paretosdp/density.hpp"
#include "paretosdp/pipeline.hpp"
#include "paretosdp/problem_io.hpp"
#include "paretosdp/relax.hpp"
#include "paretosdp/scalarize.hpp"
#include "paretosdp/sdp_solver.hpp"

using namespace paretosdp;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

BicriteriaProblem example(int k) {
  return load_problem(std::string(PARETOSDP_DATA_DIR) + "/example" + std::to_string(k) + ".json").problem;
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + why;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

double eval1(const Polynomial& q, double l) { return q.evaluate(std::vector<double>{l}); }

// Hierarchy on the weighted sum of problem 1.
Verdict hierarchy() {
  Verdict v;
  const auto t0 = Clock::now();
  const BicriteriaProblem p = example(1);
  std::vector<double> rho;
  for (int d = 2; d <= 5; ++d) {
    const ParetoRun r = run_method_ab(p, Method::WeightedSum, d, 0);
    v.require(r.has_outputs(), "d=" + std::to_string(d) + " status " + to_string(r.status));
    rho.push_back(r.rho_primal);
    v.note(fmt("rho_%g=%.8f", d, r.rho_primal));
  }
  for (std::size_t i = 1; i < rho.size(); ++i) {
    v.require(rho[i] >= rho[i - 1] - 2e-7, "not monotone at d=" + std::to_string(i + 2));
  }
  const auto g = oracle::grid(1000);
  std::vector<double> f;
  for (double l : g) f.push_back(oracle::example1_weighted_sum(l).value);
  const double integral = oracle::trapezoid(g, f);
  v.require(rho.back() <= integral + 1e-3, fmt("rho_5 above oracle integral %.8f", integral));
  const double t = since(t0);
  v.require(t < 120.0, fmt("took %.1f s", t));
  v.note(fmt("oracle %.8f, %.1f s", integral, t));
  return v;
}

// Underestimators of the sublevel value function of problem 2.
Verdict underestimation() {
  Verdict v;
  const BicriteriaProblem p = example(2);
  const auto g = oracle::grid(100);
  std::vector<double> fstar;
  double prev_gap = 1e300;
  ScalarizationData data0;
  for (int d = 2; d <= 4; ++d) {
    const ParetoRun r = run_method_c(p, d);
    if (!r.q) {
      v.require(false, "d=" + std::to_string(d) + " status " + to_string(r.status));
      continue;
    }
    if (fstar.empty()) {
      data0 = r.data;
      for (double l : g) {
        const oracle::Point o = oracle::example2_sublevel(r.f1_level(l));
        v.require(o.feasible, fmt("oracle found no point at lambda=%g", l));
        fstar.push_back(o.value);
      }
    }
    v.require(r.data.a1 == data0.a1 && r.data.b1 == data0.b1, "scalarization changed with d");
    double worst = -1e300;
    std::vector<double> gap;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double q = eval1(*r.q, g[i]);
      worst = std::max(worst, q - fstar[i]);
      gap.push_back(std::abs(fstar[i] - q));
    }
    const double l1 = oracle::trapezoid(g, gap);
    v.require(worst <= 1e-5, fmt("d=%g: q exceeds f* by %.2e", d, worst));
    v.require(l1 <= prev_gap + 2e-6, fmt("d=%g: L1 gap grew to %.3e", d, l1));
    prev_gap = l1;
    v.note(fmt("d=%g L1=%.4e", d, l1));

    if (d == 2) {
      // q'' sign change on (0, 1).
      std::vector<double> c(5, 0.0);
      for (const auto& [m, coef] : r.q->terms()) c[static_cast<std::size_t>(m.degree())] = coef;
      auto q2 = [&](double l) { return 2 * c[2] + 6 * c[3] * l + 12 * c[4] * l * l; };
      bool pos = false, neg = false;
      for (double l : oracle::grid(1001)) {
        if (l <= 0.0 || l >= 1.0) continue;
        pos |= q2(l) > 0;
        neg |= q2(l) < 0;
      }
      v.require(pos && neg, "q4'' keeps one sign");
    }
  }
  return v;
}

// Generalized moments at d = 5 against a discretized problem 1.
Verdict moment_fidelity() {
  Verdict v;
  const BicriteriaProblem p = example(1);
  const ParetoRun r = run_method_ab(p, Method::WeightedSum, 5, 4);
  if (!r.has_outputs()) {
    v.require(false, "d=5 status " + to_string(r.status));
    return v;
  }
  const DiscretizationTable t = discretize(p, Method::WeightedSum, 1000, 4);
  v.require(t.optimal_fraction() >= 0.99, fmt("only %.1f%% rows optimal", 100 * t.optimal_fraction()));
  std::vector<double> g;
  for (const auto& row : t.rows) g.push_back(row.lambda);
  double worst = 0.0;
  for (int k = 0; k <= 4; ++k) {
    std::vector<double> y1, y2;
    for (const auto& row : t.rows) {
      y1.push_back(std::pow(row.lambda, k) * row.f1_star);
      y2.push_back(std::pow(row.lambda, k) * row.f2_star);
    }
    worst = std::max(worst, std::abs(r.m1.values[static_cast<std::size_t>(k)] - oracle::trapezoid(g, y1)));
    worst = std::max(worst, std::abs(r.m2.values[static_cast<std::size_t>(k)] - oracle::trapezoid(g, y2)));
  }
  v.require(worst <= 1e-3, "tolerance 1e-3 exceeded");
  v.note(fmt("max deviation %.3e", worst));
  return v;
}

// Density recovery from exact moments.
Verdict inverse_moments() {
  Verdict v;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto g = oracle::grid(20001);
  auto l2 = [&](const std::function<double(double)>& a, const std::function<double(double)>& b) {
    std::vector<double> y;
    for (double l : g) y.push_back((a(l) - b(l)) * (a(l) - b(l)));
    return oracle::trapezoid(g, y);
  };
  double worst_sup = 0.0, worst_margin = 1e300;
  for (int s : {2, 4, 6, 8}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> p(static_cast<std::size_t>(s + 1));
      for (auto& c : p) c = u(rng);
      MomentVector m;
      m.s = s;
      m.values = oracle::polynomial_moments(p, s);
      const DensityEstimate h = recover_density(m);
      for (double l : oracle::grid(2001)) worst_sup = std::max(worst_sup, std::abs(h(l) - oracle::horner(p, l)));
    }
    // A non-polynomial target: |2 lambda - 1|.
    MomentVector m;
    m.s = s;
    for (int k = 0; k <= s; ++k) m.values.push_back(oracle::abs_kink_moment(k));
    const DensityEstimate h = recover_density(m);
    auto target = [](double l) { return std::abs(2 * l - 1); };
    const double best = l2([&](double l) { return h(l); }, target);
    for (int c = 0; c < 20; ++c) {
      std::vector<double> r(h.coeffs);
      const double step = std::pow(10.0, -(c % 5));
      for (auto& x : r) x += step * u(rng);
      const double other = l2([&](double l) { return oracle::horner(r, l); }, target);
      worst_margin = std::min(worst_margin, other - best);
    }
  }
  v.require(worst_sup <= 1e-6, fmt("sup error %.2e", worst_sup));
  v.require(worst_margin >= -1e-8, fmt("a competitor is closer by %.2e", -worst_margin));
  v.note(fmt("sup error %.2e, smallest margin %.2e", worst_sup, worst_margin));
  return v;
}

// RMS distance of the s = 4, 6, 8 curves to the discretized problem 1.
Verdict curve_convergence() {
  Verdict v;
  const BicriteriaProblem p = example(1);
  const DiscretizationTable t = discretize(p, Method::WeightedSum, 100, 5);
  v.require(t.optimal_fraction() >= 0.9, "discretization failed");
  double prev = 1e300;
  for (int s : {4, 6, 8}) {
    const ParetoRun r = run_method_ab(p, Method::WeightedSum, 5, s);
    if (!r.has_outputs()) {
      v.require(false, "s=" + std::to_string(s) + " status " + to_string(r.status));
      return v;
    }
    double sum = 0.0;
    int count = 0;
    for (const auto& row : t.rows) {
      if (!row.ok()) continue;
      const double e1 = (*r.h1)(row.lambda) - row.f1_star;
      const double e2 = (*r.h2)(row.lambda) - row.f2_star;
      sum += e1 * e1 + e2 * e2;
      ++count;
    }
    const double rms = std::sqrt(sum / count);
    v.require(rms <= 0.99 * prev, fmt("s=%g did not improve by 1%%", s));
    v.note(fmt("s=%g RMS %.4e", s, rms));
    prev = rms;
  }
  return v;
}

// lambda = 0, 0.5, 1 rows of the discretized weighted sum, N = 101.
Verdict endpoints() {
  Verdict v;
  const DiscretizationTable t = discretize(example(1), Method::WeightedSum, 101, 5);
  const struct {
    std::size_t row;
    double want;
  } anchors[] = {{0, -0.4725}, {50, 0.0}, {100, -1.0}};
  for (const auto& a : anchors) {
    const auto& row = t.rows[a.row];
    v.require(row.ok(), fmt("lambda=%g not optimal", row.lambda));
    v.require(std::abs(row.value - a.want) <= 1e-3, fmt("lambda=%g value %.6f", row.lambda, row.value));
    v.note(fmt("f*(%g)=%.6f", row.lambda, row.value));
  }
  return v;
}

// Problem 3 (random box QP, n = 6) with sublevel underestimators at d = 1, 2.
Verdict desk_scale() {
  Verdict v;
  const BicriteriaProblem p = example(3);
  const auto t0 = Clock::now();
  const ParetoRun r1 = run_method_c(p, 1);
  const double t1 = since(t0);
  const auto t2s = Clock::now();
  const ParetoRun r2 = run_method_c(p, 2);
  const double t2 = since(t2s);
  v.require(r1.q.has_value(), "d=1 status " + to_string(r1.status));
  v.require(r2.q.has_value(), "d=2 status " + to_string(r2.status));
  v.require(t1 < 600.0 && t2 < 600.0, fmt("runs took %.0f s and %.0f s", t1, t2));
  if (!r1.q || !r2.q) return v;
  const DiscretizationTable t = discretize(p, Method::Sublevel, 100, 2);
  v.require(t.optimal_fraction() >= 0.9, "discretization failed");
  double order_gap = 1e300, over = -1e300;
  for (const auto& row : t.rows) {
    const double q2 = eval1(*r1.q, row.lambda), q4 = eval1(*r2.q, row.lambda);
    order_gap = std::min(order_gap, q4 - q2);
    if (row.ok()) over = std::max(over, std::max(q2, q4) - row.value);
  }
  v.require(order_gap >= -1e-6, fmt("q4 below q2 by %.2e", -order_gap));
  v.require(over <= 1e-5, fmt("underestimator above the discretization by %.2e", over));
  v.note(fmt("d=1 %.1f s, d=2 %.1f s", t1, t2));
  v.note(fmt("min(q4-q2)=%.2e, max(q-f)=%.2e", order_gap, over));
  return v;
}

// Analytic toy SDPs and PSD blocks at moment vectors of atomic measures.
Verdict solver_suite() {
  Verdict v;
  {
    MomentSDP t;
    t.objective = {0.0, 1.0};
    PsdBlock b(2, "toy");
    b.add(0, 0, 1, 1.0);
    b.add(1, 1, 1, 1.0);
    b.add(0, 1, 0, 1.0);
    t.blocks.push_back(b);
    t.equalities.push_back({0, 1.0});
    const SdpSolution s = solve(t);
    v.require(s.status == SolveStatus::Optimal && s.gap <= 1e-7 && std::abs(s.objective_primal - 1.0) <= 1e-6,
              fmt("2x2 toy: value %.8f gap %.1e", s.objective_primal, s.gap));
  }
  {
    MomentSDP t;
    t.objective = {0.0, 1.0, 1.0};
    PsdBlock b(3, "toy");
    for (std::size_t i = 0; i < 3; ++i) b.add(i, i, 0, 1.0);
    b.add(0, 1, 1, 1.0);
    b.add(1, 2, 2, 1.0);
    t.blocks.push_back(b);
    t.equalities.push_back({0, 1.0});
    const SdpSolution s = solve(t);
    v.require(s.status == SolveStatus::Optimal && s.gap <= 1e-7 &&
                  std::abs(s.objective_primal + std::sqrt(2.0)) <= 1e-6,
              fmt("3x3 toy: value %.8f gap %.1e", s.objective_primal, s.gap));
  }
  {
    // f(y, x) = y: q(y) = y.
    ParametricPOP pop;
    pop.n_prime = 1;
    const Polynomial y = Polynomial::variable(2, 0), x = Polynomial::variable(2, 1);
    const Polynomial one = Polynomial::constant(2, 1.0);
    pop.objective = y;
    pop.constraints = {one - x * x, y, one - y};
    const SdpSolution s = solve(assemble(pop, 2));
    double err = 1e300;
    if (s.usable()) {
      const Polynomial q = extract_dual_polynomial(s, 2);
      err = 0.0;
      for (double l : oracle::grid(21)) err = std::max(err, std::abs(eval1(q, l) - l));
    }
    v.require(s.status == SolveStatus::Optimal && s.gap <= 1e-7 && err <= 1e-3,
              fmt("parameter-only toy: gap %.1e, |q - y| %.1e", s.gap, err));
  }
  // PSD necessity on the weighted sum of problem 1 at d = 3.
  const BicriteriaProblem p = example(1);
  const MomentSDP sdp = assemble(build_weighted_sum(p), 3);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ux(-1.5, 1.0), u01(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int atoms = 1 + trial % 4;
    std::vector<std::vector<double>> pts;
    while (static_cast<int>(pts.size()) < atoms) {
      const double x1 = ux(rng), x2 = x1 * x1 + 1.5 * u01(rng);
      if (oracle::example1_feasible(x1, x2)) pts.push_back({u01(rng), x1, x2});
    }
    std::vector<double> w(static_cast<std::size_t>(atoms));
    for (auto& a : w) a = u01(rng) + 0.05;
    std::vector<double> z(sdp.num_moments(), 0.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
      const auto& e = sdp.z_basis[i].exponents;
      for (int a = 0; a < atoms; ++a) {
        double mono = 1.0;
        for (std::size_t j = 0; j < e.size(); ++j) mono *= std::pow(pts[static_cast<std::size_t>(a)][j], e[j]);
        z[i] += w[static_cast<std::size_t>(a)] * mono;
      }
    }
    for (const auto& block : sdp.blocks) {
      const auto vals = block_values(block, z);
      const auto n = static_cast<Eigen::Index>(block.side());
      const Eigen::MatrixXd m = Eigen::Map<const Eigen::MatrixXd>(vals.data(), n, n);
      const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
      worst = std::min(worst, ev.minCoeff() / std::max(1.0, ev.cwiseAbs().maxCoeff()));
    }
  }
  v.require(worst >= -1e-10, fmt("relative eigenvalue %.2e", worst));
  v.note(fmt("smallest relative eigenvalue %.2e", worst));
  return v;
}

}  // namespace

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  const struct {
    const char* name;
    std::function<Verdict()> run;
  } criteria[] = {
      {"hierarchy monotone, below the integral of f*", hierarchy},
      {"sublevel underestimators, problem 2", underestimation},
      {"generalized moments at d=5", moment_fidelity},
      {"density recovery from exact moments", inverse_moments},
      {"curve converges in s", curve_convergence},
      {"discretization endpoints", endpoints},
      {"random box QP, n=6", desk_scale},
      {"SDP solver toys and PSD necessity", solver_suite},
  };
  int failed = 0;
  int k = 0;
  for (const auto& c : criteria) {
    ++k;
    if (!only.empty() && std::find(only.begin(), only.end(), k) == only.end()) continue;
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %d %s (%.1f s): %s\n", v.pass ? "PASS" : "FAIL", k, c.name, since(t0), v.detail.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  return failed ? 1 : 0;
}
