#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "paretosdp/density.hpp"
#include "paretosdp/problem.hpp"
#include "paretosdp/relax.hpp"
#include "paretosdp/sdp_solver.hpp"

namespace paretosdp {

/// Order of the relaxations behind the criterion bounds of methods b and c,
/// unless the problem needs more. It does not follow the run order, so runs
/// at different orders scalarize the problem identically.
inline constexpr int kDefaultBoundsOrder = 3;

struct PipelineOptions {
  SolverOptions solver;
  /// Overrides kDefaultBoundsOrder when positive.
  int bounds_order = 0;
  /// Solve in u = x / sqrt(M), so that S lies in the unit ball. Values,
  /// generalized moments and q(y) do not depend on this.
  bool normalize = true;
  /// Worker threads for discretize; 0 means hardware concurrency.
  unsigned threads = 0;
};

/// Wall time of each stage in seconds.
struct StageTimes {
  double build = 0.0;
  double assemble = 0.0;
  double solve = 0.0;
  double recover = 0.0;
};

/// One parametric solve and what was recovered from it.
///
/// h1, h2 (methods a, b) or q (method c) are set iff the solver result was
/// usable.
struct ParetoRun {
  Method method = Method::WeightedSum;
  int relax_order = 0;
  int density_degree = 0;
  ScalarizationData data;

  SolveStatus status = SolveStatus::NumericalTrouble;
  int iterations = 0;
  double rho_primal = 0.0;
  double rho_dual = 0.0;
  double gap = 0.0;

  MomentVector m1;
  MomentVector m2;
  std::optional<DensityEstimate> h1;
  std::optional<DensityEstimate> h2;
  std::optional<Polynomial> q;

  StageTimes times;

  bool has_outputs() const { return h1.has_value() || q.has_value(); }
  /// Method c: f1 level a1 + lambda (b1 - a1) matched with q(lambda).
  double f1_level(double lambda) const { return data.a1 + lambda * (data.b1 - data.a1); }
};

/// values[k] = L_z(y^k f_j), k = 0..s. `f` may be given in x alone, in which
/// case it is lifted to the (y, x, ..) variables of the relaxation.
///
/// Throws std::invalid_argument unless s <= 2d - deg f.
MomentVector extract_generalized_moments(const MomentSDP& sdp, std::span<const double> z,
                                         const Polynomial& f, int s, int criterion = 1);

/// x = sqrt(M) u: the same problem with S inside the unit ball.
BicriteriaProblem unit_ball_scaled(const BicriteriaProblem& prob);

/// Methods a and b: one order-d solve, then h_{s,1} and h_{s,2} from the
/// generalized moments of f1 and f2.
ParetoRun run_method_ab(const BicriteriaProblem& prob, Method method, int d, int s,
                        const PipelineOptions& opts = {});

/// Method c: one order-d solve whose multipliers give q_{2d} <= f2*(lambda).
ParetoRun run_method_c(const BicriteriaProblem& prob, int d, const PipelineOptions& opts = {});

struct DiscretizationRow {
  double lambda = 0.0;
  double value = 0.0;
  double f1_star = 0.0;
  double f2_star = 0.0;
  SolveStatus status = SolveStatus::NumericalTrouble;
  /// The order-one moment matrix has numerical rank > 1: the optimal measure
  /// is not close to a single point, so f1_star and f2_star are averages.
  bool non_unique_suspect = false;

  bool ok() const { return status == SolveStatus::Optimal; }
  std::string status_label() const;
};

struct DiscretizationTable {
  Method method = Method::WeightedSum;
  int order = 0;
  ScalarizationData data;
  std::vector<DiscretizationRow> rows;

  double optimal_fraction() const;
};

/// Solves the scalarized problem with lambda frozen at N uniform points,
/// one static order-d relaxation per point. Failed rows keep their status.
DiscretizationTable discretize(const BicriteriaProblem& prob, Method method, int n, int d,
                               const PipelineOptions& opts = {});

}  // namespace paretosdp
