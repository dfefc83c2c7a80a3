#include <random>
#include <string>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "paretosdp/problem_io.hpp"
#include "paretosdp/relax.hpp"
#include "paretosdp/scalarize.hpp"

using namespace paretosdp;

namespace {

BicriteriaProblem example(int k) {
  return load_problem(std::string(PARETOSDP_DATA_DIR) + "/example" + std::to_string(k) + ".json").problem;
}

double min_eigenvalue(const PsdBlock& b, const std::vector<double>& z) {
  const auto v = block_values(b, z);
  const Eigen::Index n = static_cast<Eigen::Index>(b.side());
  const Eigen::MatrixXd m = Eigen::Map<const Eigen::MatrixXd>(v.data(), n, n);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff();
}

TEST(MinOrder, Examples) {
  EXPECT_EQ(min_order(build_weighted_sum(example(1))), 2);
  ParametricPOP lin;
  lin.n_prime = 2;
  lin.objective = Polynomial::variable(3, 1) + 2.0 * Polynomial::variable(3, 2);
  lin.constraints = {Polynomial::variable(3, 0), Polynomial::constant(3, 1.0) - Polynomial::variable(3, 1)};
  EXPECT_EQ(min_order(lin), 1);
}

TEST(MinOrder, SublevelPopOfExample2) {
  // The sublevel constraint has degree 2 and g1 degree 3.
  ParametricPOP pop;
  pop.n_prime = 2;
  const BicriteriaProblem p = example(2);
  pop.objective = pop.lift(p.f2);
  for (const auto& g : feasible_set_constraints(p)) pop.constraints.push_back(pop.lift(g));
  pop.constraints.push_back(Polynomial::variable(3, 0) - pop.lift(p.f1));
  EXPECT_EQ(min_order(pop), 2);
}

TEST(Assemble, LebesgueBlockWithoutConstraints) {
  ParametricPOP pop;
  pop.n_prime = 1;
  pop.objective = Polynomial::variable(2, 1);
  const MomentSDP sdp = assemble(pop, 1);
  ASSERT_EQ(sdp.blocks.size(), 1u);
  ASSERT_EQ(sdp.equalities.size(), 3u);
  // Substitute the pinned moments of y and read the (1, y) sub-block.
  std::vector<double> z(sdp.num_moments(), 0.0);
  for (const auto& e : sdp.equalities) z[e.index] = e.value;
  const auto v = block_values(sdp.blocks[0], z);
  const std::size_t n = sdp.blocks[0].side();
  EXPECT_DOUBLE_EQ(v[0 * n + 0], 1.0);
  EXPECT_DOUBLE_EQ(v[0 * n + 1], 0.5);
  EXPECT_DOUBLE_EQ(v[1 * n + 1], 1.0 / 3.0);
}

TEST(Assemble, BlockSidesAndEqualities) {
  const ParametricPOP pop = build_weighted_sum(example(1));
  const MomentSDP sdp = assemble(pop, 2);
  EXPECT_EQ(sdp.blocks[0].side(), 10u);  // binomial(5, 2)
  EXPECT_EQ(sdp.num_moments(), 35u);     // binomial(7, 4)
  // Constraint order: g1, g2, ball, y, 1 - y; the last two are affine.
  ASSERT_EQ(sdp.blocks.size(), 6u);
  EXPECT_EQ(sdp.blocks[4].side(), 4u);
  EXPECT_EQ(sdp.blocks[5].side(), 4u);
  EXPECT_EQ(sdp.blocks[1].side(), 4u);  // quadratic g1, v = 1
  ASSERT_EQ(sdp.equalities.size(), 5u);
  for (int k = 0; k <= 4; ++k) {
    const auto& e = sdp.equalities[static_cast<std::size_t>(k)];
    EXPECT_EQ(sdp.z_basis[e.index], Monomial::unit(3, 0, k));
    EXPECT_DOUBLE_EQ(e.value, 1.0 / (k + 1));
  }
  EXPECT_THROW(assemble(pop, 1), std::invalid_argument);
}

TEST(Assemble, ObjectiveMatchesLinearFunctional) {
  const ParametricPOP pop = build_weighted_sum(example(1));
  const MomentSDP sdp = assemble(pop, 3);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> z(sdp.num_moments());
  for (auto& v : z) v = u(rng);
  double cz = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) cz += sdp.objective[i] * z[i];
  EXPECT_NEAR(cz, eval_linear_functional(sdp, z, pop.objective), 1e-13);
}

TEST(LinearFunctional, Examples) {
  const ParametricPOP pop = build_weighted_sum(example(1));
  const MomentSDP sdp = assemble(pop, 2);
  std::vector<double> z(sdp.num_moments(), 0.0);
  z[0] = 1.0;
  EXPECT_DOUBLE_EQ(eval_linear_functional(sdp, z, Polynomial::constant(3, 1.0)), 1.0);
  for (const auto& e : sdp.equalities) z[e.index] = e.value;
  for (int k = 0; k <= 4; ++k) {
    Polynomial yk(3);
    yk.add_term(Monomial::unit(3, 0, k), 1.0);
    EXPECT_DOUBLE_EQ(eval_linear_functional(sdp, z, yk), 1.0 / (k + 1));
  }
  Polynomial too_high(3);
  too_high.add_term(Monomial::unit(3, 1, 5), 1.0);
  EXPECT_THROW((void)eval_linear_functional(sdp, z, too_high), std::invalid_argument);
  EXPECT_THROW((void)eval_linear_functional(sdp, std::vector<double>(3, 0.0), too_high), std::invalid_argument);
}

TEST(Assemble, MomentBlockIsHankel) {
  const MomentSDP sdp = assemble(build_weighted_sum(example(2)), 3);
  const Basis rows(3, 3);
  const auto& b = sdp.blocks[0];
  for (std::size_t c = 0; c < b.side(); ++c) {
    for (std::size_t r = 0; r <= c; ++r) {
      const auto e = b.entry(r, c);
      ASSERT_EQ(e.size(), 1u);
      EXPECT_EQ(sdp.z_basis[e[0].index], rows[r] * rows[c]);
      EXPECT_EQ(e[0].coef, 1.0);
    }
  }
}

TEST(Assemble, AtomicMeasuresGivePsdBlocks) {
  // Points of K for problem 1: x2 = x1^2 + t with t small keeps g1, g2 and the ball.
  const ParametricPOP pop = build_weighted_sum(example(1));
  const MomentSDP sdp = assemble(pop, 3);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> ux(-1.4, 0.9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> pts;
    while (pts.size() < 2) {
      const double x1 = ux(rng);
      const double x2 = x1 * x1 + 0.05 * u01(rng);
      const std::vector<double> p{u01(rng), x1, x2};
      bool inside = true;
      for (const auto& g : pop.constraints) inside = inside && g.evaluate(p) >= 0.0;
      if (inside) pts.push_back(p);
    }
    std::vector<double> z(sdp.num_moments(), 0.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
      Polynomial m(3);
      m.add_term(sdp.z_basis[i], 1.0);
      z[i] = 0.5 * (m.evaluate(pts[0]) + m.evaluate(pts[1]));
    }
    for (const auto& b : sdp.blocks) EXPECT_GE(min_eigenvalue(b, z), -1e-10);
  }
}

TEST(Assemble, Deterministic) {
  const ParametricPOP pop = build_weighted_sum(example(2));
  const MomentSDP a = assemble(pop, 3);
  const MomentSDP b = assemble(pop, 3);
  EXPECT_EQ(a.objective, b.objective);
  ASSERT_EQ(a.blocks.size(), b.blocks.size());
  for (std::size_t i = 0; i < a.blocks.size(); ++i) EXPECT_TRUE(a.blocks[i] == b.blocks[i]);
  EXPECT_EQ(to_listing(a), to_listing(b));
}

TEST(Assemble, StaticHasOnlyMass) {
  const BicriteriaProblem p = example(1);
  const auto s = feasible_set_constraints(p);
  const MomentSDP sdp = assemble_static(p.f1, s, 2);
  ASSERT_EQ(sdp.equalities.size(), 1u);
  EXPECT_EQ(sdp.equalities[0].index, 0u);
  EXPECT_EQ(sdp.equalities[0].value, 1.0);
}

TEST(Listing, Layout) {
  ParametricPOP pop;
  pop.n_prime = 1;
  pop.objective = Polynomial::variable(2, 1);
  const std::string s = to_listing(assemble(pop, 1));
  EXPECT_NE(s.find("\n6\n1\n3\n"), std::string::npos);
  EXPECT_NE(s.find("= 1 1\n"), std::string::npos);
  EXPECT_NE(s.find("= 2 0.5\n"), std::string::npos);
}

}  // namespace
