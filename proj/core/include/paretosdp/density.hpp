#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "paretosdp/polynomial.hpp"

namespace paretosdp {

/// Generalized moments m^k = int_0^1 lambda^k h(lambda) d lambda, k = 0..s.
struct MomentVector {
  std::vector<double> values;
  int s = 0;
  int criterion = 1;
};

/// Polynomial of degree <= s on [0, 1], the L2 projection of the density
/// whose first s+1 moments were given.
struct DensityEstimate {
  int s = 0;
  /// Monomial coefficients, constant term first.
  std::vector<double> coeffs;
  /// The same polynomial in the shifted Legendre basis; used for evaluation.
  std::vector<double> legendre;
  /// s is large enough for double precision to be marginal.
  bool ill_conditioned = false;

  double operator()(double lambda) const;
  Polynomial polynomial() const;
};

inline constexpr int kMaxDensityDegree = 12;
inline constexpr int kDensityWarnDegree = 10;

/// H_s(i, j) = 1 / (i + j + 1), the Gram matrix of 1, lambda, .., lambda^s on [0, 1].
Eigen::MatrixXd hankel_matrix(int s);

/// Solves H_s h = m through the shifted Legendre basis, where the Gram
/// matrix is diagonal. Throws std::invalid_argument for s > s_max.
DensityEstimate recover_density(const MomentVector& m, int s_max = kMaxDensityDegree);

/// Shifted Legendre polynomial P_k(2 lambda - 1) as monomial coefficients.
std::vector<double> shifted_legendre(int k);

/// (h1(lambda_i), h2(lambda_i)) at N uniform points of [0, 1].
std::vector<std::pair<double, double>> parametric_curve(const DensityEstimate& h1,
                                                        const DensityEstimate& h2, int n);

/// lambda_i = i / (N - 1), i = 0..N-1.
std::vector<double> uniform_grid(int n);

}  // namespace paretosdp
