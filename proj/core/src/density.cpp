#include "paretosdp/density.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace paretosdp {

namespace {

double binom(int n, int k) { return static_cast<double>(binomial(static_cast<std::size_t>(n), static_cast<std::size_t>(k))); }

}  // namespace

Eigen::MatrixXd hankel_matrix(int s) {
  if (s < 0) throw std::invalid_argument("hankel_matrix: s must be >= 0");
  Eigen::MatrixXd h(s + 1, s + 1);
  for (int i = 0; i <= s; ++i) {
    for (int j = 0; j <= s; ++j) h(i, j) = 1.0 / (i + j + 1.0);
  }
  return h;
}

std::vector<double> shifted_legendre(int k) {
  if (k < 0) throw std::invalid_argument("shifted_legendre: negative degree");
  std::vector<double> c(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j) {
    c[static_cast<std::size_t>(j)] = ((k + j) % 2 ? -1.0 : 1.0) * binom(k, j) * binom(k + j, j);
  }
  return c;
}

DensityEstimate recover_density(const MomentVector& m, int s_max) {
  const int s = m.s;
  if (s < 0) throw std::invalid_argument("recover_density: s must be >= 0");
  if (s > s_max) {
    std::ostringstream os;
    os << "recover_density: degree s=" << s << " exceeds s_max=" << s_max
       << "; the moment system is too ill-conditioned in double precision, use a smaller s (4 to 8 is typical)";
    throw std::invalid_argument(os.str());
  }
  if (m.values.size() != static_cast<std::size_t>(s) + 1) {
    throw std::invalid_argument("recover_density: expected s+1 moments");
  }
  DensityEstimate h;
  h.s = s;
  h.ill_conditioned = s >= kDensityWarnDegree;
  h.legendre.assign(static_cast<std::size_t>(s) + 1, 0.0);
  h.coeffs.assign(static_cast<std::size_t>(s) + 1, 0.0);
  // <h, P_k> = sum_j L_kj m_j and |P_k|^2 = 1 / (2k + 1).
  for (int k = 0; k <= s; ++k) {
    const auto lk = shifted_legendre(k);
    double inner = 0.0;
    for (int j = 0; j <= k; ++j) inner += lk[static_cast<std::size_t>(j)] * m.values[static_cast<std::size_t>(j)];
    const double ck = (2.0 * k + 1.0) * inner;
    h.legendre[static_cast<std::size_t>(k)] = ck;
    for (int j = 0; j <= k; ++j) h.coeffs[static_cast<std::size_t>(j)] += ck * lk[static_cast<std::size_t>(j)];
  }
  return h;
}

double DensityEstimate::operator()(double lambda) const {
  // Three-term recurrence for P_k(t), t = 2 lambda - 1.
  const double t = 2.0 * lambda - 1.0;
  double p_prev = 1.0;
  double p = t;
  double sum = legendre.empty() ? 0.0 : legendre[0];
  for (std::size_t k = 1; k < legendre.size(); ++k) {
    sum += legendre[k] * p;
    const double kk = static_cast<double>(k);
    const double next = ((2.0 * kk + 1.0) * t * p - kk * p_prev) / (kk + 1.0);
    p_prev = p;
    p = next;
  }
  return sum;
}

Polynomial DensityEstimate::polynomial() const { return univariate(coeffs); }

std::vector<double> uniform_grid(int n) {
  if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
  return g;
}

std::vector<std::pair<double, double>> parametric_curve(const DensityEstimate& h1,
                                                        const DensityEstimate& h2, int n) {
  std::vector<std::pair<double, double>> out;
  for (double l : uniform_grid(n)) out.emplace_back(h1(l), h2(l));
  return out;
}

}  // namespace paretosdp
