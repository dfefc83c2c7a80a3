#include "paretosdp/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace paretosdp {

namespace {

void require_same_nvars(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << " variables)";
    throw std::invalid_argument(os.str());
  }
}

// Appends every exponent vector of total degree `remaining` over variables
// [var, nvars) in lex-descending order.
void enumerate_degree(std::vector<int>& current, std::size_t var, int remaining,
                      std::vector<Monomial>& out) {
  if (var + 1 == current.size()) {
    current[var] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[var] = e;
    enumerate_degree(current, var + 1, remaining - e, out);
  }
  current[var] = 0;
}

}  // namespace

Monomial::Monomial(std::vector<int> exps) : exponents(std::move(exps)) {
  for (int e : exponents) {
    if (e < 0) throw std::invalid_argument("Monomial: negative exponent");
  }
}

Monomial Monomial::constant(std::size_t nvars) {
  return Monomial(std::vector<int>(nvars, 0));
}

Monomial Monomial::unit(std::size_t nvars, std::size_t var, int power) {
  std::vector<int> e(nvars, 0);
  e.at(var) = power;
  return Monomial(std::move(e));
}

int Monomial::degree() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

Monomial Monomial::operator*(const Monomial& other) const {
  require_same_nvars(nvars(), other.nvars(), "Monomial product");
  Monomial out = *this;
  for (std::size_t i = 0; i < exponents.size(); ++i) out.exponents[i] += other.exponents[i];
  return out;
}

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  return std::lexicographical_compare(a.exponents.begin(), a.exponents.end(),
                                      b.exponents.begin(), b.exponents.end(),
                                      std::greater<int>());
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::size_t h = m.exponents.size();
  for (int e : m.exponents) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {}

Polynomial Polynomial::constant(std::size_t nvars, double value) {
  Polynomial p(nvars);
  p.add_term(Monomial::constant(nvars), value);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t var) {
  if (var >= nvars) throw std::out_of_range("Polynomial::variable: index out of range");
  Polynomial p(nvars);
  p.add_term(Monomial::unit(nvars, var), 1.0);
  return p;
}

int Polynomial::degree() const {
  // Terms are sorted by degree, so the last one is of maximal degree.
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

double Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const Monomial& m, double coef) {
  require_same_nvars(nvars_, m.nvars(), "Polynomial::add_term");
  if (coef == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(m, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::evaluate(std::span<const double> point) const {
  require_same_nvars(nvars_, point.size(), "Polynomial::evaluate");
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = c;
    for (std::size_t i = 0; i < nvars_; ++i) {
      for (int k = 0; k < m.exponents[i]; ++k) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_nvars(nvars_, other.nvars_, "Polynomial sum");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_nvars(nvars_, other.nvars_, "Polynomial difference");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double scalar) {
  if (scalar == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scalar;
    if (it->second == 0.0) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

Polynomial Polynomial::embed(std::size_t new_nvars, std::size_t offset) const {
  if (offset + nvars_ > new_nvars) {
    throw std::invalid_argument("Polynomial::embed: target space too small");
  }
  Polynomial out(new_nvars);
  for (const auto& [m, c] : terms_) {
    std::vector<int> e(new_nvars, 0);
    std::copy(m.exponents.begin(), m.exponents.end(), e.begin() + static_cast<long>(offset));
    out.add_term(Monomial(std::move(e)), c);
  }
  return out;
}

Polynomial Polynomial::substitute(std::size_t var, double value) const {
  if (var >= nvars_) throw std::out_of_range("Polynomial::substitute: index out of range");
  Polynomial out(nvars_ - 1);
  for (const auto& [m, c] : terms_) {
    std::vector<int> e;
    e.reserve(nvars_ - 1);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (i != var) e.push_back(m.exponents[i]);
    }
    out.add_term(Monomial(std::move(e)), c * std::pow(value, m.exponents[var]));
  }
  return out;
}

Polynomial Polynomial::scale_variables(std::span<const double> factors) const {
  require_same_nvars(nvars_, factors.size(), "Polynomial::scale_variables");
  Polynomial out(nvars_);
  for (const auto& [m, c] : terms_) {
    double v = c;
    for (std::size_t i = 0; i < nvars_; ++i) v *= std::pow(factors[i], m.exponents[i]);
    out.add_term(m, v);
  }
  return out;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator-(Polynomial a) { return a *= -1.0; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_nvars(a.nvars(), b.nvars(), "Polynomial product");
  Polynomial out(a.nvars());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Polynomial operator*(double s, Polynomial p) { return p *= s; }
Polynomial operator*(Polynomial p, double s) { return p *= s; }

Polynomial affine_scale(const Polynomial& p, double shift, double scale) {
  if (scale == 0.0) throw std::invalid_argument("affine_scale: zero scale");
  Polynomial out = p - Polynomial::constant(p.nvars(), shift);
  out *= 1.0 / scale;
  return out;
}

Polynomial univariate(std::span<const double> coeffs) {
  Polynomial p(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    p.add_term(Monomial::unit(1, 0, static_cast<int>(k)), coeffs[k]);
  }
  return p;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const double a = std::abs(c);
    bool need_sep = false;
    if (a != 1.0 || m.degree() == 0) {
      os << a;
      need_sep = true;
    }
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      if (m.exponents[i] == 0) continue;
      if (need_sep) os << "*";
      os << "v" << i;
      if (m.exponents[i] > 1) os << "^" << m.exponents[i];
      need_sep = true;
    }
  }
  return os.str();
}

Basis::Basis(std::size_t nvars, int degree_bound) : nvars_(nvars), degree_bound_(degree_bound) {
  if (nvars == 0) throw std::invalid_argument("Basis: nvars must be >= 1");
  if (degree_bound < 0) throw std::invalid_argument("Basis: degree bound must be >= 0");
  members_.reserve(binomial(nvars + static_cast<std::size_t>(degree_bound),
                            static_cast<std::size_t>(degree_bound)));
  std::vector<int> current(nvars, 0);
  for (int t = 0; t <= degree_bound; ++t) enumerate_degree(current, 0, t, members_);
  index_.reserve(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) index_.emplace(members_[i], i);
}

bool Basis::contains(const Monomial& m) const { return index_.contains(m); }

std::size_t Basis::position(const Monomial& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) throw std::out_of_range("Basis::position: monomial not in basis");
  return it->second;
}

Basis enumerate_basis(std::size_t nvars, int d) { return Basis(nvars, d); }

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace paretosdp
