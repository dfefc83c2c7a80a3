#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace paretosdp {

/// A multi-index: one non-negative exponent per variable.
///
/// In parametric problems the parameter y comes first, then x_1..x_n, and the
/// Chebyshev lifting variable (when present) last.
struct Monomial {
  std::vector<int> exponents;

  Monomial() = default;
  explicit Monomial(std::vector<int> exps);
  static Monomial constant(std::size_t nvars);
  static Monomial unit(std::size_t nvars, std::size_t var, int power = 1);

  std::size_t nvars() const { return exponents.size(); }
  int degree() const;

  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial&) const = default;
};

/// Strict weak order: total degree first, then lexicographically *larger*
/// exponents on earlier variables first, so (1,0) precedes (0,1).
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

/// Sparse real polynomial in a fixed number of variables.
///
/// Zero coefficients are never stored, so degree() is the true degree and the
/// zero polynomial has no terms.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, double, GradedLexLess>;

  explicit Polynomial(std::size_t nvars = 0);

  static Polynomial constant(std::size_t nvars, double value);
  static Polynomial variable(std::size_t nvars, std::size_t var);

  std::size_t nvars() const { return nvars_; }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  double coefficient(const Monomial& m) const;

  /// Adds coef * m, merging with an existing term.
  void add_term(const Monomial& m, double coef);

  double evaluate(std::span<const double> point) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double scalar);

  /// Re-expresses the polynomial in `new_nvars` variables, mapping variable i
  /// to variable i + offset.
  Polynomial embed(std::size_t new_nvars, std::size_t offset) const;

  /// Fixes variable `var` to `value` and removes it (nvars decreases by one).
  Polynomial substitute(std::size_t var, double value) const;

  /// Substitutes x_i -> factors[i] * x_i.
  Polynomial scale_variables(std::span<const double> factors) const;

  bool operator==(const Polynomial&) const = default;

 private:
  std::size_t nvars_;
  TermMap terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(double s, Polynomial p);
Polynomial operator*(Polynomial p, double s);

/// Returns (p - shift) / scale. Throws std::invalid_argument on zero scale.
Polynomial affine_scale(const Polynomial& p, double shift, double scale);

/// Univariate polynomial from monomial coefficients c_0..c_k.
Polynomial univariate(std::span<const double> coeffs);

std::string to_string(const Polynomial& p);

/// All monomials of total degree <= d in graded-lex order, with O(1) position
/// lookup. Size is binomial(nvars + d, d).
class Basis {
 public:
  Basis() = default;
  Basis(std::size_t nvars, int degree_bound);

  std::size_t nvars() const { return nvars_; }
  int degree_bound() const { return degree_bound_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<Monomial>& members() const { return members_; }
  const Monomial& operator[](std::size_t i) const { return members_[i]; }

  bool contains(const Monomial& m) const;
  /// Throws std::out_of_range when m is not a member.
  std::size_t position(const Monomial& m) const;

 private:
  std::size_t nvars_ = 0;
  int degree_bound_ = 0;
  std::vector<Monomial> members_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
};

Basis enumerate_basis(std::size_t nvars, int d);

std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace paretosdp
