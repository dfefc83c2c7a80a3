#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "paretosdp/polynomial.hpp"

namespace paretosdp {

/// min (f1(x), f2(x)) over S = {x : g_i(x) >= 0}.
///
/// `box_radius_sq` is the M of the redundant ball constraint M - |x|^2 >= 0,
/// which must hold on S.
struct BicriteriaProblem {
  Polynomial f1;
  Polynomial f2;
  std::vector<Polynomial> constraints;
  double box_radius_sq = 1.0;

  std::size_t nvars() const { return f1.nvars(); }
  Polynomial ball() const;
  /// Throws std::invalid_argument unless all polynomials share nvars >= 1 and M > 0.
  void validate() const;
};

/// The three scalarizations: weighted convex sum (a), weighted Chebyshev (b),
/// parametric sublevel set (c).
enum class Method { WeightedSum, Chebyshev, Sublevel };

char method_tag(Method m);
Method parse_method(std::string_view tag);

/// Constants computed while building a scalarization.
struct ScalarizationData {
  // Sublevel method: a1 = min f1, b1 = f1 at argmin f2.
  double a1 = 0.0;
  double b1 = 0.0;
  // Chebyshev method: f~_j = f_j - shift_j, scaled by 1/C.
  double shift1 = 0.0;
  double shift2 = 0.0;
  double scale_c = 1.0;
};

/// A parametric polynomial program in variables (y, x_1..x_n[, omega]):
/// f*(y) = min { objective(y, .) : p_l(y, .) >= 0 }, with y in [0, 1].
struct ParametricPOP {
  Polynomial objective;
  std::vector<Polynomial> constraints;
  std::size_t n_prime = 0;
  Method method = Method::WeightedSum;
  ScalarizationData data;

  std::size_t nvars() const { return n_prime + 1; }
  /// Lifts a polynomial in x to the (y, x[, omega]) variables of this program.
  Polynomial lift(const Polynomial& in_x) const { return in_x.embed(nvars(), 1); }
};

}  // namespace paretosdp
