#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "paretosdp/polynomial.hpp"
#include "paretosdp/problem.hpp"

namespace paretosdp {

/// One coefficient of a matrix entry as a linear form in the moment vector z.
struct LinearTerm {
  std::size_t index;
  double coef;
};

/// Symmetric matrix whose entries are linear forms in z. Only the upper
/// triangle is stored; entry(r, c) == entry(c, r).
class PsdBlock {
 public:
  PsdBlock() = default;
  PsdBlock(std::size_t side, std::string label);

  std::size_t side() const { return side_; }
  const std::string& label() const { return label_; }

  std::span<const LinearTerm> entry(std::size_t r, std::size_t c) const;
  /// Appends coef * z[index] to entry (r, c); the mirrored entry is implied.
  void add(std::size_t r, std::size_t c, std::size_t index, double coef);

  bool operator==(const PsdBlock& other) const;

 private:
  std::size_t packed(std::size_t r, std::size_t c) const;

  std::size_t side_ = 0;
  std::string label_;
  std::vector<std::vector<LinearTerm>> entries_;
};

/// Pins z[index] to value.
struct MomentEquality {
  std::size_t index;
  double value;
};

/// min c'z  s.t.  every block is PSD  and  z[index_k] = value_k.
///
/// For the parametric relaxation of order d the equalities are the Lebesgue
/// moments L_z(y^k) = 1/(k+1), k = 0..2d, in that order. For a relaxation
/// without a parameter the only equality is the mass L_z(1) = 1.
struct MomentSDP {
  int order = 0;
  Basis z_basis;
  std::vector<double> objective;
  std::vector<PsdBlock> blocks;
  std::vector<MomentEquality> equalities;

  std::size_t num_moments() const { return objective.size(); }
};

/// ceil(deg / 2): the half-degree of a constraint polynomial.
int half_degree(const Polynomial& p);

/// Smallest admissible relaxation order: max(ceil(deg f / 2), v_l).
int min_order(const ParametricPOP& pop);
int min_order(const Polynomial& objective, std::span<const Polynomial> constraints);

/// Order-d moment relaxation of the parametric program: one moment block,
/// one localizing block per constraint and the 2d+1 Lebesgue equalities on y.
MomentSDP assemble(const ParametricPOP& pop, int d);

/// Order-d moment relaxation of min { objective : constraints >= 0 } with a
/// single mass-one equality (no parameter).
MomentSDP assemble_static(const Polynomial& objective, std::span<const Polynomial> constraints,
                          int d);

/// L_z(p) = sum_beta p_beta z_beta.
double eval_linear_functional(const MomentSDP& sdp, std::span<const double> z,
                              const Polynomial& p);

/// Evaluates a block at z as a dense row-major side x side matrix.
std::vector<double> block_values(const PsdBlock& block, std::span<const double> z);

/// Line-oriented sparse listing of the SDP, for debugging:
///
///   "* <comment>" lines, then
///   <number of moments m>
///   <number of blocks>
///   <side_1> <side_2> ...
///   <c_1> ... <c_m>
///   then one line "i b r c value" per stored coefficient (1-based, r <= c),
///   then one line "= i value" per equality.
std::string to_listing(const MomentSDP& sdp);

}  // namespace paretosdp
