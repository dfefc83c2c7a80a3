#include "paretosdp/relax.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace paretosdp {

PsdBlock::PsdBlock(std::size_t side, std::string label)
    : side_(side), label_(std::move(label)), entries_(side * (side + 1) / 2) {}

std::size_t PsdBlock::packed(std::size_t r, std::size_t c) const {
  if (r > c) std::swap(r, c);
  if (c >= side_) throw std::out_of_range("PsdBlock: entry out of range");
  // Column-packed upper triangle.
  return c * (c + 1) / 2 + r;
}

std::span<const LinearTerm> PsdBlock::entry(std::size_t r, std::size_t c) const {
  return entries_[packed(r, c)];
}

void PsdBlock::add(std::size_t r, std::size_t c, std::size_t index, double coef) {
  if (coef == 0.0) return;
  auto& terms = entries_[packed(r, c)];
  for (auto& t : terms) {
    if (t.index == index) {
      t.coef += coef;
      return;
    }
  }
  terms.push_back({index, coef});
}

bool PsdBlock::operator==(const PsdBlock& other) const {
  if (side_ != other.side_ || label_ != other.label_) return false;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const auto& a = entries_[k];
    const auto& b = other.entries_[k];
    if (a.size() != b.size()) return false;
    for (std::size_t t = 0; t < a.size(); ++t) {
      if (a[t].index != b[t].index || a[t].coef != b[t].coef) return false;
    }
  }
  return true;
}

int half_degree(const Polynomial& p) { return (p.degree() + 1) / 2; }

int min_order(const Polynomial& objective, std::span<const Polynomial> constraints) {
  int d0 = half_degree(objective);
  for (const auto& p : constraints) d0 = std::max(d0, half_degree(p));
  return d0;
}

int min_order(const ParametricPOP& pop) { return min_order(pop.objective, pop.constraints); }

namespace {

PsdBlock localizing_block(const Basis& z_basis, const Basis& rows, const Polynomial& g,
                          std::string label) {
  PsdBlock block(rows.size(), std::move(label));
  for (std::size_t c = 0; c < rows.size(); ++c) {
    for (std::size_t r = 0; r <= c; ++r) {
      const Monomial base = rows[r] * rows[c];
      for (const auto& [gamma, coef] : g.terms()) {
        block.add(r, c, z_basis.position(base * gamma), coef);
      }
    }
  }
  return block;
}

MomentSDP assemble_core(std::size_t nvars, const Polynomial& objective,
                        std::span<const Polynomial> constraints, int d, bool parametric) {
  if (objective.nvars() != nvars) {
    throw std::invalid_argument("assemble: objective has the wrong number of variables");
  }
  for (const auto& p : constraints) {
    if (p.nvars() != nvars) {
      throw std::invalid_argument("assemble: constraint has the wrong number of variables");
    }
  }
  const int d0 = min_order(objective, constraints);
  if (d < d0 || d < 1) {
    std::ostringstream os;
    os << "assemble: relaxation order d=" << d << " is below the minimum order d0="
       << std::max(d0, 1);
    throw std::invalid_argument(os.str());
  }

  MomentSDP sdp;
  sdp.order = d;
  sdp.z_basis = Basis(nvars, 2 * d);
  sdp.objective.assign(sdp.z_basis.size(), 0.0);
  for (const auto& [m, c] : objective.terms()) sdp.objective[sdp.z_basis.position(m)] += c;

  const Basis moment_rows(nvars, d);
  sdp.blocks.push_back(
      localizing_block(sdp.z_basis, moment_rows, Polynomial::constant(nvars, 1.0), "moment"));
  for (std::size_t l = 0; l < constraints.size(); ++l) {
    const Basis rows(nvars, d - half_degree(constraints[l]));
    sdp.blocks.push_back(
        localizing_block(sdp.z_basis, rows, constraints[l], "localizing " + std::to_string(l)));
  }

  if (parametric) {
    for (int k = 0; k <= 2 * d; ++k) {
      sdp.equalities.push_back(
          {sdp.z_basis.position(Monomial::unit(nvars, 0, k)), 1.0 / (k + 1.0)});
    }
  } else {
    sdp.equalities.push_back({0, 1.0});
  }
  return sdp;
}

}  // namespace

MomentSDP assemble(const ParametricPOP& pop, int d) {
  return assemble_core(pop.nvars(), pop.objective, pop.constraints, d, true);
}

MomentSDP assemble_static(const Polynomial& objective, std::span<const Polynomial> constraints,
                          int d) {
  return assemble_core(objective.nvars(), objective, constraints, d, false);
}

double eval_linear_functional(const MomentSDP& sdp, std::span<const double> z,
                              const Polynomial& p) {
  if (z.size() != sdp.z_basis.size()) {
    throw std::invalid_argument("eval_linear_functional: moment vector has the wrong length");
  }
  if (p.nvars() != sdp.z_basis.nvars()) {
    throw std::invalid_argument("eval_linear_functional: polynomial has the wrong number of variables");
  }
  if (p.degree() > sdp.z_basis.degree_bound()) {
    std::ostringstream os;
    os << "eval_linear_functional: degree " << p.degree() << " exceeds 2d = "
       << sdp.z_basis.degree_bound();
    throw std::invalid_argument(os.str());
  }
  double sum = 0.0;
  for (const auto& [m, c] : p.terms()) sum += c * z[sdp.z_basis.position(m)];
  return sum;
}

std::vector<double> block_values(const PsdBlock& block, std::span<const double> z) {
  const std::size_t n = block.side();
  std::vector<double> out(n * n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r <= c; ++r) {
      double v = 0.0;
      for (const auto& t : block.entry(r, c)) v += t.coef * z[t.index];
      out[r * n + c] = v;
      out[c * n + r] = v;
    }
  }
  return out;
}

std::string to_listing(const MomentSDP& sdp) {
  std::ostringstream os;
  os.precision(17);
  os << "* moment relaxation of order " << sdp.order << "\n";
  os << "* entries: moment block row col coefficient; equalities: = moment value\n";
  os << sdp.num_moments() << "\n" << sdp.blocks.size() << "\n";
  for (std::size_t b = 0; b < sdp.blocks.size(); ++b) {
    os << (b ? " " : "") << sdp.blocks[b].side();
  }
  os << "\n";
  for (std::size_t i = 0; i < sdp.objective.size(); ++i) {
    os << (i ? " " : "") << sdp.objective[i];
  }
  os << "\n";
  for (std::size_t b = 0; b < sdp.blocks.size(); ++b) {
    const auto& block = sdp.blocks[b];
    for (std::size_t r = 0; r < block.side(); ++r) {
      for (std::size_t c = r; c < block.side(); ++c) {
        for (const auto& t : block.entry(r, c)) {
          os << t.index + 1 << " " << b + 1 << " " << r + 1 << " " << c + 1 << " " << t.coef
             << "\n";
        }
      }
    }
  }
  for (const auto& eq : sdp.equalities) os << "= " << eq.index + 1 << " " << eq.value << "\n";
  return os.str();
}

}  // namespace paretosdp
