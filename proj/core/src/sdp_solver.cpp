#include "paretosdp/sdp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <sstream>

#include "paretosdp/errors.hpp"

namespace paretosdp {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::MaxIter: return "MaxIter";
    case SolveStatus::NumericalTrouble: return "NumericalTrouble";
  }
  return "Unknown";
}

namespace {

// Gap below which a MaxIter result still yields a usable dual polynomial.
constexpr double kUsableGap = 1e-5;

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct UpperEntry {
  Index r;
  Index c;
  double v;
};

// Coefficient matrix F_{b,i} of one variable inside one block.
struct VarPattern {
  std::size_t var;
  std::vector<UpperEntry> upper;
  std::vector<Index> rows;  // distinct row/col indices touched
  MatrixXd sub;             // F_{b,i} restricted to rows x rows
};

struct BlockData {
  Index side = 0;
  double scale = 1.0;
  std::vector<VarPattern> vars;
  struct Flat {
    Index r, c;
    std::size_t var;
    double v;
  };
  std::vector<Flat> flat;
};

BlockData prepare_block(const PsdBlock& block, std::size_t nvars) {
  BlockData bd;
  bd.side = static_cast<Index>(block.side());
  double max_coef = 0.0;
  for (std::size_t c = 0; c < block.side(); ++c) {
    for (std::size_t r = 0; r <= c; ++r) {
      for (const auto& t : block.entry(r, c)) {
        if (t.index >= nvars) throw std::invalid_argument("solve: block refers to an invalid moment index");
        max_coef = std::max(max_coef, std::abs(t.coef));
      }
    }
  }
  bd.scale = max_coef > 0.0 ? max_coef : 1.0;

  std::vector<std::vector<UpperEntry>> per_var(nvars);
  for (std::size_t c = 0; c < block.side(); ++c) {
    for (std::size_t r = 0; r <= c; ++r) {
      for (const auto& t : block.entry(r, c)) {
        const double v = t.coef / bd.scale;
        per_var[t.index].push_back({static_cast<Index>(r), static_cast<Index>(c), v});
        bd.flat.push_back({static_cast<Index>(r), static_cast<Index>(c), t.index, v});
      }
    }
  }
  for (std::size_t i = 0; i < nvars; ++i) {
    if (per_var[i].empty()) continue;
    VarPattern vp;
    vp.var = i;
    vp.upper = std::move(per_var[i]);
    for (const auto& e : vp.upper) {
      vp.rows.push_back(e.r);
      vp.rows.push_back(e.c);
    }
    std::sort(vp.rows.begin(), vp.rows.end());
    vp.rows.erase(std::unique(vp.rows.begin(), vp.rows.end()), vp.rows.end());
    const Index k = static_cast<Index>(vp.rows.size());
    vp.sub = MatrixXd::Zero(k, k);
    auto local = [&](Index g) {
      return static_cast<Index>(std::lower_bound(vp.rows.begin(), vp.rows.end(), g) - vp.rows.begin());
    };
    for (const auto& e : vp.upper) {
      const Index a = local(e.r);
      const Index b = local(e.c);
      vp.sub(a, b) += e.v;
      if (a != b) vp.sub(b, a) += e.v;
    }
    bd.vars.push_back(std::move(vp));
  }
  return bd;
}

// F_b(z)
MatrixXd apply_block(const BlockData& bd, const VectorXd& z) {
  MatrixXd out = MatrixXd::Zero(bd.side, bd.side);
  for (const auto& f : bd.flat) {
    const double v = f.v * z[static_cast<Index>(f.var)];
    out(f.r, f.c) += v;
    if (f.r != f.c) out(f.c, f.r) += v;
  }
  return out;
}

// out_i += <F_{b,i}, Y>
void adjoint_block(const BlockData& bd, const MatrixXd& y, VectorXd& out) {
  for (const auto& vp : bd.vars) {
    double s = 0.0;
    for (const auto& e : vp.upper) s += e.v * (e.r == e.c ? y(e.r, e.c) : y(e.r, e.c) + y(e.c, e.r));
    out[static_cast<Index>(vp.var)] += s;
  }
}

double inner(const MatrixXd& a, const MatrixXd& b) { return (a.array() * b.array()).sum(); }

MatrixXd sym(const MatrixXd& a) { return 0.5 * (a + a.transpose()); }

// Largest alpha with diag(v) + alpha D PSD.
double max_step(const VectorXd& v, const MatrixXd& d) {
  const VectorXd r = v.array().rsqrt();
  const MatrixXd b = sym(r.asDiagonal() * d * r.asDiagonal());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(b, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

// Nesterov-Todd scaling: W S W = X, G G' = W, G^{-1} X G^{-T} = G' S G = diag(v).
struct NtScaling {
  MatrixXd chol_x;
  MatrixXd chol_s;
  MatrixXd g;
  MatrixXd g_inv;
  MatrixXd w;
  VectorXd v;
};

bool nt_scaling(const MatrixXd& x, const MatrixXd& s, NtScaling& nt) {
  Eigen::LLT<MatrixXd> lx(x);
  Eigen::LLT<MatrixXd> ls(s);
  if (lx.info() != Eigen::Success || ls.info() != Eigen::Success) return false;
  nt.chol_x = lx.matrixL();
  nt.chol_s = ls.matrixL();
  const MatrixXd rt_l = nt.chol_s.transpose() * nt.chol_x;
  Eigen::BDCSVD<MatrixXd> svd(rt_l, Eigen::ComputeFullU | Eigen::ComputeFullV);
  nt.v = svd.singularValues();
  if (nt.v.minCoeff() <= 0.0 || !std::isfinite(nt.v.maxCoeff())) return false;
  const VectorXd inv_sqrt = nt.v.array().rsqrt();
  const VectorXd sqrt_v = nt.v.array().sqrt();
  nt.g = nt.chol_x * svd.matrixV() * inv_sqrt.asDiagonal();
  // G^{-1} = diag(sqrt v) V' L^{-1}
  MatrixXd vt_linv =
      nt.chol_x.triangularView<Eigen::Lower>().transpose().solve(svd.matrixV()).transpose();
  nt.g_inv = sqrt_v.asDiagonal() * vt_linv;
  nt.w = nt.g * nt.g.transpose();
  return true;
}

// dx, ds are the block steps; dxt = G^{-1} dX G^{-T} and dst = G' dS G are
// the same steps in the scaled space where X and S both equal diag(v).
struct Direction {
  VectorXd dz;
  VectorXd dq;
  std::vector<MatrixXd> dx;
  std::vector<MatrixXd> ds;
  std::vector<MatrixXd> dxt;
  std::vector<MatrixXd> dst;
};

class InteriorPoint {
 public:
  InteriorPoint(const MomentSDP& sdp, const SolverOptions& opts) : sdp_(sdp), opts_(opts) {
    m_ = static_cast<Index>(sdp.num_moments());
    ne_ = static_cast<Index>(sdp.equalities.size());
    if (m_ == 0) throw std::invalid_argument("solve: empty moment vector");
    if (!(opts.gap_tol > 0.0) || !(opts.feas_tol > 0.0) || opts.max_iter <= 0) {
      throw std::invalid_argument("solve: tolerances and iteration limit must be positive");
    }
    c_ = Eigen::Map<const VectorXd>(sdp.objective.data(), m_);
    c_scale_ = std::max(1.0, c_.lpNorm<Eigen::Infinity>());
    c_ /= c_scale_;
    a_.resize(ne_);
    eq_index_.resize(static_cast<std::size_t>(ne_));
    for (Index k = 0; k < ne_; ++k) {
      const auto& eq = sdp.equalities[static_cast<std::size_t>(k)];
      if (eq.index >= sdp.num_moments()) throw std::invalid_argument("solve: equality refers to an invalid moment index");
      eq_index_[static_cast<std::size_t>(k)] = static_cast<Index>(eq.index);
      a_[k] = eq.value;
    }
    for (const auto& b : sdp.blocks) blocks_.push_back(prepare_block(b, sdp.num_moments()));
    for (const auto& b : blocks_) n_total_ += static_cast<double>(b.side);
    std::vector<bool> pinned(sdp.num_moments(), false);
    for (Index k = 0; k < ne_; ++k) {
      if (pinned[static_cast<std::size_t>(eq_index_[static_cast<std::size_t>(k)])]) {
        throw std::invalid_argument("solve: a moment is pinned by two equalities");
      }
      pinned[static_cast<std::size_t>(eq_index_[static_cast<std::size_t>(k)])] = true;
    }
    for (Index i = 0; i < m_; ++i) {
      if (!pinned[static_cast<std::size_t>(i)]) free_.push_back(i);
    }
  }

  SdpSolution run();

 private:
  VectorXd adjoint(const std::vector<MatrixXd>& y) const {
    VectorXd out = VectorXd::Zero(m_);
    for (std::size_t b = 0; b < blocks_.size(); ++b) adjoint_block(blocks_[b], y[b], out);
    return out;
  }
  VectorXd e_transpose(const VectorXd& q) const {
    VectorXd out = VectorXd::Zero(m_);
    for (Index k = 0; k < ne_; ++k) out[eq_index_[static_cast<std::size_t>(k)]] += q[k];
    return out;
  }
  VectorXd e_apply(const VectorXd& z) const {
    VectorXd out(ne_);
    for (Index k = 0; k < ne_; ++k) out[k] = z[eq_index_[static_cast<std::size_t>(k)]];
    return out;
  }

  MatrixXd schur(const std::vector<NtScaling>& nt) const;
  void direction(const std::vector<NtScaling>& nt, const std::vector<MatrixXd>& t,
                 Direction& dir) const;
  void reduced_solve(const VectorXd& h, const VectorXd& r_eq, VectorXd& dz, VectorXd& dq) const;
  SdpSolution package(SolveStatus status, int iter) const;

  const MomentSDP& sdp_;
  SolverOptions opts_;
  Index m_ = 0;
  Index ne_ = 0;
  VectorXd c_;
  VectorXd a_;
  double c_scale_ = 1.0;
  std::vector<Index> eq_index_;
  std::vector<BlockData> blocks_;
  double n_total_ = 0.0;

  // Iterate.
  VectorXd z_;
  VectorXd q_;
  std::vector<MatrixXd> x_;
  std::vector<MatrixXd> s_;
  // Residuals at the current iterate.
  VectorXd r_dual_;                  // c - A(X) - E'q
  std::vector<MatrixXd> r_moment_;   // F(z) - S
  VectorXd r_eq_;                    // a - E z
  // Schur complement and its factorized free-free part.
  std::vector<Index> free_;
  MatrixXd schur_;
  MatrixXd schur_ff_;
  Eigen::LLT<MatrixXd> schur_llt_;
  // Diagnostics.
  double pobj_ = 0.0, dobj_ = 0.0, gap_ = 0.0, pinf_ = 0.0, dinf_ = 0.0;
};

MatrixXd InteriorPoint::schur(const std::vector<NtScaling>& nt) const {
  MatrixXd m = MatrixXd::Zero(m_, m_);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& bd = blocks_[b];
    const MatrixXd& w = nt[b].w;
    for (std::size_t a = 0; a < bd.vars.size(); ++a) {
      const auto& vi = bd.vars[a];
      // P = W F_i W
      const MatrixXd wr = w(Eigen::all, vi.rows);
      const MatrixXd p = wr * vi.sub * wr.transpose();
      const Index i = static_cast<Index>(vi.var);
      for (std::size_t c = a; c < bd.vars.size(); ++c) {
        const auto& vj = bd.vars[c];
        double s = 0.0;
        for (const auto& e : vj.upper) s += e.v * (e.r == e.c ? p(e.r, e.c) : 2.0 * p(e.r, e.c));
        const Index j = static_cast<Index>(vj.var);
        m(i, j) += s;
        if (i != j) m(j, i) += s;
      }
    }
  }
  return m;
}

void InteriorPoint::direction(const std::vector<NtScaling>& nt, const std::vector<MatrixXd>& t,
                              Direction& dir) const {
  const std::size_t nb = blocks_.size();
  std::vector<MatrixXd> gtg(nb);
  std::vector<MatrixXd> wrw(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    gtg[b] = nt[b].g * t[b] * nt[b].g.transpose();
    wrw[b] = nt[b].w * r_moment_[b] * nt[b].w;
  }
  const VectorXd h = r_dual_ - adjoint(gtg) + adjoint(wrw);
  reduced_solve(h, r_eq_, dir.dz, dir.dq);
  dir.dx.resize(nb);
  dir.ds.resize(nb);
  dir.dxt.resize(nb);
  dir.dst.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    dir.ds[b] = apply_block(blocks_[b], dir.dz) + r_moment_[b];
    dir.dst[b] = sym(nt[b].g.transpose() * dir.ds[b] * nt[b].g);
    dir.dxt[b] = t[b] - dir.dst[b];
    dir.dx[b] = sym(nt[b].g * dir.dxt[b] * nt[b].g.transpose());
  }
  // Refinement against the dual equation A(dX) + E'dq = r_dual, which the
  // Schur route only meets up to the conditioning of W. Stop once a round
  // no longer halves the residual.
  double prev = std::numeric_limits<double>::infinity();
  for (int round = 0; round < 4; ++round) {
    const VectorXd res = r_dual_ - adjoint(dir.dx) - e_transpose(dir.dq);
    const double rn = res.norm();
    if (!(rn < 0.5 * prev) || rn == 0.0) break;
    prev = rn;
    VectorXd ez, eq;
    reduced_solve(res, VectorXd::Zero(ne_), ez, eq);
    dir.dz += ez;
    dir.dq += eq;
    for (std::size_t b = 0; b < nb; ++b) {
      const MatrixXd fe = apply_block(blocks_[b], ez);
      const MatrixXd fet = sym(nt[b].g.transpose() * fe * nt[b].g);
      dir.ds[b] += fe;
      dir.dst[b] += fet;
      dir.dxt[b] -= fet;
      dir.dx[b] -= sym(nt[b].g * fet * nt[b].g.transpose());
    }
  }
}

// Solves M dz - E'dq = -h, E dz = r_eq with the pinned coordinates eliminated.
void InteriorPoint::reduced_solve(const VectorXd& h, const VectorXd& r_eq, VectorXd& dz,
                                  VectorXd& dq) const {
  dz = VectorXd::Zero(m_);
  for (Index k = 0; k < ne_; ++k) dz[eq_index_[static_cast<std::size_t>(k)]] = r_eq[k];
  const Index nf = static_cast<Index>(free_.size());
  if (nf > 0) {
    VectorXd rhs(nf);
    for (Index a = 0; a < nf; ++a) {
      const Index i = free_[static_cast<std::size_t>(a)];
      rhs[a] = -h[i] - schur_.row(i).dot(dz);
    }
    VectorXd dzf = schur_llt_.solve(rhs);
    dzf += schur_llt_.solve(rhs - schur_ff_ * dzf);
    for (Index a = 0; a < nf; ++a) dz[free_[static_cast<std::size_t>(a)]] = dzf[a];
  }
  dq.resize(ne_);
  for (Index k = 0; k < ne_; ++k) {
    const Index i = eq_index_[static_cast<std::size_t>(k)];
    dq[k] = schur_.row(i).dot(dz) + h[i];
  }
}

SdpSolution InteriorPoint::package(SolveStatus status, int iter) const {
  SdpSolution sol;
  sol.status = status;
  sol.iterations = iter;
  sol.z = z_;
  sol.q_coeffs.resize(static_cast<std::size_t>(ne_));
  for (Index k = 0; k < ne_; ++k) sol.q_coeffs[static_cast<std::size_t>(k)] = q_[k] * c_scale_;
  sol.objective_primal = pobj_;
  sol.objective_dual = dobj_;
  sol.gap = gap_;
  sol.primal_infeasibility = pinf_;
  sol.dual_infeasibility = dinf_;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    sol.dual_blocks.push_back(x_[b] * (c_scale_ / blocks_[b].scale));
  }
  return sol;
}

SdpSolution InteriorPoint::run() {
  const std::size_t nb = blocks_.size();
  const double sqrt_n = std::sqrt(std::max(1.0, n_total_));
  double max_fnorm = 0.0;
  double max_ratio = 0.0;
  {
    VectorXd fnorm2 = VectorXd::Zero(m_);
    for (const auto& bd : blocks_) {
      for (const auto& vp : bd.vars) fnorm2[static_cast<Index>(vp.var)] += vp.sub.squaredNorm();
    }
    for (Index i = 0; i < m_; ++i) {
      const double fn = std::sqrt(fnorm2[i]);
      max_fnorm = std::max(max_fnorm, fn);
      max_ratio = std::max(max_ratio, (1.0 + std::abs(c_[i])) / (1.0 + fn));
    }
  }
  const double xi = std::max({10.0, sqrt_n, n_total_ * max_ratio});
  const double eta = std::max({10.0, sqrt_n, max_fnorm});

  z_ = VectorXd::Zero(m_);
  q_ = VectorXd::Zero(ne_);
  x_.resize(nb);
  s_.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    x_[b] = xi * MatrixXd::Identity(blocks_[b].side, blocks_[b].side);
    s_[b] = eta * MatrixXd::Identity(blocks_[b].side, blocks_[b].side);
  }

  const double c_norm = c_.norm();
  const double a_norm = a_.norm();
  std::vector<NtScaling> nt(nb);
  Direction pred, corr;

  SdpSolution best;
  double best_merit = std::numeric_limits<double>::infinity();
  int stall = 0;
  int since_best = 0;

  if (opts_.verbose) {
    std::fprintf(stderr, "%4s %14s %14s %10s %10s %10s %8s %8s\n", "it", "primal", "dual", "gap",
                 "pinf", "dinf", "a_x", "a_s");
  }

  for (int iter = 0; iter <= opts_.max_iter; ++iter) {
    // Residuals and measures.
    std::vector<MatrixXd> fz(nb);
    r_moment_.resize(nb);
    double rm2 = 0.0;
    double xs = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      fz[b] = apply_block(blocks_[b], z_);
      r_moment_[b] = fz[b] - s_[b];
      rm2 += r_moment_[b].squaredNorm();
      xs += inner(x_[b], s_[b]);
    }
    r_dual_ = c_ - adjoint(x_) - e_transpose(q_);
    r_eq_ = a_ - e_apply(z_);
    const double mu = xs / n_total_;
    pobj_ = c_.dot(z_) * c_scale_;
    dobj_ = a_.dot(q_) * c_scale_;
    gap_ = std::abs(pobj_ - dobj_) / (1.0 + std::abs(pobj_) + std::abs(dobj_));
    pinf_ = std::sqrt(rm2 + r_eq_.squaredNorm()) / (1.0 + a_norm);
    dinf_ = r_dual_.norm() / (1.0 + c_norm);

    if (!std::isfinite(pobj_) || !std::isfinite(dobj_) || !std::isfinite(mu)) {
      return best_merit < std::numeric_limits<double>::infinity() ? best
                                                                   : package(SolveStatus::NumericalTrouble, iter);
    }
    if (gap_ <= opts_.gap_tol && pinf_ <= opts_.feas_tol && dinf_ <= opts_.feas_tol) {
      return package(SolveStatus::Optimal, iter);
    }
    const double merit = std::max({gap_, pinf_, dinf_});
    if (merit < best_merit) {
      best_merit = merit;
      best = package(SolveStatus::NumericalTrouble, iter);
      since_best = 0;
    } else if (++since_best >= 8) {
      // Rounding has overtaken progress; the best iterate is as good as it gets.
      best.iterations = iter;
      return best;
    }

    // Divergence tests: normalized Farkas-type rays.
    {
      const double dq_obj = a_.dot(q_);
      const double ray_dual = (c_ - r_dual_).norm();  // |A(X) + E'q|
      if (dq_obj > 1e8 * (1.0 + std::abs(c_.dot(z_))) && ray_dual <= 1e-6 * dq_obj) {
        return package(SolveStatus::Infeasible, iter);
      }
      const double neg_pobj = -c_.dot(z_);
      const double ray_primal = std::sqrt(rm2 + (a_ - r_eq_).squaredNorm());  // |F(z) - S|, |Ez|
      if (neg_pobj > 1e8 * (1.0 + std::abs(a_.dot(q_))) && ray_primal <= 1e-6 * neg_pobj) {
        return package(SolveStatus::Unbounded, iter);
      }
    }
    if (iter == opts_.max_iter) break;

    for (std::size_t b = 0; b < nb; ++b) {
      if (!nt_scaling(x_[b], s_[b], nt[b])) {
        best.status = SolveStatus::NumericalTrouble;
        best.iterations = iter;
        return best;
      }
    }

    schur_ = schur(nt);
    schur_ff_ = schur_(free_, free_);
    schur_llt_.compute(schur_ff_);
    if (!free_.empty() && schur_llt_.info() != Eigen::Success) {
      schur_ff_.diagonal().array() += 1e-14 * schur_ff_.diagonal().maxCoeff();
      schur_llt_.compute(schur_ff_);
      if (schur_llt_.info() != Eigen::Success) {
        best.status = SolveStatus::NumericalTrouble;
        best.iterations = iter;
        return best;
      }
    }

    // Predictor.
    std::vector<MatrixXd> t(nb);
    for (std::size_t b = 0; b < nb; ++b) t[b] = -MatrixXd(nt[b].v.asDiagonal());
    direction(nt, t, pred);
    double ap = std::numeric_limits<double>::infinity();
    double as = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < nb; ++b) {
      ap = std::min(ap, max_step(nt[b].v, pred.dxt[b]));
      as = std::min(as, max_step(nt[b].v, pred.dst[b]));
    }
    ap = std::min(1.0, ap);
    as = std::min(1.0, as);
    double xs_aff = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
      xs_aff += inner(x_[b] + ap * pred.dx[b], s_[b] + as * pred.ds[b]);
    }
    const double mu_aff = std::max(0.0, xs_aff / n_total_);
    const double expon = std::max(1.0, 3.0 * std::min(ap, as) * std::min(ap, as));
    double sigma = std::min(1.0, std::pow(mu_aff / mu, expon));
    // Keep centering while far from feasible.
    if (std::max(pinf_, dinf_) > 1e-1 * merit && std::min(ap, as) < 0.2) sigma = std::max(sigma, 0.1);

    // Corrector.
    for (std::size_t b = 0; b < nb; ++b) {
      MatrixXd rc = -sym(pred.dxt[b] * pred.dst[b]);
      const auto& v = nt[b].v;
      for (Index i = 0; i < v.size(); ++i) rc(i, i) += sigma * mu - v[i] * v[i];
      for (Index j = 0; j < v.size(); ++j) {
        for (Index i = 0; i < v.size(); ++i) rc(i, j) *= 2.0 / (v[i] + v[j]);
      }
      t[b] = rc;
    }
    direction(nt, t, corr);
    double ax = std::numeric_limits<double>::infinity();
    double az = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < nb; ++b) {
      ax = std::min(ax, max_step(nt[b].v, corr.dxt[b]));
      az = std::min(az, max_step(nt[b].v, corr.dst[b]));
    }
    const double gamma = 0.9 + 0.09 * std::min(ap, as);
    ax = std::min(1.0, gamma * ax);
    az = std::min(1.0, gamma * az);

    for (std::size_t b = 0; b < nb; ++b) {
      x_[b] = sym(x_[b] + ax * corr.dx[b]);
      s_[b] = sym(s_[b] + az * corr.ds[b]);
    }
    q_ += ax * corr.dq;
    z_ += az * corr.dz;

    if (opts_.verbose) {
      std::fprintf(stderr, "%4d %14.7e %14.7e %10.3e %10.3e %10.3e %8.4f %8.4f\n", iter, pobj_,
                   dobj_, gap_, pinf_, dinf_, ax, az);
    }
    stall = (ax < 1e-8 && az < 1e-8) ? stall + 1 : 0;
    if (stall >= 5) {
      best.status = SolveStatus::NumericalTrouble;
      best.iterations = iter;
      return best;
    }
  }
  best.status = SolveStatus::MaxIter;
  best.iterations = opts_.max_iter;
  return best;
}

}  // namespace

bool SdpSolution::usable() const {
  if (status == SolveStatus::Optimal) return true;
  return (status == SolveStatus::MaxIter || status == SolveStatus::NumericalTrouble) &&
         gap <= kUsableGap && primal_infeasibility <= kUsableGap &&
         dual_infeasibility <= kUsableGap;
}

SdpSolution solve(const MomentSDP& sdp, const SolverOptions& opts) {
  InteriorPoint ipm(sdp, opts);
  return ipm.run();
}

Polynomial extract_dual_polynomial(const SdpSolution& sol, int d) {
  if (!sol.usable()) {
    throw SolverError("extract_dual_polynomial: no usable dual multipliers (status " +
                      to_string(sol.status) + ")");
  }
  if (d < 1 || sol.q_coeffs.size() != static_cast<std::size_t>(2 * d + 1)) {
    std::ostringstream os;
    os << "extract_dual_polynomial: expected " << 2 * d + 1 << " multipliers, got "
       << sol.q_coeffs.size();
    throw std::invalid_argument(os.str());
  }
  // Near-optimality: integral of q within 1/d of the dual optimum.
  if (sol.objective_primal - sol.objective_dual > 1.0 / d) {
    throw SolverError("extract_dual_polynomial: duality gap exceeds 1/d");
  }
  return univariate(sol.q_coeffs);
}

}  // namespace paretosdp
