#include "statelift/ipm.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

namespace statelift {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using SpMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;
using LReal = long double;
using SpMatL = Eigen::SparseMatrix<LReal>;
using VectorXl = Eigen::Matrix<LReal, Eigen::Dynamic, 1>;
using MatrixXl = Eigen::Matrix<LReal, Eigen::Dynamic, Eigen::Dynamic>;

/// One scalar variable's coefficient matrix inside a block, expanded to
/// full-matrix positions (off-diagonal entries appear at both (p,q) and
/// (q,p) with the same coefficient).
struct VarEntries {
  int var = -1;
  std::vector<int> p, q;
  std::vector<double> a;
};

struct BlockData {
  int dim = 0;
  MatrixXd C;
  std::vector<VarEntries> vars;
};

BlockData prepare_block(const PsdBlock& b, const std::vector<double>& vscale) {
  BlockData d;
  d.dim = b.dim;
  d.C = MatrixXd::Zero(b.dim, b.dim);
  std::map<int, std::map<std::pair<int, int>, double>> per_var;
  for (auto& e : b.entries) {
    if (e.var < 0) {
      d.C(e.row, e.col) += e.coeff;
      if (e.row != e.col) d.C(e.col, e.row) += e.coeff;
    } else {
      per_var[e.var][{e.row, e.col}] += e.coeff * vscale[e.var];
    }
  }
  for (auto& [v, m] : per_var) {
    VarEntries ve;
    ve.var = v;
    for (auto& [rc, a] : m) {
      if (a == 0.0) continue;
      ve.p.push_back(rc.first);
      ve.q.push_back(rc.second);
      ve.a.push_back(a);
      if (rc.first != rc.second) {
        ve.p.push_back(rc.second);
        ve.q.push_back(rc.first);
        ve.a.push_back(a);
      }
    }
    if (!ve.p.empty()) d.vars.push_back(std::move(ve));
  }
  return d;
}

/// S(y) restricted to one block: C + sum_j y_j A_j.
MatrixXd model_matrix(const BlockData& d, const VectorXd& y) {
  MatrixXd m = d.C;
  for (auto& ve : d.vars) {
    double yv = y[ve.var];
    for (size_t i = 0; i < ve.p.size(); ++i) m(ve.p[i], ve.q[i]) += ve.a[i] * yv;
  }
  return m;
}

void add_adjoint_l(const BlockData& d, const MatrixXl& G, VectorXl& out) {
  for (auto& ve : d.vars) {
    LReal acc = 0.0;
    for (size_t i = 0; i < ve.p.size(); ++i)
      acc += static_cast<LReal>(ve.a[i]) * G(ve.q[i], ve.p[i]);
    out[ve.var] += acc;
  }
}

MatrixXl apply_direction_l(const BlockData& d, const VectorXl& dy) {
  MatrixXl m = MatrixXl::Zero(d.dim, d.dim);
  for (auto& ve : d.vars) {
    LReal yv = dy[ve.var];
    for (size_t i = 0; i < ve.p.size(); ++i)
      m(ve.p[i], ve.q[i]) += static_cast<LReal>(ve.a[i]) * yv;
  }
  return m;
}

MatrixXd apply_direction(const BlockData& d, const VectorXd& dy) {
  MatrixXd m = MatrixXd::Zero(d.dim, d.dim);
  for (auto& ve : d.vars) {
    double yv = dy[ve.var];
    for (size_t i = 0; i < ve.p.size(); ++i) m(ve.p[i], ve.q[i]) += ve.a[i] * yv;
  }
  return m;
}

/// out[j] += tr(A_j G) for every variable of the block (G need not be
/// symmetric; tr(A_j G) = sum over expanded entries a * G(q, p)).
void add_adjoint(const BlockData& d, const MatrixXd& G, VectorXd& out) {
  for (auto& ve : d.vars) {
    double acc = 0.0;
    for (size_t i = 0; i < ve.p.size(); ++i) acc += ve.a[i] * G(ve.q[i], ve.p[i]);
    out[ve.var] += acc;
  }
}

/// Cholesky with a jittered retry: iterates may graze the cone boundary
/// closely enough that an exact factorization fails in rounding.
Eigen::LLT<MatrixXd> safe_llt(MatrixXd M) {
  Eigen::LLT<MatrixXd> llt(M);
  double eps = 1e-14 * std::max(1.0, M.trace() / std::max<Eigen::Index>(M.rows(), 1));
  int tries = 0;
  while (llt.info() != Eigen::Success && tries++ < 4) {
    M.diagonal().array() += eps;
    eps *= 100.0;
    llt.compute(M);
  }
  return llt;
}

/// Largest alpha with M + alpha*D psd, given the Cholesky factor L of M.
double max_step(const Eigen::LLT<MatrixXd>& llt, const MatrixXd& D) {
  MatrixXd Wt = llt.matrixL().solve(D).transpose();
  MatrixXd W = llt.matrixL().solve(Wt);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (W + W.transpose()),
                                             Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues().minCoeff();
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

}  // namespace

SolveResult solve_ipm(const ConicProgram& prog, const SolveOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };

  prog.validate();
  const int nv = prog.num_vars();
  const int neq = static_cast<int>(prog.rows().size());
  const int nb = static_cast<int>(prog.blocks().size());

  // Internal change of variables y = D y~ using the caller's magnitude
  // hints: moments of widely different natural size otherwise leave the
  // KKT system too ill-conditioned near degenerate (boundary) solutions.
  const std::vector<double>& vscale = prog.var_scales();
  Eigen::Map<const VectorXd> dscale(vscale.data(), nv);

  std::vector<BlockData> blocks;
  blocks.reserve(nb);
  int ntot = 0;
  for (auto& b : prog.blocks()) {
    blocks.push_back(prepare_block(b, vscale));
    ntot += b.dim;
  }

  VectorXd c = VectorXd::Zero(nv);
  for (auto& [v, a] : prog.objective()) c[v] += a * vscale[v];
  // Equilibrate each equality row to unit infinity norm; the variable
  // scaling above can otherwise leave row norms orders of magnitude apart.
  VectorXd b_eq = VectorXd::Zero(neq);
  VectorXd rscale = VectorXd::Ones(neq);
  std::vector<Triplet> a_trip;
  for (int i = 0; i < neq; ++i) {
    double rmax = 0.0;
    for (auto& [v, a] : prog.rows()[i].coeffs) rmax = std::max(rmax, std::abs(a * vscale[v]));
    if (rmax > 0.0) rscale[i] = 1.0 / rmax;
    b_eq[i] = prog.rows()[i].rhs * rscale[i];
    for (auto& [v, a] : prog.rows()[i].coeffs)
      a_trip.emplace_back(i, v, a * vscale[v] * rscale[i]);
  }
  SpMat A(neq, nv);
  A.setFromTriplets(a_trip.begin(), a_trip.end());
  SpMat At = A.transpose();

  double cmax = 0.0;
  for (auto& d : blocks)
    if (d.dim > 0) cmax = std::max(cmax, d.C.cwiseAbs().maxCoeff());
  const double bnorm = neq > 0 ? b_eq.lpNorm<Eigen::Infinity>() : 0.0;
  const double cnorm = nv > 0 ? c.lpNorm<Eigen::Infinity>() : 0.0;

  // Infeasible start: y = 0, identity-scaled cone iterates.
  const double xi = 10.0 * std::max({1.0, bnorm, cnorm, cmax});
  VectorXd y = VectorXd::Zero(nv);
  VectorXd lam = VectorXd::Zero(neq);
  std::vector<MatrixXd> S, Z;
  for (auto& d : blocks) {
    S.push_back(xi * MatrixXd::Identity(d.dim, d.dim));
    Z.push_back(xi * MatrixXd::Identity(d.dim, d.dim));
  }

  // Quasi-definite regularization of the KKT matrix; refinement removes
  // the primal-block bias but keeps the dual block as part of its target
  // (see solve_kkt below).
  const double reg_p = 1e-10 * std::max(1.0, cnorm);
  const double reg_d = 1e-10 * std::max(1.0, bnorm);
  const double tol = opts.tol;
  const double tol_near = std::max(100.0 * tol, 1e-6);
  const double tau = 0.99;

  // The KKT matrix [H + reg_p I, A'; A, -reg_d I] has a fixed sparsity
  // pattern across iterations: build it (and the scatter offsets into its
  // compressed storage) once, and only rewrite the values per iteration.
  const int nk = nv + neq;
  Eigen::SimplicialLDLT<SpMatL, Eigen::Lower> kkt;
  bool analyzed = false;
  SpMatL KL(nk, nk);
  std::vector<int> hslot, aslot, dslot_p(nv), dslot_d(neq);
  {
    std::vector<Eigen::Triplet<LReal>> pat;
    for (int k = 0; k < nb; ++k) {
      const auto& vs = blocks[k].vars;
      for (size_t j = 0; j < vs.size(); ++j)
        for (size_t l = j; l < vs.size(); ++l)
          pat.emplace_back(std::max(vs[j].var, vs[l].var), std::min(vs[j].var, vs[l].var), 1.0L);
    }
    for (int i = 0; i < neq; ++i)
      for (auto& [v, a] : prog.rows()[i].coeffs) pat.emplace_back(nv + i, v, 1.0L);
    for (int j = 0; j < nv; ++j) pat.emplace_back(j, j, 1.0L);
    for (int i = 0; i < neq; ++i) pat.emplace_back(nv + i, nv + i, 1.0L);
    KL.setFromTriplets(pat.begin(), pat.end());
    KL.makeCompressed();
    auto slot_of = [&](int r, int c) {
      const int* ii = KL.innerIndexPtr();
      const int* oo = KL.outerIndexPtr();
      return static_cast<int>(std::lower_bound(ii + oo[c], ii + oo[c + 1], r) - ii);
    };
    for (int k = 0; k < nb; ++k) {
      const auto& vs = blocks[k].vars;
      for (size_t j = 0; j < vs.size(); ++j)
        for (size_t l = j; l < vs.size(); ++l)
          hslot.push_back(slot_of(std::max(vs[j].var, vs[l].var), std::min(vs[j].var, vs[l].var)));
    }
    for (int i = 0; i < neq; ++i)
      for (auto& [v, a] : prog.rows()[i].coeffs) aslot.push_back(slot_of(nv + i, v));
    for (int j = 0; j < nv; ++j) dslot_p[j] = slot_of(j, j);
    for (int i = 0; i < neq; ++i) dslot_d[i] = slot_of(nv + i, nv + i);
  }
  const int knnz = static_cast<int>(KL.nonZeros());
  // Row/column index of every stored entry, for the equilibration passes.
  std::vector<int> e_row(knnz), e_col(knnz);
  for (int col = 0; col < nk; ++col)
    for (int idx = KL.outerIndexPtr()[col]; idx < KL.outerIndexPtr()[col + 1]; ++idx) {
      e_row[idx] = KL.innerIndexPtr()[idx];
      e_col[idx] = col;
    }
  // Constant part of the value array: the equality rows.
  VectorXl kv_base = VectorXl::Zero(knnz);
  {
    int idx = 0;
    for (int i = 0; i < neq; ++i)
      for (auto& [v, a] : prog.rows()[i].coeffs)
        kv_base[aslot[idx++]] += static_cast<LReal>(a * vscale[v] * rscale[i]);
  }
  VectorXl kvu(knnz);

  // Gram matrix G_uv = sum_b tr(A_u A_v), used to repair dual
  // feasibility a posteriori: the least-squares multipliers x with
  // adj(sum_v x_v A_v) = rd give a correction dZ that, added to a still
  // positive definite Z, yields an exactly dual-feasible certificate.
  Eigen::SimplicialLDLT<SpMat, Eigen::Lower> gram;
  {
    std::vector<Triplet> g_trip;
    for (int k = 0; k < nb; ++k) {
      const auto& vs = blocks[k].vars;
      MatrixXd D = MatrixXd::Zero(blocks[k].dim, blocks[k].dim);
      for (size_t j = 0; j < vs.size(); ++j) {
        const VarEntries& ej = vs[j];
        for (size_t i = 0; i < ej.p.size(); ++i) D(ej.p[i], ej.q[i]) += ej.a[i];
        for (size_t l = j; l < vs.size(); ++l) {
          const VarEntries& el = vs[l];
          double t = 0.0;
          for (size_t m = 0; m < el.p.size(); ++m) t += el.a[m] * D(el.p[m], el.q[m]);
          if (t != 0.0)
            g_trip.emplace_back(std::max(ej.var, el.var), std::min(ej.var, el.var), t);
        }
        for (size_t i = 0; i < ej.p.size(); ++i) D(ej.p[i], ej.q[i]) = 0.0;
      }
    }
    SpMat G(nv, nv);
    G.setFromTriplets(g_trip.begin(), g_trip.end());
    gram.compute(G);
  }
  double best_cert = -std::numeric_limits<double>::infinity();

  SolveResult best;
  best.y.assign(nv, 0.0);
  double best_merit = std::numeric_limits<double>::infinity();
  int best_age = 0;
  std::vector<double> merit_hist;

  auto finish = [&](SolveStatus fallback, int iters) {
    SolveResult r = best;
    // Prefer the repaired (exactly dual-feasible) certificate over the
    // raw dual objective of the best iterate.
    if (std::isfinite(best_cert))
      r.dual_objective = best_cert + prog.objective_constant();
    if (r.status != SolveStatus::Optimal) {
      double merit = std::max({r.primal_infeas, r.dual_infeas, r.rel_gap});
      if (fallback == SolveStatus::Infeasible || fallback == SolveStatus::Unbounded)
        r.status = fallback;
      else
        r.status = merit <= tol_near ? SolveStatus::NearOptimal : fallback;
    }
    r.iterations = iters;
    r.wall_time_s = elapsed();
    return r;
  };

  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    // Residuals and the Nesterov-Todd scaling point at the current iterate.
    // Per block: W Z W = S with W = R R', R = L_s V Sigma^{-1/2} from the
    // SVD L_z' L_s = U Sigma V'. In the scaled space both cone iterates
    // equal diag(Sigma), which keeps the Newton system balanced even when
    // the optimum is degenerate (rank-deficient moment matrices).
    std::vector<MatrixXd> rS(nb), Rmat(nb), Rinv(nb);
    std::vector<MatrixXl> RinvL(nb), WinvL(nb);
    std::vector<VectorXd> lamv(nb);
    std::vector<Eigen::LLT<MatrixXd>> llt(nb), lltz(nb);
    double rs_max = 0.0;
    for (int k = 0; k < nb; ++k) {
      rS[k] = model_matrix(blocks[k], y) - S[k];
      if (blocks[k].dim > 0) rs_max = std::max(rs_max, rS[k].cwiseAbs().maxCoeff());
      llt[k] = safe_llt(S[k]);
      lltz[k] = safe_llt(Z[k]);
      if (llt[k].info() != Eigen::Success || lltz[k].info() != Eigen::Success)
        return finish(SolveStatus::Stall, iter);
      MatrixXd Ls = llt[k].matrixL();
      MatrixXd Lz = lltz[k].matrixL();
      Eigen::JacobiSVD<MatrixXd> svd(Lz.transpose() * Ls,
                                     Eigen::ComputeFullU | Eigen::ComputeFullV);
      lamv[k] = svd.singularValues();
      VectorXd isqs = lamv[k].cwiseSqrt().cwiseInverse();
      Rmat[k] = Ls * svd.matrixV() * isqs.asDiagonal();
      Rinv[k] = isqs.asDiagonal() * svd.matrixU().transpose() * Lz.transpose();
      RinvL[k] = Rinv[k].cast<LReal>();
      WinvL[k] = RinvL[k].transpose() * RinvL[k];
    }
    VectorXd rp = b_eq - A * y;
    VectorXd rd = c - At * lam;
    for (int k = 0; k < nb; ++k) add_adjoint(blocks[k], -Z[k], rd);

    double mu = 0.0;
    for (int k = 0; k < nb; ++k) mu += (S[k].array() * Z[k].array()).sum();
    mu = ntot > 0 ? mu / ntot : 0.0;

    double p_obj = c.dot(y);
    double d_obj = b_eq.dot(lam);
    for (int k = 0; k < nb; ++k) d_obj -= (blocks[k].C.array() * Z[k].array()).sum();
    double pinf = std::max(neq > 0 ? rp.lpNorm<Eigen::Infinity>() / (1.0 + bnorm) : 0.0,
                           rs_max / (1.0 + cmax));
    double dinf = nv > 0 ? rd.lpNorm<Eigen::Infinity>() / (1.0 + cnorm) : 0.0;
    double gap = std::abs(p_obj - d_obj) / (1.0 + std::abs(p_obj) + std::abs(d_obj));
    double merit = std::max({pinf, dinf, gap});

    if (opts.verbose)
      std::fprintf(stderr, "ipm %3d  mu %.3e  pinf %.3e  dinf %.3e  gap %.3e\n", iter, mu,
                   pinf, dinf, gap);

    // Dual-feasibility repair: absorb rd into Z exactly (least-squares in
    // the span of the constraint matrices) and keep the certificate when
    // the corrected Z is still positive definite. This gives a valid
    // dual bound even when the iterates themselves carry residuals.
    if (gram.info() == Eigen::Success && dinf < 1e-2) {
      VectorXd x = gram.solve(rd);
      double cert = b_eq.dot(lam);
      bool psd = true;
      for (int k = 0; k < nb; ++k) {
        MatrixXd Zr = Z[k] + apply_direction(blocks[k], x);
        Eigen::LLT<MatrixXd> chk(Zr);
        if (chk.info() != Eigen::Success) {
          psd = false;
          break;
        }
        cert -= (blocks[k].C.array() * Zr.array()).sum();
      }
      if (psd) best_cert = std::max(best_cert, cert);
    }

    if (merit < best_merit) {
      if (merit < 0.9 * best_merit) best_age = 0;
      best_merit = merit;
      best.objective = p_obj + prog.objective_constant();
      best.dual_objective = d_obj + prog.objective_constant();
      Eigen::Map<VectorXd>(best.y.data(), nv) = y.cwiseProduct(dscale);
      best.block_matrices = S;
      VectorXd lam_orig = lam.cwiseProduct(rscale);
      best.eq_duals.assign(lam_orig.data(), lam_orig.data() + neq);
      best.primal_infeas = pinf;
      best.dual_infeas = dinf;
      best.rel_gap = gap;
    } else {
      ++best_age;
    }

    if (pinf <= tol && dinf <= tol && gap <= tol) {
      best.status = SolveStatus::Optimal;
      return finish(SolveStatus::Optimal, iter);
    }
    if (p_obj < -1e12 && pinf < 1e-6) return finish(SolveStatus::Unbounded, iter);
    if (d_obj > 1e12 && dinf < 1e-6) return finish(SolveStatus::Infeasible, iter);
    if (best_age > 15) return finish(SolveStatus::Stall, iter);
    // Rate-based stall: once complementarity is essentially converged,
    // stop when the merit is no longer at least halving every 30
    // iterations; the endgame on degenerate instances otherwise crawls
    // for hundreds of iterations at marginal gain.
    merit_hist.push_back(best_merit);
    if (mu < 1e-6 && iter >= 30 && best_merit > 0.5 * merit_hist[iter - 30])
      return finish(SolveStatus::Stall, iter);
    if (elapsed() > opts.time_limit_s) return finish(SolveStatus::Timeout, iter);

    // Schur-complement Hessian H_jk = sum_b tr(A_j W^-1 A_k W^-1),
    // scattered blockwise into the lower triangle of the KKT value array.
    kvu = kv_base;
    size_t hidx = 0;
    for (int k = 0; k < nb; ++k) {
      // Large blocks can make a single assembly pass expensive, so honor
      // the time limit between blocks as well.
      if (elapsed() > opts.time_limit_s) return finish(SolveStatus::Timeout, iter);
      const auto& vs = blocks[k].vars;
      // The Hessian is assembled in extended precision: its entries grow
      // like 1/mu^2 near the optimum, and rounding them to doubles leaves
      // the recovered dZ inconsistent with the Newton system by enough to
      // floor dual infeasibility around 1e-3.
      const MatrixXl& X = WinvL[k];
      const MatrixXl& Y = WinvL[k];
      for (size_t j = 0; j < vs.size(); ++j) {
        if ((j & 63) == 0 && elapsed() > opts.time_limit_s)
          return finish(SolveStatus::Timeout, iter);
        for (size_t l = j; l < vs.size(); ++l) {
          const VarEntries& ej = vs[j];
          const VarEntries& el = vs[l];
          LReal t = 0.0;
          for (size_t i = 0; i < ej.p.size(); ++i) {
            const LReal ai = ej.a[i];
            const auto xrow = X.row(ej.q[i]);
            const auto ycol = Y.col(ej.p[i]);
            LReal acc = 0.0;
            for (size_t m = 0; m < el.p.size(); ++m)
              acc += el.a[m] * xrow(el.p[m]) * ycol(el.q[m]);
            t += ai * acc;
          }
          kvu[hslot[hidx++]] += t;
        }
      }
    }

    VectorXl kscale = VectorXl::Ones(nk);
    LReal reg_mult = 1.0;
    // Factor and refine in extended precision: near a degenerate optimum
    // the KKT condition number exceeds 1/eps for doubles and the Newton
    // directions come out with O(1e-3) dual-equation defects that stall
    // convergence on longer chains.
    auto factorize_kkt = [&]() {
      VectorXl v = kvu;
      for (int j = 0; j < nv; ++j) v[dslot_p[j]] += static_cast<LReal>(reg_p) * reg_mult;
      for (int i = 0; i < neq; ++i) v[dslot_d[i]] -= static_cast<LReal>(reg_d) * reg_mult;
      // Symmetric Ruiz equilibration of the KKT matrix: without it the
      // Hessian rows grow like 1/mu^2 while the constraint rows stay O(1),
      // and the growth factor of the unpivoted LDLT destroys the Newton
      // direction near a degenerate optimum.
      kscale.setOnes();
      for (int pass = 0; pass < 3; ++pass) {
        VectorXl rmax = VectorXl::Zero(nk);
        for (int e = 0; e < knnz; ++e) {
          LReal m = std::abs(v[e]) * kscale[e_row[e]] * kscale[e_col[e]];
          rmax[e_row[e]] = std::max(rmax[e_row[e]], m);
          rmax[e_col[e]] = std::max(rmax[e_col[e]], m);
        }
        for (int i = 0; i < nk; ++i)
          if (rmax[i] > 0) kscale[i] /= std::sqrt(rmax[i]);
      }
      LReal* kv = KL.valuePtr();
      for (int e = 0; e < knnz; ++e) kv[e] = v[e] * kscale[e_row[e]] * kscale[e_col[e]];
      if (!analyzed) {
        kkt.analyzePattern(KL);
        analyzed = true;
      }
      kkt.factorize(KL);
      return kkt.info() == Eigen::Success;
    };
    if (!factorize_kkt()) return finish(SolveStatus::Stall, iter);
    auto kkt_solve_scaled = [&](const VectorXl& r) -> VectorXl {
      VectorXl rs = r.cwiseProduct(kscale);
      VectorXl xs = kkt.solve(rs);
      return xs.cwiseProduct(kscale);
    };

    // Solves the KKT system with iterative refinement; a near-zero pivot
    // in the unpivoted factorization occasionally ruins a solve outright,
    // in which case the system is re-factored with escalated
    // regularization before giving up on the iteration.
    auto solve_kkt = [&](const VectorXl& r1, const VectorXd& r2, VectorXl& dy, VectorXl& dl) {
      VectorXl rhs(nv + neq);
      rhs.head(nv) = r1;
      rhs.tail(neq) = r2.cast<LReal>();
      LReal rhs_norm = rhs.lpNorm<Eigen::Infinity>();
      VectorXl sol(nk);
      for (int attempt = 0;; ++attempt) {
        sol = kkt_solve_scaled(rhs);
        LReal last = std::numeric_limits<LReal>::infinity();
        LReal rn = last;
        for (int ref = 0; ref < 10; ++ref) {
          // Residual against the unscaled KKT matrix, recovered from the
          // equilibrated one: K = D^-1 Ks D^-1 with D = diag(kscale). The
          // primal regularization is backed out of the target, but the
          // -reg_d block stays part of it: with linearly dependent
          // equality rows the unregularized KKT matrix is singular and
          // refining against it diverges along its null space.
          VectorXl tmp = sol.cwiseQuotient(kscale);
          VectorXl res =
              rhs - VectorXl(KL.selfadjointView<Eigen::Lower>() * tmp).cwiseQuotient(kscale);
          res.head(nv) += static_cast<LReal>(reg_p) * reg_mult * sol.head(nv);
          rn = res.lpNorm<Eigen::Infinity>();
          if (opts.verbose)
            std::fprintf(stderr, "    kkt ref %d  res %.3Le\n", ref, rn);
          if (rn >= 0.5 * last || rn < 1e-16 * (1.0 + rhs_norm)) break;
          last = rn;
          sol += kkt_solve_scaled(res);
        }
        if (rn < 1e-6 * (1.0 + rhs_norm) || attempt >= 3 || reg_mult >= 1e6) break;
        reg_mult *= 100.0;
        if (!factorize_kkt()) break;
      }
      dy = sol.head(nv);
      dl = -sol.tail(neq);
    };

    // E holds the complementarity right-hand side in the scaled space,
    // where the linearization reads ((lam_i + lam_j)/2)(dS~ + dZ~)_ij =
    // E_ij around S~ = Z~ = diag(lam).
    // dZ is recovered as Rinv' (G o E - dS~) Rinv with dS~ = Rinv dS Rinv'.
    // The subtraction must happen in the scaled space and in extended
    // precision: the equivalent form T - Winv dS Winv cancels two
    // 1/mu-amplified products and the rounding left over keeps dual
    // infeasibility pinned around 1e-3 on longer chains.
    auto direction = [&](const std::vector<MatrixXd>& E, VectorXd& dy, VectorXd& dl,
                         std::vector<MatrixXd>& dS, std::vector<MatrixXd>& dZ) {
      std::vector<MatrixXl> GE(nb);
      VectorXl w = (-rd).cast<LReal>();
      for (int k = 0; k < nb; ++k) {
        GE[k] = E[k].cast<LReal>();
        for (int i = 0; i < GE[k].rows(); ++i)
          for (int j = 0; j < GE[k].cols(); ++j)
            GE[k](i, j) *= 2.0L / (static_cast<LReal>(lamv[k][i]) + static_cast<LReal>(lamv[k][j]));
        MatrixXl rSs = RinvL[k] * rS[k].cast<LReal>() * RinvL[k].transpose();
        MatrixXl T = RinvL[k].transpose() * (GE[k] - rSs) * RinvL[k];
        add_adjoint_l(blocks[k], T, w);
      }
      // The direction stays in extended precision through the dZ
      // recovery: rounding dy to doubles first would re-enter the dual
      // equation through the 1/mu^2-amplified scaled products.
      VectorXl dyL, dlL;
      solve_kkt(w, rp, dyL, dlL);
      dy = dyL.cast<double>();
      dl = dlL.cast<double>();
      dS.resize(nb);
      dZ.resize(nb);
      for (int k = 0; k < nb; ++k) {
        MatrixXl dSL = apply_direction_l(blocks[k], dyL) + rS[k].cast<LReal>();
        dS[k] = dSL.cast<double>();
        MatrixXl dSs = RinvL[k] * dSL * RinvL[k].transpose();
        MatrixXl g = RinvL[k].transpose() * (GE[k] - dSs) * RinvL[k];
        dZ[k] = (0.5L * (g + g.transpose())).cast<double>();
      }
    };

    // Predictor (affine scaling): scaled-space target 0, so E = -Lam^2.
    std::vector<MatrixXd> E(nb);
    for (int k = 0; k < nb; ++k) {
      VectorXd d = -lamv[k].cwiseProduct(lamv[k]);
      E[k] = d.asDiagonal();
    }
    VectorXd dy_a, dl_a;
    std::vector<MatrixXd> dS_a, dZ_a;
    direction(E, dy_a, dl_a, dS_a, dZ_a);

    double ap = 1.0, ad = 1.0;
    for (int k = 0; k < nb; ++k) {
      ap = std::min(ap, tau * max_step(llt[k], dS_a[k]));
      ad = std::min(ad, tau * max_step(lltz[k], dZ_a[k]));
    }
    double mu_aff = 0.0;
    for (int k = 0; k < nb; ++k)
      mu_aff += ((S[k] + ap * dS_a[k]).array() * (Z[k] + ad * dZ_a[k]).array()).sum();
    mu_aff = std::max(mu_aff / std::max(ntot, 1), 0.0);
    double sigma = mu > 0 ? std::clamp(std::pow(mu_aff / mu, 3.0), 1e-8, 1.0) : 1e-8;

    // Corrector: center toward sigma*mu and subtract the Mehrotra
    // second-order term, both expressed in the scaled space.
    for (int k = 0; k < nb; ++k) {
      VectorXd d = VectorXd::Constant(lamv[k].size(), sigma * mu) - lamv[k].cwiseProduct(lamv[k]);
      E[k] = d.asDiagonal();
      MatrixXd dSs = Rinv[k] * dS_a[k] * Rinv[k].transpose();
      MatrixXd dZs = Rmat[k].transpose() * dZ_a[k] * Rmat[k];
      E[k] -= 0.5 * (dSs * dZs + dZs * dSs);
    }
    VectorXd dy, dl;
    std::vector<MatrixXd> dS, dZ;
    direction(E, dy, dl, dS, dZ);

    ap = 1.0;
    ad = 1.0;
    for (int k = 0; k < nb; ++k) {
      ap = std::min(ap, tau * max_step(llt[k], dS[k]));
      ad = std::min(ad, tau * max_step(lltz[k], dZ[k]));
    }
    if (ap < 1e-10 && ad < 1e-10) return finish(SolveStatus::Stall, iter);

    if (opts.verbose)
      std::fprintf(stderr, "    step ap %.3e  ad %.3e  sigma %.3e\n", ap, ad, sigma);

    y += ap * dy;
    lam += ad * dl;
    for (int k = 0; k < nb; ++k) {
      S[k] += ap * dS[k];
      S[k] = 0.5 * (S[k] + S[k].transpose()).eval();
      Z[k] += ad * dZ[k];
      Z[k] = 0.5 * (Z[k] + Z[k].transpose()).eval();
    }
  }
  return finish(SolveStatus::Stall, iter);
}

}  // namespace statelift
