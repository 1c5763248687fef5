#include "pptforge/conic.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pptforge::conic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (a, b, v) meaning v * E_ab; symmetric entries are expanded to both orders.
struct Elem {
  int a, b;
  double v;
};

using ElemList = std::vector<Elem>;

ElemList expand(const std::vector<SymEntry>& entries) {
  ElemList out;
  out.reserve(2 * entries.size());
  for (const auto& e : entries) {
    if (e.r == e.c) {
      out.push_back({e.r, e.r, e.v});
    } else {
      out.push_back({e.r, e.c, e.v});
      out.push_back({e.c, e.r, e.v});
    }
  }
  return out;
}

struct Scaling {
  // LP
  Eigen::VectorXd w;        // sqrt(s/z)
  Eigen::VectorXd lam_lp;   // sqrt(s*z)
  // PSD, per block
  std::vector<Eigen::MatrixXd> R;     // scaled point: R^-1 S R^-T = R' Z R = diag(sig)
  std::vector<Eigen::MatrixXd> Rti;   // R^{-T}
  std::vector<Eigen::MatrixXd> Winv;  // Rti Rti'
  std::vector<Eigen::VectorXd> sig;
};

// Largest step length alpha with s + alpha*ds staying in the cone.
double max_step_lp(const Eigen::VectorXd& s, const Eigen::VectorXd& ds) {
  double alpha = kInf;
  for (int i = 0; i < s.size(); ++i) {
    if (ds[i] < 0.0) alpha = std::min(alpha, -s[i] / ds[i]);
  }
  return alpha;
}

double max_step_psd(const Eigen::MatrixXd& S, const Eigen::MatrixXd& dS) {
  if (S.rows() == 0) return kInf;
  Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success) return 0.0;
  Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd T = L.triangularView<Eigen::Lower>().solve(dS);
  T = L.triangularView<Eigen::Lower>().solve(T.transpose()).eval();
  T = 0.5 * (T + T.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
  const double m = es.eigenvalues().minCoeff();
  if (m >= 0.0) return kInf;
  return -1.0 / m;
}

}  // namespace

Solution solve(const Problem& prob, const Eigen::VectorXd& x0, const Options& opt) {
  const int n = static_cast<int>(prob.columns.size());
  const int m = prob.lp_dim;
  const int nblk = static_cast<int>(prob.block_dims.size());

  Solution sol;
  sol.x = x0;

  const Eigen::VectorXd c =
      Eigen::Map<const Eigen::VectorXd>(prob.objective.data(), n);

  // Expanded elementary entries per column per block, and LP rows as lists.
  std::vector<std::vector<ElemList>> col_elems(n);
  std::vector<std::vector<std::pair<int, double>>> lp_rows(m);
  for (int j = 0; j < n; ++j) {
    col_elems[j].resize(nblk);
    for (int b = 0; b < nblk; ++b) col_elems[j][b] = expand(prob.columns[j].blocks[b]);
    for (const auto& [row, coeff] : prob.columns[j].lp) {
      lp_rows[row].push_back({j, coeff});
    }
  }

  auto apply_A = [&](const Eigen::VectorXd& x, Eigen::VectorXd& lp,
                     std::vector<Eigen::MatrixXd>& blocks) {
    lp.setZero(m);
    blocks.assign(nblk, Eigen::MatrixXd());
    for (int b = 0; b < nblk; ++b) blocks[b].setZero(prob.block_dims[b], prob.block_dims[b]);
    for (int j = 0; j < n; ++j) {
      const double xj = x[j];
      if (xj == 0.0) continue;
      for (const auto& [row, coeff] : prob.columns[j].lp) lp[row] += coeff * xj;
      for (int b = 0; b < nblk; ++b) {
        for (const auto& e : col_elems[j][b]) blocks[b](e.a, e.b) += e.v * xj;
      }
    }
  };

  auto apply_At = [&](const Eigen::VectorXd& z_lp,
                      const std::vector<Eigen::MatrixXd>& z_blocks) {
    Eigen::VectorXd out(n);
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (const auto& [row, coeff] : prob.columns[j].lp) acc += coeff * z_lp[row];
      for (int b = 0; b < nblk; ++b) {
        for (const auto& e : col_elems[j][b]) acc += e.v * z_blocks[b](e.b, e.a);
      }
      out[j] = acc;
    }
    return out;
  };

  // Slacks from the starting point, shifted into the interior if needed.
  Eigen::VectorXd s_lp;
  std::vector<Eigen::MatrixXd> S;
  apply_A(sol.x, s_lp, S);
  s_lp -= prob.b_lp;
  for (int b = 0; b < nblk; ++b) S[b] -= prob.b_blocks[b];
  for (int i = 0; i < m; ++i) {
    if (s_lp[i] < 1e-8) s_lp[i] = std::max(1.0, std::abs(s_lp[i]));
  }
  for (int b = 0; b < nblk; ++b) {
    if (prob.block_dims[b] == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S[b], Eigen::EigenvaluesOnly);
    const double mineig = es.eigenvalues().minCoeff();
    if (mineig < 1e-8) {
      S[b] += (std::abs(mineig) + 1.0) * Eigen::MatrixXd::Identity(prob.block_dims[b], prob.block_dims[b]);
    }
  }

  Eigen::VectorXd z_lp = Eigen::VectorXd::Ones(m);
  std::vector<Eigen::MatrixXd> Z(nblk);
  for (int b = 0; b < nblk; ++b) Z[b] = Eigen::MatrixXd::Identity(prob.block_dims[b], prob.block_dims[b]);

  double nu = m;
  for (int d : prob.block_dims) nu += d;
  if (nu == 0) nu = 1;

  const double b_scale = 1.0 + std::max(prob.b_lp.size() ? prob.b_lp.cwiseAbs().maxCoeff() : 0.0,
                                        [&] {
                                          double mx = 0.0;
                                          for (const auto& B : prob.b_blocks)
                                            if (B.size()) mx = std::max(mx, B.cwiseAbs().maxCoeff());
                                          return mx;
                                        }());
  const double c_scale = 1.0 + (n ? c.cwiseAbs().maxCoeff() : 0.0);

  auto dual_obj = [&](const Eigen::VectorXd& zl, const std::vector<Eigen::MatrixXd>& zb) {
    double v = prob.b_lp.dot(zl);
    for (int b = 0; b < nblk; ++b) v += (prob.b_blocks[b].array() * zb[b].array()).sum();
    return v;
  };

  Eigen::VectorXd rp_lp;
  std::vector<Eigen::MatrixXd> Rp;
  Eigen::VectorXd rd;

  // Best iterate seen so far, restored on every exit path: late iterations
  // can go numerically singular after the answer is already in hand.
  struct Snapshot {
    double metric = std::numeric_limits<double>::infinity();
    double relgap = 0.0, pres = 0.0, dres = 0.0;
    Eigen::VectorXd x, s_lp, z_lp;
    std::vector<Eigen::MatrixXd> S, Z;
    int iteration = 0;
  } best;

  auto compute_residuals = [&] {
    apply_A(sol.x, rp_lp, Rp);
    rp_lp -= prob.b_lp + s_lp;
    for (int b = 0; b < nblk; ++b) Rp[b] -= prob.b_blocks[b] + S[b];
    rd = apply_At(z_lp, Z) - c;
    double pres = rp_lp.size() ? rp_lp.cwiseAbs().maxCoeff() : 0.0;
    for (const auto& B : Rp)
      if (B.size()) pres = std::max(pres, B.cwiseAbs().maxCoeff());
    sol.primal_res = pres / b_scale;
    sol.dual_res = (rd.size() ? rd.cwiseAbs().maxCoeff() : 0.0) / c_scale;
  };

  for (int iter = 0;; ++iter) {
    sol.iterations = iter;
    compute_residuals();

    double gap = s_lp.dot(z_lp);
    for (int b = 0; b < nblk; ++b) gap += (S[b].array() * Z[b].array()).sum();
    const double mu = gap / nu;

    sol.primal_obj = c.dot(sol.x);
    sol.dual_obj = dual_obj(z_lp, Z);
    sol.gap = sol.primal_obj - sol.dual_obj;
    if (opt.trace) sol.trajectory.push_back({sol.primal_obj, sol.dual_obj});
    if (opt.on_iterate) opt.on_iterate(sol.x, z_lp, Z);

    const double relgap = gap / std::max(1.0, std::abs(sol.primal_obj));
    const double metric = std::max({sol.primal_res / opt.feas_tol,
                                    sol.dual_res / opt.feas_tol,
                                    relgap / opt.gap_tol});
    if (metric < best.metric) {
      best = {metric, relgap, sol.primal_res, sol.dual_res, sol.x, s_lp,
              z_lp,   S,      Z,              iter};
    }
    if (sol.primal_res <= opt.feas_tol && sol.dual_res <= opt.feas_tol &&
        relgap <= opt.gap_tol) {
      sol.status = Status::Optimal;
      break;
    }
    if (iter >= opt.max_iter) {
      sol.status = Status::MaxIter;
      break;
    }
    if (iter - best.iteration > opt.stall_limit) {
      sol.status = Status::Degenerate;  // no longer making progress
      break;
    }

    // Nesterov-Todd scaling.
    Scaling sc;
    sc.w.resize(m);
    sc.lam_lp.resize(m);
    for (int i = 0; i < m; ++i) {
      sc.w[i] = std::sqrt(s_lp[i] / z_lp[i]);
      sc.lam_lp[i] = std::sqrt(s_lp[i] * z_lp[i]);
    }
    sc.R.resize(nblk);
    sc.Rti.resize(nblk);
    sc.Winv.resize(nblk);
    sc.sig.resize(nblk);
    bool degenerate = false;
    for (int b = 0; b < nblk; ++b) {
      const int d = prob.block_dims[b];
      if (d == 0) continue;
      Eigen::LLT<Eigen::MatrixXd> llt_s(S[b]), llt_z(Z[b]);
      if (llt_s.info() != Eigen::Success || llt_z.info() != Eigen::Success) {
        degenerate = true;
        break;
      }
      Eigen::MatrixXd Ls = llt_s.matrixL();
      Eigen::MatrixXd Lz = llt_z.matrixL();
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(Lz.transpose() * Ls,
                                            Eigen::ComputeFullU | Eigen::ComputeFullV);
      Eigen::VectorXd sg = svd.singularValues();
      if (sg.minCoeff() <= 0.0) {
        degenerate = true;
        break;
      }
      Eigen::VectorXd sg_isqrt = sg.array().sqrt().inverse();
      sc.R[b] = Ls * svd.matrixV() * sg_isqrt.asDiagonal();
      sc.Rti[b] = Lz * svd.matrixU() * sg_isqrt.asDiagonal();
      sc.Winv[b] = sc.Rti[b] * sc.Rti[b].transpose();
      sc.sig[b] = sg;
    }
    if (degenerate) {
      sol.status = Status::Degenerate;
      break;
    }

    // Schur complement H = A' W^-2 A.
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < m; ++i) {
      const double wi2 = 1.0 / (sc.w[i] * sc.w[i]);
      for (std::size_t p = 0; p < lp_rows[i].size(); ++p) {
        for (std::size_t q = 0; q <= p; ++q) {
          const auto& [j, cj] = lp_rows[i][p];
          const auto& [k, ck] = lp_rows[i][q];
          H(std::max(j, k), std::min(j, k)) += cj * ck * wi2;
        }
      }
    }
    for (int b = 0; b < nblk; ++b) {
      if (prob.block_dims[b] == 0) continue;
      const Eigen::MatrixXd& X = sc.Winv[b];
      for (int j = 0; j < n; ++j) {
        const ElemList& ej = col_elems[j][b];
        if (ej.empty()) continue;
        for (int k = 0; k <= j; ++k) {
          const ElemList& ek = col_elems[k][b];
          if (ek.empty()) continue;
          double acc = 0.0;
          for (const auto& p : ej)
            for (const auto& q : ek) acc += p.v * q.v * X(p.b, q.a) * X(q.b, p.a);
          H(j, k) += acc;
        }
      }
    }
    H = H.selfadjointView<Eigen::Lower>();

    Eigen::LLT<Eigen::MatrixXd> hllt(H);
    if (hllt.info() != Eigen::Success) {
      H.diagonal().array() += 1e-12 * (1.0 + H.diagonal().maxCoeff());
      hllt.compute(H);
      if (hllt.info() != Eigen::Success) {
        sol.status = Status::Degenerate;
        break;
      }
    }

    auto solve_direction = [&](const Eigen::VectorXd& d_lp,
                               const std::vector<Eigen::MatrixXd>& D_blk,
                               Eigen::VectorXd& dx, Eigen::VectorXd& ds_lp,
                               std::vector<Eigen::MatrixXd>& dS,
                               Eigen::VectorXd& dz_lp,
                               std::vector<Eigen::MatrixXd>& dZ) {
      // u = scaled centrality target minus scaled primal residual
      Eigen::VectorXd u_lp(m);
      for (int i = 0; i < m; ++i)
        u_lp[i] = d_lp[i] / sc.w[i] - rp_lp[i] / (sc.w[i] * sc.w[i]);
      std::vector<Eigen::MatrixXd> U(nblk);
      for (int b = 0; b < nblk; ++b) {
        if (prob.block_dims[b] == 0) continue;
        U[b] = sc.Rti[b] * D_blk[b] * sc.Rti[b].transpose() -
               sc.Winv[b] * Rp[b] * sc.Winv[b];
      }
      Eigen::VectorXd rhs = rd + apply_At(u_lp, U);
      dx = hllt.solve(rhs);
      dx += hllt.solve(rhs - H * dx);  // one step of refinement

      Eigen::VectorXd Adx_lp;
      std::vector<Eigen::MatrixXd> Adx_blk;
      apply_A(dx, Adx_lp, Adx_blk);
      ds_lp = Adx_lp + rp_lp;
      dS = Adx_blk;
      for (int b = 0; b < nblk; ++b)
        if (prob.block_dims[b]) dS[b] += Rp[b];
      dz_lp.resize(m);
      for (int i = 0; i < m; ++i) dz_lp[i] = u_lp[i] - Adx_lp[i] / (sc.w[i] * sc.w[i]);
      dZ.resize(nblk);
      for (int b = 0; b < nblk; ++b) {
        if (prob.block_dims[b] == 0) continue;
        dZ[b] = U[b] - sc.Winv[b] * Adx_blk[b] * sc.Winv[b];
        dZ[b] = 0.5 * (dZ[b] + dZ[b].transpose()).eval();
      }
    };

    // Affine (predictor) direction: target 0.
    Eigen::VectorXd d_aff(m);
    for (int i = 0; i < m; ++i) d_aff[i] = -sc.lam_lp[i];
    std::vector<Eigen::MatrixXd> D_aff(nblk);
    for (int b = 0; b < nblk; ++b) {
      if (prob.block_dims[b] == 0) continue;
      D_aff[b] = -Eigen::MatrixXd(sc.sig[b].asDiagonal());
    }
    Eigen::VectorXd dx_a, ds_a, dz_a;
    std::vector<Eigen::MatrixXd> dS_a, dZ_a;
    solve_direction(d_aff, D_aff, dx_a, ds_a, dS_a, dz_a, dZ_a);

    double as = max_step_lp(s_lp, ds_a);
    double az = max_step_lp(z_lp, dz_a);
    for (int b = 0; b < nblk; ++b) {
      if (prob.block_dims[b] == 0) continue;
      as = std::min(as, max_step_psd(S[b], dS_a[b]));
      az = std::min(az, max_step_psd(Z[b], dZ_a[b]));
    }
    as = std::min(1.0, as);
    az = std::min(1.0, az);

    double gap_aff = (s_lp + as * ds_a).dot(z_lp + az * dz_a);
    for (int b = 0; b < nblk; ++b) {
      if (prob.block_dims[b] == 0) continue;
      gap_aff += ((S[b] + as * dS_a[b]).array() * (Z[b] + az * dZ_a[b]).array()).sum();
    }
    double sigma = gap > 0.0 ? std::pow(std::max(0.0, gap_aff / gap), 3.0) : 0.0;
    sigma = std::min(1.0, std::max(1e-12, sigma));

    // Combined (corrector) direction.
    Eigen::VectorXd d_cmb(m);
    for (int i = 0; i < m; ++i) {
      const double corr = (ds_a[i] / sc.w[i]) * (sc.w[i] * dz_a[i]);
      d_cmb[i] = (sigma * mu - sc.lam_lp[i] * sc.lam_lp[i] - corr) / sc.lam_lp[i];
    }
    std::vector<Eigen::MatrixXd> D_cmb(nblk);
    for (int b = 0; b < nblk; ++b) {
      const int d = prob.block_dims[b];
      if (d == 0) continue;
      Eigen::MatrixXd dSt = sc.Rti[b].transpose() * dS_a[b] * sc.Rti[b];
      Eigen::MatrixXd dZt = sc.R[b].transpose() * dZ_a[b] * sc.R[b];
      Eigen::MatrixXd corr = 0.5 * (dSt * dZt + dZt * dSt);
      D_cmb[b].resize(d, d);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
          const double target = (i == j ? sigma * mu - sc.sig[b][i] * sc.sig[b][i] : 0.0);
          D_cmb[b](i, j) = 2.0 * (target - corr(i, j)) / (sc.sig[b][i] + sc.sig[b][j]);
        }
      }
    }
    Eigen::VectorXd dx, ds, dz;
    std::vector<Eigen::MatrixXd> dS, dZ;
    solve_direction(d_cmb, D_cmb, dx, ds, dS, dz, dZ);

    double aps = max_step_lp(s_lp, ds);
    double apz = max_step_lp(z_lp, dz);
    for (int b = 0; b < nblk; ++b) {
      if (prob.block_dims[b] == 0) continue;
      aps = std::min(aps, max_step_psd(S[b], dS[b]));
      apz = std::min(apz, max_step_psd(Z[b], dZ[b]));
    }
    const double alpha_p = std::min(1.0, 0.98 * aps);
    const double alpha_d = std::min(1.0, 0.98 * apz);

    sol.x += alpha_p * dx;
    s_lp += alpha_p * ds;
    z_lp += alpha_d * dz;
    for (int b = 0; b < nblk; ++b) {
      if (prob.block_dims[b] == 0) continue;
      S[b] += alpha_p * dS[b];
      S[b] = 0.5 * (S[b] + S[b].transpose()).eval();
      Z[b] += alpha_d * dZ[b];
      Z[b] = 0.5 * (Z[b] + Z[b].transpose()).eval();
    }
  }

  if (best.metric < std::numeric_limits<double>::infinity()) {
    sol.x = best.x;
    s_lp = best.s_lp;
    z_lp = best.z_lp;
    S = best.S;
    Z = best.Z;
    sol.primal_res = best.pres;
    sol.dual_res = best.dres;
    sol.primal_obj = c.dot(sol.x);
    sol.dual_obj = dual_obj(z_lp, Z);
    sol.gap = sol.primal_obj - sol.dual_obj;
    if (sol.status != Status::MaxIter && best.pres <= opt.feas_tol &&
        best.dres <= opt.feas_tol && best.relgap <= opt.gap_tol_accept) {
      sol.status = Status::Optimal;
    }
  }
  sol.s_lp = s_lp;
  sol.s_blocks = S;
  sol.z_lp = z_lp;
  sol.z_blocks = Z;
  return sol;
}

}  // namespace pptforge::conic
