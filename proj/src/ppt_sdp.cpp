#include "pptforge/ppt_sdp.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <utility>

#include "pptforge/conic.hpp"
#include "json.hpp"

namespace pptforge {

namespace {

// Extracts the paper-form dual point (mu, t) from the conic multipliers and
// rescales so that mu <= 1, t <= 1 hold exactly.  The rescaled point stays in
// the cone, so its objective is a certified lower bound on T.
void extract_dual(const ReducedSdp& red, const Eigen::VectorXd& z_lp,
                  const Eigen::MatrixXd& Y, std::vector<double>& mu,
                  std::vector<double>& t) {
  const int d = red.d;
  const int ns = red.num_s();
  const int na = red.num_a();
  mu.assign(ns, 0.0);
  t.assign(na, 0.0);
  for (int i = 0; i < d; ++i) {
    mu[tri_index_incl(i, i)] = Y(i, i);
    for (int j = 0; j < i; ++j) {
      const double yr = z_lp[ns + na + tri_index_strict(i, j)];
      mu[tri_index_incl(i, j)] = yr + Y(i, j);
      t[tri_index_strict(i, j)] = yr - Y(i, j);
    }
  }
  double top = 1.0;
  for (double v : mu) top = std::max(top, v);
  for (double v : t) top = std::max(top, v);
  if (top > 1.0) {
    for (double& v : mu) v /= top;
    for (double& v : t) v /= top;
  }
}

conic::Problem assemble_reduced(const ReducedSdp& red) {
  const int d = red.d;
  const int ns = red.num_s();
  const int na = red.num_a();
  conic::Problem prob;
  prob.lp_dim = ns + 2 * na;
  prob.block_dims = {d};
  prob.objective.assign(ns + na, 1.0);
  prob.columns.resize(ns + na);
  prob.b_lp.setZero(prob.lp_dim);
  prob.b_blocks = {Eigen::MatrixXd::Zero(d, d)};

  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      const int si = tri_index_incl(i, j);
      auto& col = prob.columns[si];
      col.blocks.resize(1);
      col.lp.push_back({si, 1.0});
      prob.b_lp[si] = red.s_lower[si];
      if (i == j) {
        col.blocks[0].push_back({i, i, 1.0});
      } else {
        const int ai = tri_index_strict(i, j);
        col.lp.push_back({ns + na + ai, 1.0});
        col.blocks[0].push_back({i, j, 0.5});
      }
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < i; ++j) {
      const int ai = tri_index_strict(i, j);
      auto& col = prob.columns[ns + ai];
      col.blocks.resize(1);
      col.lp.push_back({ns + ai, 1.0});
      col.lp.push_back({ns + na + ai, 1.0});
      col.blocks[0].push_back({i, j, -0.5});
      prob.b_lp[ns + ai] = red.a_lower[ai];
    }
  }
  return prob;
}

int decode_row(int idx, int d) { return idx / d; }
int decode_col(int idx, int d) { return idx % d; }

// Position map of the partial transpose: |ij><kl| -> |il><kj|.
std::pair<int, int> gamma_position(int r, int c, int d) {
  const int i = decode_row(r, d), j = decode_col(r, d);
  const int k = decode_row(c, d), l = decode_col(c, d);
  return {i * d + l, k * d + j};
}

// Folds a full elementary list (both orders present) into SymEntry form.
std::vector<conic::SymEntry> fold_symmetric(
    const std::vector<std::pair<std::pair<int, int>, double>>& elems) {
  std::map<std::pair<int, int>, double> acc;
  for (const auto& [rc, v] : elems) {
    if (rc.first <= rc.second) acc[rc] += v;
  }
  std::vector<conic::SymEntry> out;
  out.reserve(acc.size());
  for (const auto& [rc, v] : acc) {
    if (v != 0.0) out.push_back({rc.first, rc.second, v});
  }
  return out;
}

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::MaxIter: return "MaxIter";
    case SolveStatus::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

ReducedSdp build_reduced(const SchmidtVector& lambda, int K) {
  if (K < 2) throw std::domain_error("build_reduced: K must be >= 2");
  if (lambda.rank() != static_cast<int>(lambda.size())) {
    throw std::domain_error(
        "build_reduced: lambda has zero components; strip them first "
        "(they do not change the state)");
  }
  ReducedSdp red;
  red.K = K;
  red.d = static_cast<int>(lambda.size());
  red.lambda = lambda.coeffs();
  red.s_half_pow = s_half_pow2(lambda);
  red.w.resize(red.num_s());
  red.s_lower.resize(red.num_s());
  red.a_lower.resize(red.num_a());
  for (int i = 0; i < red.d; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double w = std::sqrt(red.lambda[i] * red.lambda[j]);
      red.w[tri_index_incl(i, j)] = w;
      red.s_lower[tri_index_incl(i, j)] = w / (K + 1);
      if (j < i) red.a_lower[tri_index_strict(i, j)] = w / (K - 1);
    }
  }
  return red;
}

SdpCertificate solve(const ReducedSdp& red, const SolveOptions& options) {
  conic::Problem prob = assemble_reduced(red);
  Eigen::VectorXd x0 = Eigen::VectorXd::Constant(red.num_s() + red.num_a(), 2.0);

  SdpCertificate cert;
  conic::Options copt;
  copt.max_iter = options.max_iter;
  if (options.trace) {
    copt.on_iterate = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& z_lp,
                          const std::vector<Eigen::MatrixXd>& z_blocks) {
      std::vector<double> mu, t;
      extract_dual(red, z_lp, z_blocks[0], mu, t);
      cert.trajectory.push_back({x.sum(), dual_objective_value(red, mu, t)});
    };
  }

  conic::Solution sol = conic::solve(prob, x0, copt);

  const int ns = red.num_s();
  const int na = red.num_a();
  cert.s.assign(sol.x.data(), sol.x.data() + ns);
  cert.a.assign(sol.x.data() + ns, sol.x.data() + ns + na);
  extract_dual(red, sol.z_lp, sol.z_blocks[0], cert.mu, cert.t);
  cert.primal_value = sol.x.sum();
  cert.dual_value = dual_objective_value(red, cert.mu, cert.t);
  cert.gap = cert.primal_value - cert.dual_value;
  cert.iterations = sol.iterations;
  switch (sol.status) {
    case conic::Status::Optimal: cert.status = SolveStatus::Optimal; break;
    case conic::Status::MaxIter: cert.status = SolveStatus::MaxIter; break;
    case conic::Status::Degenerate: cert.status = SolveStatus::Degenerate; break;
  }
  return cert;
}

Bounds bounds(const SchmidtVector& lambda, int K) {
  if (K < 2) throw std::domain_error("bounds: K must be >= 2");
  if (lambda.rank() != static_cast<int>(lambda.size())) {
    throw std::domain_error("bounds: strip zero components first");
  }
  const double p = s_half_pow2(lambda);
  Bounds b;
  b.lower = (K * p - 1.0) / (static_cast<double>(K) * K - 1.0);
  b.upper = (p - 1.0) / (K - 1.0);
  b.consistent = b.lower <= b.upper + 1e-15;
  return b;
}

double certified_upper_bound(const SchmidtVector& lambda, int K) {
  if (K < 2) throw std::domain_error("certified_upper_bound: K must be >= 2");
  const SchmidtVector nz = lambda.stripped();
  const double p = s_half_pow2(nz);
  double sigma = 0.0;
  for (double c : nz.coeffs()) sigma += std::sqrt(c);
  // When sigma >= K sqrt(lambda_max) the point  s_ii = (sqrt(l_i) sigma - l_i)/(K^2-1),
  // s_ij = w/(K+1), a_ij = w/(K-1)  is feasible with objective (p-1)/(K-1);
  // otherwise fall back to  s_ii = l_i/(K+1), s_ij = a_ij = w/(K-1).
  if (sigma >= K * std::sqrt(nz.max_coeff()) - 1e-14) {
    return (p - 1.0) / (K - 1.0);
  }
  return 1.0 / (K + 1) + (p - 1.0) / (K - 1.0);
}

double primal_violation(const ReducedSdp& red, const std::vector<double>& s,
                        const std::vector<double>& a) {
  double viol = 0.0;
  for (int i = 0; i < red.num_s(); ++i) viol = std::max(viol, red.s_lower[i] - s[i]);
  for (int i = 0; i < red.num_a(); ++i) viol = std::max(viol, red.a_lower[i] - a[i]);
  for (int i = 0; i < red.d; ++i) {
    for (int j = 0; j < i; ++j) {
      viol = std::max(viol, -(s[tri_index_incl(i, j)] + a[tri_index_strict(i, j)]));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block_matrix(red.d, s, a),
                                                    Eigen::EigenvaluesOnly);
  viol = std::max(viol, -es.eigenvalues().minCoeff());
  return viol;
}

double dual_violation(const ReducedSdp& red, const std::vector<double>& mu,
                      const std::vector<double>& t) {
  const int d = red.d;
  double viol = 0.0;
  for (double v : mu) viol = std::max(viol, v - 1.0);
  for (double v : t) viol = std::max(viol, v - 1.0);
  Eigen::MatrixXd N(d, d);
  for (int i = 0; i < d; ++i) {
    N(i, i) = mu[tri_index_incl(i, i)];
    for (int j = 0; j < i; ++j) {
      const double m = mu[tri_index_incl(i, j)];
      const double tt = t[tri_index_strict(i, j)];
      viol = std::max(viol, -(m + tt));
      N(i, j) = N(j, i) = (m - tt) / 2.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(N, Eigen::EigenvaluesOnly);
  viol = std::max(viol, -es.eigenvalues().minCoeff());
  return viol;
}

double dual_objective_value(const ReducedSdp& red, const std::vector<double>& mu,
                            const std::vector<double>& t) {
  const double K = red.K;
  double value = (K * red.s_half_pow - 1.0) / (K * K - 1.0);
  for (int i = 0; i < red.d; ++i) {
    for (int j = 0; j <= i; ++j) {
      value -= mu[tri_index_incl(i, j)] * red.w[tri_index_incl(i, j)] / (K + 1.0);
      if (j < i) {
        value -= t[tri_index_strict(i, j)] * red.w[tri_index_incl(i, j)] / (K - 1.0);
      }
    }
  }
  return value;
}

int oracle_guard_dim() {
  if (const char* env = std::getenv("PPT_FORGE_GUARD_DIM")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<int>(v);
  }
  return 6;
}

double solve_full_oracle(const SchmidtVector& lambda, int K) {
  if (K < 2) throw std::domain_error("solve_full_oracle: K must be >= 2");
  const SchmidtVector nz = lambda.stripped();
  const int d = static_cast<int>(nz.size());
  if (d > oracle_guard_dim()) {
    throw std::domain_error("solve_full_oracle: dimension " + std::to_string(d) +
                            " exceeds guard " + std::to_string(oracle_guard_dim()));
  }
  const int D = d * d;
  const int n = D * (D + 1) / 2;

  Eigen::MatrixXd rho_gamma = Eigen::MatrixXd::Zero(D, D);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      rho_gamma(i * d + j, j * d + i) = std::sqrt(nz[i] * nz[j]);
    }
  }

  conic::Problem prob;
  prob.lp_dim = 0;
  prob.block_dims = {D, D, D};
  prob.objective.assign(n, 0.0);
  prob.columns.resize(n);
  prob.b_lp.resize(0);
  prob.b_blocks = {Eigen::MatrixXd::Zero(D, D), rho_gamma, -rho_gamma};

  int var = 0;
  for (int r = 0; r < D; ++r) {
    for (int c = 0; c <= r; ++c, ++var) {
      auto& col = prob.columns[var];
      col.blocks.resize(3);
      col.blocks[0].push_back({r, c, 1.0});
      if (r == c) prob.objective[var] = 1.0;
      // elementary entries of the symmetric unit, both orders
      std::vector<std::pair<std::pair<int, int>, double>> elems;
      std::vector<std::pair<std::pair<int, int>, double>> mapped;
      if (r == c) {
        elems.push_back({{r, r}, 1.0});
      } else {
        elems.push_back({{r, c}, 1.0});
        elems.push_back({{c, r}, 1.0});
      }
      for (const auto& [rc, v] : elems) {
        mapped.push_back({gamma_position(rc.first, rc.second, d), v});
      }
      for (const auto& e : fold_symmetric(mapped)) {
        col.blocks[1].push_back({e.r, e.c, (K + 1.0) * e.v});
        col.blocks[2].push_back({e.r, e.c, (K - 1.0) * e.v});
      }
    }
  }

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < D; ++r) x0[tri_index_incl(r, r)] = 2.0;

  conic::Solution sol = conic::solve(prob, x0);
  if (sol.status != conic::Status::Optimal) {
    throw std::runtime_error("solve_full_oracle: solver did not reach optimality");
  }
  return sol.primal_obj;
}

Eigen::MatrixXd sigma_op(int d, int i, int j) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d * d, d * d);
  if (i == j) {
    out(i * d + i, i * d + i) = 1.0;
    return out;
  }
  const int ij = i * d + j, ji = j * d + i;
  out(ij, ij) = out(ji, ji) = out(ij, ji) = out(ji, ij) = 0.5;
  return out;
}

Eigen::MatrixXd alpha_op(int d, int i, int j) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d * d, d * d);
  const int ij = i * d + j, ji = j * d + i;
  out(ij, ij) = out(ji, ji) = 0.5;
  out(ij, ji) = out(ji, ij) = -0.5;
  return out;
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& op, int d) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d * d, d * d);
  for (int r = 0; r < d * d; ++r) {
    for (int c = 0; c < d * d; ++c) {
      if (op(r, c) == 0.0) continue;
      const auto [rr, cc] = gamma_position(r, c, d);
      out(rr, cc) += op(r, c);
    }
  }
  return out;
}

Eigen::MatrixXd reduced_operator_gamma(int d, const std::vector<double>& s,
                                       const std::vector<double>& a) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    out(i * d + i, i * d + i) += s[tri_index_incl(i, i)];
    for (int j = 0; j < i; ++j) {
      const double sv = s[tri_index_incl(i, j)] / 2.0;
      const double av = a[tri_index_strict(i, j)] / 2.0;
      const int ij = i * d + j, ji = j * d + i;
      const int ii = i * d + i, jj = j * d + j;
      out(ij, ij) += sv + av;
      out(ji, ji) += sv + av;
      out(ii, jj) += sv - av;
      out(jj, ii) += sv - av;
    }
  }
  return out;
}

Eigen::MatrixXd block_matrix(int d, const std::vector<double>& s,
                             const std::vector<double>& a) {
  Eigen::MatrixXd M(d, d);
  for (int i = 0; i < d; ++i) {
    M(i, i) = s[tri_index_incl(i, i)];
    for (int j = 0; j < i; ++j) {
      M(i, j) = M(j, i) =
          (s[tri_index_incl(i, j)] - a[tri_index_strict(i, j)]) / 2.0;
    }
  }
  return M;
}

std::string certificate_to_json(const SdpCertificate& cert, const ReducedSdp& red) {
  nlohmann::json j;
  j["K"] = red.K;
  j["lambda"] = red.lambda;
  j["T"] = cert.primal_value;
  j["gap"] = cert.gap;
  j["status"] = to_string(cert.status);
  j["s"] = cert.s;
  j["a"] = cert.a;
  j["mu"] = cert.mu;
  j["t"] = cert.t;
  return j.dump();
}

}  // namespace pptforge
