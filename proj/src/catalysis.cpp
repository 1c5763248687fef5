#include "pptforge/catalysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pptforge/closed_form.hpp"
#include "pptforge/feasibility.hpp"
#include "json.hpp"

namespace pptforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEqualityTol = 1e-9;
constexpr double kScreenTie = 1e-12;

// Pads both vectors with zeros to a common length.
std::pair<SchmidtVector, SchmidtVector> pad_pair(const SchmidtVector& a,
                                                 const SchmidtVector& b) {
  const std::size_t n = std::max(a.size(), b.size());
  std::vector<double> av = a.coeffs(), bv = b.coeffs();
  av.insert(av.begin(), n - av.size(), 0.0);
  bv.insert(bv.begin(), n - bv.size(), 0.0);
  return {SchmidtVector(std::move(av)), SchmidtVector(std::move(bv))};
}

// lhs > rhs strictly, resolving infinities; 0 = yes, 1 = no, 2 = tie.
int strict_compare(double lhs, double rhs) {
  if (lhs == -kInf && rhs == -kInf) return 2;
  if (lhs == -kInf) return 1;
  if (rhs == -kInf) return 0;
  const double diff = lhs - rhs;
  if (diff > kScreenTie) return 0;
  if (diff < -kScreenTie) return 1;
  return 2;
}

}  // namespace

bool ppt_maxent_catalysis_possible(int K, const SchmidtVector& lambda) {
  if (K < 2) throw std::domain_error("ppt_maxent_catalysis_possible: K must be >= 2");
  if (lambda.is_uniform(K)) return true;  // identity transformation
  const double s_half = renyi_entropy(lambda, 0.5);
  return s_half < std::log2(static_cast<double>(K)) - kEqualityTol;
}

double theorem7_limit(const SchmidtVector& lambda, int K) {
  return s_half_pow2(lambda) / K;
}

CatalystSearchResult minimal_catalyst_rank(const CatalysisQuery& query) {
  if (query.c_max < 1) throw std::domain_error("minimal_catalyst_rank: budget must be >= 1");
  CatalystSearchResult res;
  res.possible = ppt_maxent_catalysis_possible(query.K, query.target);
  res.limit_value = theorem7_limit(query.target, query.K);
  if (!res.possible) return res;

  const SchmidtVector base = query.target.stripped();
  const int d = static_cast<int>(base.size());
  for (int c = 1; c <= query.c_max; ++c) {
    const SchmidtVector lifted = tensor_product(base, SchmidtVector::uniform(c));
    const int lifted_k = query.K * c;
    CatalystScanEntry entry;
    entry.C = c;
    entry.t1 = t1_value(lifted, lifted_k);
    if (entry.t1 > 1.0 + kEqualityTol) {
      entry.verdict = "Infeasible";
      res.scan.push_back(std::move(entry));
      continue;
    }
    if (d * c > query.solver_dim_guard && d > query.K) {
      // Rank fast path would not settle it and the SDP is out of reach.
      entry.verdict = "Inconclusive";
      res.scan.push_back(std::move(entry));
      continue;
    }
    const Verdict v = decide(
        TransformQuery::from_maxent(lifted_k, lifted, OpClass::Ppt));
    entry.T = v.T;
    entry.verdict = to_string(v.decision);
    const bool feasible = v.decision == Decision::Feasible;
    res.scan.push_back(std::move(entry));
    if (feasible) {
      res.minimal_c = c;
      break;
    }
  }
  return res;
}

std::string catalyst_result_to_json(const CatalystSearchResult& result) {
  nlohmann::json j;
  j["possible"] = result.possible;
  j["limit_value"] = result.limit_value;
  j["minimal_C"] =
      result.minimal_c ? nlohmann::json(*result.minimal_c) : nlohmann::json(nullptr);
  j["scan"] = nlohmann::json::array();
  for (const auto& e : result.scan) {
    nlohmann::json je;
    je["C"] = e.C;
    je["T1"] = e.t1;
    je["T"] = e.T ? nlohmann::json(*e.T) : nlohmann::json(nullptr);
    je["verdict"] = e.verdict;
    j["scan"].push_back(std::move(je));
  }
  return j.dump();
}

ScreenResult locc_catalysis_screen(const SchmidtVector& lambda,
                                   const SchmidtVector& mu,
                                   const std::vector<double>& s_grid,
                                   const std::vector<double>& f_grid) {
  const auto [lp, mp] = pad_pair(lambda, mu);
  if (lp == mp) {
    throw std::domain_error("locc_catalysis_screen: vectors coincide");
  }
  const int n = static_cast<int>(lp.size());
  if (lp.rank() < n && mp.rank() < n) {
    throw std::domain_error(
        "locc_catalysis_screen: both vectors have zero components");
  }
  ScreenResult res;
  res.outcome = ScreenOutcome::Pass;
  auto check = [&](double t, double lhs, double rhs) {
    switch (strict_compare(lhs, rhs)) {
      case 1:
        res.outcome = ScreenOutcome::Fail;
        res.witness_t = t;
        return false;
      case 2:
        if (res.outcome == ScreenOutcome::Pass) {
          res.outcome = ScreenOutcome::Inconclusive;
          res.witness_t = t;
        }
        return true;
      default:
        return true;
    }
  };
  for (double t : s_grid) {
    if (!(t > 0.0)) continue;
    if (!check(t, renyi_entropy(lp, t), renyi_entropy(mp, t))) return res;
  }
  for (double t : f_grid) {
    if (t > 0.0) continue;
    if (!check(t, f_value(lp, t), f_value(mp, t))) return res;
  }
  return res;
}

ScreenResult ppt_catalysis_conjecture_screen(const SchmidtVector& lambda,
                                             const SchmidtVector& mu,
                                             const std::vector<double>& t_grid) {
  const auto [lp, mp] = pad_pair(lambda, mu);
  if (lp == mp) {
    throw std::domain_error("ppt_catalysis_conjecture_screen: vectors coincide");
  }
  ScreenResult res;
  res.outcome = ScreenOutcome::Pass;
  for (double t : t_grid) {
    if (!(t >= 0.5)) continue;
    if (strict_compare(renyi_entropy(lp, t), renyi_entropy(mp, t)) != 0) {
      res.outcome = ScreenOutcome::Fail;
      res.witness_t = t;
      return res;
    }
  }
  return res;
}

std::vector<double> default_s_grid() {
  std::vector<double> g;
  for (int k = 0; k < 64; ++k) {
    g.push_back(std::exp2(-10.0 + 15.0 * k / 63.0));  // (0, 32] geometric
  }
  g.push_back(0.5);
  g.push_back(1.0);
  g.push_back(kInf);
  return g;
}

std::vector<double> default_f_grid() {
  std::vector<double> g;
  for (int k = 0; k < 64; ++k) g.push_back(-32.0 + 32.0 * k / 63.0);  // [-32, 0]
  return g;
}

std::vector<double> default_conjecture_grid() {
  std::vector<double> g;
  for (int k = 0; k < 64; ++k) {
    g.push_back(std::exp2(-1.0 + 6.0 * k / 63.0));  // [1/2, 32] geometric
  }
  g.push_back(kInf);
  return g;
}

}  // namespace pptforge
