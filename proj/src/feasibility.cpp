#include "pptforge/feasibility.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pptforge/closed_form.hpp"
#include "json.hpp"

namespace pptforge {

namespace {

constexpr double kEqualityTol = 1e-9;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Verdict sdp_interval_verdict(Verdict v, const SdpCertificate& cert) {
  v.rule = Rule::SdpT;
  v.T = cert.primal_value;
  v.trace.push_back("SDP: T = " + fmt(cert.primal_value) +
                    ", dual = " + fmt(cert.dual_value) + ", gap = " +
                    fmt(cert.gap) + ", status = " + to_string(cert.status) +
                    " (" + std::to_string(cert.iterations) + " iterations)");
  const double lo = cert.dual_value;   // certified lower bound on T
  const double hi = cert.primal_value; // feasible-point value, T <= hi
  if (cert.status != SolveStatus::Optimal && !(lo > 1.0 + kBoundaryTol) &&
      !(hi <= 1.0 - kBoundaryTol)) {
    throw std::runtime_error(
        "decide: SDP did not converge and its certificate interval cannot "
        "separate T from 1 (status " + to_string(cert.status) + ")");
  }
  if (hi <= 1.0 - kBoundaryTol) {
    v.decision = Decision::Feasible;
  } else if (lo > 1.0 + kBoundaryTol) {
    v.decision = Decision::Infeasible;
  } else {
    v.decision = Decision::Boundary;
  }
  v.certificate = cert;
  return v;
}

}  // namespace

const char* to_string(Decision decision) {
  switch (decision) {
    case Decision::Feasible: return "Feasible";
    case Decision::Infeasible: return "Infeasible";
    case Decision::Boundary: return "Boundary";
  }
  return "Unknown";
}

const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::Nielsen: return "Nielsen";
    case Rule::RankFastPath: return "RankFastPath";
    case Rule::MonotoneS12: return "MonotoneS12";
    case Rule::Borderline: return "Borderline";
    case Rule::Rank3Exact: return "Rank3Exact";
    case Rule::CstarD: return "CstarD";
    case Rule::SdpT: return "SdpT";
    case Rule::T1LowerBound: return "T1LowerBound";
  }
  return "Unknown";
}

const char* to_string(OpClass op) {
  return op == OpClass::Locc ? "LOCC" : "PPT";
}

TransformQuery TransformQuery::from_maxent(int k, SchmidtVector target, OpClass op) {
  if (k < 2) throw std::domain_error("TransformQuery: maximally entangled source needs K >= 2");
  return TransformQuery{k, std::nullopt, std::move(target), op};
}

TransformQuery TransformQuery::from_state(SchmidtVector source, SchmidtVector target,
                                          OpClass op) {
  return TransformQuery{std::nullopt, std::move(source), std::move(target), op};
}

Verdict decide(const TransformQuery& query) {
  Verdict v;
  if (query.op_class == OpClass::Locc) {
    const SchmidtVector source =
        query.maxent_k ? SchmidtVector::uniform(*query.maxent_k) : *query.source;
    const bool ok = majorizes(source, query.target);
    v.decision = ok ? Decision::Feasible : Decision::Infeasible;
    v.rule = Rule::Nielsen;
    v.trace.push_back(std::string("majorization: source ") +
                      (ok ? "is" : "is not") + " majorized by target");
    return v;
  }

  if (!query.maxent_k) {
    throw std::domain_error(
        "decide: PPT queries require a maximally entangled source; whether a "
        "finite criterion exists for general pure sources is open");
  }
  const int K = *query.maxent_k;
  const SchmidtVector& target = query.target;
  const double log_k = std::log2(static_cast<double>(K));

  // 1. rank fast path
  const int rank = target.rank();
  if (rank <= K) {
    v.decision = Decision::Feasible;
    v.rule = Rule::RankFastPath;
    v.trace.push_back("rank fast path: rank(target) = " + std::to_string(rank) +
                      " <= K = " + std::to_string(K) +
                      "; any state of Schmidt rank at most K is reachable from "
                      "Phi_K by LOCC alone");
    return v;
  }
  v.trace.push_back("rank fast path: rank(target) = " + std::to_string(rank) +
                    " > K = " + std::to_string(K));

  // 2. S_1/2 monotone
  const double s_half = renyi_entropy(target, 0.5);
  v.trace.push_back("S_1/2 monotone: S_1/2(target) = " + fmt(s_half) +
                    ", log2 K = " + fmt(log_k));
  if (s_half > log_k + kEqualityTol) {
    v.decision = Decision::Infeasible;
    v.rule = Rule::MonotoneS12;
    return v;
  }

  // 3. borderline S_1/2 = log K
  if (std::abs(s_half - log_k) <= kEqualityTol) {
    const bool uniform = target.is_uniform(K);
    v.decision = uniform ? Decision::Feasible : Decision::Infeasible;
    v.rule = Rule::Borderline;
    v.trace.push_back(std::string("borderline: S_1/2 = log2 K within 1e-9 and "
                                  "target is ") +
                      (uniform ? "" : "not ") +
                      "the uniform rank-K vector; only that trivial case is "
                      "reachable on the borderline");
    return v;
  }

  const SchmidtVector nz = target.stripped();
  const int d = static_cast<int>(nz.size());

  // 4. exact rank-3 criterion from an EPR pair
  if (K == 2 && rank == 3) {
    const double crit = 2.0 * (std::sqrt(nz[2] * nz[1]) + std::sqrt(nz[2] * nz[0])) +
                        4.0 * std::sqrt(nz[0] * nz[1]);
    v.decision = crit <= 1.0 ? Decision::Feasible : Decision::Infeasible;
    v.rule = Rule::Rank3Exact;
    v.T = (1.0 + 2.0 * crit) / 3.0;
    v.trace.push_back("rank-3 exact criterion: 2(w32 + w31) + 4 w21 = " +
                      fmt(crit) + (crit <= 1.0 ? " <= 1" : " > 1"));
    return v;
  }

  // 5. closed form when no prefix face qualifies
  const int cs = c_star(nz, K);
  v.trace.push_back("face search: c* = " + std::to_string(cs) +
                    ", d = " + std::to_string(d));
  if (cs == d) {
    const double t_exact = (s_half_pow2(nz) - 1.0) / (K - 1.0);
    v.T = t_exact;
    v.rule = Rule::CstarD;
    v.decision = t_exact <= 1.0 ? Decision::Feasible : Decision::Infeasible;
    v.trace.push_back("c* = d: T = (2^{S_1/2} - 1)/(K - 1) = " + fmt(t_exact) +
                      " exactly");
    return v;
  }

  // 6. rank-one dual bound
  const double t1 = t1_value(nz, K);
  v.t1 = t1;
  v.trace.push_back("rank-one dual bound: T1 = " + fmt(t1));
  if (t1 > 1.0 + kEqualityTol) {
    v.decision = Decision::Infeasible;
    v.rule = Rule::T1LowerBound;
    return v;
  }

  // 7. the SDP decides
  const ReducedSdp red = build_reduced(nz, K);
  return sdp_interval_verdict(std::move(v), solve(red));
}

std::string explain(const Verdict& verdict) {
  std::ostringstream os;
  for (const auto& line : verdict.trace) os << line << "\n";
  os << "decision: " << to_string(verdict.decision)
     << " (rule " << to_string(verdict.rule) << ")";
  if (verdict.T) os << ", T = " << fmt(*verdict.T);
  if (verdict.t1) os << ", T1 = " << fmt(*verdict.t1);
  os << "\n";
  return os.str();
}

std::string verdict_to_json(const Verdict& verdict) {
  nlohmann::json j;
  j["decision"] = to_string(verdict.decision);
  j["rule"] = to_string(verdict.rule);
  j["T"] = verdict.T ? nlohmann::json(*verdict.T) : nlohmann::json(nullptr);
  j["t1"] = verdict.t1 ? nlohmann::json(*verdict.t1) : nlohmann::json(nullptr);
  if (verdict.certificate) {
    const auto& c = *verdict.certificate;
    j["certificate"] = {{"T", c.primal_value},   {"dual", c.dual_value},
                        {"gap", c.gap},          {"status", to_string(c.status)},
                        {"iterations", c.iterations}, {"s", c.s},
                        {"a", c.a},              {"mu", c.mu},
                        {"t", c.t}};
  }
  j["trace"] = verdict.trace;
  return j.dump();
}

}  // namespace pptforge
