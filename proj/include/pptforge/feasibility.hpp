// The decision engine: can the source state be converted into the target
// deterministically under the requested operation class?
//
// LOCC queries are settled by majorization.  PPT queries from a rank-K
// maximally entangled source run a ladder of exact rules, falling through to
// the SDP only when no closed form applies:
//
//   1. rank(target) <= K                      -> Feasible   (LOCC already)
//   2. S_1/2(target) > log K                  -> Infeasible (monotone)
//   3. S_1/2(target) = log K (within 1e-9)    -> Feasible iff target = U_K
//   4. K = 2, rank 3                          -> exact criterion
//   5. c* = d                                 -> T in closed form
//   6. T1 > 1                                 -> Infeasible (dual bound)
//   7. SDP                                    -> compare T with 1

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pptforge/ppt_sdp.hpp"
#include "pptforge/spectra.hpp"

namespace pptforge {

enum class OpClass { Locc, Ppt };
enum class Decision { Feasible, Infeasible, Boundary };
enum class Rule {
  Nielsen,
  RankFastPath,
  MonotoneS12,
  Borderline,
  Rank3Exact,
  CstarD,
  SdpT,
  T1LowerBound,
};

const char* to_string(Decision decision);
const char* to_string(Rule rule);
const char* to_string(OpClass op);

struct TransformQuery {
  std::optional<int> maxent_k;          // source is Phi_K when set
  std::optional<SchmidtVector> source;  // general source otherwise
  SchmidtVector target;
  OpClass op_class;

  static TransformQuery from_maxent(int k, SchmidtVector target, OpClass op);
  static TransformQuery from_state(SchmidtVector source, SchmidtVector target,
                                   OpClass op);
};

struct Verdict {
  Decision decision = Decision::Infeasible;
  Rule rule = Rule::Nielsen;
  std::optional<double> T;   // exact or SDP value of T(K; target) when known
  std::optional<double> t1;  // rank-one dual bound when it was computed
  std::optional<SdpCertificate> certificate;
  std::vector<std::string> trace;  // one line per ladder rule evaluated
};

/// Verdicts within this distance of T = 1 are reported as Boundary.
inline constexpr double kBoundaryTol = 1e-6;

/// Decides the query.  Throws std::domain_error for a PPT query with a
/// general (not maximally entangled) source: no finite criterion is known
/// for that case.
Verdict decide(const TransformQuery& query);

/// Human-readable trace of every rule evaluated, with numbers.
std::string explain(const Verdict& verdict);

/// {decision, rule, T, t1, certificate?, trace}; schema in the README.
std::string verdict_to_json(const Verdict& verdict);

}  // namespace pptforge
