// pptforge: deterministic pure-state convertibility under LOCC and PPT
// operations, from Schmidt coefficient vectors.  JSON on stdout by default,
// --pretty for humans.  Exit codes: 0 success, 1 computation error, 2 usage
// error; with --exit-verdict, Feasible/Infeasible/Boundary map to 0/3/4.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "pptforge/catalysis.hpp"
#include "pptforge/closed_form.hpp"
#include "pptforge/feasibility.hpp"
#include "pptforge/lab.hpp"
#include "pptforge/ppt_sdp.hpp"
#include "pptforge/spectra.hpp"

namespace {

using nlohmann::json;
using namespace pptforge;

double parse_t(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    return std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1));
  }
  return std::stod(text);
}

int emit_verdict(const Verdict& v, bool pretty, bool exit_verdict) {
  if (pretty) {
    std::cout << explain(v);
  } else {
    std::cout << verdict_to_json(v) << "\n";
  }
  if (!exit_verdict) return 0;
  switch (v.decision) {
    case Decision::Feasible: return 0;
    case Decision::Infeasible: return 3;
    case Decision::Boundary: return 4;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pure-state LOCC/PPT convertibility toolkit"};
  app.require_subcommand(1);
  bool pretty = false;
  bool exit_verdict = false;
  app.add_flag("--pretty", pretty, "human-readable output instead of JSON");
  app.add_flag("--exit-verdict", exit_verdict,
               "map Feasible/Infeasible/Boundary to exit codes 0/3/4");

  std::string lambda_text, target_text, source_text, t_text = "1";
  int K = 2;
  std::uint64_t seed = 1;

  auto* cmd_entropy = app.add_subcommand("entropy", "Renyi entropy S_t of a vector");
  cmd_entropy->add_option("--lambda", lambda_text, "coefficients")->required();
  cmd_entropy->add_option("--t", t_text, "order t in [0, inf]")->required();

  auto* cmd_mono = app.add_subcommand("monotones", "closed-form PPT monotones");
  cmd_mono->add_option("--lambda", lambda_text)->required();

  auto* cmd_locc = app.add_subcommand("locc", "LOCC convertibility (majorization)");
  cmd_locc->add_option("--source", source_text)->required();
  cmd_locc->add_option("--target", target_text)->required();

  auto* cmd_ppt = app.add_subcommand("ppt", "PPT convertibility from Phi_K");
  cmd_ppt->add_option("--K", K, "source maximally entangled rank")->required();
  cmd_ppt->add_option("--target", target_text)->required();

  bool with_oracle = false;
  auto* cmd_t = app.add_subcommand("t-value", "solve the SDP for T(K; lambda)");
  cmd_t->add_option("--K", K)->required();
  cmd_t->add_option("--lambda", lambda_text)->required();
  cmd_t->add_flag("--oracle", with_oracle,
                  "cross-check against the unreduced program (guarded by "
                  "PPT_FORGE_GUARD_DIM, default 6)");

  auto* cmd_t1 = app.add_subcommand("t1", "closed-form rank-one value T1(K; lambda)");
  cmd_t1->add_option("--K", K)->required();
  cmd_t1->add_option("--lambda", lambda_text)->required();

  auto* cmd_dual = app.add_subcommand("dual-point", "explicit rank-one dual point");
  cmd_dual->add_option("--K", K)->required();
  cmd_dual->add_option("--lambda", lambda_text)->required();

  auto* cmd_cat = app.add_subcommand("catalysis",
                                     "maximally entangled catalyst criterion");
  cmd_cat->add_option("--K", K)->required();
  cmd_cat->add_option("--lambda", lambda_text)->required();

  int c_max = 64;
  auto* cmd_min = app.add_subcommand("min-catalyst", "minimal catalyst rank scan");
  cmd_min->add_option("--K", K)->required();
  cmd_min->add_option("--lambda", lambda_text)->required();
  cmd_min->add_option("--c-max", c_max, "search budget");

  int n = 100, d_min = 3, d_max = 6, k_min = 2, k_max = 6, jobs = 1;
  std::string csv_path, svg_path;
  auto* cmd_sweep = app.add_subcommand("sweep", "seeded T vs T1 sweep");
  cmd_sweep->add_option("--n", n, "instances");
  cmd_sweep->add_option("--d-min", d_min);
  cmd_sweep->add_option("--d-max", d_max);
  cmd_sweep->add_option("--K-min", k_min);
  cmd_sweep->add_option("--K-max", k_max);
  cmd_sweep->add_option("--seed", seed);
  cmd_sweep->add_option("--jobs", jobs, "worker threads");
  cmd_sweep->add_option("--csv", csv_path, "write records CSV here");

  int resolution = 100;
  auto* cmd_region = app.add_subcommand("region", "rank-3 accessibility region");
  cmd_region->add_option("--resolution", resolution, "grid points per edge");
  cmd_region->add_option("--csv", csv_path);
  cmd_region->add_option("--svg", svg_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_entropy) {
      const SchmidtVector v = parse_schmidt(lambda_text);
      const double t = parse_t(t_text);
      const double s = renyi_entropy(v, t);
      if (pretty) {
        std::cout << "S_" << t_text << " = " << s << " bits\n";
      } else {
        json j{{"t", t}, {"lambda", v.coeffs()}, {"entropy", s}};
        std::cout << j.dump() << "\n";
      }
    } else if (*cmd_mono) {
      const SchmidtVector v = parse_schmidt(lambda_text);
      const MonotoneReport r = ppt_monotone_report(v);
      if (pretty) {
        std::cout << "E_c = E_d = " << r.e_c << " bits\nE_xd = " << r.e_xd
                  << " bits\nE_xc = " << r.e_xc << " bits\n";
      } else {
        json j{{"lambda", v.coeffs()},
               {"E_c", r.e_c},
               {"E_d", r.e_d},
               {"E_xd", r.e_xd},
               {"E_xc", r.e_xc}};
        std::cout << j.dump() << "\n";
      }
    } else if (*cmd_locc) {
      const Verdict v = decide(TransformQuery::from_state(
          parse_schmidt(source_text), parse_schmidt(target_text), OpClass::Locc));
      return emit_verdict(v, pretty, exit_verdict);
    } else if (*cmd_ppt) {
      const Verdict v = decide(TransformQuery::from_maxent(
          K, parse_schmidt(target_text), OpClass::Ppt));
      return emit_verdict(v, pretty, exit_verdict);
    } else if (*cmd_t) {
      const SchmidtVector v = parse_schmidt(lambda_text).stripped();
      const ReducedSdp red = build_reduced(v, K);
      const SdpCertificate cert = solve(red);
      if (pretty) {
        std::cout << "T(" << K << "; lambda) = " << cert.primal_value
                  << "  (dual " << cert.dual_value << ", gap " << cert.gap
                  << ", " << to_string(cert.status) << ", " << cert.iterations
                  << " iterations)\n";
        if (with_oracle) {
          std::cout << "unreduced oracle = " << solve_full_oracle(v, K) << "\n";
        }
      } else if (with_oracle) {
        json j = json::parse(certificate_to_json(cert, red));
        j["T_oracle"] = solve_full_oracle(v, K);
        std::cout << j.dump() << "\n";
      } else {
        std::cout << certificate_to_json(cert, red) << "\n";
      }
    } else if (*cmd_t1) {
      const SchmidtVector v = parse_schmidt(lambda_text).stripped();
      const FaceSearchResult fs = face_search(v, K);
      if (pretty) {
        std::cout << "T1(" << K << "; lambda) = " << fs.t1_value
                  << "  (c* = " << fs.c_star << ")\n";
      } else {
        json j{{"K", K},
               {"lambda", v.coeffs()},
               {"c_star", fs.c_star},
               {"T1", fs.t1_value}};
        std::cout << j.dump() << "\n";
      }
    } else if (*cmd_dual) {
      const SchmidtVector v = parse_schmidt(lambda_text).stripped();
      const Rank1DualPoint p = rank1_dual_point(v, K);
      const ReducedSdp red = build_reduced(v, K);
      const double obj = dual_objective_value(red, p.mu, p.t);
      const bool feasible = dual_violation(red, p.mu, p.t) <= 1e-9;
      if (pretty) {
        std::cout << "rank-one dual objective = " << obj
                  << (feasible ? " (feasible)" : " (INFEASIBLE)") << "\n";
      } else {
        json j{{"K", K},           {"lambda", v.coeffs()},
               {"c_star", c_star(v, K)}, {"x", p.x},
               {"u", p.u},         {"mu", p.mu},
               {"t", p.t},         {"objective", obj},
               {"feasible", feasible}};
        std::cout << j.dump() << "\n";
      }
    } else if (*cmd_cat) {
      const SchmidtVector v = parse_schmidt(lambda_text);
      const bool possible = ppt_maxent_catalysis_possible(K, v);
      json j{{"possible", possible},
             {"s_half", renyi_entropy(v, 0.5)},
             {"log2_K", std::log2(static_cast<double>(K))},
             {"limit_value", theorem7_limit(v, K)}};
      if (pretty) {
        std::cout << (possible ? "possible" : "impossible")
                  << " with some maximally entangled catalyst (S_1/2 = "
                  << renyi_entropy(v, 0.5) << ", log2 K = "
                  << std::log2(static_cast<double>(K)) << ")\n";
      } else {
        std::cout << j.dump() << "\n";
      }
    } else if (*cmd_min) {
      const CatalystSearchResult res =
          minimal_catalyst_rank(CatalysisQuery{K, parse_schmidt(lambda_text), c_max});
      if (pretty) {
        if (res.minimal_c) {
          std::cout << "minimal certified catalyst rank C = " << *res.minimal_c << "\n";
        } else {
          std::cout << (res.possible ? "no certified C within budget"
                                     : "impossible for every C") << "\n";
        }
      } else {
        std::cout << catalyst_result_to_json(res) << "\n";
      }
    } else if (*cmd_sweep) {
      SweepConfig cfg;
      cfg.n = n;
      cfg.d_min = d_min;
      cfg.d_max = d_max;
      cfg.k_min = k_min;
      cfg.k_max = k_max;
      cfg.seed = seed;
      cfg.jobs = jobs;
      const SweepResult res = conjecture_sweep(cfg);
      if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + csv_path + "'");
        out << sweep_records_csv(res.records);
      }
      std::cout << sweep_summary_json(res) << "\n";
    } else if (*cmd_region) {
      const auto samples = region_sample(resolution);
      if (!csv_path.empty()) emit_region_csv(samples, csv_path);
      if (!svg_path.empty()) emit_region_svg(samples, svg_path);
      const RegionCounts counts = region_counts(samples);
      json j{{"resolution", resolution},
             {"samples", samples.size()},
             {"direct", counts.direct},
             {"catalytic_only", counts.catalytic_only},
             {"unreachable", counts.unreachable}};
      std::cout << j.dump() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
