// Experiment harness: seeded sweeps comparing the SDP value T against the
// rank-one closed form T1 (probing whether the two ever separate), and the
// rank-3 accessibility region on the ordered simplex cell with its two nested
// closed-form boundaries.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pptforge {

struct SweepConfig {
  int n = 100;
  int d_min = 3, d_max = 6;
  int k_min = 2, k_max = 6;
  std::uint64_t seed = 1;
  int jobs = 1;
};

struct SweepRecord {
  std::vector<double> lambda;
  int K = 0;
  double t1 = 0.0;
  double T = 0.0;
  double gap = 0.0;  // T - t1
  std::string status;
  std::uint64_t seed = 0;  // per-instance stream seed
};

struct SweepSummary {
  int n = 0;
  double max_gap = 0.0;
  std::vector<int> flagged;  // indices with gap > 1e-5, surfaced as findings
};

struct SweepResult {
  std::vector<SweepRecord> records;
  SweepSummary summary;
};

/// Threshold above which a T - T1 gap is reported as a potential rank-one
/// counterexample (kept well above the solver gap tolerance).
inline constexpr double kSweepFlagThreshold = 1e-5;

SweepResult conjecture_sweep(const SweepConfig& config);

/// Fixed-format CSV; byte-identical for identical configs.
std::string sweep_records_csv(const std::vector<SweepRecord>& records);
std::string sweep_summary_json(const SweepResult& result);

enum class RegionClass { DirectPpt, CatalyticOnly, Unreachable };

const char* to_string(RegionClass cls);

struct RegionSample {
  double l1 = 0.0, l2 = 0.0, l3 = 0.0;  // ascending
  RegionClass cls = RegionClass::Unreachable;
  double thm5_lhs = 0.0;     // 2(w32 + w31) + 4 w21
  double s_half_pow = 0.0;   // (sqrt(l1) + sqrt(l2) + sqrt(l3))^2
};

/// Classifies one ascending rank-3 triple by the direct criterion
/// 2(w32 + w31) + 4 w21 <= 1 and the catalytic one 2(w32 + w31 + w21) <= 1.
RegionClass classify_rank3(double l1, double l2, double l3);

/// Triangular grid with `resolution` points per edge over the ordered cell
/// l1 <= l2 <= l3 of the rank-3 simplex (cell corners: uniform, (0,1/2,1/2),
/// (0,0,1)).  resolution >= 2.
std::vector<RegionSample> region_sample(int resolution);

struct RegionCounts {
  int direct = 0;
  int catalytic_only = 0;
  int unreachable = 0;
};

RegionCounts region_counts(const std::vector<RegionSample>& samples);

/// CSV columns: l1,l2,l3,class,thm5_lhs,s_half_pow.
void emit_region_csv(const std::vector<RegionSample>& samples,
                     const std::string& path);

/// Self-contained SVG of the cell with both nested regions.
void emit_region_svg(const std::vector<RegionSample>& samples,
                     const std::string& path);

std::string region_csv_string(const std::vector<RegionSample>& samples);
std::string region_svg_string(const std::vector<RegionSample>& samples);

}  // namespace pptforge
