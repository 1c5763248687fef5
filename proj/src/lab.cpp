#include "pptforge/lab.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "pptforge/closed_form.hpp"
#include "pptforge/ppt_sdp.hpp"
#include "pptforge/rng.hpp"
#include "json.hpp"

namespace pptforge {

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

SweepResult conjecture_sweep(const SweepConfig& cfg) {
  if (cfg.n < 0 || cfg.d_min < 1 || cfg.d_max < cfg.d_min || cfg.k_min < 2 ||
      cfg.k_max < cfg.k_min) {
    throw std::domain_error("conjecture_sweep: bad configuration");
  }
  SweepResult result;
  result.records.resize(cfg.n);

  auto run_one = [&](int index) {
    const std::uint64_t stream =
        cfg.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index + 1);
    SplitMix64 rng(stream);
    const int d = rng.uniform_int(cfg.d_min, cfg.d_max);
    const int k = rng.uniform_int(cfg.k_min, cfg.k_max);
    const SchmidtVector lambda = sample_simplex(d, rng);
    SweepRecord rec;
    rec.lambda = lambda.coeffs();
    rec.K = k;
    rec.seed = stream;
    rec.t1 = t1_value(lambda, k);
    const SdpCertificate cert = solve(build_reduced(lambda, k));
    rec.T = cert.primal_value;
    rec.gap = rec.T - rec.t1;
    rec.status = to_string(cert.status);
    result.records[index] = std::move(rec);
  };

  const int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    for (int i = 0; i < cfg.n; ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        for (int i = t; i < cfg.n; i += jobs) run_one(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  result.summary.n = cfg.n;
  for (int i = 0; i < cfg.n; ++i) {
    const double gap = result.records[i].gap;
    result.summary.max_gap = std::max(result.summary.max_gap, gap);
    if (gap > kSweepFlagThreshold) result.summary.flagged.push_back(i);
  }
  return result;
}

std::string sweep_records_csv(const std::vector<SweepRecord>& records) {
  std::string out = "index,K,d,status,seed,T1,T,gap,lambda\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out += std::to_string(i) + "," + std::to_string(r.K) + "," +
           std::to_string(r.lambda.size()) + "," + r.status + "," +
           std::to_string(r.seed) + "," + fmt17(r.t1) + "," + fmt17(r.T) + "," +
           fmt17(r.gap) + ",";
    for (std::size_t j = 0; j < r.lambda.size(); ++j) {
      if (j) out += ";";
      out += fmt17(r.lambda[j]);
    }
    out += "\n";
  }
  return out;
}

std::string sweep_summary_json(const SweepResult& result) {
  nlohmann::json j;
  j["n"] = result.summary.n;
  j["max_gap"] = result.summary.max_gap;
  j["flagged"] = result.summary.flagged;
  return j.dump();
}

const char* to_string(RegionClass cls) {
  switch (cls) {
    case RegionClass::DirectPpt: return "DirectPPT";
    case RegionClass::CatalyticOnly: return "CatalyticOnly";
    case RegionClass::Unreachable: return "Unreachable";
  }
  return "Unknown";
}

RegionClass classify_rank3(double l1, double l2, double l3) {
  const double w21 = std::sqrt(l1 * l2);
  const double w31 = std::sqrt(l1 * l3);
  const double w32 = std::sqrt(l2 * l3);
  const double direct = 2.0 * (w32 + w31) + 4.0 * w21;
  const double catalytic = 2.0 * (w32 + w31 + w21);
  if (direct <= 1.0) return RegionClass::DirectPpt;
  if (catalytic <= 1.0) return RegionClass::CatalyticOnly;
  return RegionClass::Unreachable;
}

std::vector<RegionSample> region_sample(int resolution) {
  if (resolution < 2) throw std::domain_error("region_sample: resolution must be >= 2");
  // Cell corners in (l1, l2, l3): uniform, edge midpoint, pure-ish corner.
  static constexpr double v1[3] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  static constexpr double v2[3] = {0.0, 0.5, 0.5};
  static constexpr double v3[3] = {0.0, 0.0, 1.0};
  const int n = resolution - 1;
  std::vector<RegionSample> samples;
  samples.reserve((resolution * (resolution + 1)) / 2);
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n - a; ++b) {
      const int c = n - a - b;
      RegionSample s;
      s.l1 = (a * v1[0] + b * v2[0] + c * v3[0]) / n;
      s.l2 = (a * v1[1] + b * v2[1] + c * v3[1]) / n;
      s.l3 = (a * v1[2] + b * v2[2] + c * v3[2]) / n;
      const double w21 = std::sqrt(s.l1 * s.l2);
      const double w31 = std::sqrt(s.l1 * s.l3);
      const double w32 = std::sqrt(s.l2 * s.l3);
      s.thm5_lhs = 2.0 * (w32 + w31) + 4.0 * w21;
      const double sig = std::sqrt(s.l1) + std::sqrt(s.l2) + std::sqrt(s.l3);
      s.s_half_pow = sig * sig;
      s.cls = classify_rank3(s.l1, s.l2, s.l3);
      samples.push_back(s);
    }
  }
  return samples;
}

RegionCounts region_counts(const std::vector<RegionSample>& samples) {
  RegionCounts counts;
  for (const auto& s : samples) {
    switch (s.cls) {
      case RegionClass::DirectPpt: ++counts.direct; break;
      case RegionClass::CatalyticOnly: ++counts.catalytic_only; break;
      case RegionClass::Unreachable: ++counts.unreachable; break;
    }
  }
  return counts;
}

std::string region_csv_string(const std::vector<RegionSample>& samples) {
  std::string out = "l1,l2,l3,class,thm5_lhs,s_half_pow\n";
  for (const auto& s : samples) {
    out += fmt17(s.l1) + "," + fmt17(s.l2) + "," + fmt17(s.l3) + "," +
           to_string(s.cls) + "," + fmt17(s.thm5_lhs) + "," +
           fmt17(s.s_half_pow) + "\n";
  }
  return out;
}

std::string region_svg_string(const std::vector<RegionSample>& samples) {
  // Cell-barycentric coordinates of a sample: a = 3 l1, b = 2 (l2 - l1),
  // c = 1 - a - b (inverse of the corner mix used in region_sample).
  const double p1[2] = {250.0, 60.0};
  const double p2[2] = {40.0, 470.0};
  const double p3[2] = {460.0, 470.0};
  const double radius =
      std::max(1.5, 170.0 / std::sqrt(static_cast<double>(samples.size()) + 1.0));
  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"530\" "
      "viewBox=\"0 0 500 530\">\n"
      "<rect width=\"500\" height=\"530\" fill=\"white\"/>\n"
      "<polygon points=\"250,60 40,470 460,470\" fill=\"none\" "
      "stroke=\"#343a40\" stroke-width=\"1\"/>\n";
  char buf[160];
  for (const auto& s : samples) {
    const double a = 3.0 * s.l1;
    const double b = 2.0 * (s.l2 - s.l1);
    const double c = 1.0 - a - b;
    const double x = a * p1[0] + b * p2[0] + c * p3[0];
    const double y = a * p1[1] + b * p2[1] + c * p3[1];
    const char* color = s.cls == RegionClass::DirectPpt      ? "#2a7de1"
                        : s.cls == RegionClass::CatalyticOnly ? "#37b24d"
                                                              : "#ced4da";
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\"/>\n",
                  x, y, radius, color);
    svg += buf;
  }
  svg +=
      "<circle cx=\"60\" cy=\"496\" r=\"5\" fill=\"#2a7de1\"/>"
      "<text x=\"72\" y=\"500\" font-family=\"sans-serif\" font-size=\"13\">"
      "DirectPPT</text>\n"
      "<circle cx=\"180\" cy=\"496\" r=\"5\" fill=\"#37b24d\"/>"
      "<text x=\"192\" y=\"500\" font-family=\"sans-serif\" font-size=\"13\">"
      "CatalyticOnly</text>\n"
      "<circle cx=\"320\" cy=\"496\" r=\"5\" fill=\"#ced4da\"/>"
      "<text x=\"332\" y=\"500\" font-family=\"sans-serif\" font-size=\"13\">"
      "Unreachable</text>\n"
      "<text x=\"250\" y=\"45\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      "font-size=\"13\">uniform</text>\n"
      "<text x=\"40\" y=\"488\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      "font-size=\"13\">(0,1/2,1/2)</text>\n"
      "<text x=\"460\" y=\"488\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      "font-size=\"13\">(0,0,1)</text>\n"
      "</svg>\n";
  return svg;
}

void emit_region_csv(const std::vector<RegionSample>& samples, const std::string& path) {
  write_file(path, region_csv_string(samples));
}

void emit_region_svg(const std::vector<RegionSample>& samples, const std::string& path) {
  write_file(path, region_svg_string(samples));
}

}  // namespace pptforge
