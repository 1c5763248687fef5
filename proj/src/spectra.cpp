#include "pptforge/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pptforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log2 of sum_i lambda_i^t over nonzero components, with the dominant term
// factored out so extreme t neither underflows nor overflows.
double log2_power_sum(const std::vector<double>& coeffs, double t) {
  double dominant = 0.0;
  for (double c : coeffs) {
    if (c <= kZeroThreshold) continue;
    if (dominant == 0.0) dominant = c;
    dominant = t >= 0.0 ? std::max(dominant, c) : std::min(dominant, c);
  }
  double scaled = 0.0;
  for (double c : coeffs) {
    if (c > kZeroThreshold) scaled += std::pow(c / dominant, t);
  }
  return t * std::log2(dominant) + std::log2(scaled);
}

}  // namespace

SchmidtVector::SchmidtVector(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw std::domain_error("SchmidtVector: empty coefficient list");
  }
  for (double c : coeffs_) {
    if (!(c >= 0.0)) {  // also rejects NaN
      throw std::domain_error("SchmidtVector: components must be non-negative");
    }
  }
  const double sum = std::accumulate(coeffs_.begin(), coeffs_.end(), 0.0);
  if (std::abs(sum - 1.0) > kNormalizationTol) {
    throw std::domain_error("SchmidtVector: components must sum to 1 (got " +
                            std::to_string(sum) + ")");
  }
  for (double& c : coeffs_) c /= sum;
  std::sort(coeffs_.begin(), coeffs_.end());
}

SchmidtVector SchmidtVector::uniform(int k) {
  if (k < 1) throw std::domain_error("uniform: rank must be >= 1");
  return SchmidtVector(std::vector<double>(k, 1.0 / k));
}

int SchmidtVector::rank() const {
  int r = 0;
  for (double c : coeffs_) {
    if (c > kZeroThreshold) ++r;
  }
  return r;
}

SchmidtVector SchmidtVector::stripped() const {
  std::vector<double> nz;
  nz.reserve(coeffs_.size());
  for (double c : coeffs_) {
    if (c > kZeroThreshold) nz.push_back(c);
  }
  return SchmidtVector(std::move(nz));
}

bool SchmidtVector::is_uniform(int k) const {
  if (rank() != k) return false;
  const double first_nz = coeffs_[coeffs_.size() - k];
  for (std::size_t i = coeffs_.size() - k; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != first_nz) return false;
  }
  return true;
}

double renyi_entropy(const SchmidtVector& lambda, double t) {
  if (std::isnan(t) || t < 0.0) {
    throw std::domain_error("renyi_entropy: t must lie in [0, inf]");
  }
  if (t == 0.0) {
    return std::log2(static_cast<double>(lambda.rank()));
  }
  if (t == 1.0) {
    double h = 0.0;
    for (double c : lambda.coeffs()) {
      if (c > kZeroThreshold) h -= c * std::log2(c);
    }
    return h;
  }
  if (t == kInf) {
    return -std::log2(lambda.max_coeff());
  }
  return log2_power_sum(lambda.coeffs(), t) / (1.0 - t);
}

double f_value(const SchmidtVector& lambda, double t) {
  for (double c : lambda.coeffs()) {
    if (c <= kZeroThreshold) return -kInf;
  }
  if (t == 0.0) {
    double s = 0.0;
    for (double c : lambda.coeffs()) s += std::log2(c);
    return s;
  }
  if (t == 1.0) {
    double s = 0.0;
    for (double c : lambda.coeffs()) s += c * std::log2(c);
    return s;
  }
  if (t == kInf) return std::log2(lambda.max_coeff());
  if (t == -kInf) return std::log2(lambda.coeffs().front());
  return log2_power_sum(lambda.coeffs(), t) / (t - 1.0);
}

bool majorizes(const SchmidtVector& lambda, const SchmidtVector& mu) {
  std::vector<double> a = lambda.coeffs();
  std::vector<double> b = mu.coeffs();
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  std::sort(a.begin(), a.end(), std::greater<double>());
  std::sort(b.begin(), b.end(), std::greater<double>());
  double pa = 0.0, pb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pa += a[i];
    pb += b[i];
    if (pa > pb + kMajorizationTol) return false;
  }
  return true;
}

SchmidtVector tensor_product(const SchmidtVector& lambda, const SchmidtVector& xi) {
  std::vector<double> prod;
  prod.reserve(lambda.size() * xi.size());
  for (double a : lambda.coeffs()) {
    for (double b : xi.coeffs()) prod.push_back(a * b);
  }
  return SchmidtVector(std::move(prod));
}

MonotoneReport ppt_monotone_report(const SchmidtVector& lambda) {
  const double s1 = renyi_entropy(lambda, 1.0);
  return MonotoneReport{s1, s1, renyi_entropy(lambda, kInf),
                        renyi_entropy(lambda, 0.5)};
}

double s_half_pow2(const SchmidtVector& lambda) {
  double s = 0.0;
  for (double c : lambda.coeffs()) {
    if (c > kZeroThreshold) s += std::sqrt(c);
  }
  return s * s;
}

SchmidtVector parse_schmidt(const std::string& text) {
  std::vector<double> coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    // trim whitespace
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) {
      throw std::domain_error("parse_schmidt: empty entry in '" + text + "'");
    }
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    const auto slash = item.find('/');
    double value;
    try {
      if (slash != std::string::npos) {
        std::size_t used_den = 0;
        const double num = std::stod(item.substr(0, slash), &used);
        const std::string den_text = item.substr(slash + 1);
        const double den = std::stod(den_text, &used_den);
        if (used != slash || used_den != den_text.size() || den == 0.0) {
          throw std::invalid_argument(item);
        }
        value = num / den;
      } else {
        value = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
      }
    } catch (const std::invalid_argument&) {
      throw std::domain_error("parse_schmidt: bad entry '" + item + "'");
    } catch (const std::out_of_range&) {
      throw std::domain_error("parse_schmidt: entry out of range '" + item + "'");
    }
    coeffs.push_back(value);
  }
  if (coeffs.empty()) {
    throw std::domain_error("parse_schmidt: no entries in '" + text + "'");
  }
  return SchmidtVector(std::move(coeffs));
}

}  // namespace pptforge
