#include "hs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hs {
namespace {

std::vector<double> sorted_values(const SampleBatch& batch) {
  std::vector<double> s(batch.values());
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

double ks_critical_constant(double alpha) {
  if (alpha == 0.05) return 1.36;
  if (alpha == 0.01) return 1.63;
  throw std::invalid_argument("ks_critical_constant: alpha must be 0.05 or 0.01");
}

double ecdf(const SampleBatch& batch, double x) {
  if (batch.size() == 0) throw std::invalid_argument("ecdf: empty batch");
  std::vector<double> s = sorted_values(batch);
  auto it = std::upper_bound(s.begin(), s.end(), x);
  return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
}

Moments sample_moments(const SampleBatch& batch) {
  std::size_t n = batch.size();
  if (n < 2) throw std::invalid_argument("sample_moments: need at least two values");
  const auto& v = batch.values();
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);
  double m2 = 0.0, m4 = 0.0;
  for (double x : v) {
    double d = x - mean;
    double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  Moments out;
  out.mean = mean;
  out.variance = m2 / static_cast<double>(n - 1);
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  out.mean_se = std::sqrt(out.variance / static_cast<double>(n));
  out.variance_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / static_cast<double>(n));
  return out;
}

GofReport ks_one_sample(const SampleBatch& batch, const std::function<double(double)>& cdf,
                        double alpha) {
  double c = ks_critical_constant(alpha);
  std::size_t n = batch.size();
  if (n == 0) throw std::invalid_argument("ks_one_sample: empty batch");
  std::vector<double> s = sorted_values(batch);
  double nd = static_cast<double>(n);
  double d = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double f = cdf(s[i]);
    if (f < -1e-12 || f > 1.0 + 1e-12)
      throw std::invalid_argument("ks_one_sample: cdf value outside [0,1]");
    if (f < prev - 1e-12)
      throw std::invalid_argument("ks_one_sample: cdf not monotone on the sample");
    prev = std::max(prev, f);
    double fi = static_cast<double>(i);
    d = std::max({d, (fi + 1.0) / nd - f, f - fi / nd});
  }
  GofReport rep;
  rep.ks_statistic = d;
  rep.n_effective = nd;
  rep.threshold = c / std::sqrt(nd);
  rep.passed = d < rep.threshold;
  if (n >= 2) {
    Moments m = sample_moments(batch);
    rep.mean = m.mean;
    rep.variance = m.variance;
    rep.mean_se = m.mean_se;
  } else {
    rep.mean = s[0];
  }
  return rep;
}

GofReport ks_two_sample(const SampleBatch& a, const SampleBatch& b, double alpha) {
  double c = ks_critical_constant(alpha);
  if (a.size() == 0 || b.size() == 0) throw std::invalid_argument("ks_two_sample: empty batch");
  std::vector<double> sa = sorted_values(a);
  std::vector<double> sb = sorted_values(b);
  double na = static_cast<double>(sa.size());
  double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    if (sa[i] < sb[j]) {
      ++i;
    } else if (sb[j] < sa[i]) {
      ++j;
    } else {
      double v = sa[i];
      while (i < sa.size() && sa[i] == v) ++i;
      while (j < sb.size() && sb[j] == v) ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  GofReport rep;
  rep.ks_statistic = d;
  rep.n_effective = na * nb / (na + nb);
  rep.threshold = c / std::sqrt(rep.n_effective);
  rep.passed = d < rep.threshold;
  if (a.size() >= 2) {
    Moments m = sample_moments(a);
    rep.mean = m.mean;
    rep.variance = m.variance;
    rep.mean_se = m.mean_se;
  } else {
    rep.mean = sa[0];
  }
  return rep;
}

std::vector<std::pair<double, double>> qq_points(const SampleBatch& batch,
                                                 const std::function<double(double)>& quantile_fn,
                                                 std::size_t k) {
  std::size_t n = batch.size();
  if (k < 2) throw std::invalid_argument("qq_points: k must be >= 2");
  if (k > n) throw std::invalid_argument("qq_points: k exceeds the sample size");
  std::vector<double> s = sorted_values(batch);
  std::vector<std::pair<double, double>> out;
  out.reserve(k);
  for (std::size_t i = 1; i <= k; ++i) {
    double p = (static_cast<double>(i) - 0.5) / static_cast<double>(k);
    auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    rank = std::clamp<std::size_t>(rank, 1, n);
    out.emplace_back(quantile_fn(p), s[rank - 1]);
  }
  return out;
}

std::vector<double> histogram(const SampleBatch& batch, double lo, double hi, std::size_t bins) {
  if (bins < 1) throw std::invalid_argument("histogram: bins must be >= 1");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("histogram: need finite lo < hi");
  if (batch.size() == 0) throw std::invalid_argument("histogram: empty batch");
  double width = (hi - lo) / static_cast<double>(bins);
  std::vector<std::size_t> counts(bins, 0);
  for (double v : batch.values()) {
    if (v < lo || v >= hi) continue;
    auto idx = static_cast<std::size_t>((v - lo) / width);
    ++counts[std::min(idx, bins - 1)];
  }
  std::vector<double> density(bins);
  double denom = static_cast<double>(batch.size()) * width;
  for (std::size_t b = 0; b < bins; ++b) density[b] = static_cast<double>(counts[b]) / denom;
  return density;
}

}  // namespace hs
