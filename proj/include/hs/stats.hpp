#pragma once
// Goodness-of-fit utilities: empirical CDF, exact Kolmogorov-Smirnov sup
// statistics (one- and two-sample), moments with standard errors, Q-Q points
// and a density-normalized histogram.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "hs/sample_batch.hpp"

namespace hs {

struct GofReport {
  double ks_statistic = 0.0;
  double n_effective = 0.0;  // sample size; harmonic size for two-sample tests
  double threshold = 0.0;    // c(alpha) / sqrt(n_effective)
  bool passed = false;       // ks_statistic < threshold
  double mean = 0.0;         // moments of the (first) sample
  double variance = 0.0;
  double mean_se = 0.0;
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n-1 denominator)
  double mean_se = 0.0;
  double variance_se = 0.0;
};

// Asymptotic two-sided critical constant: 1.36 at alpha=0.05, 1.63 at
// alpha=0.01. Other levels are rejected.
double ks_critical_constant(double alpha);

// Fraction of the batch at or below x.
double ecdf(const SampleBatch& batch, double x);

Moments sample_moments(const SampleBatch& batch);

// Exact sup-distance between the sample ECDF and `cdf`, evaluated at every
// order statistic from both sides. The cdf must be monotone into [0,1] on the
// sample; violations throw std::invalid_argument.
GofReport ks_one_sample(const SampleBatch& batch, const std::function<double(double)>& cdf,
                        double alpha);

// Exact sup-distance between two sample ECDFs; n_effective is the harmonic
// size n_a n_b / (n_a + n_b).
GofReport ks_two_sample(const SampleBatch& a, const SampleBatch& b, double alpha);

// k (theoretical, empirical) quantile pairs at plotting positions
// p_i = (i - 1/2) / k. Requires 2 <= k <= batch size.
std::vector<std::pair<double, double>> qq_points(const SampleBatch& batch,
                                                 const std::function<double(double)>& quantile_fn,
                                                 std::size_t k);

// Per-bin densities over [lo, hi) with equal-width bins; bar areas sum to the
// in-range fraction of the sample.
std::vector<double> histogram(const SampleBatch& batch, double lo, double hi, std::size_t bins);

}  // namespace hs
