#include "hs/hs_distribution.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hs/math_util.hpp"
#include "hs/normal.hpp"

namespace hs {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;
constexpr double kTwoOverPi = 2.0 / kPi;

}  // namespace

HSDistribution::HSDistribution(double location, double scale)
    : location_(location), scale_(scale) {
  if (!std::isfinite(location) || !std::isfinite(scale) || scale <= 0.0)
    throw std::domain_error("HSDistribution: location must be finite and scale positive");
}

double HSDistribution::pdf(double y) const {
  require_finite(y, "HSDistribution::pdf");
  double a = kHalfPi * (y - location_) / scale_;
  double t = std::exp(-std::abs(a));  // 1/(e^a + e^-a) = t/(1 + t^2), no overflow
  return t / (scale_ * (1.0 + t * t));
}

double HSDistribution::cdf(double y) const {
  require_finite(y, "HSDistribution::cdf");
  double a = kHalfPi * (y - location_) / scale_;
  if (a <= 0.0) {
    double t = std::exp(a);
    if (a < -745.0) return kTwoOverPi * t;  // below atan's resolution; t subnormal or 0
    return kTwoOverPi * std::atan(t);
  }
  // atan(e^a) = pi/2 - atan(e^-a): the complement form keeps full precision
  // in the upper tail and never overflows.
  return 1.0 - kTwoOverPi * std::atan(std::exp(-a));
}

double HSDistribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("HSDistribution::quantile: p must be in (0,1)");
  if (p == 0.5) return location_;
  bool upper = p > 0.5;
  double q = upper ? 1.0 - p : p;  // exact subtraction for p >= 1/2
  double lt;                       // log tan(pi q / 2) for q in (0, 1/2)
  if (q < 1e-300)
    lt = std::log(q) + std::log(kHalfPi);  // tan(x) ~ x before tan underflows
  else
    lt = std::log(std::tan(kHalfPi * q));
  double offset = scale_ * kTwoOverPi * lt;
  return upper ? location_ - offset : location_ + offset;
}

double HSDistribution::mgf(double t) const {
  require_finite(t, "HSDistribution::mgf");
  double st = scale_ * t;
  if (std::abs(st) >= kHalfPi)
    throw std::domain_error("HSDistribution::mgf: requires |scale * t| < pi/2");
  return std::exp(location_ * t) / std::cos(st);
}

std::complex<double> HSDistribution::cf(double t) const {
  require_finite(t, "HSDistribution::cf");
  return std::polar(stable_sech(scale_ * t), location_ * t);
}

SampleBatch HSDistribution::sample(RngStream& rng, std::size_t n, CauchyMode mode) const {
  if (n < 1) throw std::invalid_argument("HSDistribution::sample: n must be >= 1");
  std::vector<double> out;
  out.reserve(n);
  std::uint64_t redraws = 0;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(location_ + scale_ * standard_hs_draw(rng, mode, redraws));
  return SampleBatch(std::move(out), rng.seed(), rng.stream_id(), redraws,
                     mode == CauchyMode::kInverseTransform ? "hs" : "hs-ratio");
}

double standard_cauchy_draw(RngStream& rng, CauchyMode mode) {
  if (mode == CauchyMode::kInverseTransform)
    return std::tan(kPi * (rng.next_uniform() - 0.5));
  for (int attempt = 0; attempt < 100; ++attempt) {
    double z1 = rng.next_normal();
    double z2 = rng.next_normal();
    if (z2 != 0.0) return z1 / z2;
  }
  throw std::runtime_error("standard_cauchy_draw: normal denominator stuck at zero");
}

double standard_hs_draw(RngStream& rng, CauchyMode mode, std::uint64_t& redraw_count) {
  for (;;) {
    double y = kTwoOverPi * std::log(std::abs(standard_cauchy_draw(rng, mode)));
    if (std::isfinite(y)) return y;
    ++redraw_count;  // |C| rounded to zero
  }
}

double comparison_pdf(ComparisonFamily family, double y) {
  require_finite(y, "comparison_pdf");
  switch (family) {
    case ComparisonFamily::kHyperbolicSecant: {
      double t = std::exp(-std::abs(kHalfPi * y));
      return t / (1.0 + t * t);
    }
    case ComparisonFamily::kNormal:
      return normal_pdf(y);
    case ComparisonFamily::kLogistic: {
      constexpr double s = std::numbers::sqrt3 / kPi;  // unit-variance logistic scale
      double t = std::exp(-std::abs(y) / s);
      return t / (s * (1.0 + t) * (1.0 + t));
    }
  }
  throw std::invalid_argument("comparison_pdf: unknown family");
}

}  // namespace hs
