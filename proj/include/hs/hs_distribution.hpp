#pragma once
// Location-scale hyperbolic-secant law. The standard variate Y has density
//   f(y) = 1 / (e^{pi y/2} + e^{-pi y/2}),
// mean 0 and variance 1, so `scale` is the standard deviation of
// X = location + scale * Y.

#include <complex>
#include <cstdint>

#include "hs/rng.hpp"
#include "hs/sample_batch.hpp"

namespace hs {

enum class CauchyMode { kInverseTransform, kRatioOfNormals };

class HSDistribution {
 public:
  HSDistribution(double location, double scale);

  double location() const noexcept { return location_; }
  double scale() const noexcept { return scale_; }
  double mean() const noexcept { return location_; }
  double variance() const noexcept { return scale_ * scale_; }

  double pdf(double y) const;
  double cdf(double y) const;
  double quantile(double p) const;

  // Moment generating function e^{location t} sec(scale t); finite only for
  // |scale * t| < pi/2, outside of which this throws.
  double mgf(double t) const;
  // Characteristic function e^{i location t} sech(scale t), defined for all t.
  std::complex<double> cf(double t) const;

  // n draws via the log-|Cauchy| representation Y = (2/pi) log|C|.
  SampleBatch sample(RngStream& rng, std::size_t n,
                     CauchyMode mode = CauchyMode::kInverseTransform) const;

 private:
  double location_;
  double scale_;
};

// One standard Cauchy variate. kInverseTransform maps a uniform through
// tan(pi(u - 1/2)); kRatioOfNormals divides two independent standard normals,
// retrying the measure-zero case of a zero denominator.
double standard_cauchy_draw(RngStream& rng, CauchyMode mode = CauchyMode::kInverseTransform);

// One standard hyperbolic-secant variate (2/pi) log|C|; draws that map to a
// non-finite value (C rounded to zero) are retried and counted in
// `redraw_count`.
double standard_hs_draw(RngStream& rng, CauchyMode mode, std::uint64_t& redraw_count);

enum class ComparisonFamily { kHyperbolicSecant, kNormal, kLogistic };

// Density of the named family standardized to mean 0 and variance 1
// (the logistic gets scale sqrt(3)/pi).
double comparison_pdf(ComparisonFamily family, double y);

}  // namespace hs
