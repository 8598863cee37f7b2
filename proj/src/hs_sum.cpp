#include "hs/hs_sum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hs/hs_distribution.hpp"
#include "hs/math_util.hpp"
#include "hs/normal.hpp"
#include "hs/quadrature.hpp"

namespace hs {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = kPi / 2.0;

// u / sinh(u): even, 1 at 0. Series below 1e-4 (next term ~1e-16), the
// exponential form above 1 to dodge sinh overflow near 710.
double u_over_sinh(double u) {
  double a = std::abs(u);
  if (a < 1e-4) {
    double u2 = u * u;
    return 1.0 - u2 / 6.0 + 7.0 * u2 * u2 / 360.0;
  }
  if (a > 1.0) {
    double t = std::exp(-a);
    return 2.0 * a * t / (1.0 - t * t);
  }
  return a / std::sinh(a);
}

}  // namespace

HSSumDistribution::HSSumDistribution(unsigned n, double scale) : n_(n), scale_(scale) {
  if (n < 1) throw std::domain_error("HSSumDistribution: n must be >= 1");
  if (!std::isfinite(scale) || scale <= 0.0)
    throw std::domain_error("HSSumDistribution: scale must be positive and finite");
}

double HSSumDistribution::pdf(double x) const {
  require_finite(x, "HSSumDistribution::pdf");
  if (n_ == 1) {
    double a = kHalfPi * x / scale_;
    double t = std::exp(-std::abs(a));
    return t / (scale_ * (1.0 + t * t));
  }
  if (n_ == 2) return u_over_sinh(kHalfPi * x / scale_) / (kPi * scale_);
  return cf_inversion_pdf(n_, scale_, x);
}

double HSSumDistribution::cdf(double x) const {
  require_finite(x, "HSSumDistribution::cdf");
  // Beyond this cut the remaining tail mass is far below 1e-12.
  double cut = scale_ * (30.0 + 6.0 * n_);
  if (x <= -cut) return 0.0;
  if (x >= cut) return 1.0;
  if (x == 0.0) return 0.5;
  double half = integrate([this](double t) { return pdf(t); }, 0.0, std::abs(x), 1e-13);
  return std::clamp(x > 0.0 ? 0.5 + half : 0.5 - half, 0.0, 1.0);
}

double HSSumDistribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("HSSumDistribution::quantile: p must be in (0,1)");
  if (p == 0.5) return 0.0;
  // One summand is the base law, which inverts in closed form.
  if (n_ == 1) return HSDistribution(0.0, scale_).quantile(p);
  // A normal-based span plus ten scale units brackets every quantile; the
  // loops below widen it in the (unexpected) case it does not.
  double span = std::abs(normal_quantile(p)) * std::sqrt(static_cast<double>(n_)) * scale_ +
                10.0 * scale_;
  double lo = -span, hi = span;
  while (cdf(lo) > p) lo *= 2.0;
  while (cdf(hi) < p) hi *= 2.0;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

SampleBatch HSSumDistribution::sample(RngStream& rng, std::size_t m) const {
  if (m < 1) throw std::invalid_argument("HSSumDistribution::sample: m must be >= 1");
  std::vector<double> out;
  out.reserve(m);
  std::uint64_t redraws = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double s = 0.0;
    for (unsigned j = 0; j < n_; ++j)
      s += standard_hs_draw(rng, CauchyMode::kInverseTransform, redraws);
    out.push_back(scale_ * s);
  }
  return SampleBatch(std::move(out), rng.seed(), rng.stream_id(), redraws, "hs-sum");
}

double cf_inversion_pdf(unsigned n, double scale, double x) {
  if (n < 1) throw std::domain_error("cf_inversion_pdf: n must be >= 1");
  if (!std::isfinite(scale) || scale <= 0.0)
    throw std::domain_error("cf_inversion_pdf: scale must be positive and finite");
  require_finite(x, "cf_inversion_pdf");
  double omega = std::abs(x) / scale;
  // The density decays like e^{-pi |x| / (2 scale)}; past omega = 500 it is
  // zero in double precision and the panel count would blow up.
  if (omega > 500.0) return 0.0;
  // sech(t)^n < 1e-18 * 2^-n for t beyond this truncation point.
  double upper = (18.0 * std::numbers::ln10 + n * std::numbers::ln2) / n;
  double panel = 1.0;
  if (omega > 0.0) panel = std::min(panel, kHalfPi / omega);  // quarter cosine period
  auto panels = static_cast<std::size_t>(std::ceil(upper / panel));
  double step = upper / static_cast<double>(panels);
  auto g = [&](double t) { return std::cos(t * omega) * std::pow(stable_sech(t), n); };
  double sum = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    double a = static_cast<double>(i) * step;
    sum += gauss_kronrod_15(g, a, a + step);
  }
  return sum / (kPi * scale);
}

}  // namespace hs
