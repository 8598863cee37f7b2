#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hs/hs_distribution.hpp"
#include "hs/quadrature.hpp"
#include "hs/rng.hpp"
#include "hs/stats.hpp"

using hs::CauchyMode;
using hs::HSDistribution;
using hs::RngStream;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("construction rejects bad parameters") {
  CHECK_THROWS_AS(HSDistribution(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(HSDistribution(0.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(HSDistribution(std::nan(""), 1.0), std::domain_error);
  CHECK_THROWS_AS(HSDistribution(0.0, std::numeric_limits<double>::infinity()),
                  std::domain_error);
}

TEST_CASE("density matches high-precision reference values") {
  HSDistribution std_hs(0.0, 1.0);
  CHECK(std_hs.pdf(0.0) == 0.5);  // 1/(e^0 + e^0) exactly
  // 1/(e^{pi/2} + e^{-pi/2}) evaluated at 25-digit precision.
  CHECK(std_hs.pdf(1.0) == doctest::Approx(0.19926840766919334).epsilon(1e-15));
  CHECK(std_hs.pdf(-1.0) == std_hs.pdf(1.0));
  // At the location the density is 1/(2 scale).
  HSDistribution shifted(2.0, kPi / 2.0);
  CHECK(shifted.pdf(2.0) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK_THROWS_AS(std_hs.pdf(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("density is symmetric, positive and finite across the support") {
  HSDistribution d(2.0, 0.75);
  for (double off : {0.0, 0.25, 1.0, 5.5, 40.0, 300.0}) {
    double hi = d.pdf(2.0 + off);
    double lo = d.pdf(2.0 - off);
    CHECK(hi == lo);  // dyadic offsets make the reflection exact
    CHECK(hi > 0.0);
    CHECK(std::isfinite(hi));
  }
  CHECK(d.pdf(1e12) == 0.0);  // underflows gracefully far outside double range
}

TEST_CASE("density integrates to one") {
  for (const HSDistribution& d :
       {HSDistribution(0.0, 1.0), HSDistribution(2.0, kPi / 2.0), HSDistribution(-3.0, 0.25)}) {
    double mass = hs::integrate([&](double y) { return d.pdf(y); },
                                d.location() - 40.0 * d.scale(),
                                d.location() + 40.0 * d.scale(), 1e-13);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-11));
  }
}

TEST_CASE("a corrupted density would fail the normalization check") {
  HSDistribution d(0.0, 1.0);
  double mass = hs::integrate([&](double y) { return 2.0 * d.pdf(y); }, -40.0, 40.0, 1e-13);
  CHECK(std::abs(mass - 1.0) > 1e-10);
}

TEST_CASE("density moments match mean and variance by quadrature") {
  HSDistribution d(0.0, 1.0);
  double m1 = hs::integrate([&](double y) { return y * d.pdf(y); }, -50.0, 50.0, 1e-12);
  double m2 = hs::integrate([&](double y) { return y * y * d.pdf(y); }, -50.0, 50.0, 1e-12);
  CHECK(std::abs(m1) < 1e-10);
  CHECK(m2 == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("cdf endpoints, symmetry and reference value") {
  HSDistribution d(0.0, 1.0);
  CHECK(d.cdf(0.0) == 0.5);
  CHECK(d.cdf(-800.0) == 0.0);  // underflow region of the lower tail
  CHECK(d.cdf(800.0) == 1.0);
  CHECK(d.cdf(-800.0) >= 0.0);
  // 2/pi arctan(e^{pi 0.5611/2}) at 25-digit precision.
  CHECK(d.cdf(0.5611) == doctest::Approx(0.750000052205979243).epsilon(1e-14));
  for (double y : {0.25, 1.0, 3.5, 10.0})
    CHECK(d.cdf(-y) == doctest::Approx(1.0 - d.cdf(y)).epsilon(1e-14));
}

TEST_CASE("cdf agrees with integrated density") {
  HSDistribution d(1.0, 2.0);
  for (double y : {-3.0, 0.0, 1.0, 2.5, 7.0}) {
    double mass = hs::integrate([&](double t) { return d.pdf(t); }, 1.0 - 80.0, y, 1e-13);
    CHECK(d.cdf(y) == doctest::Approx(mass).epsilon(1e-10));
  }
}

TEST_CASE("cdf lower tail keeps relative accuracy deep below the location") {
  HSDistribution d(0.0, 1.0);
  // F(y) ~ (2/pi) e^{pi y/2}: check at y = -100 (value ~ 4e-69).
  double expected = 2.0 / kPi * std::exp(-50.0 * kPi);
  CHECK(d.cdf(-100.0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("quantile matches reference values and inverts the cdf") {
  HSDistribution d(0.0, 1.0);
  CHECK(d.quantile(0.5) == 0.0);
  // (2/pi) log tan(3 pi / 8) at 25-digit precision.
  CHECK(d.quantile(0.75) == doctest::Approx(0.561099852339180127).epsilon(1e-14));
  CHECK(d.quantile(0.25) == doctest::Approx(-0.561099852339180127).epsilon(1e-14));
  HSDistribution shifted(3.0, 2.0);
  CHECK(shifted.quantile(0.5) == 3.0);

  for (const HSDistribution& dist : {HSDistribution(0.0, 1.0), HSDistribution(3.0, 2.0)}) {
    for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.77, 0.99, 1.0 - 1e-6, 1.0 - 1e-12}) {
      CHECK(dist.cdf(dist.quantile(p)) == doctest::Approx(p).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(d.quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(d.quantile(1.0), std::domain_error);
  CHECK_THROWS_AS(d.quantile(-0.5), std::domain_error);
  CHECK_THROWS_AS(d.quantile(std::nan("")), std::domain_error);
}

TEST_CASE("quantile survives subnormal-adjacent tail probabilities") {
  HSDistribution d(0.0, 1.0);
  double q = d.quantile(1e-305);
  CHECK(std::isfinite(q));
  CHECK(d.cdf(q) == doctest::Approx(1e-305).epsilon(1e-10));
  double p = 1.0 - 1e-16;  // rounds to the largest double below 1
  double uq = d.quantile(p);
  CHECK(uq > 0.0);
  CHECK(1.0 - d.cdf(uq) == doctest::Approx(1.0 - p).epsilon(1e-6));
}

TEST_CASE("mgf matches sec(scale t) with the location factor") {
  HSDistribution d(0.0, 1.0);
  CHECK(d.mgf(0.0) == 1.0);
  // sec(1) at 25-digit precision.
  CHECK(d.mgf(1.0) == doctest::Approx(1.85081571768092562).epsilon(1e-14));
  CHECK(d.mgf(-1.0) == d.mgf(1.0));
  HSDistribution shifted(2.0, 0.5);
  CHECK(shifted.mgf(1.0) == doctest::Approx(std::exp(2.0) / std::cos(0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(d.mgf(kPi / 2.0), std::domain_error);
  CHECK_THROWS_AS(d.mgf(-kPi / 2.0), std::domain_error);
  CHECK_THROWS_AS(HSDistribution(0.0, 2.0).mgf(0.8), std::domain_error);  // |st| = 1.6
  CHECK(HSDistribution(0.0, 2.0).mgf(0.78) > 0.0);                        // |st| = 1.56 still inside
}

TEST_CASE("mgf agrees with the exponential moment by quadrature") {
  HSDistribution d(0.0, 1.0);
  double moment = hs::integrate([&](double y) { return std::exp(y) * d.pdf(y); },
                                -200.0, 60.0, 1e-12);
  CHECK(moment == doctest::Approx(d.mgf(1.0)).epsilon(1e-9));
}

TEST_CASE("second difference of the mgf recovers the variance") {
  HSDistribution d(0.0, 1.0);
  double h = 1e-4;
  double second = (d.mgf(h) - 2.0 + d.mgf(-h)) / (h * h);
  CHECK(second == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("cf is sech(scale t) rotated by the location") {
  HSDistribution d(0.0, 1.0);
  CHECK(d.cf(0.0) == std::complex<double>(1.0, 0.0));
  // sech(1) at 25-digit precision.
  CHECK(d.cf(1.0).real() == doctest::Approx(0.6480542736638854).epsilon(1e-14));
  CHECK(d.cf(1.0).imag() == 0.0);
  for (double t : {-30.0, -2.0, 0.3, 5.0, 900.0}) CHECK(std::abs(d.cf(t)) <= 1.0);

  HSDistribution shifted(2.0, 1.0);
  std::complex<double> expected = std::polar(0.6480542736638854, 2.0);
  CHECK(shifted.cf(1.0).real() == doctest::Approx(expected.real()).epsilon(1e-13));
  CHECK(shifted.cf(1.0).imag() == doctest::Approx(expected.imag()).epsilon(1e-13));
}

TEST_CASE("cf agrees with the cosine moment by quadrature") {
  HSDistribution d(0.0, 1.0);
  double moment = hs::integrate([&](double y) { return std::cos(1.5 * y) * d.pdf(y); },
                                -45.0, 45.0, 1e-12);
  CHECK(moment == doctest::Approx(d.cf(1.5).real()).epsilon(1e-9));
}

TEST_CASE("comparison densities at matching variance") {
  using hs::ComparisonFamily;
  // Peak heights at 25-digit precision: hs = 1/2, normal = 1/sqrt(2 pi),
  // logistic = pi/(4 sqrt3).
  CHECK(hs::comparison_pdf(ComparisonFamily::kHyperbolicSecant, 0.0) == 0.5);
  CHECK(hs::comparison_pdf(ComparisonFamily::kNormal, 0.0) ==
        doctest::Approx(0.398942280401432678).epsilon(1e-15));
  CHECK(hs::comparison_pdf(ComparisonFamily::kLogistic, 0.0) ==
        doctest::Approx(0.453449841058554463).epsilon(1e-15));
  // Tail ordering at |y| = 4: heavier hs, then logistic, then normal.
  double hs4 = hs::comparison_pdf(ComparisonFamily::kHyperbolicSecant, 4.0);
  double lo4 = hs::comparison_pdf(ComparisonFamily::kLogistic, 4.0);
  double no4 = hs::comparison_pdf(ComparisonFamily::kNormal, 4.0);
  CHECK(hs4 == doctest::Approx(0.00186743621931856367).epsilon(1e-14));
  CHECK(lo4 == doctest::Approx(0.00127962757265383431).epsilon(1e-14));
  CHECK(no4 == doctest::Approx(0.000133830225764885352).epsilon(1e-14));
  CHECK(hs4 > lo4);
  CHECK(lo4 > no4);
}

TEST_CASE("all three comparison densities have unit mass and unit variance") {
  using hs::ComparisonFamily;
  for (auto family : {ComparisonFamily::kHyperbolicSecant, ComparisonFamily::kNormal,
                      ComparisonFamily::kLogistic}) {
    double mass = hs::integrate([&](double y) { return hs::comparison_pdf(family, y); },
                                -50.0, 50.0, 1e-12);
    double var = hs::integrate([&](double y) { return y * y * hs::comparison_pdf(family, y); },
                               -50.0, 50.0, 1e-12);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(var == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("cauchy draws center on zero with unit half-spread") {
  for (auto mode : {CauchyMode::kInverseTransform, CauchyMode::kRatioOfNormals}) {
    RngStream rng(2024);
    const int n = 100'000;
    std::vector<double> draws(n);
    for (double& v : draws) v = hs::standard_cauchy_draw(rng, mode);
    std::vector<double> sorted = draws;
    std::sort(sorted.begin(), sorted.end());
    double median = 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    CHECK(std::abs(median) < 0.02);
    int inside = 0;
    for (double v : draws)
      if (std::abs(v) <= 1.0) ++inside;
    // |C| <= 1 has probability exactly 1/2.
    CHECK(std::abs(inside / static_cast<double>(n) - 0.5) < 0.01);
  }
}

TEST_CASE("both cauchy modes pass KS against the arctan cdf") {
  auto cauchy_cdf = [](double x) { return 0.5 + std::atan(x) / kPi; };
  for (auto mode : {CauchyMode::kInverseTransform, CauchyMode::kRatioOfNormals}) {
    RngStream rng(31337);
    std::vector<double> draws(100'000);
    for (double& v : draws) v = hs::standard_cauchy_draw(rng, mode);
    hs::SampleBatch batch(std::move(draws), 31337, 0, 0, "cauchy");
    CHECK(hs::ks_one_sample(batch, cauchy_cdf, 0.01).passed);
  }
}

TEST_CASE("sampling is reproducible and tagged with its provenance") {
  HSDistribution d(1.0, 2.0);
  RngStream a(99, 4), b(99, 4);
  hs::SampleBatch ba = d.sample(a, 1000);
  hs::SampleBatch bb = d.sample(b, 1000);
  CHECK(ba.values() == bb.values());
  CHECK(ba.seed() == 99);
  CHECK(ba.stream_id() == 4);
  CHECK(ba.generator_tag() == "hs");
  CHECK_THROWS_AS(d.sample(a, 0), std::invalid_argument);
}

TEST_CASE("a million draws reproduce the standard moments") {
  HSDistribution d(0.0, 1.0);
  RngStream rng(1234);
  hs::Moments m = hs::sample_moments(d.sample(rng, 1'000'000));
  CHECK(std::abs(m.mean) <= 0.005);
  CHECK(m.variance >= 0.99);
  CHECK(m.variance <= 1.01);
}

TEST_CASE("location-scale sampling matches the shifted law") {
  HSDistribution d(-2.0, 3.0);
  RngStream rng(555);
  hs::SampleBatch batch = d.sample(rng, 100'000);
  hs::GofReport rep = hs::ks_one_sample(batch, [&](double y) { return d.cdf(y); }, 0.01);
  CHECK(rep.passed);
  hs::Moments m = hs::sample_moments(batch);
  CHECK(std::abs(m.mean + 2.0) < 0.05);
  CHECK(std::abs(m.variance - 9.0) < 0.3);
}

TEST_CASE("the two cauchy routes and the quantile transform agree in law") {
  HSDistribution d(0.0, 1.0);
  const int n = 100'000;
  RngStream ratio_rng(808);
  hs::SampleBatch ratio = d.sample(ratio_rng, n, CauchyMode::kRatioOfNormals);

  RngStream u_rng(809);
  std::vector<double> inv(n);
  for (double& v : inv) v = d.quantile(u_rng.next_uniform());
  hs::SampleBatch inverse(std::move(inv), 809, 0, 0, "hs-quantile");

  CHECK(hs::ks_two_sample(ratio, inverse, 0.01).passed);
}
