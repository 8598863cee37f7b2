#include "hs/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <vector>

#include "hs/hs_distribution.hpp"
#include "hs/hs_sum.hpp"
#include "hs/quadrature.hpp"
#include "hs/scenarios.hpp"
#include "hs/stats.hpp"

namespace hs::acceptance {
namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double median_of(std::vector<double> v) {
  std::size_t n = v.size();
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (n % 2 == 1) return *mid;
  double hi = *mid;
  double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

double sd_of(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double s2 = 0.0;
  for (double x : v) s2 += (x - mean) * (x - mean);
  return std::sqrt(s2 / static_cast<double>(v.size() - 1));
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

// Criterion 1: a million standard draws reproduce mean 0, variance 1.
CriterionResult criterion_moments() {
  Timer timer;
  HSDistribution std_hs(0.0, 1.0);
  RngStream rng(1001);
  Moments m = sample_moments(std_hs.sample(rng, 1'000'000));
  bool ok = std::abs(m.mean) <= 0.005 && m.variance >= 0.99 && m.variance <= 1.01;
  return {1, "standard-hs-moments", ok,
          fmt("mean=%.17g variance=%.17g", m.mean, m.variance), timer.seconds(), 2.0};
}

// Criterion 2: densities normalize, quantile/cdf round-trip, and the
// closed-form sum densities match characteristic-function inversion.
CriterionResult criterion_analytic() {
  Timer timer;
  double norm_err = 0.0;
  for (const HSDistribution& d :
       {HSDistribution(0.0, 1.0), HSDistribution(2.0, kPi / 2.0)}) {
    double mass = integrate([&](double y) { return d.pdf(y); },
                            d.location() - 40.0 * d.scale(), d.location() + 40.0 * d.scale(),
                            1e-13);
    norm_err = std::max(norm_err, std::abs(mass - 1.0));
  }

  std::vector<double> grid;
  for (double p : {1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
    grid.push_back(p);
    grid.push_back(1.0 - p);
  }
  for (int i = 1; i <= 19; ++i) grid.push_back(0.05 * i);
  double round_err = 0.0;
  for (const HSDistribution& d : {HSDistribution(0.0, 1.0), HSDistribution(3.0, 2.0)})
    for (double p : grid) round_err = std::max(round_err, std::abs(d.cdf(d.quantile(p)) - p));

  double inv_err1 = 0.0, inv_err2 = 0.0;
  HSSumDistribution one(1, 1.0), two(2, kPi);
  for (int x = -20; x <= 20; ++x) {
    inv_err1 = std::max(inv_err1, std::abs(one.pdf(x) - cf_inversion_pdf(1, 1.0, x)));
    inv_err2 = std::max(inv_err2, std::abs(two.pdf(x) - cf_inversion_pdf(2, kPi, x)));
  }

  bool ok = norm_err <= 1e-10 && round_err < 1e-10 && inv_err1 < 1e-8 && inv_err2 < 1e-8;
  return {2, "analytic-self-consistency", ok,
          fmt("normalization_err=%.17g roundtrip_err=%.17g inversion_err_n1=%.17g "
              "inversion_err_n2=%.17g",
              norm_err, round_err, inv_err1, inv_err2),
          timer.seconds(), 10.0};
}

// Criterion 3: arctanh of the twin similarity matches HS(arctanh rho, pi/2)
// across correlations and seeds.
CriterionResult criterion_twin(unsigned threads) {
  Timer timer;
  double max_ks = 0.0, threshold = 0.0;
  bool ok = true;
  for (double rho : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    TwinModel model(0.0, 1.0, rho);
    HSDistribution target = model.fisher_z_target();
    for (std::uint64_t seed : {3001ULL, 3002ULL, 3003ULL}) {
      RngStream rng(seed);
      SampleBatch batch = model.simulate_fisher_z(rng, 100'000, threads);
      GofReport rep =
          ks_one_sample(batch, [&](double v) { return target.cdf(v); }, 0.01);
      max_ks = std::max(max_ks, rep.ks_statistic);
      threshold = rep.threshold;
      ok = ok && rep.passed;
    }
  }
  return {3, "twin-fisher-z-identity", ok,
          fmt("max_ks=%.17g threshold=%.17g", max_ks, threshold), timer.seconds(), 30.0};
}

// Criterion 4: the Jeffreys-prior log odds ratio has variance 2 pi^2, matches
// the two-summand law, and the multinomial and binomial routes agree.
CriterionResult criterion_jeffreys(unsigned threads) {
  Timer timer;
  ContingencyScheme multinomial(ContingencySampling::kMultinomial);
  ContingencyScheme binomial(ContingencySampling::kBinomial);

  RngStream var_rng(4001);
  Moments m = sample_moments(multinomial.sample_log_odds(var_rng, 1'000'000, threads));
  double target_var = 2.0 * kPi * kPi;
  bool var_ok = std::abs(m.variance - target_var) <= 0.02 * target_var;

  RngStream ks_rng(4002);
  HSSumDistribution sum_law(2, kPi);
  GofReport one = ks_one_sample(multinomial.sample_log_odds(ks_rng, 100'000, threads),
                                [&](double w) { return sum_law.cdf(w); }, 0.01);

  RngStream mult_rng(4003), bin_rng(4004);
  GofReport both = ks_two_sample(multinomial.sample_log_odds(mult_rng, 100'000, threads),
                                 binomial.sample_log_odds(bin_rng, 100'000, threads), 0.01);

  bool ok = var_ok && one.passed && both.passed;
  return {4, "jeffreys-log-odds", ok,
          fmt("variance=%.17g ks=%.17g two_sample_ks=%.17g", m.variance, one.ks_statistic,
              both.ks_statistic),
          timer.seconds(), 60.0};
}

// Criterion 5: both marginal probabilities of the prior table are uniform.
CriterionResult criterion_marginals() {
  Timer timer;
  RngStream rng(5001);
  auto [row, col] = marginal_prior_check(rng, 100'000, 0.01);
  bool ok = row.passed && col.passed;
  return {5, "uniform-marginals", ok,
          fmt("ks_row=%.17g ks_col=%.17g threshold=%.17g", row.ks_statistic, col.ks_statistic,
              row.threshold),
          timer.seconds(), 0.0};
}

// Criterion 6: at the benchmark scenario the estimator medians sit at their
// limits and log|gap| matches HS(log eta, pi/2).
CriterionResult criterion_iv_limit(unsigned threads) {
  Timer timer;
  IvScenario scenario(1.0, 0.5, 0.6, 0.5, 10'000);
  RngStream rng(6001);
  IvScenario::Draws draws = scenario.simulate(rng, 100'000, threads);

  double med_iv = median_of(draws.beta_iv.values());
  std::vector<double> gaps(draws.beta_iv.size());
  for (std::size_t i = 0; i < gaps.size(); ++i)
    gaps[i] = std::abs(draws.beta_iv.values()[i] - draws.beta_ls.values()[i]);
  double med_gap = median_of(gaps);

  SampleBatch log_gap = log_abs_gap(draws);
  HSDistribution target = scenario.log_gap_target();
  GofReport rep = ks_one_sample(log_gap, [&](double v) { return target.cdf(v); }, 0.01);

  double eta = scenario.eta();
  bool ok = std::abs(med_iv - scenario.ls_limit()) <= 0.05 &&
            std::abs(med_gap - eta) <= 0.05 * eta && rep.ks_statistic < 0.02 &&
            std::abs(rep.variance - kPi * kPi / 4.0) <= 0.05 * kPi * kPi / 4.0;
  return {6, "invalid-iv-limit", ok,
          fmt("median_iv=%.17g median_gap=%.17g ks_log_gap=%.17g var_log_gap=%.17g", med_iv,
              med_gap, rep.ks_statistic, rep.variance),
          timer.seconds(), 180.0};
}

// Criterion 7: tenfold more replications shrink the spread of the slope
// estimator's mean by about sqrt(10) but leave the instrument estimator's
// mean unstable. The panel must be large for the second half: the treatment
// share gap lives on a 1/(n1*n0) lattice, so small panels cap the estimator's
// tail and the capped mean starts concentrating once replications outnumber
// the cap. At 5000 units the tail is faithful well past the largest draw
// 10^5 replications reach.
CriterionResult criterion_iv_heavy_mean(unsigned threads) {
  Timer timer;
  IvScenario scenario(1.0, 0.5, 0.6, 0.5, 5'000);
  std::vector<double> iv_small, iv_big, ls_small, ls_big;
  for (std::uint64_t seed = 7001; seed <= 7020; ++seed) {
    RngStream rng(seed);
    IvScenario::Draws small = scenario.simulate(rng, 10'000, threads);
    IvScenario::Draws big = scenario.simulate(rng, 100'000, threads);
    iv_small.push_back(sample_moments(small.beta_iv).mean);
    ls_small.push_back(sample_moments(small.beta_ls).mean);
    iv_big.push_back(sample_moments(big.beta_iv).mean);
    ls_big.push_back(sample_moments(big.beta_ls).mean);
  }
  double iv_ratio = sd_of(iv_small) / sd_of(iv_big);
  double ls_ratio = sd_of(ls_small) / sd_of(ls_big);
  bool ok = iv_ratio >= 0.5 && iv_ratio <= 2.0 && ls_ratio >= 2.5 && ls_ratio <= 4.5;
  return {7, "iv-heavy-mean", ok, fmt("iv_sd_ratio=%.17g ls_sd_ratio=%.17g", iv_ratio, ls_ratio),
          timer.seconds(), 0.0};
}

// Criterion 8: the KS test rejects exact-law batches at roughly its nominal
// 5% rate.
CriterionResult criterion_ks_calibration() {
  Timer timer;
  HSDistribution std_hs(0.0, 1.0);
  int rejections = 0;
  for (std::uint64_t seed = 8001; seed <= 8200; ++seed) {
    RngStream rng(seed);
    SampleBatch batch = std_hs.sample(rng, 1'000);
    GofReport rep = ks_one_sample(batch, [&](double y) { return std_hs.cdf(y); }, 0.05);
    if (!rep.passed) ++rejections;
  }
  double rate = rejections / 200.0;
  bool ok = rate >= 0.02 && rate <= 0.09;
  return {8, "ks-null-calibration", ok, fmt("rejection_rate=%.17g", rate), timer.seconds(), 0.0};
}

// Criterion 9, second clause: the three simulators must produce bitwise
// identical batches no matter how the replications are split across workers.
bool thread_invariance_holds() {
  TwinModel model(0.0, 1.0, 0.5);
  RngStream t1(901), t4(901);
  SampleBatch tw1 = model.simulate_fisher_z(t1, 50'000, 1);
  SampleBatch tw4 = model.simulate_fisher_z(t4, 50'000, 4);
  bool ok = tw1.values() == tw4.values() && tw1.redraw_count() == tw4.redraw_count();

  ContingencyScheme scheme(ContingencySampling::kMultinomial);
  RngStream j1(902), j4(902);
  ok = ok && scheme.sample_log_odds(j1, 50'000, 1).values() ==
                 scheme.sample_log_odds(j4, 50'000, 4).values();

  IvScenario scenario(1.0, 0.5, 0.6, 0.5, 1'000);
  RngStream i1(903), i4(903);
  IvScenario::Draws d1 = scenario.simulate(i1, 5'000, 1);
  IvScenario::Draws d4 = scenario.simulate(i4, 5'000, 4);
  ok = ok && d1.beta_iv.values() == d4.beta_iv.values() &&
       d1.beta_ls.values() == d4.beta_ls.values() &&
       d1.beta_iv.redraw_count() == d4.beta_iv.redraw_count();
  return ok;
}

}  // namespace

SuiteResult run_suite(unsigned threads) {
  SuiteResult suite;
  suite.criteria.push_back(criterion_moments());
  suite.criteria.push_back(criterion_analytic());
  suite.criteria.push_back(criterion_twin(threads));
  suite.criteria.push_back(criterion_jeffreys(threads));
  suite.criteria.push_back(criterion_marginals());
  suite.criteria.push_back(criterion_iv_limit(threads));
  suite.criteria.push_back(criterion_iv_heavy_mean(threads));
  suite.criteria.push_back(criterion_ks_calibration());
  return suite;
}

SuiteResult run_all(unsigned threads) {
  SuiteResult suite = run_suite(threads);
  Timer timer;
  SuiteResult rerun = run_suite(threads);
  bool same = render_report(suite) == render_report(rerun);
  bool invariant = thread_invariance_holds();
  suite.criteria.push_back({9, "determinism", same && invariant,
                            fmt("reports_identical=%s thread_invariance=%s threads=%u",
                                same ? "true" : "false", invariant ? "true" : "false", threads),
                            timer.seconds(), 0.0});
  return suite;
}

std::string render_report(const SuiteResult& suite) {
  std::string out;
  for (const auto& c : suite.criteria)
    out += fmt("criterion %d %s %s %s\n", c.id, c.name.c_str(), c.passed ? "PASS" : "FAIL",
               c.detail.c_str());
  out += fmt("overall %s\n", suite.all_passed() ? "PASS" : "FAIL");
  return out;
}

}  // namespace hs::acceptance
