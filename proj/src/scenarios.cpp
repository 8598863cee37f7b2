#include "hs/scenarios.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hs/math_util.hpp"
#include "hs/parallel.hpp"

namespace hs {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Gamma(1/2, 1) as half a squared standard normal.
double gamma_half_draw(RngStream& rng) {
  double z = rng.next_normal();
  return 0.5 * z * z;
}

// Four positive Gamma(1/2) intensities; the measure-zero draws where one
// rounds to exactly zero are retried and counted.
struct TableDraw {
  double x11, x10, x01, x00;
};

TableDraw positive_table_draw(RngStream& rng, std::uint64_t& redraws) {
  for (;;) {
    TableDraw t{gamma_half_draw(rng), gamma_half_draw(rng), gamma_half_draw(rng),
                gamma_half_draw(rng)};
    if (t.x11 > 0.0 && t.x10 > 0.0 && t.x01 > 0.0 && t.x00 > 0.0) return t;
    ++redraws;
  }
}

}  // namespace

double intraclass_correlation(double x1, double x2, double mu) {
  require_finite(x1, "intraclass_correlation");
  require_finite(x2, "intraclass_correlation");
  require_finite(mu, "intraclass_correlation");
  double a = x1 - mu;
  double b = x2 - mu;
  if (a == 0.0 && b == 0.0)
    throw std::domain_error("intraclass_correlation: undefined when both values equal mu");
  double m = std::max(std::abs(a), std::abs(b));
  double u = a / m;
  double v = b / m;
  return 2.0 * u * v / (u * u + v * v);
}

double log_odds_ratio(double p11, double p10, double p01, double p00) {
  for (double p : {p11, p10, p01, p00})
    if (!std::isfinite(p) || p <= 0.0)
      throw std::domain_error("log_odds_ratio: cells must be positive and finite");
  return std::log((p11 * p00) / (p10 * p01));
}

TwinModel::TwinModel(double mu, double sigma, double rho) : mu_(mu), sigma_(sigma), rho_(rho) {
  if (!std::isfinite(mu) || !std::isfinite(sigma) || sigma <= 0.0)
    throw std::domain_error("TwinModel: mu must be finite and sigma positive");
  if (!std::isfinite(rho) || std::abs(rho) >= 1.0)
    throw std::domain_error("TwinModel: |rho| must be < 1");
}

HSDistribution TwinModel::fisher_z_target() const {
  return HSDistribution(std::atanh(rho_), kHalfPi);
}

SampleBatch TwinModel::simulate_fisher_z(RngStream& rng, std::size_t reps,
                                         unsigned threads) const {
  if (reps < 1) throw std::invalid_argument("simulate_fisher_z: reps must be >= 1");
  std::vector<double> out(reps);
  std::atomic<std::uint64_t> redraws{0};
  double cross = rho_;
  double resid = std::sqrt(1.0 - rho_ * rho_);
  parallel_for(reps, threads, [&](std::size_t begin, std::size_t end) {
    std::uint64_t local = 0;
    for (std::size_t r = begin; r < end; ++r) {
      RngStream s = rng.child(r);
      for (;;) {
        double z1 = s.next_normal();
        double z2 = s.next_normal();
        double x1 = mu_ + sigma_ * z1;
        double x2 = mu_ + sigma_ * (cross * z1 + resid * z2);
        if (x1 == mu_ && x2 == mu_) {  // similarity undefined; try again
          ++local;
          continue;
        }
        double v = std::atanh(intraclass_correlation(x1, x2, mu_));
        if (std::isfinite(v)) {
          out[r] = v;
          break;
        }
        ++local;  // similarity rounded to +-1
      }
    }
    redraws += local;
  });
  return SampleBatch(std::move(out), rng.seed(), rng.stream_id(), redraws.load(),
                     "twin-fisher-z");
}

ContingencyScheme::ContingencyScheme(ContingencySampling sampling, std::uint64_t n_row1,
                                     std::uint64_t n_row0)
    : sampling_(sampling), n_row1_(n_row1), n_row0_(n_row0) {}

SampleBatch ContingencyScheme::sample_log_odds(RngStream& rng, std::size_t reps,
                                               unsigned threads) const {
  if (reps < 1) throw std::invalid_argument("sample_log_odds: reps must be >= 1");
  std::vector<double> out(reps);
  std::atomic<std::uint64_t> redraws{0};
  bool binomial = sampling_ == ContingencySampling::kBinomial;
  parallel_for(reps, threads, [&](std::size_t begin, std::size_t end) {
    std::uint64_t local = 0;
    for (std::size_t r = begin; r < end; ++r) {
      RngStream s = rng.child(r);
      TableDraw t = positive_table_draw(s, local);
      if (binomial) {
        // Row success probabilities and their complements, each an exact
        // ratio of intensities; W is the difference of the two logits.
        double q1 = t.x11 / (t.x11 + t.x10);
        double q1c = t.x10 / (t.x11 + t.x10);
        double q0 = t.x01 / (t.x01 + t.x00);
        double q0c = t.x00 / (t.x01 + t.x00);
        out[r] = (std::log(q1) - std::log(q1c)) - (std::log(q0) - std::log(q0c));
      } else {
        // The normalization cancels, so the log odds ratio of the table is
        // read straight off the intensities.
        out[r] = (std::log(t.x11) + std::log(t.x00)) - (std::log(t.x10) + std::log(t.x01));
      }
    }
    redraws += local;
  });
  return SampleBatch(std::move(out), rng.seed(), rng.stream_id(), redraws.load(),
                     binomial ? "jeffreys-binomial" : "jeffreys-multinomial");
}

std::pair<GofReport, GofReport> marginal_prior_check(RngStream& rng, std::size_t reps,
                                                     double alpha) {
  if (reps < 2) throw std::invalid_argument("marginal_prior_check: reps must be >= 2");
  std::vector<double> row(reps), col(reps);
  std::uint64_t redraws = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    RngStream s = rng.child(r);
    TableDraw t = positive_table_draw(s, redraws);
    double total = t.x11 + t.x10 + t.x01 + t.x00;
    row[r] = (t.x11 + t.x10) / total;
    col[r] = (t.x11 + t.x01) / total;
  }
  auto uniform_cdf = [](double x) { return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x); };
  SampleBatch row_batch(std::move(row), rng.seed(), rng.stream_id(), redraws,
                        "jeffreys-row-margin");
  SampleBatch col_batch(std::move(col), rng.seed(), rng.stream_id(), redraws,
                        "jeffreys-col-margin");
  return {ks_one_sample(row_batch, uniform_cdf, alpha),
          ks_one_sample(col_batch, uniform_cdf, alpha)};
}

double iv_gap_scale(double sigma_y, double sigma_d, double rho_yd) {
  if (!std::isfinite(sigma_y) || sigma_y <= 0.0)
    throw std::domain_error("iv_gap_scale: sigma_y must be positive");
  if (!std::isfinite(sigma_d) || sigma_d <= 0.0)
    throw std::domain_error("iv_gap_scale: sigma_d must be positive");
  if (!std::isfinite(rho_yd) || std::abs(rho_yd) >= 1.0)
    throw std::domain_error("iv_gap_scale: |rho_yd| must be < 1");
  return sigma_y * std::sqrt(1.0 - rho_yd * rho_yd) / sigma_d;
}

HSDistribution iv_log_gap_target(double sigma_y, double sigma_d, double rho_yd) {
  return HSDistribution(std::log(iv_gap_scale(sigma_y, sigma_d, rho_yd)), kHalfPi);
}

IvScenario::IvScenario(double sigma_y, double p_d, double rho_yd, double p_treat,
                       std::uint64_t n_units)
    : sigma_y_(sigma_y), p_d_(p_d), rho_yd_(rho_yd), p_treat_(p_treat), n_units_(n_units) {
  if (!std::isfinite(sigma_y) || sigma_y <= 0.0)
    throw std::domain_error("IvScenario: sigma_y must be positive");
  if (!std::isfinite(p_d) || p_d <= 0.0 || p_d >= 1.0)
    throw std::domain_error("IvScenario: p_d must be in (0,1)");
  if (!std::isfinite(rho_yd) || std::abs(rho_yd) >= 1.0)
    throw std::domain_error("IvScenario: |rho_yd| must be < 1; the log-gap law degenerates at +-1");
  if (!std::isfinite(p_treat) || p_treat <= 0.0 || p_treat >= 1.0)
    throw std::domain_error("IvScenario: p_treat must be in (0,1)");
  if (n_units < 2) throw std::domain_error("IvScenario: n_units must be >= 2");
  sigma_d_ = std::sqrt(p_d * (1.0 - p_d));
  effect_ = rho_yd * sigma_y / sigma_d_;
  noise_sd_ = sigma_y * std::sqrt(1.0 - rho_yd * rho_yd);
}

IvScenario::IvScenario(double sigma_y, double sigma_d, double p_d, double rho_yd, double p_treat,
                       std::uint64_t n_units)
    : IvScenario(sigma_y, p_d, rho_yd, p_treat, n_units) {
  if (!std::isfinite(sigma_d) || std::abs(sigma_d - sigma_d_) > 1e-12 * std::max(1.0, sigma_d_))
    throw std::domain_error(
        "IvScenario: sigma_d inconsistent with p_d; Bernoulli treatment fixes "
        "sigma_d = sqrt(p_d (1 - p_d))");
}

HSDistribution IvScenario::log_gap_target() const {
  return HSDistribution(std::log(eta()), kHalfPi);
}

IvScenario::Draws IvScenario::simulate(RngStream& rng, std::size_t reps,
                                       unsigned threads) const {
  if (reps < 1) throw std::invalid_argument("IvScenario::simulate: reps must be >= 1");
  std::vector<double> iv(reps), ls(reps);
  std::atomic<std::uint64_t> redraws{0};
  std::atomic<bool> stuck{false};
  const std::uint64_t n = n_units_;
  parallel_for(reps, threads, [&](std::size_t begin, std::size_t end) {
    std::uint64_t local = 0;
    for (std::size_t r = begin; r < end; ++r) {
      if (stuck.load(std::memory_order_relaxed)) return;
      RngStream s = rng.child(r);
      int attempts = 0;
      for (;;) {
        // A panel can be so small that every draw degenerates (for two units
        // the estimators even coincide algebraically); give up rather than
        // spin forever.
        if (++attempts > 10'000) {
          stuck.store(true, std::memory_order_relaxed);
          return;
        }
        std::uint64_t n_t1 = 0, n_d1 = 0, n_d1t1 = 0;
        double sum_y = 0.0, sum_y_t1 = 0.0, sum_y_d1 = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
          bool t = s.next_bernoulli(p_treat_);
          bool d = s.next_bernoulli(p_d_);
          double y = (d ? effect_ : 0.0) + noise_sd_ * s.next_normal();
          sum_y += y;
          if (t) {
            ++n_t1;
            sum_y_t1 += y;
            if (d) ++n_d1t1;
          }
          if (d) {
            ++n_d1;
            sum_y_d1 += y;
          }
        }
        if (n_t1 == 0 || n_t1 == n || n_d1 == 0 || n_d1 == n) {
          ++local;  // empty arm or constant treatment
          continue;
        }
        double nd = static_cast<double>(n);
        double n1 = static_cast<double>(n_t1);
        double n0 = nd - n1;
        double share_gap =
            static_cast<double>(n_d1t1) / n1 - static_cast<double>(n_d1 - n_d1t1) / n0;
        if (share_gap == 0.0) {
          ++local;  // treatment shares tie across arms
          continue;
        }
        double y1 = sum_y_t1 / n1;
        double y0 = (sum_y - sum_y_t1) / n0;
        double beta_iv = (y1 - y0) / share_gap;
        double d_bar = static_cast<double>(n_d1) / nd;
        double beta_ls = (sum_y_d1 - sum_y * d_bar) /
                         (static_cast<double>(n_d1) - static_cast<double>(n_d1) * d_bar);
        if (beta_iv == beta_ls) {
          ++local;  // gap exactly zero; its log is undefined
          continue;
        }
        iv[r] = beta_iv;
        ls[r] = beta_ls;
        break;
      }
    }
    redraws += local;
  });
  if (stuck.load())
    throw std::runtime_error(
        "IvScenario::simulate: a replication kept degenerating; the panel is too small");
  std::uint64_t total_redraws = redraws.load();
  return {SampleBatch(std::move(iv), rng.seed(), rng.stream_id(), total_redraws, "iv-wald"),
          SampleBatch(std::move(ls), rng.seed(), rng.stream_id(), total_redraws, "iv-ls")};
}

SampleBatch log_abs_gap(const IvScenario::Draws& draws) {
  if (draws.beta_iv.size() != draws.beta_ls.size())
    throw std::invalid_argument("log_abs_gap: batch sizes differ");
  const auto& a = draws.beta_iv.values();
  const auto& b = draws.beta_ls.values();
  std::vector<double> g(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) g[i] = std::log(std::abs(a[i] - b[i]));
  return SampleBatch(std::move(g), draws.beta_iv.seed(), draws.beta_iv.stream_id(),
                     draws.beta_iv.redraw_count(), "iv-log-gap");
}

}  // namespace hs
