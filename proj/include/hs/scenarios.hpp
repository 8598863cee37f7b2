#pragma once
// Three generative settings whose statistics land, exactly or in the limit, on
// hyperbolic-secant laws:
//   * TwinModel        -- similarity of a bivariate-normal pair; arctanh of the
//                         similarity score is HS(arctanh rho, pi/2) exactly.
//   * ContingencyScheme-- Jeffreys-prior 2x2 table; the prior log odds ratio is
//                         pi times the sum of two standard HS variates.
//   * IvScenario       -- randomized encouragement with an instrument that is
//                         independent of everything; log|beta_iv - beta_ls|
//                         converges to HS(log eta, pi/2).

#include <cstdint>
#include <utility>

#include "hs/hs_distribution.hpp"
#include "hs/rng.hpp"
#include "hs/sample_batch.hpp"
#include "hs/stats.hpp"

namespace hs {

// Similarity of a pair around a known center: 2ab / (a^2 + b^2) with
// a = x1 - mu, b = x2 - mu. Lies in [-1,1]; undefined when both offsets are
// zero. Scaled internally so huge offsets do not overflow.
double intraclass_correlation(double x1, double x2, double mu);

// log(p11 p00 / (p10 p01)) for a positive 2x2 table (probabilities or
// intensities; any common scaling cancels).
double log_odds_ratio(double p11, double p10, double p01, double p00);

// Bivariate normal pair with common mean mu, common SD sigma and
// correlation rho.
class TwinModel {
 public:
  TwinModel(double mu, double sigma, double rho);

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }
  double rho() const noexcept { return rho_; }

  // Exact law of V = arctanh(R): HS(arctanh(rho), pi/2).
  HSDistribution fisher_z_target() const;

  // reps draws of V, one child stream per replication; pairs whose similarity
  // rounds to +-1 are redrawn and counted.
  SampleBatch simulate_fisher_z(RngStream& rng, std::size_t reps, unsigned threads = 1) const;

 private:
  double mu_;
  double sigma_;
  double rho_;
};

enum class ContingencySampling { kMultinomial, kBinomial };

// Jeffreys-prior draw of a 2x2 table's log odds ratio. kMultinomial draws the
// table as a normalized vector of four Gamma(1/2) intensities; kBinomial forms
// the two row success probabilities first and takes the difference of their
// logits. Both routes have the same prior law. Row totals are metadata only.
class ContingencyScheme {
 public:
  explicit ContingencyScheme(ContingencySampling sampling, std::uint64_t n_row1 = 0,
                             std::uint64_t n_row0 = 0);

  ContingencySampling sampling() const noexcept { return sampling_; }
  std::uint64_t n_row1() const noexcept { return n_row1_; }
  std::uint64_t n_row0() const noexcept { return n_row0_; }

  SampleBatch sample_log_odds(RngStream& rng, std::size_t reps, unsigned threads = 1) const;

 private:
  ContingencySampling sampling_;
  std::uint64_t n_row1_;
  std::uint64_t n_row0_;
};

// KS reports for the two marginal probabilities (row 1 total, column 1 total)
// of the Jeffreys-prior table, each tested against Uniform(0,1).
std::pair<GofReport, GofReport> marginal_prior_check(RngStream& rng, std::size_t reps,
                                                     double alpha = 0.01);

// Scale of the Cauchy limit of beta_iv - beta_ls: sigma_y sqrt(1-rho^2)/sigma_d.
double iv_gap_scale(double sigma_y, double sigma_d, double rho_yd);

// Limit law of log|beta_iv - beta_ls|: HS(log eta, pi/2) with eta as above.
HSDistribution iv_log_gap_target(double sigma_y, double sigma_d, double rho_yd);

// Replication study of a two-stage estimator whose instrument T is
// independent of both treatment and outcome. Per unit: T ~ Bernoulli(p_treat),
// D ~ Bernoulli(p_d), Y = effect * D + noise, with effect and the noise SD
// derived from (sigma_y, rho_yd). Bernoulli treatment pins the treatment SD
// at sqrt(p_d (1 - p_d)).
class IvScenario {
 public:
  IvScenario(double sigma_y, double p_d, double rho_yd, double p_treat, std::uint64_t n_units);
  // Cross-checks a caller-supplied sigma_d against sqrt(p_d (1 - p_d)).
  IvScenario(double sigma_y, double sigma_d, double p_d, double rho_yd, double p_treat,
             std::uint64_t n_units);

  double sigma_y() const noexcept { return sigma_y_; }
  double sigma_d() const noexcept { return sigma_d_; }
  double p_d() const noexcept { return p_d_; }
  double rho_yd() const noexcept { return rho_yd_; }
  double p_treat() const noexcept { return p_treat_; }
  std::uint64_t n_units() const noexcept { return n_units_; }

  double eta() const noexcept { return noise_sd_ / sigma_d_; }
  // Probability limit of the slope estimator: rho_yd sigma_y / sigma_d.
  double ls_limit() const noexcept { return effect_; }
  HSDistribution log_gap_target() const;

  struct Draws {
    SampleBatch beta_iv;
    SampleBatch beta_ls;
  };

  // reps replications of n_units each; one child stream per replication.
  // Degenerate replications (an empty instrument arm, a treatment-share tie
  // across arms, all-equal treatment, or bitwise-equal estimates) are redrawn
  // and counted.
  Draws simulate(RngStream& rng, std::size_t reps, unsigned threads = 1) const;

 private:
  double sigma_y_;
  double sigma_d_;
  double p_d_;
  double rho_yd_;
  double p_treat_;
  std::uint64_t n_units_;
  double effect_;
  double noise_sd_;
};

// log|beta_iv - beta_ls| taken replication-wise.
SampleBatch log_abs_gap(const IvScenario::Draws& draws);

}  // namespace hs
