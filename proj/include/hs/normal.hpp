#pragma once

namespace hs {

double normal_pdf(double x);
double normal_cdf(double x);
// Inverse of normal_cdf; throws std::domain_error outside (0,1).
double normal_quantile(double p);

}  // namespace hs
