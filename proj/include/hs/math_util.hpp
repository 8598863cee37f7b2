#pragma once
#include <cmath>
#include <stdexcept>
#include <string>

namespace hs {

// sech(a) as 2 e^{-|a|} / (1 + e^{-2|a|}); immune to overflow for large |a|.
inline double stable_sech(double a) {
  double t = std::exp(-std::abs(a));
  return 2.0 * t / (1.0 + t * t);
}

inline double require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite input");
  return x;
}

}  // namespace hs
