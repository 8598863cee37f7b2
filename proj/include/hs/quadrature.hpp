#pragma once
#include <functional>

namespace hs {

// 15-point Gauss-Kronrod rule on [a,b]. If `abs_diff` is non-null it receives
// |K15 - G7|, a conservative error estimate for the returned Kronrod value.
double gauss_kronrod_15(const std::function<double(double)>& f, double a, double b,
                        double* abs_diff = nullptr);

// Adaptive bisection on gauss_kronrod_15 down to absolute tolerance `abs_tol`.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12);

}  // namespace hs
