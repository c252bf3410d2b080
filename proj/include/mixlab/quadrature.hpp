#pragma once

#include <functional>

namespace mixlab {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod (15 point) on [a, b]; b may be +infinity.
/// Stops when the estimated error is below max(abs_tol, rel_tol * |I|).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol = 1e-12, double rel_tol = 1e-9);

/// Fixed 20-point Gauss-Legendre rule on [a, b].
double gauss_legendre20(const std::function<double(double)>& f, double a, double b);

/// Fixed 10-point Gauss-Legendre rule on [a, b].
double gauss_legendre10(const std::function<double(double)>& f, double a, double b);

}  // namespace mixlab
