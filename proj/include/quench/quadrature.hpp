#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace quench {

// Adaptive Gauss-Kronrod (G7/K15) on [a, b]. Throws if the returned error
// estimate is inconsistent with the requested relative tolerance.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-9) {
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        std::forward<F>(f), a, b, 15, rel_tol, &err);
    if (!(err <= 100.0 * rel_tol * std::max(1.0, std::abs(v)))) {
        throw std::runtime_error("integrate_adaptive: quadrature did not reach the requested tolerance");
    }
    return v;
}

}  // namespace quench
