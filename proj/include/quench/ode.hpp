// Embedded Dormand-Prince 5(4) integrator with PI step-size control and
// cubic-Hermite dense output over the stored accepted steps.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "quench/sweep_profile.hpp"

namespace quench {

struct IntegratorConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    double initial_step = 0.0;  // 0 -> automatic
    double max_step = kInfinity;
    std::size_t max_steps = 5'000'000;
};

struct IntegratorStats {
    std::size_t steps = 0;
    std::size_t rejected = 0;
    double max_local_error = 0.0;  // max accepted scaled error estimate
};

template <std::size_t N>
struct OdeSolution {
    std::vector<double> t;
    std::vector<std::array<double, N>> y;
    std::vector<std::array<double, N>> dydt;
    IntegratorStats stats;

    // cubic Hermite interpolation between stored points
    std::array<double, N> sample(double at) const {
        if (t.empty()) throw std::runtime_error("OdeSolution::sample: empty solution");
        if (at <= t.front()) return y.front();
        if (at >= t.back()) return y.back();
        std::size_t lo = 0, hi = t.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (t[mid] <= at ? lo : hi) = mid;
        }
        const double h = t[hi] - t[lo];
        const double s = (at - t[lo]) / h;
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s);
        const double h11 = s * s * (s - 1);
        std::array<double, N> out{};
        for (std::size_t i = 0; i < N; ++i) {
            out[i] = h00 * y[lo][i] + h10 * h * dydt[lo][i] + h01 * y[hi][i] + h11 * h * dydt[hi][i];
        }
        return out;
    }
};

// Integrates y' = f(t, y) from t0 to t1 (t1 > t0). `observer(t, y)` is called
// after every accepted step and may throw to abort.
template <std::size_t N, typename F, typename Observer>
OdeSolution<N> integrate_ode(F&& f, double t0, double t1, std::array<double, N> y0,
                             const IntegratorConfig& cfg, Observer&& observer) {
    if (!(t1 > t0)) throw std::invalid_argument("integrate_ode: need t1 > t0");

    // Dormand-Prince 5(4) tableau
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    OdeSolution<N> sol;
    std::array<double, N> y = y0;
    std::array<double, N> k1 = f(t0, y);
    double t = t0;

    sol.t.push_back(t);
    sol.y.push_back(y);
    sol.dydt.push_back(k1);

    double h = cfg.initial_step;
    if (h <= 0.0) h = std::min({(t1 - t0) * 1e-4, cfg.max_step, 1.0});
    double err_prev = 1.0;

    std::array<double, N> k2, k3, k4, k5, k6, k7, ytmp, ynew;
    while (t < t1) {
        if (sol.stats.steps + sol.stats.rejected >= cfg.max_steps) {
            throw std::runtime_error("integrate_ode: step budget exhausted");
        }
        h = std::min({h, cfg.max_step, t1 - t});
        if (!(t + h > t)) {
            throw std::runtime_error("integrate_ode: step size underflow at t = " + std::to_string(t));
        }

        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        k2 = f(t + c2 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = f(t + c3 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = f(t + c4 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = f(t + c5 * h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = f(t + h, ytmp);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = f(t + h, ynew);

        double err_sq = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                  e7 * k7[i]);
            const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err_sq += (e / sc) * (e / sc);
        }
        const double err = std::sqrt(err_sq / N);

        if (err <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;  // FSAL
            sol.t.push_back(t);
            sol.y.push_back(y);
            sol.dydt.push_back(k1);
            ++sol.stats.steps;
            sol.stats.max_local_error = std::max(sol.stats.max_local_error, err);
            observer(t, y);
            // PI controller (Hairer): err^-0.14 * err_prev^0.08, clamped
            const double fac =
                0.9 * std::pow(std::max(err, 1e-16), -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
            h *= std::clamp(fac, 0.2, 5.0);
            err_prev = std::max(err, 1e-16);
        } else {
            ++sol.stats.rejected;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
        }
    }
    return sol;
}

}  // namespace quench
