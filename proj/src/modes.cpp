#include "quench/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace quench {

namespace {

constexpr std::size_t kGapCheckPoints = 2049;

// state layout: [Re u, Im u, Re u', Im u', qq, pp, qp]
ModeState unpack(double k, double t, const std::array<double, 7>& y) {
    ModeState s;
    s.k = k;
    s.t = t;
    s.u = {y[0], y[1]};
    s.u_dot = {y[2], y[3]};
    s.qq = y[4];
    s.pp = y[5];
    s.qp = y[6];
    return s;
}

}  // namespace

double ModeState::wronskian() const {
    return 2.0 * (u * std::conj(u_dot)).imag();
}

Trajectory::Trajectory(double k, OdeSolution<7> sol) : k_(k), sol_(std::move(sol)) {}

ModeState Trajectory::state(std::size_t i) const {
    return unpack(k_, sol_.t[i], sol_.y[i]);
}

ModeState Trajectory::sample(double t) const {
    const double tc = std::clamp(t, sol_.t.front(), sol_.t.back());
    return unpack(k_, tc, sol_.sample(tc));
}

Trajectory evolve_mode(const DispersionRelation& d, double k, double t0, double t1,
                       const ModeState& initial, const EvolveConfig& cfg) {
    const double bound0 = initial.symplectic_bound();
    if (!(bound0 >= 0.25 * (1.0 - 1e-9))) {
        throw std::invalid_argument("evolve_mode: initial moments violate the symplectic bound");
    }
    const double k_sq = k * k;
    const double w0 = initial.wronskian();
    const double wron_scale = std::max(std::abs(w0), 1.0);

    std::array<double, 7> y0 = {initial.u.real(), initial.u.imag(),  initial.u_dot.real(),
                                initial.u_dot.imag(), initial.qq, initial.pp, initial.qp};

    auto rhs = [&](double t, const std::array<double, 7>& y) {
        const double w2 = d.omega_sq(k_sq, t);
        return std::array<double, 7>{
            y[2], y[3],                 // u' = v
            -w2 * y[0], -w2 * y[1],     // v' = -omega^2 u
            2.0 * y[6],                 // qq' = 2 qp
            -2.0 * w2 * y[6],           // pp' = -2 omega^2 qp
            y[5] - w2 * y[4],           // qp' = pp - omega^2 qq
        };
    };
    auto observer = [&](double t, const std::array<double, 7>& y) {
        // Both invariants are differences of products, so once the moments grow
        // (unstable segments) the check can only be as sharp as the cancellation
        // floor ~ eps * (product magnitude); scale the tolerance accordingly.
        const double bound = y[4] * y[5] - y[6] * y[6];
        const double bound_scale = std::max(bound0, y[4] * y[5] + y[6] * y[6]);
        if (bound < bound0 - cfg.invariant_tol * bound_scale) {
            throw std::runtime_error("evolve_mode: symplectic bound violated at t = " +
                                     std::to_string(t) + " (qq*pp-qp^2 = " + std::to_string(bound) +
                                     ", initial " + std::to_string(bound0) + ")");
        }
        // 2 Im(u conj(v)) = 2 (Im u * Re v - Re u * Im v)
        const double wron = 2.0 * (y[1] * y[2] - y[0] * y[3]);
        const double scale =
            std::max(wron_scale, 2.0 * (std::abs(y[1] * y[2]) + std::abs(y[0] * y[3])));
        if (std::abs(wron - w0) > cfg.invariant_tol * scale) {
            throw std::runtime_error("evolve_mode: Wronskian drift at t = " + std::to_string(t) +
                                     " (" + std::to_string(wron) + " vs " + std::to_string(w0) + ")");
        }
    };
    OdeSolution<7> sol = integrate_ode<7>(rhs, t0, t1, y0, cfg.ode, observer);
    return Trajectory(k, std::move(sol));
}

Trajectory evolve_mode(const DispersionRelation& d, double k, double t0, double t1, GroundState,
                       const EvolveConfig& cfg) {
    const double w2 = d.omega_sq(k * k, t0);
    if (!(w2 > 0.0)) {
        throw std::invalid_argument("evolve_mode: ground-state start needs omega^2(t0) > 0");
    }
    const double w = std::sqrt(w2);
    ModeState init;
    init.k = k;
    init.t = t0;
    init.u = {1.0 / std::sqrt(2.0 * w), 0.0};
    init.u_dot = {0.0, -w / std::sqrt(2.0 * w)};
    init.qq = 1.0 / (2.0 * w);
    init.pp = 0.5 * w;
    init.qp = 0.0;
    return evolve_mode(d, k, t0, t1, init, cfg);
}

SqueezeParameters squeeze_parameters(const ModeState& s, double omega_ref) {
    if (!(omega_ref > 0.0)) {
        throw std::invalid_argument("squeeze_parameters: omega_ref must be > 0");
    }
    // moment matrix in the dimensionless quadratures (q sqrt(w), p / sqrt(w))
    const double a = s.qq * omega_ref;
    const double b = s.pp / omega_ref;
    const double c = s.qp;
    const double det = a * b - c * c;
    if (!(a > 0.0) || !(b > 0.0) || det < 0.25 * (1.0 - 1e-9)) {
        throw std::invalid_argument("squeeze_parameters: non-physical moments");
    }
    const double mean = 0.5 * (a + b);
    const double rad = std::hypot(0.5 * (a - b), c);
    const double lam_plus = mean + rad;
    const double lam_minus = std::max(mean - rad, 1e-300);
    const double r = 0.25 * std::log(lam_plus / lam_minus);
    double phi = 0.0;
    if (rad > 1e-15 * mean) {
        // principal axis of the large eigenvalue, shifted to the squeezed one
        const double theta = 0.5 * std::atan2(2.0 * c, a - b);
        phi = theta + 0.5 * std::numbers::pi;
        phi = std::fmod(phi, std::numbers::pi);
        if (phi < 0.0) phi += std::numbers::pi;
    }
    return {r, phi};
}

std::complex<double> adiabatic_amplitude(const TwoLevelSystem& sys, double t0, double t1) {
    if (!(t1 >= t0)) throw std::invalid_argument("adiabatic_amplitude: t1 < t0");
    for (std::size_t i = 0; i < kGapCheckPoints; ++i) {
        const double t = t0 + (t1 - t0) * static_cast<double>(i) / (kGapCheckPoints - 1);
        if (!(sys.gap.value(t) > 0.0)) {
            throw std::invalid_argument("adiabatic_amplitude: gap not positive at t = " +
                                        std::to_string(t));
        }
    }
    const double phase = -sys.gap.integral(t0, t1);
    const double g1 = sys.gap.value(t1);
    const double magnitude = sys.coupling.value(t1) / (g1 * g1);
    return magnitude * std::exp(std::complex<double>(0.0, phase));
}

ModeStage classify_stage(const SweepProfile& speed, double k, double t, double chi, double t_end) {
    if (!(k > 0.0)) throw std::invalid_argument("classify_stage: k must be > 0");
    if (!(chi >= 1.0)) throw std::invalid_argument("classify_stage: chi must be >= 1");
    const HorizonSize h = horizon_size(speed, t, t_end);
    if (h.is_divergent()) return ModeStage::Oscillating;
    const double lambda = 2.0 * std::numbers::pi / k;
    const double dr = h.value();
    if (lambda < dr / chi) return ModeStage::Oscillating;
    if (lambda > dr * chi) return ModeStage::Frozen;
    return ModeStage::HorizonCrossing;
}

FreezeOut kz_freezeout(const SweepProfile& gap, double xi_coeff) {
    const double t_lo = gap.domain().t_start;
    const double t_c = gap.domain().t_end;
    if (!std::isfinite(t_lo) || !std::isfinite(t_c) || !(t_c > t_lo)) {
        throw std::invalid_argument("kz_freezeout: gap profile needs a finite domain ending at t_c");
    }
    // monotonicity: the gap must not increase toward the critical point
    constexpr int kChecks = 256;
    double prev = gap.value(t_lo);
    if (!(prev > 0.0)) throw std::invalid_argument("kz_freezeout: gap must be positive");
    for (int i = 1; i <= kChecks; ++i) {
        const double t = t_lo + (t_c - t_lo) * static_cast<double>(i) / kChecks;
        const double g = gap.value(t);
        if (g > prev * (1.0 + 1e-12)) {
            throw std::invalid_argument("kz_freezeout: gap increases toward the critical time");
        }
        prev = g;
    }

    const auto f = [&](double t) { return (t_c - t) * gap.value(t) - 1.0; };
    double lo = t_lo, hi = t_c;
    if (!(f(lo) > 0.0)) {
        throw std::invalid_argument("kz_freezeout: no freeze-out point inside the profile domain");
    }
    // f(t_c) = -1 < 0, so the root is bracketed
    for (int i = 0; i < 200 && (hi - lo) > 1e-14 * std::max(1.0, std::abs(t_c)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    const double t_tilde = 0.5 * (lo + hi);
    return {t_tilde, xi_coeff / gap.value(t_tilde)};
}

}  // namespace quench
