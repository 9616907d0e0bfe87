#include "quench/bose_hubbard.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "quench/parallel.hpp"

namespace quench {

BHParams::BHParams(double filling_, double repulsion_, double spacing_, SweepProfile hopping_)
    : filling(filling_), repulsion(repulsion_), spacing(spacing_), hopping(std::move(hopping_)) {
    if (!(filling >= 1.0)) throw std::invalid_argument("BHParams: filling must be >= 1");
    if (!(repulsion > 0.0)) throw std::invalid_argument("BHParams: repulsion must be > 0");
    if (!(spacing > 0.0)) throw std::invalid_argument("BHParams: spacing must be > 0");
    const bool non_negative = std::visit(
        [](const auto& f) -> bool {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, SweepProfile::Constant>) {
                return f.v >= 0.0;
            } else if constexpr (std::is_same_v<T, SweepProfile::Exponential> ||
                                 std::is_same_v<T, SweepProfile::PowerLaw>) {
                return f.v0 >= 0.0;
            } else if constexpr (std::is_same_v<T, SweepProfile::Tabulated>) {
                for (double v : f.v) {
                    if (v < 0.0) return false;
                }
                return true;
            } else {
                return true;  // Linear: sign depends on t, checked where used
            }
        },
        hopping.form());
    if (!non_negative) throw std::invalid_argument("BHParams: hopping must be non-negative");
}

double bh_sound_speed_squared(const BHParams& p, double t) {
    return p.spacing * p.spacing * p.hopping.value(t) * p.repulsion * p.filling;
}

SweepProfile bh_sound_speed_profile(const BHParams& p) {
    const double factor = p.spacing * p.spacing * p.repulsion * p.filling;
    return p.hopping.scaled(factor).square_root();
}

double frozen_number_variance(double filling, double nu) {
    if (!(filling >= 1.0)) throw std::invalid_argument("frozen_number_variance: filling must be >= 1");
    if (nu < 0.0) throw std::invalid_argument("frozen_number_variance: nu must be >= 0");
    const double z = 2.0 * std::numbers::pi * nu;
    if (nu < 1e-3) {
        // (1 - e^-z)/z = sum_{j>=0} (-z)^j / (j+1)!
        double sum = 0.0, term = 1.0;
        for (int j = 1; std::abs(term) >= 1e-16; ++j) {
            sum += term;
            term *= -z / (j + 1);
        }
        return filling * sum;
    }
    return filling * (1.0 - std::exp(-z)) / z;
}

LimitingState LimitingState::superfluid(double filling) {
    return LimitingState(false, filling);
}

LimitingState LimitingState::mott() {
    return LimitingState(true, 0.0);
}

double limiting_state_variance(const LimitingState& s) {
    return s.is_mott() ? 0.0 : s.filling();
}

namespace {

struct WindowStats {
    double mean, drift, final_over_initial;
    int extrema;
    bool non_increasing;
};

WindowStats analyze_window(const Trajectory& traj, double t0, double t1) {
    constexpr int kSamples = 64;
    const double lo = std::max(t0, t1 / 10.0);
    std::vector<double> pp(kSamples);
    const bool geometric = lo > 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double f = static_cast<double>(i) / (kSamples - 1);
        const double t = geometric ? lo * std::pow(t1 / lo, f) : lo + (t1 - lo) * f;
        pp[i] = traj.sample(t).pp;
    }
    WindowStats w{};
    const double vmax = *std::max_element(pp.begin(), pp.end());
    const double vmin = *std::min_element(pp.begin(), pp.end());
    double sum = 0.0;
    for (double v : pp) sum += v;
    w.mean = sum / kSamples;
    w.drift = w.mean > 0.0 ? (vmax - vmin) / w.mean : 0.0;
    const double initial = traj.front().pp;
    w.final_over_initial = initial > 0.0 ? vmax / initial : 0.0;
    w.non_increasing = true;
    for (int i = 1; i < kSamples; ++i) {
        if (pp[i] > pp[i - 1] * (1.0 + 1e-3)) w.non_increasing = false;
    }
    w.extrema = 0;
    for (int i = 2; i < kSamples; ++i) {
        const double d1 = pp[i - 1] - pp[i - 2];
        const double d2 = pp[i] - pp[i - 1];
        if (d1 * d2 < 0.0) ++w.extrema;
    }
    return w;
}

}  // namespace

std::vector<ModeSweepResult> simulate_bh_sweep(const BHParams& p, const std::vector<double>& k_list,
                                               double t0, double t1, const EvolveConfig& cfg,
                                               unsigned threads) {
    if (k_list.empty()) throw std::invalid_argument("simulate_bh_sweep: empty k list");
    const auto& form = p.hopping.form();
    const bool supported = std::holds_alternative<SweepProfile::Constant>(form) ||
                           std::holds_alternative<SweepProfile::Exponential>(form) ||
                           std::holds_alternative<SweepProfile::PowerLaw>(form);
    if (!supported) {
        throw std::invalid_argument(
            "simulate_bh_sweep: hopping must be Constant, Exponential or PowerLaw");
    }
    const double c2_factor = p.spacing * p.spacing * p.repulsion * p.filling;
    const DispersionRelation d = DispersionRelation::quadratic(
        SweepProfile::constant(0.0), p.hopping.scaled(c2_factor));

    std::vector<std::optional<ModeSweepResult>> slots(k_list.size());
    parallel_for(k_list.size(), threads, [&](std::size_t i) {
        const double k = k_list[i];
        Trajectory traj = evolve_mode(d, k, t0, t1, GroundState{}, cfg);
        const WindowStats w = analyze_window(traj, t0, t1);
        ModeSweepResult r{k, SweepOutcome::Ambiguous, 0.0, w.drift, w.final_over_initial,
                          w.extrema, std::move(traj)};
        if (w.drift < 0.01) {
            r.outcome = SweepOutcome::FrozenAt;
            r.frozen_value = w.mean;
        } else if (w.non_increasing && w.final_over_initial < 0.01) {
            r.outcome = SweepOutcome::DecayingToZero;
        } else if (w.extrema >= 2 && w.drift > 0.10) {
            r.outcome = SweepOutcome::Oscillating;
        }
        slots[i] = std::move(r);
    });

    std::vector<ModeSweepResult> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

}  // namespace quench
