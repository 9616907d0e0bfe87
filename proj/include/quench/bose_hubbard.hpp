// Bose-Hubbard sweep experiment: sound speed, frozen number-fluctuation
// closed form, and the exponential / power-law sweep phenomenology of the
// Goldstone (phase) modes.

#pragma once

#include <vector>

#include "quench/modes.hpp"
#include "quench/sweep_profile.hpp"

namespace quench {

struct BHParams {
    double filling;        // mean filling n >= 1
    double repulsion;      // on-site U > 0
    double spacing;        // lattice spacing > 0
    SweepProfile hopping;  // J(t) >= 0

    BHParams(double filling, double repulsion, double spacing, SweepProfile hopping);
};

// c^2(t) = spacing^2 * J(t) * U * n
double bh_sound_speed_squared(const BHParams& p, double t);

// c(t) as a profile; defined for Constant/Exponential/PowerLaw hopping.
SweepProfile bh_sound_speed_profile(const BHParams& p);

// Frozen number fluctuations n (1 - exp(-2 pi nu)) / (2 pi nu) with the
// adiabaticity parameter nu = U n / gamma. Series branch below nu = 1e-3
// keeps the nu -> 0 limit exact; limits: -> n (nu -> 0), -> 0 (nu -> inf).
double frozen_number_variance(double filling, double nu);

class LimitingState {
public:
    static LimitingState superfluid(double filling);
    static LimitingState mott();
    bool is_mott() const { return mott_; }
    double filling() const { return filling_; }

private:
    LimitingState(bool m, double f) : mott_(m), filling_(f) {}
    bool mott_;
    double filling_;
};

// Superfluid(n) -> n (Poissonian), Mott -> 0.
double limiting_state_variance(const LimitingState& s);

enum class SweepOutcome { FrozenAt, Oscillating, DecayingToZero, Ambiguous };

struct ModeSweepResult {
    double k = 0.0;
    SweepOutcome outcome = SweepOutcome::Ambiguous;
    double frozen_value = 0.0;  // window mean of the number variance (FrozenAt)
    // diagnostics over the last-decade window
    double drift = 0.0;         // (max - min) / mean
    double final_over_initial = 0.0;
    int extrema = 0;
    Trajectory trajectory;
};

// Evolves phase modes with omega^2 = c^2(t) k^2 from the instantaneous vacuum
// and classifies the late-time number variance <p^2> over the window
// [max(t0, t1/10), t1]: FrozenAt when the relative drift < 1%, DecayingToZero
// when non-increasing and below 1% of the initial variance, Oscillating when
// >= 2 interior extrema and drift > 10%; otherwise reported Ambiguous.
std::vector<ModeSweepResult> simulate_bh_sweep(const BHParams& p, const std::vector<double>& k_list,
                                               double t0, double t1, const EvolveConfig& cfg = {},
                                               unsigned threads = 1);

}  // namespace quench
