// Gaussian dynamics of single linearized modes under a sweep: mode-function
// evolution, squeezing diagnostics, horizon stage classification and
// Kibble-Zurek freeze-out.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "quench/dispersion.hpp"
#include "quench/ode.hpp"
#include "quench/sweep_profile.hpp"

namespace quench {

// Second moments and mode-function pair of one mode at time t. Units hbar = 1;
// physical states satisfy qq*pp - qp^2 >= 1/4.
struct ModeState {
    double k = 0.0;
    std::complex<double> u{0.0, 0.0};
    std::complex<double> u_dot{0.0, 0.0};
    double qq = 0.0;  // <q^2>
    double pp = 0.0;  // <p^2>
    double qp = 0.0;  // symmetrized <qp+pq>/2
    double t = 0.0;

    double symplectic_bound() const { return qq * pp - qp * qp; }
    // 2 Im(u conj(u_dot)); conserved along the mode equation
    double wronskian() const;
};

// Tag: start from the instantaneous vacuum of omega(t0) (requires omega^2 > 0).
struct GroundState {};

class Trajectory {
public:
    Trajectory(double k, OdeSolution<7> sol);

    std::size_t size() const { return sol_.t.size(); }
    double time(std::size_t i) const { return sol_.t[i]; }
    ModeState state(std::size_t i) const;
    ModeState sample(double t) const;  // cubic Hermite dense output
    ModeState front() const { return state(0); }
    ModeState back() const { return state(size() - 1); }
    const IntegratorStats& stats() const { return sol_.stats; }

private:
    double k_;
    OdeSolution<7> sol_;
};

struct EvolveConfig {
    IntegratorConfig ode;
    // abort threshold for symplectic-bound / Wronskian drift (relative)
    double invariant_tol = 1e-6;
};

// Integrates u'' + omega^2(k^2, t) u = 0 together with the second moments.
// Works through omega^2 <= 0 regions. Aborts with diagnostics if the
// symplectic bound or the Wronskian drifts beyond cfg.invariant_tol.
Trajectory evolve_mode(const DispersionRelation& d, double k, double t0, double t1,
                       const ModeState& initial, const EvolveConfig& cfg = {});
Trajectory evolve_mode(const DispersionRelation& d, double k, double t0, double t1, GroundState,
                       const EvolveConfig& cfg = {});

struct SqueezeParameters {
    double r;    // squeeze magnitude >= 0
    double phi;  // angle of the reduced-variance quadrature, in [0, pi)
};

// Decomposes the moment matrix relative to the vacuum of omega_ref. For pure
// states r = 0 exactly when the state is that vacuum.
SqueezeParameters squeeze_parameters(const ModeState& s, double omega_ref);

// First-order excitation amplitude of a driven two-level system.
struct TwoLevelSystem {
    SweepProfile gap;       // E1(t) - E0(t) > 0
    SweepProfile coupling;  // <psi1| dH/dt |psi0>
};

// coupling(t1)/gap(t1)^2 * exp(i phi) with the dynamical phase
// phi = -int_{t0}^{t1} gap dt. Throws if the gap is not positive on [t0, t1]
// (checked on a 2049-point grid).
std::complex<double> adiabatic_amplitude(const TwoLevelSystem& sys, double t0, double t1);

enum class ModeStage { Oscillating, HorizonCrossing, Frozen };

// Compares the wavelength 2 pi / k against the horizon chi-window:
// Oscillating if lambda < dr/chi, Frozen if lambda > chi*dr. A divergent
// horizon always classifies as Oscillating.
ModeStage classify_stage(const SweepProfile& speed, double k, double t, double chi = 1.0,
                         double t_end = kInfinity);

struct FreezeOut {
    double t_tilde;   // instant where the response time equals the remaining time
    double xi_tilde;  // saturated correlation length xi_coeff / gap(t_tilde)
};

// Solves (t_c - t) * gap(t) = 1 by bisection, with t_c the end of the gap
// profile's domain. The gap must be positive and non-increasing on the domain.
FreezeOut kz_freezeout(const SweepProfile& gap, double xi_coeff);

}  // namespace quench
