// Dispersion-relation templates, coupling-matrix analysis and instability
// classification for sweeps through a phase transition.

#pragma once

#include <vector>

#include "quench/sweep_profile.hpp"

namespace quench {

// Symmetric 2x2 coupling matrix of a two-component mixture; both
// intra-component couplings must be repulsive.
struct CouplingMatrix {
    double g11, g22, g12;
    CouplingMatrix(double g11_, double g22_, double g12_);
};

struct CouplingEigenvalues {
    double g_plus;   // larger eigenvalue
    double g_minus;  // smaller; changes sign at the mixing transition
};

// Eigenvalues of [[g11, g12], [g12, g22]], sorted g_plus >= g_minus.
CouplingEigenvalues coupling_eigenvalues(const CouplingMatrix& g);

enum class MixturePhase { Mixed, Critical, PhaseSeparated };

// Sign of g_minus with a scale-free tolerance |g_minus| <= 1e-12 (g_plus + |g_minus|).
MixturePhase phase_of_mixture(const CouplingMatrix& g);

// alpha(t) * beta(t); negative values signal an unstable regime.
double sound_speed_squared(const SweepProfile& alpha, const SweepProfile& beta, double t);

// omega^2(k^2, t) template families. All parameters are profiles of time;
// plain numbers wrap into Constant profiles.
class DispersionRelation {
public:
    // m^2(t) + c^2(t) k^2
    static DispersionRelation quadratic(SweepProfile mass_sq, SweepProfile speed_sq);
    static DispersionRelation quadratic(double mass_sq, double speed_sq);
    // delta(t) + curvature(t) (k^2 - k_crit(t)^2)^2 : single minimum at k_crit > 0
    static DispersionRelation roton(SweepProfile k_crit, SweepProfile delta, SweepProfile curvature);
    static DispersionRelation roton(double k_crit, double delta, double curvature);
    // static table of (k^2, omega^2) samples, strictly increasing in k^2
    static DispersionRelation tabulated(std::vector<double> k_sq, std::vector<double> omega_sq);

    double omega_sq(double k_sq, double t) const;
    double max_k_sq() const;  // +inf except for Tabulated

private:
    enum class Kind { Quadratic, Roton, Tabulated };
    DispersionRelation(Kind k, std::vector<SweepProfile> p, std::vector<double> tk,
                       std::vector<double> tw);

    Kind kind_;
    std::vector<SweepProfile> params_;
    std::vector<double> tab_k_sq_, tab_omega_sq_;
};

enum class InstabilityKind {
    Stable,
    RotonInstability,     // minimum at k_crit > 0 dips to omega^2 <= 0
    MassGapInstability,   // omega^2(0) < 0 with positive stiffness
    StiffnessInstability  // omega^2(0) = 0 with negative stiffness
};

struct InstabilityClass {
    InstabilityKind kind;
    double k_min;         // minimizing wavenumber over [0, k_max]
    double omega_sq_min;  // minimal omega^2 found
};

// Minimizes omega^2(k^2, t) over a 2048-point uniform grid in k^2 on
// [0, k_max^2] with golden-section refinement, then maps the minimizer and
// the signs of omega^2(0) and the low-k slope onto the enum. Classification
// is invariant under uniform positive rescaling of omega^2.
InstabilityClass classify_dispersion(const DispersionRelation& d, double t, double k_max);

// Horizon size: integral of the speed profile from t to t_end. Divergent when
// the improper integral does not converge.
class HorizonSize {
public:
    static HorizonSize finite(double v) { return HorizonSize{false, v}; }
    static HorizonSize divergent() { return HorizonSize{true, 0.0}; }
    bool is_divergent() const { return divergent_; }
    double value() const;  // throws when divergent

private:
    HorizonSize(bool d, double v) : divergent_(d), value_(v) {}
    bool divergent_;
    double value_;
};

// Closed form where the profile family admits one, adaptive quadrature for
// Tabulated profiles (which require a finite t_end). The speed must be
// non-negative on [t, t_end].
HorizonSize horizon_size(const SweepProfile& speed, double t, double t_end);

// Centered finite difference of horizon_size; equals -speed(t) up to
// quadrature + difference error. Requires a finite horizon at t +- h.
double horizon_shrink_rate(const SweepProfile& speed, double t, double h,
                           double t_end = kInfinity);

}  // namespace quench
