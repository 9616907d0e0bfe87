// Finite-size gap-scaling models (first-order avoided crossing vs the
// transverse-field chain) and the bath-limited error estimator.

#pragma once

#include <functional>
#include <vector>

#include "quench/sweep_profile.hpp"

namespace quench {

// Avoided-crossing model of a first-order transition: competing ground states
// with per-site overlap s and a poly(n) Hamiltonian norm.
struct FirstOrderModel {
    double overlap_decay;  // s in (0, 1)
    int norm_poly_degree;  // d >= 0

    FirstOrderModel(double s, int d);
};

// Gap at the avoided crossing: n^d s^n. Boundary convention: n = 0 -> 1.
double first_order_gap(const FirstOrderModel& model, int n);

// Single-quasiparticle gap of the transverse-field chain at the smallest
// antiperiodic momentum k = pi/n: 2 J sqrt(1 + g^2 - 2 g cos(pi/n)).
// At g = 1 this is 4 J sin(pi/(2n)) -> 2 pi J / n.
double tfim_gap(int n, double g, double coupling_j = 1.0);

// Bath spectral density f(w) = eta w^s exp(-w / cutoff); cutoff may be
// infinite (pure power law).
struct BathSpectrum {
    double eta;
    double exponent;
    double cutoff;

    static BathSpectrum power_law(double eta, double s, double cutoff = kInfinity);
    double operator()(double omega) const;
};

// prefactor * f(gap)/gap, evaluated as eta gap^(s-1) e^(-gap/cutoff) so the
// ohmic case (s = 1, no cutoff) is gap-independent exactly. A scale, not a
// normalized probability.
double decoherence_error(const BathSpectrum& bath, double gap_min, double prefactor = 1.0);

struct VulnerabilityRow {
    int n = 0;
    double first_order_gap = 0.0;
    double first_order_error = 0.0;
    double second_order_gap = 0.0;
    double second_order_error = 0.0;  // model: extra factor n for the soft modes
};

struct VulnerabilityReport {
    std::vector<VulnerabilityRow> rows;
    bool first_order_infrared_controlled = false;  // error stays bounded over the range
    bool second_order_growing = false;
};

VulnerabilityReport scheme_vulnerability_report(const FirstOrderModel& first_order,
                                                const std::function<double(int)>& second_order_gap,
                                                const BathSpectrum& bath,
                                                const std::vector<int>& n_range,
                                                double prefactor = 1.0);

}  // namespace quench
