#include "quench/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "quench/quadrature.hpp"

namespace quench {

CouplingMatrix::CouplingMatrix(double g11_, double g22_, double g12_)
    : g11(g11_), g22(g22_), g12(g12_) {
    if (!(g11 > 0.0) || !(g22 > 0.0)) {
        throw std::invalid_argument("CouplingMatrix: intra-component couplings must be positive");
    }
}

CouplingEigenvalues coupling_eigenvalues(const CouplingMatrix& g) {
    const double mean = 0.5 * (g.g11 + g.g22);
    const double rad = std::hypot(0.5 * (g.g11 - g.g22), g.g12);
    return {mean + rad, mean - rad};
}

MixturePhase phase_of_mixture(const CouplingMatrix& g) {
    const auto [g_plus, g_minus] = coupling_eigenvalues(g);
    const double tol = 1e-12 * (g_plus + std::abs(g_minus));
    if (std::abs(g_minus) <= tol) return MixturePhase::Critical;
    return g_minus > 0.0 ? MixturePhase::Mixed : MixturePhase::PhaseSeparated;
}

double sound_speed_squared(const SweepProfile& alpha, const SweepProfile& beta, double t) {
    return alpha.value(t) * beta.value(t);
}

DispersionRelation::DispersionRelation(Kind k, std::vector<SweepProfile> p,
                                       std::vector<double> tk, std::vector<double> tw)
    : kind_(k), params_(std::move(p)), tab_k_sq_(std::move(tk)), tab_omega_sq_(std::move(tw)) {}

DispersionRelation DispersionRelation::quadratic(SweepProfile mass_sq, SweepProfile speed_sq) {
    return DispersionRelation(Kind::Quadratic, {std::move(mass_sq), std::move(speed_sq)}, {}, {});
}

DispersionRelation DispersionRelation::quadratic(double mass_sq, double speed_sq) {
    return quadratic(SweepProfile::constant(mass_sq), SweepProfile::constant(speed_sq));
}

DispersionRelation DispersionRelation::roton(SweepProfile k_crit, SweepProfile delta,
                                             SweepProfile curvature) {
    return DispersionRelation(Kind::Roton,
                              {std::move(k_crit), std::move(delta), std::move(curvature)}, {}, {});
}

DispersionRelation DispersionRelation::roton(double k_crit, double delta, double curvature) {
    if (!(k_crit > 0.0)) throw std::invalid_argument("DispersionRelation::roton: k_crit must be > 0");
    if (!(curvature > 0.0)) {
        throw std::invalid_argument("DispersionRelation::roton: curvature must be > 0");
    }
    return roton(SweepProfile::constant(k_crit), SweepProfile::constant(delta),
                 SweepProfile::constant(curvature));
}

DispersionRelation DispersionRelation::tabulated(std::vector<double> k_sq,
                                                 std::vector<double> omega_sq) {
    if (k_sq.size() < 2 || k_sq.size() != omega_sq.size()) {
        throw std::invalid_argument("DispersionRelation::tabulated: need >= 2 matching samples");
    }
    for (std::size_t i = 1; i < k_sq.size(); ++i) {
        if (!(k_sq[i] > k_sq[i - 1])) {
            throw std::invalid_argument("DispersionRelation::tabulated: samples must be "
                                        "strictly increasing in k^2");
        }
    }
    if (k_sq.front() < 0.0) {
        throw std::invalid_argument("DispersionRelation::tabulated: k^2 must be non-negative");
    }
    return DispersionRelation(Kind::Tabulated, {}, std::move(k_sq), std::move(omega_sq));
}

double DispersionRelation::omega_sq(double k_sq, double t) const {
    if (k_sq < 0.0) throw std::invalid_argument("DispersionRelation: k^2 must be >= 0");
    switch (kind_) {
        case Kind::Quadratic:
            return params_[0].value(t) + params_[1].value(t) * k_sq;
        case Kind::Roton: {
            const double kc2 = params_[0].value(t) * params_[0].value(t);
            const double d = k_sq - kc2;
            return params_[1].value(t) + params_[2].value(t) * d * d;
        }
        case Kind::Tabulated: {
            if (k_sq < tab_k_sq_.front() || k_sq > tab_k_sq_.back()) {
                throw std::invalid_argument("DispersionRelation: k^2 outside tabulated range");
            }
            auto it = std::upper_bound(tab_k_sq_.begin(), tab_k_sq_.end(), k_sq);
            if (it == tab_k_sq_.end()) return tab_omega_sq_.back();
            const std::size_t hi = static_cast<std::size_t>(it - tab_k_sq_.begin());
            if (hi == 0) return tab_omega_sq_.front();
            const std::size_t lo = hi - 1;
            const double w = (k_sq - tab_k_sq_[lo]) / (tab_k_sq_[hi] - tab_k_sq_[lo]);
            return tab_omega_sq_[lo] + w * (tab_omega_sq_[hi] - tab_omega_sq_[lo]);
        }
    }
    throw std::logic_error("DispersionRelation: unknown kind");
}

double DispersionRelation::max_k_sq() const {
    return kind_ == Kind::Tabulated ? tab_k_sq_.back() : kInfinity;
}

namespace {

constexpr int kGridPoints = 2048;

// Golden-section search for the minimum of f on [a, b], resolved to tol_x.
template <typename F>
double golden_minimize(F&& f, double a, double b, double tol_x) {
    constexpr double invphi = 0.6180339887498949;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol_x) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

InstabilityClass classify_dispersion(const DispersionRelation& d, double t, double k_max) {
    if (!(k_max > 0.0)) throw std::invalid_argument("classify_dispersion: empty k domain");
    const double k_sq_max = k_max * k_max;
    if (k_sq_max > d.max_k_sq()) {
        throw std::invalid_argument("classify_dispersion: k_max beyond tabulated range");
    }

    const double step = k_sq_max / (kGridPoints - 1);
    double scale = 0.0;
    double w_min = kInfinity;
    int i_min = 0;
    for (int i = 0; i < kGridPoints; ++i) {
        const double w = d.omega_sq(i * step, t);
        scale = std::max(scale, std::abs(w));
        if (w < w_min) {
            w_min = w;
            i_min = i;
        }
    }

    // local refinement of the bracketed minimum, to 1e-10 in k^2
    double k_sq_min = i_min * step;
    if (i_min > 0 && i_min < kGridPoints - 1) {
        const double a = (i_min - 1) * step;
        const double b = (i_min + 1) * step;
        k_sq_min = golden_minimize([&](double ks) { return d.omega_sq(ks, t); }, a, b, 1e-10);
        w_min = std::min(w_min, d.omega_sq(k_sq_min, t));
    }

    const double tol = 1e-12 * scale;
    const double w0 = d.omega_sq(0.0, t);
    const double slope = (d.omega_sq(step, t) - w0) / step;  // low-k stiffness estimate

    InstabilityClass out{InstabilityKind::Stable, std::sqrt(k_sq_min), w_min};
    if (w_min > tol) return out;

    const bool min_at_origin = k_sq_min <= 0.5 * step;
    if (min_at_origin) {
        if (w0 < -tol) {
            out.kind = InstabilityKind::MassGapInstability;
        }
        // marginal gapless point with non-negative stiffness stays Stable
        return out;
    }
    if (std::abs(w0) <= tol && slope < 0.0) {
        out.kind = InstabilityKind::StiffnessInstability;
        return out;
    }
    out.kind = InstabilityKind::RotonInstability;
    return out;
}

double HorizonSize::value() const {
    if (divergent_) throw std::runtime_error("HorizonSize: divergent horizon has no value");
    return value_;
}

namespace {

void check_speed_non_negative(const SweepProfile& speed, double t, double t_end) {
    // Closed forms have a single sign or a single zero crossing; endpoint and
    // table checks cover every family.
    const auto check = [&](double v, double at) {
        if (v < 0.0) {
            throw std::invalid_argument("horizon_size: speed negative at t = " + std::to_string(at));
        }
    };
    if (const auto* tab = std::get_if<SweepProfile::Tabulated>(&speed.form())) {
        for (std::size_t i = 0; i < tab->t.size(); ++i) {
            if (tab->t[i] >= t && tab->t[i] <= t_end) check(tab->v[i], tab->t[i]);
        }
        check(speed.value(t), t);
        if (t_end <= speed.domain().t_end) check(speed.value(t_end), t_end);
        return;
    }
    check(speed.value(t), t);
    if (std::isfinite(t_end)) {
        check(speed.value(t_end), t_end);
    } else if (const auto* lin = std::get_if<SweepProfile::Linear>(&speed.form())) {
        if (lin->rate < 0.0) {
            throw std::invalid_argument("horizon_size: linearly decreasing speed turns negative "
                                        "before t_end = infinity");
        }
    }
}

}  // namespace

HorizonSize horizon_size(const SweepProfile& speed, double t, double t_end) {
    if (!(t_end >= t)) throw std::invalid_argument("horizon_size: t_end < t");
    check_speed_non_negative(speed, t, t_end);
    if (std::isfinite(t_end)) {
        return HorizonSize::finite(speed.integral(t, t_end));
    }
    switch (speed.tail_behavior()) {
        case SweepProfile::Tail::Convergent:
            return HorizonSize::finite(speed.improper_integral(t));
        case SweepProfile::Tail::Divergent:
            return HorizonSize::divergent();
        case SweepProfile::Tail::Unsupported:
            throw std::invalid_argument("horizon_size: tabulated profiles require a finite t_end");
    }
    throw std::logic_error("horizon_size: unknown tail behaviour");
}

double horizon_shrink_rate(const SweepProfile& speed, double t, double h, double t_end) {
    if (!(h > 0.0)) throw std::invalid_argument("horizon_shrink_rate: step must be > 0");
    const HorizonSize plus = horizon_size(speed, t + h, t_end);
    const HorizonSize minus = horizon_size(speed, t - h, t_end);
    if (plus.is_divergent() || minus.is_divergent()) {
        throw std::runtime_error("horizon_shrink_rate: divergent horizon");
    }
    return (plus.value() - minus.value()) / (2.0 * h);
}

}  // namespace quench
