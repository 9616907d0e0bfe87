#include "quench/scaling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quench {

FirstOrderModel::FirstOrderModel(double s, int d) : overlap_decay(s), norm_poly_degree(d) {
    if (!(s > 0.0 && s < 1.0)) {
        throw std::invalid_argument("FirstOrderModel: overlap decay must lie in (0, 1)");
    }
    if (d < 0) throw std::invalid_argument("FirstOrderModel: polynomial degree must be >= 0");
}

double first_order_gap(const FirstOrderModel& model, int n) {
    if (n < 0) throw std::invalid_argument("first_order_gap: n must be >= 0");
    if (n == 0) return 1.0;
    return std::pow(static_cast<double>(n), model.norm_poly_degree) *
           std::pow(model.overlap_decay, n);
}

double tfim_gap(int n, double g, double coupling_j) {
    if (n < 2) throw std::invalid_argument("tfim_gap: need n >= 2");
    if (g < 0.0) throw std::invalid_argument("tfim_gap: g must be >= 0");
    const double k = std::numbers::pi / n;
    return 2.0 * coupling_j * std::sqrt(1.0 + g * g - 2.0 * g * std::cos(k));
}

BathSpectrum BathSpectrum::power_law(double eta, double s, double cutoff) {
    if (eta < 0.0) throw std::invalid_argument("BathSpectrum: eta must be >= 0");
    if (s < 0.0) throw std::invalid_argument("BathSpectrum: exponent must be >= 0");
    if (!(cutoff > 0.0)) throw std::invalid_argument("BathSpectrum: cutoff must be > 0");
    return BathSpectrum{eta, s, cutoff};
}

double BathSpectrum::operator()(double omega) const {
    if (omega < 0.0) throw std::invalid_argument("BathSpectrum: omega must be >= 0");
    return eta * std::pow(omega, exponent) * std::exp(-omega / cutoff);
}

double decoherence_error(const BathSpectrum& bath, double gap_min, double prefactor) {
    if (!(gap_min > 0.0)) throw std::invalid_argument("decoherence_error: gap must be > 0");
    // f(gap)/gap with the division cancelled algebraically: exact ohmic
    // gap-independence, exact power ratios
    return prefactor * bath.eta * std::pow(gap_min, bath.exponent - 1.0) *
           std::exp(-gap_min / bath.cutoff);
}

VulnerabilityReport scheme_vulnerability_report(const FirstOrderModel& first_order,
                                                const std::function<double(int)>& second_order_gap,
                                                const BathSpectrum& bath,
                                                const std::vector<int>& n_range,
                                                double prefactor) {
    if (n_range.empty()) throw std::invalid_argument("scheme_vulnerability_report: empty n range");
    VulnerabilityReport rep;
    for (int n : n_range) {
        VulnerabilityRow row;
        row.n = n;
        row.first_order_gap = first_order_gap(first_order, n);
        row.first_order_error = decoherence_error(bath, row.first_order_gap, prefactor);
        row.second_order_gap = second_order_gap(n);
        // one soft mode per size unit feeds the estimator
        row.second_order_error = n * decoherence_error(bath, row.second_order_gap, prefactor);
        rep.rows.push_back(row);
    }
    rep.first_order_infrared_controlled = true;
    rep.second_order_growing = rep.rows.size() > 1;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        if (rep.rows[i].first_order_error >
            rep.rows.front().first_order_error * (1.0 + 1e-9)) {
            rep.first_order_infrared_controlled = false;
        }
        if (rep.rows[i].second_order_error <= rep.rows[i - 1].second_order_error) {
            rep.second_order_growing = false;
        }
    }
    return rep;
}

}  // namespace quench
