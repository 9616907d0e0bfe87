// Symmetry-breaking quench of the transverse magnetization: seeded Gaussian
// mode sampling with post-quench growth, vortex detection by plaquette phase
// winding, and winding-number statistics with scaling-model fits.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "quench/sweep_profile.hpp"

namespace quench {

// Critical quadratic shift of the spin-1 condensate: 2 |c2| rho.
double critical_zeeman(double spin_coupling, double density);

struct SpinorQuenchParams {
    int grid_size = 64;          // L, even, >= 16
    double spacing = 1.0;        // lattice constant a > 0
    double mass_sq_pre = 1.0;    // > 0: stable pre-quench dispersion
    double mass_sq_post = -1.0;  // < 0: unstable band after the quench
    double stiffness = 1.0;      // c^2 > 0
    double growth_time = 0.0;    // >= 0
    std::uint64_t seed = 0;
    double cutoff_k = kInfinity;  // modes above are seeded but not grown

    void validate() const;
};

class SpinorFieldSample {
public:
    SpinorFieldSample(SpinorQuenchParams params, std::vector<std::complex<double>> data);

    int size() const { return params_.grid_size; }
    double spacing() const { return params_.spacing; }
    const SpinorQuenchParams& params() const { return params_; }
    // periodic access, row-major (ix fast)
    std::complex<double> at(int ix, int iy) const;
    const std::vector<std::complex<double>>& data() const { return data_; }

private:
    SpinorQuenchParams params_;
    std::vector<std::complex<double>> data_;
};

// Draws every Fourier mode as a complex Gaussian with the pre-quench vacuum
// variance 1/(2 omega_in(k)), multiplies by the post-quench linear growth
// factor (cosh for unstable modes, cos for stable ones; modes with |k| above
// cutoff_k keep factor 1) and transforms to real space. Bit-reproducible for
// fixed (params, seed).
SpinorFieldSample sample_post_quench_field(const SpinorQuenchParams& p);

struct Vortex {
    int ix, iy;  // plaquette lower-left site
    int charge;  // +1 or -1
};

struct VortexScan {
    std::vector<Vortex> vortices;
    int skipped_plaquettes = 0;  // zero field modulus at a corner
};

// Plaquette circulation of the wrapped phase differences (each wrapped to
// (-pi, pi]); total charge over the periodic box telescopes to zero exactly.
VortexScan detect_vortices(const SpinorFieldSample& f);

struct WindingResult {
    int winding = 0;            // sum of plaquette charges inside the disc
    int boundary_winding = 0;   // boundary-loop circulation / 2 pi (same integer)
    int zero_plaquettes = 0;    // skipped plaquettes inside the disc
};

// Disc of radius R (lattice length units) around (cx, cy), minimum-image
// metric; requires R <= L a / 2.
WindingResult winding_number(const SpinorFieldSample& f, double cx, double cy, double radius);

struct WindingReport {
    std::vector<double> radii;
    std::vector<double> n_mean, n_mean_se;
    std::vector<double> n_sq_mean, n_sq_se;
    std::size_t samples = 0;
    bool degenerate_errors = false;  // fewer than 2 samples: no error bars
};

// Monte Carlo over seeded field samples; per-sample seeds follow
// derive_seed(seed, index). Discs are centred on the box.
WindingReport winding_statistics(const SpinorQuenchParams& p, std::vector<double> radii,
                                 std::size_t samples, std::uint64_t seed, unsigned threads = 1);

struct ScalingFit {
    struct Model {
        std::string name;
        double amplitude = 0.0;
        double weighted_ssr = 0.0;
    };
    std::array<Model, 3> models;  // A R, A R ln R, A R^2
    int best_index = 0;
    double log_log_slope = 0.0;
};

// One-parameter weighted least squares of <N^2> against the three reference
// models, plus the unweighted log-log slope. Needs >= 4 radii spanning a
// factor >= 4.
ScalingFit scaling_fit(const WindingReport& r);

}  // namespace quench
