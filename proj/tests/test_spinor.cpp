#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>
#include <numbers>

#include "quench/rng.hpp"
#include "quench/spinor.hpp"

using namespace quench;

namespace {

SpinorQuenchParams base_params() {
    SpinorQuenchParams p;
    p.grid_size = 32;
    p.spacing = 1.0;
    p.mass_sq_pre = 1.0;
    p.mass_sq_post = -1.0;
    p.stiffness = 1.0;
    p.growth_time = 4.0;
    p.seed = 77;
    return p;
}

double field_variance(const SpinorFieldSample& f) {
    double s = 0.0;
    for (const auto& v : f.data()) s += std::norm(v);
    return s / static_cast<double>(f.data().size());
}

// synthetic single vortex at (x0, y0) with winding sign q
SpinorFieldSample synthetic_vortex(int l, double x0, double y0, int q) {
    SpinorQuenchParams p = base_params();
    p.grid_size = l;
    std::vector<std::complex<double>> data(static_cast<std::size_t>(l) * l);
    for (int iy = 0; iy < l; ++iy) {
        for (int ix = 0; ix < l; ++ix) {
            const std::complex<double> v(ix - x0, q * (iy - y0));
            data[static_cast<std::size_t>(iy) * l + ix] = v;
        }
    }
    return SpinorFieldSample(p, std::move(data));
}

}  // namespace

TEST_CASE("critical zeeman shift") {
    CHECK(critical_zeeman(-0.5, 3.0) == doctest::Approx(3.0));
    CHECK(critical_zeeman(0.5, 3.0) == doctest::Approx(3.0));
    CHECK(critical_zeeman(-2.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("sampling is bit-deterministic in (params, seed)") {
    const auto a = sample_post_quench_field(base_params());
    const auto b = sample_post_quench_field(base_params());
    REQUIRE(a.data().size() == b.data().size());
    for (std::size_t i = 0; i < a.data().size(); ++i) CHECK(a.data()[i] == b.data()[i]);

    auto p2 = base_params();
    p2.seed = 78;
    const auto c = sample_post_quench_field(p2);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        if (a.data()[i] != c.data()[i]) any_diff = true;
    }
    CHECK(any_diff);
}

TEST_CASE("zero growth time reproduces the vacuum variance") {
    auto p = base_params();
    p.growth_time = 0.0;
    p.grid_size = 64;
    // expected site variance: mode average of 1/(2 omega_in)
    const int l = p.grid_size;
    const double dk = 2.0 * std::numbers::pi / (l * p.spacing);
    double expected = 0.0;
    for (int iy = 0; iy < l; ++iy) {
        for (int ix = 0; ix < l; ++ix) {
            const int fx = ix <= l / 2 ? ix : ix - l;
            const int fy = iy <= l / 2 ? iy : iy - l;
            const double k_sq = (fx * fx + fy * fy) * dk * dk;
            expected += 1.0 / (2.0 * std::sqrt(p.mass_sq_pre + p.stiffness * k_sq));
        }
    }
    expected /= static_cast<double>(l) * l;
    double mean = 0.0;
    const int reps = 40;
    for (int rep = 0; rep < reps; ++rep) {
        p.seed = 1000 + rep;
        mean += field_variance(sample_post_quench_field(p));
    }
    mean /= reps;
    CHECK(mean == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("unstable growth ratio follows the single-oscillator closed form") {
    auto p = base_params();
    p.grid_size = 16;
    p.growth_time = 2.0;
    auto p2 = p;
    p2.growth_time = 4.0;
    // k = 0 mode amplitude ratio between t and 2t is cosh(2|w|t)/cosh(|w|t)
    const double w = std::sqrt(-p.mass_sq_post);
    const double want = std::cosh(w * 4.0) / std::cosh(w * 2.0);
    // same seed: identical Gaussian draws, ratio of the k=0 Fourier amplitudes
    const auto f1 = sample_post_quench_field(p);
    const auto f2 = sample_post_quench_field(p2);
    std::complex<double> k0_1 = 0.0, k0_2 = 0.0;
    for (const auto& v : f1.data()) k0_1 += v;
    for (const auto& v : f2.data()) k0_2 += v;
    CHECK(std::abs(k0_2) / std::abs(k0_1) == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("unstable-mode growth is monotone in the growth time") {
    // fixed seed: the Gaussian draws are identical, only the growth factors
    // change, and unstable modes carry a non-decreasing cosh factor
    auto p = base_params();
    const int l = p.grid_size;
    const double dk = 2.0 * std::numbers::pi / (l * p.spacing);
    const std::vector<std::pair<int, int>> unstable = {{0, 0}, {1, 0}, {0, 1}, {2, 1}};
    std::vector<double> prev(unstable.size(), 0.0);
    for (double t : {0.0, 1.0, 2.0, 4.0, 6.0}) {
        p.growth_time = t;
        const auto f = sample_post_quench_field(p);
        for (std::size_t m = 0; m < unstable.size(); ++m) {
            const auto [nx, ny] = unstable[m];
            REQUIRE(p.mass_sq_post + p.stiffness * dk * dk * (nx * nx + ny * ny) < 0.0);
            std::complex<double> amp = 0.0;
            for (int iy = 0; iy < l; ++iy) {
                for (int ix = 0; ix < l; ++ix) {
                    const double phase = -dk * p.spacing * (nx * ix + ny * iy);
                    amp += f.at(ix, iy) * std::polar(1.0, phase);
                }
            }
            CHECK(std::abs(amp) >= prev[m] * (1.0 - 1e-12));
            prev[m] = std::abs(amp);
        }
    }
}

TEST_CASE("uniform field has no vortices; synthetic vortex is found") {
    SpinorQuenchParams p = base_params();
    std::vector<std::complex<double>> ones(static_cast<std::size_t>(32) * 32, {1.0, 0.0});
    const auto scan = detect_vortices(SpinorFieldSample(p, std::move(ones)));
    CHECK(scan.vortices.empty());
    CHECK(scan.skipped_plaquettes == 0);

    const auto f = synthetic_vortex(32, 15.5, 15.5, +1);
    const auto vs = detect_vortices(f);
    // one +1 vortex at the synthetic core; the periodic wrap seam carries the
    // compensating charge (global neutrality on the torus)
    int plus = 0;
    bool found_core = false;
    for (const auto& v : vs.vortices) {
        if (v.charge == +1) ++plus;
        if (v.ix == 15 && v.iy == 15) found_core = v.charge == +1;
    }
    CHECK(found_core);
    int total = 0;
    for (const auto& v : vs.vortices) total += v.charge;
    CHECK(total == 0);
}

TEST_CASE("conjugation negates all charges") {
    auto p = base_params();
    const auto f = sample_post_quench_field(p);
    std::vector<std::complex<double>> conj_data(f.data().size());
    for (std::size_t i = 0; i < conj_data.size(); ++i) conj_data[i] = std::conj(f.data()[i]);
    const auto a = detect_vortices(f);
    const auto b = detect_vortices(SpinorFieldSample(p, std::move(conj_data)));
    REQUIRE(a.vortices.size() == b.vortices.size());
    for (std::size_t i = 0; i < a.vortices.size(); ++i) {
        CHECK(a.vortices[i].ix == b.vortices[i].ix);
        CHECK(a.vortices[i].iy == b.vortices[i].iy);
        CHECK(a.vortices[i].charge == -b.vortices[i].charge);
    }
}

TEST_CASE("global phase leaves charges invariant") {
    auto p = base_params();
    const auto f = sample_post_quench_field(p);
    std::vector<std::complex<double>> rot(f.data().size());
    const std::complex<double> phase = std::polar(1.0, 1.234);
    for (std::size_t i = 0; i < rot.size(); ++i) rot[i] = phase * f.data()[i];
    const auto a = detect_vortices(f);
    const auto b = detect_vortices(SpinorFieldSample(p, std::move(rot)));
    REQUIRE(a.vortices.size() == b.vortices.size());
    for (std::size_t i = 0; i < a.vortices.size(); ++i) {
        CHECK(a.vortices[i].charge == b.vortices[i].charge);
    }
}

TEST_CASE("global neutrality on every periodic sample") {
    auto p = base_params();
    for (int s = 0; s < 25; ++s) {
        p.seed = derive_seed(4242, s);
        const auto scan = detect_vortices(sample_post_quench_field(p));
        int total = 0;
        for (const auto& v : scan.vortices) total += v.charge;
        CHECK(total == 0);
    }
}

TEST_CASE("winding number: uniform, locality, pair cancellation, identity") {
    SpinorQuenchParams p = base_params();
    std::vector<std::complex<double>> ones(static_cast<std::size_t>(32) * 32, {1.0, 0.0});
    const SpinorFieldSample uniform(p, std::move(ones));
    const auto u = winding_number(uniform, 16.0, 16.0, 6.0);
    CHECK(u.winding == 0);
    CHECK(u.boundary_winding == 0);

    // single synthetic vortex at the centre: inside a small disc -> 1
    const auto f = synthetic_vortex(32, 16.0, 16.0, +1);
    const auto w = winding_number(f, 16.0, 16.0, 5.0);
    CHECK(w.winding == 1);
    CHECK(w.boundary_winding == 1);

    CHECK_THROWS_AS(winding_number(f, 16.0, 16.0, 17.0), std::invalid_argument);
}

TEST_CASE("disc charge equals boundary circulation on random samples (exact)") {
    auto p = base_params();
    for (int s = 0; s < 10; ++s) {
        p.seed = derive_seed(99, s);
        const auto f = sample_post_quench_field(p);
        for (double r : {2.0, 4.0, 7.0, 11.0, 15.0}) {
            const auto w = winding_number(f, 16.0, 16.0, r);
            CHECK(w.winding == w.boundary_winding);
        }
    }
}

TEST_CASE("winding statistics: determinism, error-bar scaling, symmetry") {
    auto p = base_params();
    const std::vector<double> radii = {2.0, 3.0, 4.5, 7.0, 10.0};
    const auto a = winding_statistics(p, radii, 60, 5, 1);
    const auto b = winding_statistics(p, radii, 60, 5, 4);  // thread count must not matter
    for (std::size_t i = 0; i < radii.size(); ++i) {
        CHECK(a.n_sq_mean[i] == b.n_sq_mean[i]);
        CHECK(a.n_mean[i] == b.n_mean[i]);
    }

    const auto one = winding_statistics(p, radii, 1, 5);
    CHECK(one.degenerate_errors);

    // 4x the samples shrink the standard error about twofold
    const auto big = winding_statistics(p, radii, 240, 5);
    for (std::size_t i = 2; i < radii.size(); ++i) {
        if (a.n_sq_se[i] > 0.0) {
            CHECK(a.n_sq_se[i] / big.n_sq_se[i] == doctest::Approx(2.0).epsilon(0.5));
        }
    }
    // <N> consistent with zero (seed-pinned ensemble)
    const auto sym = winding_statistics(p, radii, 600, 11);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        CHECK(std::abs(sym.n_mean[i]) <= 3.0 * sym.n_mean_se[i] + 1e-12);
    }
}

TEST_CASE("scaling fit recovers synthetic laws") {
    WindingReport rep;
    rep.radii = {2.0, 3.0, 5.0, 8.0, 12.0, 18.0};
    rep.samples = 100;
    std::mt19937_64 gen(3);
    rep.n_sq_se.assign(rep.radii.size(), 0.05);
    rep.n_mean.assign(rep.radii.size(), 0.0);
    rep.n_mean_se.assign(rep.radii.size(), 0.01);

    for (double r : rep.radii) {
        rep.n_sq_mean.push_back(3.0 * r * std::log(r) + uniform_in(gen, -0.02, 0.02));
    }
    const auto fit = scaling_fit(rep);
    CHECK(fit.models[1].name == "R log R");
    CHECK(fit.best_index == 1);
    CHECK(fit.models[1].amplitude == doctest::Approx(3.0).epsilon(0.01));

    rep.n_sq_mean.clear();
    for (double r : rep.radii) rep.n_sq_mean.push_back(2.0 * r * r);
    CHECK(scaling_fit(rep).best_index == 2);
    CHECK(scaling_fit(rep).log_log_slope == doctest::Approx(2.0).epsilon(1e-6));

    rep.n_sq_mean.assign(rep.radii.size(), 0.0);
    CHECK_THROWS_AS(scaling_fit(rep), std::runtime_error);

    WindingReport narrow = rep;
    narrow.radii = {2.0, 3.0, 4.0, 5.0};
    narrow.n_sq_mean = {1.0, 2.0, 3.0, 4.0};
    CHECK_THROWS_AS(scaling_fit(narrow), std::invalid_argument);
}

TEST_CASE("zero-modulus corners are skipped and reported") {
    SpinorQuenchParams p = base_params();
    std::vector<std::complex<double>> data(static_cast<std::size_t>(32) * 32, {1.0, 0.0});
    data[5 * 32 + 7] = {0.0, 0.0};
    const SpinorFieldSample f(p, std::move(data));
    const auto scan = detect_vortices(f);
    CHECK(scan.skipped_plaquettes == 4);  // the four plaquettes sharing the corner
    const auto w = winding_number(f, 7.5, 5.5, 3.0);
    CHECK(w.zero_plaquettes == 4);
    CHECK(w.winding == 0);
}

TEST_CASE("parameter validation") {
    auto p = base_params();
    p.grid_size = 15;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = base_params();
    p.mass_sq_post = 0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = base_params();
    p.mass_sq_pre = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
