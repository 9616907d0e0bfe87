#include "quench/spinor.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "quench/parallel.hpp"
#include "quench/rng.hpp"

namespace quench {

double critical_zeeman(double spin_coupling, double density) {
    if (!(density >= 0.0)) throw std::invalid_argument("critical_zeeman: density must be >= 0");
    return 2.0 * std::abs(spin_coupling) * density;
}

void SpinorQuenchParams::validate() const {
    if (grid_size < 16 || grid_size % 2 != 0) {
        throw std::invalid_argument("SpinorQuenchParams: grid size must be even and >= 16");
    }
    if (!(spacing > 0.0)) throw std::invalid_argument("SpinorQuenchParams: spacing must be > 0");
    if (!(mass_sq_pre > 0.0)) {
        throw std::invalid_argument("SpinorQuenchParams: pre-quench mass^2 must be > 0");
    }
    if (!(mass_sq_post < 0.0)) {
        throw std::invalid_argument("SpinorQuenchParams: post-quench mass^2 must be < 0");
    }
    if (!(stiffness > 0.0)) throw std::invalid_argument("SpinorQuenchParams: stiffness must be > 0");
    if (!(growth_time >= 0.0)) {
        throw std::invalid_argument("SpinorQuenchParams: growth time must be >= 0");
    }
    if (!(cutoff_k > 0.0)) throw std::invalid_argument("SpinorQuenchParams: cutoff must be > 0");
}

SpinorFieldSample::SpinorFieldSample(SpinorQuenchParams params,
                                     std::vector<std::complex<double>> data)
    : params_(params), data_(std::move(data)) {
    const std::size_t expected = static_cast<std::size_t>(params_.grid_size) * params_.grid_size;
    if (data_.size() != expected) {
        throw std::invalid_argument("SpinorFieldSample: data size does not match the grid");
    }
}

std::complex<double> SpinorFieldSample::at(int ix, int iy) const {
    const int l = params_.grid_size;
    ix = ((ix % l) + l) % l;
    iy = ((iy % l) + l) % l;
    return data_[static_cast<std::size_t>(iy) * l + ix];
}

namespace {

// FFTW planning is not thread-safe; execution of independent plans is.
std::mutex fftw_plan_mutex;

}  // namespace

SpinorFieldSample sample_post_quench_field(const SpinorQuenchParams& p) {
    p.validate();
    const int l = p.grid_size;
    const std::size_t n = static_cast<std::size_t>(l) * l;

    std::vector<std::complex<double>> modes(n);
    std::mt19937_64 gen(p.seed);

    // momentum components folded to (-pi/a, pi/a]
    const double dk = 2.0 * std::numbers::pi / (l * p.spacing);
    std::vector<double> kcomp(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) {
        const int folded = i <= l / 2 ? i : i - l;
        kcomp[static_cast<std::size_t>(i)] = folded * dk;
    }

    for (int iy = 0; iy < l; ++iy) {
        for (int ix = 0; ix < l; ++ix) {
            const double k_sq = kcomp[ix] * kcomp[ix] + kcomp[iy] * kcomp[iy];
            const double w_in_sq = p.mass_sq_pre + p.stiffness * k_sq;
            if (!(w_in_sq > 0.0)) {
                throw std::invalid_argument("sample_post_quench_field: pre-quench dispersion "
                                            "not positive (invalid initial vacuum)");
            }
            const double sigma = std::sqrt(1.0 / (2.0 * std::sqrt(w_in_sq)));
            const auto [g1, g2] = gaussian_pair(gen);
            std::complex<double> amp(g1 * sigma / std::numbers::sqrt2,
                                     g2 * sigma / std::numbers::sqrt2);

            double factor = 1.0;
            if (std::sqrt(k_sq) <= p.cutoff_k) {
                const double w_f_sq = p.mass_sq_post + p.stiffness * k_sq;
                if (w_f_sq < 0.0) {
                    factor = std::cosh(std::sqrt(-w_f_sq) * p.growth_time);
                } else {
                    factor = std::cos(std::sqrt(w_f_sq) * p.growth_time);
                }
            }
            modes[static_cast<std::size_t>(iy) * l + ix] = amp * factor;
        }
    }

    std::vector<std::complex<double>> field(n);
    {
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(fftw_plan_mutex);
            plan = fftw_plan_dft_2d(l, l, reinterpret_cast<fftw_complex*>(modes.data()),
                                    reinterpret_cast<fftw_complex*>(field.data()), FFTW_BACKWARD,
                                    FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        {
            std::lock_guard<std::mutex> lock(fftw_plan_mutex);
            fftw_destroy_plan(plan);
        }
    }
    // unitary normalization: per-site variance equals the mode-average variance
    const double scale = 1.0 / l;
    for (auto& v : field) v *= scale;
    return SpinorFieldSample(p, std::move(field));
}

namespace {

// wrap to the half-open interval (-pi, pi]
double wrap_phase(double d) {
    while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
    while (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
    return d;
}

struct EdgePhases {
    int l = 0;
    std::vector<double> dx, dy;  // wrapped phase differences along +x / +y edges
    std::vector<bool> corner_zero;

    double& at(std::vector<double>& v, int ix, int iy) {
        return v[static_cast<std::size_t>(iy) * l + ix];
    }
    double get(const std::vector<double>& v, int ix, int iy) const {
        return v[static_cast<std::size_t>(((iy % l) + l) % l) * l + ((ix % l) + l) % l];
    }
    bool zero(int ix, int iy) const {
        return corner_zero[static_cast<std::size_t>(((iy % l) + l) % l) * l + ((ix % l) + l) % l];
    }
};

EdgePhases edge_phases(const SpinorFieldSample& f) {
    const int l = f.size();
    EdgePhases e;
    e.l = l;
    e.dx.resize(static_cast<std::size_t>(l) * l);
    e.dy.resize(static_cast<std::size_t>(l) * l);
    e.corner_zero.resize(static_cast<std::size_t>(l) * l);
    std::vector<double> theta(static_cast<std::size_t>(l) * l);
    for (int iy = 0; iy < l; ++iy) {
        for (int ix = 0; ix < l; ++ix) {
            const std::complex<double> v = f.at(ix, iy);
            theta[static_cast<std::size_t>(iy) * l + ix] = std::arg(v);
            e.corner_zero[static_cast<std::size_t>(iy) * l + ix] = (v == std::complex<double>(0, 0));
        }
    }
    auto th = [&](int ix, int iy) {
        return theta[static_cast<std::size_t>(((iy % l) + l) % l) * l + ((ix % l) + l) % l];
    };
    for (int iy = 0; iy < l; ++iy) {
        for (int ix = 0; ix < l; ++ix) {
            e.at(e.dx, ix, iy) = wrap_phase(th(ix + 1, iy) - th(ix, iy));
            e.at(e.dy, ix, iy) = wrap_phase(th(ix, iy + 1) - th(ix, iy));
        }
    }
    return e;
}

// plaquette circulation from the shared edge arrays; ensures exact telescoping
double plaquette_circulation(const EdgePhases& e, int ix, int iy) {
    return e.get(e.dx, ix, iy) + e.get(e.dy, ix + 1, iy) - e.get(e.dx, ix, iy + 1) -
           e.get(e.dy, ix, iy);
}

bool plaquette_has_zero(const EdgePhases& e, int ix, int iy) {
    return e.zero(ix, iy) || e.zero(ix + 1, iy) || e.zero(ix + 1, iy + 1) || e.zero(ix, iy + 1);
}

}  // namespace

VortexScan detect_vortices(const SpinorFieldSample& f) {
    const EdgePhases e = edge_phases(f);
    const int l = f.size();
    VortexScan scan;
    for (int iy = 0; iy < l; ++iy) {
        for (int ix = 0; ix < l; ++ix) {
            if (plaquette_has_zero(e, ix, iy)) {
                ++scan.skipped_plaquettes;
                continue;
            }
            const double circ = plaquette_circulation(e, ix, iy);
            const int q = static_cast<int>(std::lround(circ / (2.0 * std::numbers::pi)));
            if (q != 0) scan.vortices.push_back({ix, iy, q});
        }
    }
    return scan;
}

WindingResult winding_number(const SpinorFieldSample& f, double cx, double cy, double radius) {
    const int l = f.size();
    const double a = f.spacing();
    if (!(radius > 0.0) || radius > 0.5 * l * a) {
        throw std::invalid_argument("winding_number: radius must fit inside the periodic box");
    }
    const EdgePhases e = edge_phases(f);

    auto inside = [&](int ix, int iy) {
        // plaquette centre, minimum-image distance to (cx, cy)
        const double px = (ix + 0.5) * a, py = (iy + 0.5) * a;
        double ddx = std::abs(px - cx), ddy = std::abs(py - cy);
        ddx = std::min(ddx, l * a - ddx);
        ddy = std::min(ddy, l * a - ddy);
        return ddx * ddx + ddy * ddy <= radius * radius;
    };

    WindingResult out;
    double interior = 0.0, boundary = 0.0;
    for (int iy = 0; iy < l; ++iy) {
        for (int ix = 0; ix < l; ++ix) {
            if (!inside(ix, iy)) continue;
            if (plaquette_has_zero(e, ix, iy)) ++out.zero_plaquettes;
            interior += plaquette_circulation(e, ix, iy);
            // edges shared with outside plaquettes carry the boundary circulation
            if (!inside(ix, iy - 1)) boundary += e.get(e.dx, ix, iy);
            if (!inside(ix, iy + 1)) boundary -= e.get(e.dx, ix, iy + 1);
            if (!inside(ix + 1, iy)) boundary += e.get(e.dy, ix + 1, iy);
            if (!inside(ix - 1, iy)) boundary -= e.get(e.dy, ix, iy);
        }
    }
    out.winding = static_cast<int>(std::lround(interior / (2.0 * std::numbers::pi)));
    out.boundary_winding = static_cast<int>(std::lround(boundary / (2.0 * std::numbers::pi)));
    return out;
}

WindingReport winding_statistics(const SpinorQuenchParams& p, std::vector<double> radii,
                                 std::size_t samples, std::uint64_t seed, unsigned threads) {
    p.validate();
    if (radii.empty()) throw std::invalid_argument("winding_statistics: empty radii");
    for (std::size_t i = 1; i < radii.size(); ++i) {
        if (!(radii[i] > radii[i - 1])) {
            throw std::invalid_argument("winding_statistics: radii must strictly increase");
        }
    }
    const double box = p.grid_size * p.spacing;
    if (radii.back() > 0.5 * box) {
        throw std::invalid_argument("winding_statistics: largest radius exceeds half the box");
    }
    if (samples < 1) throw std::invalid_argument("winding_statistics: need at least one sample");

    const double cx = 0.5 * box, cy = 0.5 * box;
    const std::size_t nr = radii.size();
    std::vector<std::vector<int>> windings(samples, std::vector<int>(nr));

    parallel_for(samples, threads, [&](std::size_t s) {
        SpinorQuenchParams q = p;
        q.seed = derive_seed(seed, s);
        const SpinorFieldSample field = sample_post_quench_field(q);
        for (std::size_t r = 0; r < nr; ++r) {
            const WindingResult w = winding_number(field, cx, cy, radii[r]);
            windings[s][r] = w.winding;
        }
    });

    WindingReport rep;
    rep.radii = std::move(radii);
    rep.samples = samples;
    rep.degenerate_errors = samples < 2;
    rep.n_mean.resize(nr);
    rep.n_mean_se.resize(nr);
    rep.n_sq_mean.resize(nr);
    rep.n_sq_se.resize(nr);
    for (std::size_t r = 0; r < nr; ++r) {
        double s1 = 0.0, s2 = 0.0, s4 = 0.0;
        for (std::size_t s = 0; s < samples; ++s) {
            const double w = windings[s][r];
            s1 += w;
            s2 += w * w;
            s4 += w * w * w * w;
        }
        const double ns = static_cast<double>(samples);
        const double m1 = s1 / ns, m2 = s2 / ns, m4 = s4 / ns;
        rep.n_mean[r] = m1;
        rep.n_sq_mean[r] = m2;
        if (samples >= 2) {
            rep.n_mean_se[r] = std::sqrt(std::max(m2 - m1 * m1, 0.0) / ns);
            rep.n_sq_se[r] = std::sqrt(std::max(m4 - m2 * m2, 0.0) / ns);
        }
    }
    return rep;
}

ScalingFit scaling_fit(const WindingReport& r) {
    const std::size_t nr = r.radii.size();
    if (nr < 4) throw std::invalid_argument("scaling_fit: need at least 4 radii");
    if (!(r.radii.back() >= 4.0 * r.radii.front())) {
        throw std::invalid_argument("scaling_fit: radii must span at least a factor 4");
    }
    bool all_zero = true;
    for (double y : r.n_sq_mean) {
        if (y != 0.0) all_zero = false;
    }
    if (all_zero) throw std::runtime_error("scaling_fit: all-zero data (singular fit)");

    ScalingFit fit;
    const auto shapes = std::array<std::pair<std::string, std::vector<double>>, 3>{
        std::pair{std::string("R"), std::vector<double>{}},
        std::pair{std::string("R log R"), std::vector<double>{}},
        std::pair{std::string("R^2"), std::vector<double>{}}};
    std::array<std::vector<double>, 3> f;
    for (std::size_t i = 0; i < nr; ++i) {
        const double rad = r.radii[i];
        f[0].push_back(rad);
        f[1].push_back(rad * std::log(rad));
        f[2].push_back(rad * rad);
    }
    for (int m = 0; m < 3; ++m) {
        double swf2 = 0.0, swfy = 0.0;
        for (std::size_t i = 0; i < nr; ++i) {
            const double se = r.n_sq_se.empty() ? 0.0 : r.n_sq_se[i];
            const double w = (r.degenerate_errors || se <= 0.0) ? 1.0 : 1.0 / (se * se);
            swf2 += w * f[static_cast<std::size_t>(m)][i] * f[static_cast<std::size_t>(m)][i];
            swfy += w * f[static_cast<std::size_t>(m)][i] * r.n_sq_mean[i];
        }
        const double amp = swf2 > 0.0 ? swfy / swf2 : 0.0;
        double ssr = 0.0;
        for (std::size_t i = 0; i < nr; ++i) {
            const double se = r.n_sq_se.empty() ? 0.0 : r.n_sq_se[i];
            const double w = (r.degenerate_errors || se <= 0.0) ? 1.0 : 1.0 / (se * se);
            const double res = r.n_sq_mean[i] - amp * f[static_cast<std::size_t>(m)][i];
            ssr += w * res * res;
        }
        fit.models[static_cast<std::size_t>(m)] = {shapes[static_cast<std::size_t>(m)].first, amp,
                                                   ssr};
    }
    fit.best_index = 0;
    for (int m = 1; m < 3; ++m) {
        if (fit.models[static_cast<std::size_t>(m)].weighted_ssr <
            fit.models[static_cast<std::size_t>(fit.best_index)].weighted_ssr) {
            fit.best_index = m;
        }
    }

    // unweighted log-log slope over the positive entries
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = 0; i < nr; ++i) {
        if (r.n_sq_mean[i] <= 0.0) continue;
        const double x = std::log(r.radii[i]);
        const double y = std::log(r.n_sq_mean[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt >= 2) {
        fit.log_log_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    }
    return fit;
}

}  // namespace quench
