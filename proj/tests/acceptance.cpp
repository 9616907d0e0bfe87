// Acceptance suite: one check per numbered criterion, each printing a
// PASS/FAIL line. Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <thread>

#include "quench/bose_hubbard.hpp"
#include "quench/dispersion.hpp"
#include "quench/ec3.hpp"
#include "quench/eigensolve.hpp"
#include "quench/experiments.hpp"
#include "quench/gap_scan.hpp"
#include "quench/modes.hpp"
#include "quench/parallel.hpp"
#include "quench/rng.hpp"
#include "quench/scaling.hpp"
#include "quench/spinor.hpp"

using namespace quench;

namespace {

struct Check {
    std::vector<std::string> failures;
    std::ostringstream notes;

    void require(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

// --------------------------------------------------------------------------
// 1. frozen-variance closed form

void criterion_frozen_variance(Check& c) {
    const double n = 100.0;
    const int points = 400;
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
        const double nu = 1e-6 * std::pow(1e9, static_cast<double>(i) / (points - 1));
        const double z = 2.0 * std::numbers::pi * nu;
        const double oracle = n * (-std::expm1(-z)) / z;
        const double got = frozen_number_variance(n, nu);
        worst = std::max(worst, std::abs(got - oracle) / oracle);
    }
    c.require(worst < 1e-12, "relative error " + std::to_string(worst) + " exceeds 1e-12");
    c.require(std::abs(frozen_number_variance(n, 1e-12) - n) < 1e-9,
              "nu -> 0 limit misses n to 1e-9");
    c.require(std::abs(frozen_number_variance(n, 1e13)) < 1e-9, "nu -> inf limit misses 0 to 1e-9");
    c.notes << "worst rel err " << worst;
}

// --------------------------------------------------------------------------
// 2. sweep phenomenology vs horizon formation

void criterion_sweep_phenomenology(Check& c) {
    struct Profile {
        SweepProfile hopping;
        double k, t0, t1;
        SweepOutcome want;
        const char* label;
    };
    std::vector<Profile> grid;
    for (double gamma : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
        grid.push_back({SweepProfile::exponential(1.0, gamma), 0.2, 0.0, 240.0 / gamma,
                        SweepOutcome::FrozenAt, "exponential"});
    }
    const std::vector<std::pair<double, double>> osc = {
        {0.5, 0.3}, {0.6, 0.3}, {0.75, 0.4}, {1.0, 0.5}, {1.25, 0.7}, {1.5, 0.9}, {1.75, 1.2}};
    for (const auto& [x, a] : osc) {
        grid.push_back({SweepProfile::power_law(a * a, 1.0, x), 1.0, 1.0, 2.0e4,
                        SweepOutcome::Oscillating, "power_law"});
    }
    grid.push_back({SweepProfile::power_law(0.48 * 0.48, 1.0, 2.0), 1.0, 1.0, 1.0e5,
                    SweepOutcome::DecayingToZero, "power_law_x2"});
    for (double x : {2.5, 2.75, 3.0, 3.5, 4.0}) {
        grid.push_back({SweepProfile::power_law(0.09, 1.0, x), 1.0, 1.0, 2.0e4,
                        SweepOutcome::FrozenAt, "power_law_fast"});
    }

    int checked = 0;
    for (const auto& p : grid) {
        BHParams params{1.0, 1.0, 1.0, p.hopping};
        const auto res = simulate_bh_sweep(params, {p.k}, p.t0, p.t1);
        if (res[0].outcome != p.want) {
            c.require(false, std::string(p.label) + ": classified " +
                                 std::to_string(static_cast<int>(res[0].outcome)) + " expected " +
                                 std::to_string(static_cast<int>(p.want)));
        }
        const SweepProfile speed = bh_sound_speed_profile(params);
        const bool finite =
            !horizon_size(speed, std::max(p.t0, 1e-12), kInfinity).is_divergent();
        c.require(finite == (p.want == SweepOutcome::FrozenAt),
                  std::string(p.label) + ": horizon finiteness disagrees with classification");
        ++checked;
    }
    c.require(checked >= 20, "fewer than 20 profiles");
    c.notes << checked << " profiles";
}

// --------------------------------------------------------------------------
// 3. horizon shrink-rate identity

void criterion_horizon_identity(Check& c) {
    std::mt19937_64 gen(2026);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double c0 = uniform_in(gen, 0.1, 10.0);
        const double gamma = uniform_in(gen, 0.1, 10.0);
        const double t = uniform_in(gen, 0.0, 2.0 / gamma);
        auto speed = SweepProfile::exponential(c0, gamma);
        const double h = 1e-3 / gamma;
        const double rate = horizon_shrink_rate(speed, t, h);
        const double ct = speed.value(t);
        worst = std::max(worst, std::abs(rate + ct) / ct);
    }
    c.require(worst < 1e-6, "identity violated: worst " + std::to_string(worst));
    c.notes << "worst rel dev " << worst;
}

// --------------------------------------------------------------------------
// 4. mode-dynamics invariants

void criterion_mode_invariants(Check& c) {
    // Unstable amplification is capped (integrated growth rate of a few) so
    // the strict 1e-9 check stays above the floating-point cancellation floor
    // of qq*pp - qp^2; deeper growth is exercised by the cosh test below.
    std::mt19937_64 gen(4099);
    double worst_bound = 0.0, worst_wron = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double m0 = uniform_in(gen, 0.5, 2.0);
        const double rate = uniform_in(gen, 0.05, 0.15);
        const double c2 = uniform_in(gen, 0.0, 1.0);
        const double k = uniform_in(gen, 0.1, 1.0);
        const double t1 = uniform_in(gen, 5.0, 7.0);
        auto d = DispersionRelation::quadratic(SweepProfile::linear(m0, -rate),
                                               SweepProfile::constant(c2));
        const auto traj = evolve_mode(d, k, 0.0, t1, GroundState{});
        const double w0 = traj.front().wronskian();
        const double b0 = traj.front().symplectic_bound();
        for (std::size_t i = 0; i < traj.size(); i += 5) {
            const ModeState s = traj.state(i);
            worst_bound = std::max(worst_bound, (b0 - s.symplectic_bound()) / b0);
            worst_wron = std::max(worst_wron, std::abs(s.wronskian() - w0) / std::abs(w0));
        }
    }
    c.require(worst_bound < 1e-9,
              "symplectic bound drift " + std::to_string(worst_bound) + " exceeds 1e-9");
    c.require(worst_wron < 1e-9, "Wronskian drift " + std::to_string(worst_wron) + " exceeds 1e-9");

    // unstable constant omega^2: cosh/sinh closed form to 1e-8
    auto d = DispersionRelation::quadratic(-1.0, 0.0);
    ModeState init;
    init.u = {1.0, 0.0};
    init.u_dot = {0.0, 1.0};
    init.qq = 1.0;
    init.pp = 1.0;
    init.qp = 0.0;
    const auto traj = evolve_mode(d, 0.0, 0.0, 6.0, init);
    double worst_cosh = 0.0;
    for (double t : {1.5, 3.0, 4.5, 6.0}) {
        const ModeState s = traj.sample(t);
        worst_cosh = std::max(worst_cosh,
                              std::abs(s.u.real() - std::cosh(t)) / std::cosh(t));
        worst_cosh = std::max(worst_cosh,
                              std::abs(s.u.imag() - std::sinh(t)) / std::sinh(t));
    }
    c.require(worst_cosh < 1e-8, "cosh/sinh growth off by " + std::to_string(worst_cosh));
    c.notes << "bound drift " << worst_bound << ", wronskian drift " << worst_wron;
}

// --------------------------------------------------------------------------
// 5. adiabatic expansion vs full two-level integration

double full_two_level_magnitude(std::function<double(double)> gap,
                                std::function<double(double)> coupling, double t1) {
    // Schrodinger evolution of H = (gap/2)(cos th sz + sin th sx) with
    // th' = 2 coupling / gap, starting in the instantaneous ground state
    std::array<double, 5> y{0.0, 0.0, 0.0, 1.0, 0.0};
    auto rhs = [&](double t, const std::array<double, 5>& s) {
        const double g = gap(t);
        const double h11 = 0.5 * g * std::cos(s[0]);
        const double h12 = 0.5 * g * std::sin(s[0]);
        const std::complex<double> a{s[1], s[2]}, b{s[3], s[4]};
        const std::complex<double> da = std::complex<double>(0, -1) * (h11 * a + h12 * b);
        const std::complex<double> db = std::complex<double>(0, -1) * (h12 * a - h11 * b);
        return std::array<double, 5>{2.0 * coupling(t) / g, da.real(), da.imag(), db.real(),
                                     db.imag()};
    };
    const int steps = 120000;
    const double h = t1 / steps;
    double t = 0.0;
    for (int i = 0; i < steps; ++i) {
        const auto k1 = rhs(t, y);
        std::array<double, 5> y2, y3, y4;
        for (int j = 0; j < 5; ++j) y2[j] = y[j] + 0.5 * h * k1[j];
        const auto k2 = rhs(t + 0.5 * h, y2);
        for (int j = 0; j < 5; ++j) y3[j] = y[j] + 0.5 * h * k2[j];
        const auto k3 = rhs(t + 0.5 * h, y3);
        for (int j = 0; j < 5; ++j) y4[j] = y[j] + h * k3[j];
        const auto k4 = rhs(t + h, y4);
        for (int j = 0; j < 5; ++j) y[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        t += h;
    }
    const std::complex<double> a{y[1], y[2]}, b{y[3], y[4]};
    const double cth = std::cos(0.5 * y[0]), sth = std::sin(0.5 * y[0]);
    return std::abs(cth * a + sth * b);
}

void criterion_adiabatic_expansion(Check& c) {
    std::mt19937_64 gen(515);
    double worst = 0.0, worst_ratio = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const double t1 = uniform_in(gen, 20.0, 50.0);
        const double d0 = uniform_in(gen, 1.0, 3.0);
        const double d1 = uniform_in(gen, -0.3 * d0, 1.5);
        const double gmin = std::min(d0, d0 + d1);
        const double rate = 0.03 * gmin * gmin / t1 * uniform_in(gen, 0.3, 1.0);

        // sweep-family constraint: max |<1|dH/dt|0>| / gap^2 < 0.05
        double ratio = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double t = t1 * i / 200.0;
            const double g = d0 + d1 * t / t1;
            ratio = std::max(ratio, rate * t / (g * g));
        }
        worst_ratio = std::max(worst_ratio, ratio);

        TwoLevelSystem sys{SweepProfile::linear(d0, d1 / t1), SweepProfile::linear(0.0, rate)};
        const double pert = std::abs(adiabatic_amplitude(sys, 0.0, t1));
        const double full = full_two_level_magnitude(
            [&](double t) { return d0 + d1 * t / t1; }, [&](double t) { return rate * t; }, t1);
        const double rel = std::abs(pert - full) / full;
        worst = std::max(worst, rel);
    }
    c.require(worst_ratio < 0.05, "sweep family exceeds the slowness constraint");
    c.require(worst < 0.10, "perturbative magnitude off by " + std::to_string(worst));
    c.notes << "worst rel dev " << worst << ", max ratio " << worst_ratio;
}

// --------------------------------------------------------------------------
// 6. EC3 Hamiltonian exactness

void criterion_ec3_exactness(Check& c) {
    std::mt19937_64 gen(606);
    int satisfiable = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 4 + static_cast<int>(gen() % 9);  // 4..12
        const long long max_m = static_cast<long long>(n) * (n - 1) * (n - 2) / 6;
        const int m = 1 + static_cast<int>(gen() % std::min<long long>(2 * n, max_m));
        const auto inst = random_ec3_instance(n, m, gen());
        const auto diag = build_h_out(inst).diagonal();
        bool exact = true;
        double e0 = 1e300;
        for (std::uint32_t z = 0; z < (std::uint32_t{1} << n); ++z) {
            double penalty = 0.0;
            for (const auto& cl : inst.clauses) {
                const int s = ((z >> cl.a) & 1) + ((z >> cl.b) & 1) + ((z >> cl.c) & 1);
                penalty += 4.0 * (s - 1) * (s - 1);
            }
            if (diag[z] != penalty) exact = false;
            e0 = std::min(e0, diag[z]);
        }
        c.require(exact, "diagonal mismatch at trial " + std::to_string(trial));
        const bool sat = !ec3_solutions(inst, 1).empty();
        c.require((e0 == 0.0) == sat, "E0 = 0 iff satisfiable violated");
        if (sat) ++satisfiable;
    }
    c.notes << satisfiable << "/100 satisfiable";
}

// --------------------------------------------------------------------------
// 7. eigensolver vs dense oracle

void criterion_eigensolver_oracle(Check& c) {
    std::mt19937_64 gen(707);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 4 + static_cast<int>(gen() % 5);  // 4..8
        const long long max_m = static_cast<long long>(n) * (n - 1) * (n - 2) / 6;
        const int m = 2 + static_cast<int>(gen() % std::min<long long>(2 * n, max_m - 1));
        const auto inst = random_ec3_instance(n, m, gen());
        const auto h_out = build_h_out(inst);
        const SpinHamiltonian h_in =
            (gen() % 2 == 0) ? build_h_in_x(inst) : build_h_in_xy(inst);
        const double g = uniform_in(gen, 0.0, 1.0);
        const auto h = interpolate(h_in, h_out, g);

        EigenOptions opts;
        opts.seed = gen();
        const int k = 2 + static_cast<int>(gen() % 3);
        const auto lv = lowest_levels(h, k, std::nullopt, opts);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense());
        const double norm = std::max(h.norm_bound(), 1.0);
        for (int i = 0; i < k; ++i) {
            worst = std::max(worst, std::abs(lv.eigenvalues[static_cast<std::size_t>(i)] -
                                             es.eigenvalues()(i)) /
                                        norm);
        }
    }
    c.require(worst < 1e-9, "eigenvalue deviation " + std::to_string(worst) + " of norm");
    c.notes << "worst |dE|/norm " << worst;
}

// --------------------------------------------------------------------------
// 8. scheme comparison medians

void criterion_scheme_comparison(Check& c) {
    nlohmann::json doc = {{"experiment", "aqc-compare"},
                          {"seed", 808},
                          {"parameters", {{"n", 10}, {"m", 10}, {"count", 50}}}};
    ExperimentConfig cfg = parse_config(doc);
    cfg.threads = std::max(1u, std::thread::hardware_concurrency());
    const ResultTable table = run_experiment(cfg);

    std::ofstream out("acceptance_scheme_comparison.csv");
    write_csv(table, out);

    const double x_median = std::get<double>(table.rows.front()[8]);
    const double xy_median = std::get<double>(table.rows.front()[9]);
    const std::int64_t xy_wins = std::get<std::int64_t>(table.rows.front()[10]);
    c.require(table.rows.size() == 50, "expected 50 instances");
    c.require(xy_median <= x_median, "XY median runtime " + std::to_string(xy_median) +
                                         " exceeds X median " + std::to_string(x_median));
    c.notes << "medians: XY " << xy_median << " vs X " << x_median << ", XY wins " << xy_wins
            << "/50; table in acceptance_scheme_comparison.csv";
}

// --------------------------------------------------------------------------
// 9. gap-scaling dichotomy

void criterion_gap_scaling(Check& c) {
    // log-linearity of the first-order model after removing the poly term
    FirstOrderModel model{0.87, 2};
    std::vector<double> xs, ys;
    for (int n = 10; n <= 100; n += 3) {
        xs.push_back(n);
        ys.push_back(std::log(first_order_gap(model, n)) - 2.0 * std::log(n));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double np = static_cast<double>(xs.size());
    const double slope = (np * sxy - sx * sy) / (np * sxx - sx * sx);
    const double icept = (sy - slope * sx) / np;
    double resid = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        resid = std::max(resid, std::abs(ys[i] - slope * xs[i] - icept));
    }
    c.require(resid < 1e-6, "log-linear residual " + std::to_string(resid));
    c.require(std::abs(slope - std::log(0.87)) < 1e-3, "slope misses ln s");

    for (int n : {64, 128, 512}) {
        c.require(std::abs(tfim_gap(n, 1.0, 1.0) * n - 2.0 * std::numbers::pi) <
                      0.01 * 2.0 * std::numbers::pi,
                  "gap * n misses 2 pi J at n = " + std::to_string(n));
    }

    // dense chain cross-check at n = 8: flip-even sector gap = 2 quasiparticles
    const int n = 8;
    auto chain = [&](double g) {
        SpinHamiltonian h(n);
        for (int i = 0; i < n; ++i) {
            h.add_term(-1.0, {{i, Pauli::Z}, {(i + 1) % n, Pauli::Z}});
            h.add_term(-g, {{i, Pauli::X}});
        }
        return h;
    };
    double dense_min = 1e300, formula_min = 1e300;
    for (int i = 0; i <= 40; ++i) {
        const double g = 0.5 + i / 40.0;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(chain(g).dense());
        const std::size_t dim = std::size_t{1} << n;
        double e0 = 1e300, e1 = 1e300;
        for (std::size_t v = 0; v < dim; ++v) {
            const auto vec = es.eigenvectors().col(static_cast<Eigen::Index>(v));
            double parity = 0.0;
            for (std::size_t b = 0; b < dim; ++b) {
                parity += vec[static_cast<Eigen::Index>(b)] *
                          vec[static_cast<Eigen::Index>((~b) & (dim - 1))];
            }
            if (parity > 0.5) {
                const double e = es.eigenvalues()(static_cast<Eigen::Index>(v));
                if (e < e0) {
                    e1 = e0;
                    e0 = e;
                } else if (e < e1) {
                    e1 = e;
                }
            }
        }
        dense_min = std::min(dense_min, 0.5 * (e1 - e0));
        formula_min = std::min(formula_min, tfim_gap(n, g, 1.0));
    }
    c.require(std::abs(dense_min - formula_min) < 0.05 * formula_min,
              "dense cross-check off by more than 5%");
    c.notes << "residual " << resid << ", dense/formula " << dense_min / formula_min;
}

// --------------------------------------------------------------------------
// 10. winding-number exactness and scaling fit

void criterion_winding(Check& c) {
    SpinorQuenchParams p;
    p.grid_size = 96;
    p.spacing = 1.0;
    p.mass_sq_pre = 1.0;
    p.mass_sq_post = -1.0;
    p.stiffness = 1.0;
    p.growth_time = 6.0;
    const std::vector<double> radii = {1.5, 2.2, 3.2, 4.7, 7.0, 10.0, 15.0, 22.0};
    const std::size_t samples = 1500;
    const std::uint64_t seed = 1010;

    // exact identities on every (field, radius) pair, plus neutrality
    const double box = p.grid_size * p.spacing;
    std::size_t pairs = 0;
    int identity_violations = 0, neutrality_violations = 0;
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<int> id_viol(samples, 0), neut_viol(samples, 0);
    parallel_for(samples, threads, [&](std::size_t s) {
        SpinorQuenchParams q = p;
        q.seed = derive_seed(seed, s);
        const auto field = sample_post_quench_field(q);
        const auto scan = detect_vortices(field);
        int total = 0;
        for (const auto& v : scan.vortices) total += v.charge;
        if (total != 0) neut_viol[s] = 1;
        for (double r : radii) {
            const auto w = winding_number(field, 0.5 * box, 0.5 * box, r);
            if (w.winding != w.boundary_winding) id_viol[s] = 1;
        }
    });
    for (std::size_t s = 0; s < samples; ++s) {
        identity_violations += id_viol[s];
        neutrality_violations += neut_viol[s];
        pairs += radii.size();
    }
    c.require(pairs >= 10000, "fewer than 10^4 (field, radius) pairs");
    c.require(identity_violations == 0, "charge-sum / boundary-circulation identity violated");
    c.require(neutrality_violations == 0, "global neutrality violated");

    const WindingReport rep = winding_statistics(p, radii, samples, seed, threads);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        c.require(std::abs(rep.n_mean[i]) <= 3.0 * rep.n_mean_se[i],
                  "mean winding at R = " + std::to_string(radii[i]) + " beyond 3 SE");
    }
    const ScalingFit fit = scaling_fit(rep);
    c.require(fit.log_log_slope > 1.0 && fit.log_log_slope < 2.0,
              "log-log slope " + std::to_string(fit.log_log_slope) + " outside (1, 2)");
    c.notes << "slope " << fit.log_log_slope << ", best model "
            << fit.models[static_cast<std::size_t>(fit.best_index)].name << ", fits emitted: ";
    for (const auto& m : fit.models) {
        c.notes << m.name << " (A=" << m.amplitude << ", ssr=" << m.weighted_ssr << ") ";
    }
}

// --------------------------------------------------------------------------
// 11. decoherence estimator

void criterion_decoherence(Check& c) {
    const auto ohmic = BathSpectrum::power_law(0.7, 1.0);
    c.require(decoherence_error(ohmic, 0.1) == decoherence_error(ohmic, 0.2),
              "ohmic gap-independence not exact");
    c.require(decoherence_error(ohmic, 0.05) == 0.7, "ohmic error is not eta exactly");

    const auto quad = BathSpectrum::power_law(1.3, 2.0);
    const double ratio = decoherence_error(quad, 0.2) / decoherence_error(quad, 0.1);
    c.require(std::abs(ratio - 2.0) < 1e-12, "omega^2 bath gap ratio not 2 to 1e-12");

    FirstOrderModel fo{0.9, 1};
    std::vector<int> ns;
    for (int n = 8; n <= 512; n *= 2) ns.push_back(n);
    const auto rep = scheme_vulnerability_report(
        fo, [](int n) { return tfim_gap(n, 1.0, 1.0); }, ohmic, ns);
    bool growing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i) {
        if (rep.rows[i].second_order_error <= rep.rows[i - 1].second_order_error) growing = false;
    }
    c.require(growing, "second-order vulnerability not monotonically growing");
    c.require(rep.second_order_growing, "growth flag not set");
    c.notes << "ratio " << ratio;
}

// --------------------------------------------------------------------------
// 12. CLI determinism across reruns and thread counts

std::string data_of_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') continue;
        out << line << "\n";
    }
    return out.str();
}

void criterion_cli_determinism(Check& c) {
#ifndef QUENCHLAB_BIN
    c.require(false, "QUENCHLAB_BIN not defined");
#else
    const std::string bin = QUENCHLAB_BIN;
    const std::vector<std::pair<std::string, nlohmann::json>> configs = {
        {"bh-variance",
         {{"experiment", "bh-variance"},
          {"parameters",
           {{"filling", 100.0}, {"nu", {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}}}}}},
        {"horizon",
         {{"experiment", "horizon"},
          {"parameters",
           {{"profile", {{"form", "exponential"}, {"v0", 1.0}, {"gamma", 0.7}}},
            {"t", {0.0, 0.5, 1.0}},
            {"shrink_step", 1e-4}}}}},
        {"dispersion",
         {{"experiment", "dispersion"},
          {"parameters",
           {{"relation", {{"kind", "roton"}, {"k_crit", 1.3}, {"delta", -0.1}, {"curvature", 1.0}}},
            {"k_max", 3.0}}}}},
        {"bh-sweep",
         {{"experiment", "bh-sweep"},
          {"parameters",
           {{"filling", 1.0},
            {"repulsion", 1.0},
            {"spacing", 1.0},
            {"hopping", {{"form", "exponential"}, {"v0", 1.0}, {"gamma", 1.0}}},
            {"k", {0.2, 0.4}},
            {"t0", 0.0},
            {"t1", 120.0}}}}},
        {"spinor",
         {{"experiment", "spinor"},
          {"parameters",
           {{"grid", 32}, {"growth_time", 4.0}, {"radii", {2.0, 3.0, 4.5, 7.0, 10.0}}, {"samples", 30}}}}},
        {"aqc-scan",
         {{"experiment", "aqc-scan"},
          {"parameters", {{"n", 6}, {"m", 5}, {"scheme", "xy"}}}}},
        {"aqc-compare",
         {{"experiment", "aqc-compare"},
          {"parameters", {{"n", 6}, {"m", 5}, {"count", 3}, {"grid_points", 17}}}}},
        {"scaling",
         {{"experiment", "scaling"},
          {"parameters", {{"overlap_decay", 0.9}, {"poly_degree", 1}, {"n", {8.0, 16.0, 32.0}}}}}},
        {"decoherence",
         {{"experiment", "decoherence"},
          {"parameters",
           {{"bath", {{"eta", 1.0}, {"exponent", 1.0}}},
            {"first_order", {{"overlap_decay", 0.9}, {"poly_degree", 1}}},
            {"n", {8.0, 16.0, 32.0}}}}}},
    };
    // a broken config must fail with a non-zero exit status
    {
        std::ofstream bad("acceptance_cfg_bad.json");
        bad << "{\"experiment\": \"bh-variance\", \"parameters\": {\"filling\": 4.0}}";
    }
    const int rc_bad =
        std::system((bin + " run --config acceptance_cfg_bad.json > /dev/null 2>&1").c_str());
    c.require(rc_bad != 0, "missing required key did not produce a non-zero exit");

    int checked = 0;
    for (const auto& [name, doc] : configs) {
        const std::string cfg_path = "acceptance_cfg_" + name + ".json";
        {
            std::ofstream out(cfg_path);
            out << doc.dump(2);
        }
        const std::string out1 = "acceptance_out1_" + name + ".csv";
        const std::string out2 = "acceptance_out2_" + name + ".csv";
        const std::string out3 = "acceptance_out3_" + name + ".csv";
        const std::string base = bin + " run --config " + cfg_path + " --seed 4242";
        int rc1 = std::system((base + " --threads 1 --out " + out1).c_str());
        int rc2 = std::system((base + " --threads 1 --out " + out2).c_str());
        int rc3 = std::system((base + " --threads 4 --out " + out3).c_str());
        c.require(rc1 == 0 && rc2 == 0 && rc3 == 0, name + ": CLI run failed");
        if (rc1 != 0 || rc2 != 0 || rc3 != 0) continue;
        const std::string d1 = data_of_file(out1);
        c.require(!d1.empty(), name + ": empty output");
        c.require(d1 == data_of_file(out2), name + ": rerun differs");
        c.require(d1 == data_of_file(out3), name + ": thread count changes the data");
        ++checked;
    }
    c.require(checked == static_cast<int>(configs.size()), "not all experiments checked");
    c.notes << checked << " experiments, 3 runs each";
#endif
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<void(Check&)> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "frozen-variance closed form", criterion_frozen_variance},
        {2, "sweep phenomenology vs horizon", criterion_sweep_phenomenology},
        {3, "horizon shrink-rate identity", criterion_horizon_identity},
        {4, "mode-dynamics invariants", criterion_mode_invariants},
        {5, "adiabatic expansion vs full integration", criterion_adiabatic_expansion},
        {6, "EC3 Hamiltonian exactness", criterion_ec3_exactness},
        {7, "eigensolver vs dense oracle", criterion_eigensolver_oracle},
        {8, "scheme comparison medians", criterion_scheme_comparison},
        {9, "gap-scaling dichotomy", criterion_gap_scaling},
        {10, "winding-number exactness and fit", criterion_winding},
        {11, "decoherence estimator", criterion_decoherence},
        {12, "CLI determinism", criterion_cli_determinism},
    };

    int failures = 0;
    for (const auto& crit : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            crit.fn(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (check.failures.empty()) {
            std::printf("PASS  %2d  %-42s (%.1fs)  %s\n", crit.id, crit.name, secs,
                        check.notes.str().c_str());
        } else {
            ++failures;
            std::printf("FAIL  %2d  %-42s (%.1fs)\n", crit.id, crit.name, secs);
            for (const auto& f : check.failures) std::printf("          - %s\n", f.c_str());
        }
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all %zu criteria passed\n", criteria.size());
    return 0;
}
