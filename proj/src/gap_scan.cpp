#include "quench/gap_scan.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "quench/parallel.hpp"

namespace quench {

namespace {

GapScanPoint evaluate_point(const SpinHamiltonian& h_in, const SpinHamiltonian& h_out, double g,
                            const GapScanOptions& opts) {
    const SpinHamiltonian h = interpolate(h_in, h_out, g);
    const LowestLevels lv = lowest_levels(h, 2, opts.sector, opts.eig);
    GapScanPoint p;
    p.g = g;
    p.e0 = lv.eigenvalues[0];
    p.e1 = lv.eigenvalues.size() > 1 ? lv.eigenvalues[1] : lv.eigenvalues[0];
    p.gap = p.e1 - p.e0;
    if (opts.with_matrix_elements && lv.eigenvectors.size() > 1) {
        // dH/dg = h_out - h_in applied in the full space
        const std::size_t dim = h.dimension();
        std::vector<double> v0(dim), dhv(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            v0[i] = lv.eigenvectors[0][static_cast<Eigen::Index>(i)];
        }
        h_out.apply(v0, dhv);
        std::vector<double> tmp(dim, 0.0);
        h_in.apply(v0, tmp);
        double mel = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            mel += lv.eigenvectors[1][static_cast<Eigen::Index>(i)] * (dhv[i] - tmp[i]);
        }
        p.matrix_element = std::abs(mel);
    }
    return p;
}

}  // namespace

GapScan gap_scan(const SpinHamiltonian& h_in, const SpinHamiltonian& h_out,
                 const GapScanOptions& opts) {
    if (h_in.qubit_count() != h_out.qubit_count()) {
        throw std::invalid_argument("gap_scan: qubit count mismatch");
    }
    if (opts.grid_points < 16) throw std::invalid_argument("gap_scan: need at least 16 grid points");
    if (!(opts.g_start >= 0.0 && opts.g_end <= 1.0 && opts.g_start < opts.g_end)) {
        throw std::invalid_argument("gap_scan: invalid g range");
    }

    GapScan scan;
    scan.sector = opts.sector;
    scan.has_matrix_elements = opts.with_matrix_elements;
    scan.norm_bound = interpolate(h_in, h_out, 0.5).norm_bound() * 2.0;

    // symmetry-broken starting manifold: begin just inside the interval
    double g_lo = opts.g_start;
    {
        const GapScanPoint p0 = evaluate_point(h_in, h_out, g_lo, opts);
        if (p0.gap < opts.eig.degeneracy_factor * scan.norm_bound && g_lo < 1e-3) {
            scan.degenerate_start = true;
            g_lo = 1e-3;
        } else {
            scan.points.push_back(p0);
        }
    }

    std::vector<double> grid;
    for (int i = scan.points.empty() ? 0 : 1; i < opts.grid_points; ++i) {
        grid.push_back(g_lo + (opts.g_end - g_lo) * static_cast<double>(i) /
                                  (opts.grid_points - 1));
    }
    for (double g : grid) scan.points.push_back(evaluate_point(h_in, h_out, g, opts));
    std::sort(scan.points.begin(), scan.points.end(),
              [](const GapScanPoint& a, const GapScanPoint& b) { return a.g < b.g; });

    // refine the coarse minimum by golden-section until the location is
    // resolved to refine_tol_g
    std::size_t i_min = 0;
    for (std::size_t i = 1; i < scan.points.size(); ++i) {
        if (scan.points[i].gap < scan.points[i_min].gap) i_min = i;
    }
    double lo = scan.points[i_min > 0 ? i_min - 1 : 0].g;
    double hi = scan.points[std::min(i_min + 1, scan.points.size() - 1)].g;
    constexpr double invphi = 0.6180339887498949;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    GapScanPoint p1 = evaluate_point(h_in, h_out, x1, opts);
    GapScanPoint p2 = evaluate_point(h_in, h_out, x2, opts);
    scan.points.push_back(p1);
    scan.points.push_back(p2);
    while (hi - lo > opts.refine_tol_g) {
        if (p1.gap < p2.gap) {
            hi = x2;
            x2 = x1;
            p2 = p1;
            x1 = hi - invphi * (hi - lo);
            p1 = evaluate_point(h_in, h_out, x1, opts);
            scan.points.push_back(p1);
        } else {
            lo = x1;
            x1 = x2;
            p1 = p2;
            x2 = lo + invphi * (hi - lo);
            p2 = evaluate_point(h_in, h_out, x2, opts);
            scan.points.push_back(p2);
        }
    }
    std::sort(scan.points.begin(), scan.points.end(),
              [](const GapScanPoint& a, const GapScanPoint& b) { return a.g < b.g; });

    scan.min_gap = scan.points.front().gap;
    scan.min_gap_g = scan.points.front().g;
    for (const auto& p : scan.points) {
        if (p.gap < scan.min_gap) {
            scan.min_gap = p.gap;
            scan.min_gap_g = p.g;
        }
    }
    return scan;
}

double runtime_estimate(const GapScan& scan) {
    if (scan.points.empty()) throw std::invalid_argument("runtime_estimate: empty scan");
    if (!scan.has_matrix_elements) {
        throw std::invalid_argument("runtime_estimate: scan was taken without matrix elements");
    }
    double t = 0.0;
    for (const auto& p : scan.points) {
        if (p.gap <= 1e-12 * std::max(scan.norm_bound, 1.0)) {
            throw std::runtime_error("runtime_estimate: degenerate crossing on the scan "
                                     "(zero gap) - no finite estimate");
        }
        t = std::max(t, p.matrix_element / (p.gap * p.gap));
    }
    return t;
}

SchemeComparison compare_schemes(const std::vector<Ec3Instance>& batch, WeightRule x_rule,
                                 unsigned threads, const GapScanOptions& base) {
    SchemeComparison out;
    out.rows.resize(batch.size());
    parallel_for(batch.size(), threads, [&](std::size_t i) {
        const Ec3Instance& inst = batch[i];
        const auto sols = ec3_solutions(inst, 1);
        if (sols.empty()) {
            throw std::invalid_argument("compare_schemes: instance is unsatisfiable");
        }
        const int weight = std::popcount(sols.front());

        const SpinHamiltonian h_out = build_h_out(inst);
        const SpinHamiltonian h_x = build_h_in_x(inst, x_rule);
        const SpinHamiltonian h_xy = build_h_in_xy(inst);

        SchemeComparisonRow row;
        row.index = static_cast<int>(i);
        row.solution_weight = weight;

        GapScanOptions x_opts = base;
        x_opts.sector.reset();
        const GapScan xs = gap_scan(h_x, h_out, x_opts);
        row.x_min_gap = xs.min_gap;
        row.x_runtime = runtime_estimate(xs);

        GapScanOptions xy_opts = base;
        xy_opts.sector = 2 * weight - inst.n;
        const GapScan ys = gap_scan(h_xy, h_out, xy_opts);
        row.xy_min_gap_sector = ys.min_gap;
        row.xy_runtime = runtime_estimate(ys);

        GapScanOptions full_opts = base;
        full_opts.sector.reset();
        full_opts.with_matrix_elements = false;
        row.xy_min_gap_full = gap_scan(h_xy, h_out, full_opts).min_gap;

        out.rows[i] = row;
    });

    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };
    std::vector<double> xt, yt, xg, yg;
    for (const auto& r : out.rows) {
        xt.push_back(r.x_runtime);
        yt.push_back(r.xy_runtime);
        xg.push_back(r.x_min_gap);
        yg.push_back(r.xy_min_gap_sector);
        if (r.xy_runtime < r.x_runtime) {
            ++out.xy_wins;
        } else if (r.x_runtime < r.xy_runtime) {
            ++out.x_wins;
        } else {
            ++out.ties;
        }
    }
    if (!out.rows.empty()) {
        out.x_median_runtime = median(xt);
        out.xy_median_runtime = median(yt);
        out.x_median_gap = median(xg);
        out.xy_median_gap = median(yg);
    }
    return out;
}

}  // namespace quench
