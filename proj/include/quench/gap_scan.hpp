// Interpolation gap scans between a starting and a problem Hamiltonian,
// adiabatic runtime estimates, and the X-vs-XY scheme comparison on exact
// cover-3 batches.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "quench/ec3.hpp"
#include "quench/eigensolve.hpp"
#include "quench/pauli.hpp"

namespace quench {

struct GapScanOptions {
    int grid_points = 33;                     // >= 16
    double g_start = 0.0, g_end = 1.0;
    double refine_tol_g = 1e-3;               // min-gap location resolution
    bool with_matrix_elements = true;         // |<1| h_out - h_in |0>| per point
    std::optional<int> sector;                // total-sz eigenvalue restriction
    EigenOptions eig;
};

struct GapScanPoint {
    double g = 0.0;
    double e0 = 0.0, e1 = 0.0;
    double gap = 0.0;
    double matrix_element = 0.0;
};

struct GapScan {
    std::vector<GapScanPoint> points;  // sorted in g; grid plus refinement points
    double min_gap = 0.0;
    double min_gap_g = 0.0;
    std::optional<int> sector;         // annotation of the restriction used
    bool degenerate_start = false;     // endpoint degeneracy; scan began at g = 1e-3
    bool has_matrix_elements = false;
    double norm_bound = 0.0;
};

GapScan gap_scan(const SpinHamiltonian& h_in, const SpinHamiltonian& h_out,
                 const GapScanOptions& opts = {});

// Schedule-independent adiabatic bound T = max_g |<1| dH/dg |0>| / gap^2.
// Throws when any scanned gap is degenerate (exact crossing - no estimate).
double runtime_estimate(const GapScan& scan);

struct SchemeComparisonRow {
    int index = 0;
    std::uint64_t instance_seed = 0;
    int solution_weight = 0;       // Hamming weight of the satisfying assignment
    double x_min_gap = 0.0;        // conventional transverse-field scheme
    double x_runtime = 0.0;
    double xy_min_gap_sector = 0.0;  // within the solution's total-sz sector
    double xy_min_gap_full = 0.0;    // full spectrum (cross-sector crossings allowed)
    double xy_runtime = 0.0;
};

struct SchemeComparison {
    std::vector<SchemeComparisonRow> rows;
    double x_median_runtime = 0.0, xy_median_runtime = 0.0;
    double x_median_gap = 0.0, xy_median_gap = 0.0;
    int xy_wins = 0, x_wins = 0, ties = 0;
};

// Runs both schemes on every instance. The XY scan is restricted to the
// total-sz sector of the instance's satisfying assignment (instances must be
// satisfiable); the full-spectrum XY gap is reported alongside.
SchemeComparison compare_schemes(const std::vector<Ec3Instance>& batch,
                                 WeightRule x_rule = WeightRule::ClauseDegree,
                                 unsigned threads = 1, const GapScanOptions& base = {});

}  // namespace quench
