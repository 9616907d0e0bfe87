// Lowest eigenpairs of spin Hamiltonians: Lanczos with full
// reorthogonalization on the full space or a total-sz sector, with a dense
// fallback for small subspaces.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "quench/pauli.hpp"

namespace quench {

struct EigenOptions {
    int max_iterations = 600;
    double tol_factor = 1e-9;          // residual tolerance = tol_factor * norm_bound
    double degeneracy_factor = 1e-8;   // gap < factor * norm_bound flags degeneracy
    std::uint64_t seed = 1;            // deterministic start vectors
    int dense_cutoff = 64;             // subspace dims <= this solve densely
};

struct LowestLevels {
    std::vector<double> eigenvalues;            // ascending, size k
    std::vector<bool> degenerate_with_next;     // size k-1, pairwise gap flags
    std::vector<Eigen::VectorXd> eigenvectors;  // in the full 2^n space
};

// k lowest eigenpairs of h, optionally restricted to the total-sz sector with
// eigenvalue `sector` (must match the parity of n; h must commute with total
// sz). Eigenvalues are accurate to tol_factor * norm_bound.
LowestLevels lowest_levels(const SpinHamiltonian& h, int k,
                           std::optional<int> sector = std::nullopt,
                           const EigenOptions& opts = {});

}  // namespace quench
