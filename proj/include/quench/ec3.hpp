// Exact cover-3 instances and the associated spin Hamiltonians: the diagonal
// clause-penalty problem Hamiltonian, the transverse-field starting point and
// the ferromagnetic XY network on the clause graph.

#pragma once

#include <cstdint>
#include <vector>

#include "quench/pauli.hpp"

namespace quench {

// Clause over 0-based variable indices a < b < c; satisfied when exactly one
// of the three bits is set.
struct Ec3Clause {
    int a, b, c;
    friend bool operator==(const Ec3Clause&, const Ec3Clause&) = default;
    friend auto operator<=>(const Ec3Clause&, const Ec3Clause&) = default;
};

struct Ec3Instance {
    int n = 0;
    std::vector<Ec3Clause> clauses;  // sorted, distinct, indices in [0, n)

    static Ec3Instance make(int n, std::vector<Ec3Clause> clauses);  // validates + sorts
    bool satisfied_by(std::uint32_t assignment) const;
};

struct Ec3Options {
    bool require_unique_solution = false;
    std::size_t max_attempts = 100000;
};

// Uniform distinct clause triples; with the uniqueness flag the whole
// instance is rejection-sampled until brute force finds exactly one
// satisfying assignment (n <= 24).
Ec3Instance random_ec3_instance(int n, int m, std::uint64_t seed, const Ec3Options& opts = {});

// Brute-force enumeration of satisfying assignments, stopping once `cap`
// solutions are found (cap = 0 means all). Requires n <= 24.
std::vector<std::uint32_t> ec3_solutions(const Ec3Instance& inst, std::size_t cap = 0);

// Per-clause penalty (sz_a + sz_b + sz_c + 1)^2, expanded into ZZ pairs,
// fields and a constant. Diagonal entries equal sum_clauses 4 (z_a+z_b+z_c-1)^2.
SpinHamiltonian build_h_out(const Ec3Instance& inst);

enum class WeightRule { Unit, ClauseDegree };

// sum_a L_a sigma^x_a with L_a = 1 or the clause degree of variable a.
SpinHamiltonian build_h_in_x(const Ec3Instance& inst, WeightRule rule = WeightRule::ClauseDegree);

// -sum_{ab} M_ab (sigma^x sigma^x + sigma^y sigma^y) with M_ab the number of
// clauses containing the pair; commutes with total sz (verified at build for
// n <= 10).
SpinHamiltonian build_h_in_xy(const Ec3Instance& inst);

}  // namespace quench
