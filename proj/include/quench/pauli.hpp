// Pauli-word spin Hamiltonians with matrix-free action on dense state
// vectors.
//
// Basis convention: computational basis index b, bit j of b is the bit value
// z_j of site j, and sigma^z_j |b> = (2 z_j - 1) |b>  (bit 0 <-> eigenvalue -1).

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace quench {

enum class Pauli : std::uint8_t { X, Y, Z };

struct PauliTerm {
    std::uint32_t x_mask = 0;  // sites acted on by X or Y (bit flips)
    std::uint32_t z_mask = 0;  // sites acted on by Z or Y (input-bit signs)
    double coeff = 0.0;

    std::uint32_t y_sites() const { return x_mask & z_mask; }
};

class SpinHamiltonian {
public:
    static constexpr int kMaxQubits = 20;  // dense state vectors cap

    explicit SpinHamiltonian(int n);

    void add_term(double coeff, const std::vector<std::pair<int, Pauli>>& word);
    void add_term(const PauliTerm& term);  // masks must fit the qubit count

    int qubit_count() const { return n_; }
    std::size_t dimension() const { return std::size_t{1} << n_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }

    // Matrix-free y += H x on the full 2^n space. Every term must contain an
    // even number of Y factors (odd counts make the matrix complex-valued,
    // which nothing in this artifact needs); violations throw.
    void apply(std::span<const double> in, std::span<double> out) const;

    double norm_bound() const;  // sum of |coeff|, an upper bound on ||H||
    bool is_diagonal() const;
    std::vector<double> diagonal() const;  // throws unless diagonal

    Eigen::MatrixXd dense() const;  // n small only (oracles, fallback paths)

private:
    int n_;
    std::vector<PauliTerm> terms_;
};

// Term-wise affine combination (1-g) h_in + g h_out; exact at the endpoints.
SpinHamiltonian interpolate(const SpinHamiltonian& h_in, const SpinHamiltonian& h_out, double g);

// Total magnetization operator values: <b| sum_j sigma^z_j |b> = 2 popcount(b) - n.
int total_sz(std::uint32_t basis_state, int n);

// Numeric commutation test against the total-sz operator, exact for integer
// coefficient Hamiltonians (applies both orders to seeded random vectors).
bool commutes_with_total_sz(const SpinHamiltonian& h, double tol = 1e-9);

}  // namespace quench
