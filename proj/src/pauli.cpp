#include "quench/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "quench/rng.hpp"

namespace quench {

SpinHamiltonian::SpinHamiltonian(int n) : n_(n) {
    if (n < 1 || n > kMaxQubits) {
        throw std::invalid_argument("SpinHamiltonian: qubit count must be in [1, " +
                                    std::to_string(kMaxQubits) + "]");
    }
}

void SpinHamiltonian::add_term(double coeff, const std::vector<std::pair<int, Pauli>>& word) {
    PauliTerm term;
    term.coeff = coeff;
    for (const auto& [site, op] : word) {
        if (site < 0 || site >= n_) throw std::invalid_argument("SpinHamiltonian: site out of range");
        const std::uint32_t bit = std::uint32_t{1} << site;
        if ((term.x_mask | term.z_mask) & bit) {
            throw std::invalid_argument("SpinHamiltonian: duplicate site in Pauli word");
        }
        switch (op) {
            case Pauli::X: term.x_mask |= bit; break;
            case Pauli::Y: term.x_mask |= bit; term.z_mask |= bit; break;
            case Pauli::Z: term.z_mask |= bit; break;
        }
    }
    terms_.push_back(term);
}

void SpinHamiltonian::add_term(const PauliTerm& term) {
    const std::uint32_t valid = (n_ == 32) ? ~std::uint32_t{0}
                                           : ((std::uint32_t{1} << n_) - 1);
    if ((term.x_mask | term.z_mask) & ~valid) {
        throw std::invalid_argument("SpinHamiltonian::add_term: mask beyond qubit count");
    }
    terms_.push_back(term);
}

void SpinHamiltonian::apply(std::span<const double> in, std::span<double> out) const {
    const std::size_t dim = dimension();
    if (in.size() != dim || out.size() != dim) {
        throw std::invalid_argument("SpinHamiltonian::apply: vector size mismatch");
    }
    for (const PauliTerm& t : terms_) {
        const int y_count = std::popcount(t.y_sites());
        if (y_count % 2 != 0) {
            throw std::invalid_argument("SpinHamiltonian::apply: odd Y count makes the "
                                        "operator complex-valued");
        }
        // i^y_count for even counts: +1 (0 mod 4) or -1 (2 mod 4)
        const double base = (y_count % 4 == 2) ? -t.coeff : t.coeff;
        if (base == 0.0) continue;
        const std::uint32_t flip = t.x_mask;
        const std::uint32_t zmask = t.z_mask;
        for (std::uint32_t b = 0; b < dim; ++b) {
            // product over Z/Y sites of (2 z_j - 1) on the input bits
            const double sign = (std::popcount(~b & zmask) & 1) ? -1.0 : 1.0;
            out[b ^ flip] += base * sign * in[b];
        }
    }
}

double SpinHamiltonian::norm_bound() const {
    double s = 0.0;
    for (const PauliTerm& t : terms_) s += std::abs(t.coeff);
    return s;
}

bool SpinHamiltonian::is_diagonal() const {
    for (const PauliTerm& t : terms_) {
        if (t.x_mask != 0) return false;
    }
    return true;
}

std::vector<double> SpinHamiltonian::diagonal() const {
    if (!is_diagonal()) throw std::logic_error("SpinHamiltonian::diagonal: operator is not diagonal");
    const std::size_t dim = dimension();
    std::vector<double> d(dim, 0.0);
    for (const PauliTerm& t : terms_) {
        for (std::uint32_t b = 0; b < dim; ++b) {
            const double sign = (std::popcount(~b & t.z_mask) & 1) ? -1.0 : 1.0;
            d[b] += t.coeff * sign;
        }
    }
    return d;
}

Eigen::MatrixXd SpinHamiltonian::dense() const {
    const std::size_t dim = dimension();
    if (n_ > 14) throw std::invalid_argument("SpinHamiltonian::dense: dimension too large");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
    std::vector<double> e(dim, 0.0), col(dim, 0.0);
    for (std::size_t j = 0; j < dim; ++j) {
        e[j] = 1.0;
        std::fill(col.begin(), col.end(), 0.0);
        apply(e, col);
        for (std::size_t i = 0; i < dim; ++i) m(static_cast<Eigen::Index>(i),
                                               static_cast<Eigen::Index>(j)) = col[i];
        e[j] = 0.0;
    }
    return m;
}

SpinHamiltonian interpolate(const SpinHamiltonian& h_in, const SpinHamiltonian& h_out, double g) {
    if (h_in.qubit_count() != h_out.qubit_count()) {
        throw std::invalid_argument("interpolate: qubit count mismatch");
    }
    if (!(g >= 0.0 && g <= 1.0)) {
        throw std::invalid_argument("interpolate: g must lie in [0, 1]");
    }
    SpinHamiltonian h(h_in.qubit_count());
    auto push = [&h](const PauliTerm& t, double w) {
        if (w == 0.0) return;
        PauliTerm s = t;
        s.coeff *= w;
        h.add_term(s);
    };
    for (const PauliTerm& t : h_in.terms()) push(t, 1.0 - g);
    for (const PauliTerm& t : h_out.terms()) push(t, g);
    return h;
}

int total_sz(std::uint32_t basis_state, int n) {
    return 2 * std::popcount(basis_state) - n;
}

bool commutes_with_total_sz(const SpinHamiltonian& h, double tol) {
    const std::size_t dim = h.dimension();
    const int n = h.qubit_count();
    std::mt19937_64 gen(0xC0117EC7ULL);
    std::vector<double> v(dim), hv(dim, 0.0), zhv(dim), hzv(dim, 0.0), zv(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = uniform_in(gen, -1.0, 1.0);
    h.apply(v, hv);
    for (std::uint32_t b = 0; b < dim; ++b) {
        zhv[b] = total_sz(b, n) * hv[b];
        zv[b] = total_sz(b, n) * v[b];
    }
    h.apply(zv, hzv);
    const double scale = h.norm_bound() * n + 1.0;
    for (std::size_t i = 0; i < dim; ++i) {
        if (std::abs(zhv[i] - hzv[i]) > tol * scale) return false;
    }
    return true;
}

}  // namespace quench
