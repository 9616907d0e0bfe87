#include "quench/eigensolve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "quench/rng.hpp"

namespace quench {

namespace {

// Work space: either the full 2^n basis or the indices of one total-sz sector.
struct ActionSpace {
    const SpinHamiltonian* h;
    std::vector<std::uint32_t> states;  // empty -> full space

    std::size_t dim() const { return states.empty() ? h->dimension() : states.size(); }

    std::uint32_t state(std::size_t i) const {
        return states.empty() ? static_cast<std::uint32_t>(i) : states[i];
    }

    // position of a full-space basis index inside this space, or npos
    std::size_t position(std::uint32_t b) const {
        if (states.empty()) return b;
        auto it = std::lower_bound(states.begin(), states.end(), b);
        if (it == states.end() || *it != b) return static_cast<std::size_t>(-1);
        return static_cast<std::size_t>(it - states.begin());
    }

    void matvec(const Eigen::VectorXd& in, Eigen::VectorXd& out) const {
        out.setZero();
        for (const PauliTerm& t : h->terms()) {
            const int y_count = std::popcount(t.y_sites());
            if (y_count % 2 != 0) {
                throw std::invalid_argument("lowest_levels: odd Y count in a Pauli term");
            }
            const double base = (y_count % 4 == 2) ? -t.coeff : t.coeff;
            if (base == 0.0) continue;
            const std::size_t d = dim();
            for (std::size_t i = 0; i < d; ++i) {
                const std::uint32_t b = state(i);
                const double sign = (std::popcount(~b & t.z_mask) & 1) ? -1.0 : 1.0;
                const std::size_t j = position(b ^ t.x_mask);
                if (j != static_cast<std::size_t>(-1)) {
                    out[static_cast<Eigen::Index>(j)] += base * sign * in[static_cast<Eigen::Index>(i)];
                }
            }
        }
    }

    Eigen::MatrixXd dense() const {
        const std::size_t d = dim();
        Eigen::MatrixXd m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
        Eigen::VectorXd col(static_cast<Eigen::Index>(d));
        for (std::size_t j = 0; j < d; ++j) {
            e[static_cast<Eigen::Index>(j)] = 1.0;
            matvec(e, col);
            m.col(static_cast<Eigen::Index>(j)) = col;
            e[static_cast<Eigen::Index>(j)] = 0.0;
        }
        return m;
    }
};

Eigen::VectorXd random_unit_vector(std::size_t dim, std::mt19937_64& gen) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        v[static_cast<Eigen::Index>(i)] = uniform_in(gen, -1.0, 1.0);
    }
    const double nrm = v.norm();
    return v / (nrm > 0.0 ? nrm : 1.0);
}

struct RitzPair {
    double value;
    Eigen::VectorXd vector;
};

// One Lanczos sequence with full reorthogonalization, deflated against the
// locked vectors. Returns the Ritz pairs whose residuals reached tol.
std::vector<RitzPair> lanczos_sequence(const ActionSpace& space,
                                       const std::vector<RitzPair>& locked, int want, double tol,
                                       int max_iter, double norm, std::mt19937_64& gen,
                                       bool& complement_empty) {
    const std::size_t dim = space.dim();
    complement_empty = false;

    auto deflate = [&](Eigen::VectorXd& v) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& p : locked) v -= p.vector.dot(v) * p.vector;
        }
    };

    Eigen::VectorXd v0 = random_unit_vector(dim, gen);
    deflate(v0);
    if (v0.norm() <= 1e-10) {
        complement_empty = true;
        return {};
    }
    v0.normalize();

    std::vector<Eigen::VectorXd> basis{v0};
    std::vector<double> alpha, beta;
    Eigen::VectorXd w(static_cast<Eigen::Index>(dim));
    Eigen::MatrixXd tri_vecs;
    Eigen::VectorXd tri_vals;

    auto solve_tridiagonal = [&](int m) {
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            t(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m) {
                t(i, i + 1) = beta[static_cast<std::size_t>(i)];
                t(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        tri_vals = es.eigenvalues();
        tri_vecs = es.eigenvectors();
    };

    double last_beta = 0.0;
    bool exhausted = false;
    for (int iter = 0; iter < max_iter; ++iter) {
        space.matvec(basis.back(), w);
        const double a = basis.back().dot(w);
        alpha.push_back(a);
        w -= a * basis.back();
        if (!beta.empty()) w -= beta.back() * basis[basis.size() - 2];
        deflate(w);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& v : basis) w -= v.dot(w) * v;
        }
        const double b = w.norm();
        last_beta = b;

        const int m = static_cast<int>(alpha.size());
        exhausted = b <= 1e-13 * norm;
        if (exhausted || m == max_iter ||
            (m >= want && m % 4 == 0)) {
            solve_tridiagonal(m);
            bool converged = m >= want || exhausted;
            for (int i = 0; i < std::min(want, m) && converged; ++i) {
                if (std::abs(b * tri_vecs(m - 1, i)) > tol) converged = false;
            }
            if (converged || exhausted || m == max_iter) break;
        }
        beta.push_back(b);
        basis.push_back(w / b);
    }

    const int m = static_cast<int>(alpha.size());
    if (static_cast<int>(tri_vals.size()) != m) solve_tridiagonal(m);

    std::vector<RitzPair> out;
    for (int i = 0; i < m; ++i) {
        const double resid = std::abs(last_beta * tri_vecs(m - 1, i));
        if (resid > tol) continue;
        Eigen::VectorXd ritz = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
        for (int j = 0; j < m; ++j) ritz += tri_vecs(j, i) * basis[static_cast<std::size_t>(j)];
        deflate(ritz);
        const double nn = ritz.norm();
        if (nn <= 1e-10) continue;
        out.push_back({tri_vals[i], ritz / nn});
    }
    return out;
}

// Lanczos with full reorthogonalization and deflation restarts so degenerate
// multiplets in the bottom of the spectrum are recovered.
LowestLevels lanczos_lowest(const ActionSpace& space, int k, const EigenOptions& opts) {
    const std::size_t dim = space.dim();
    const double norm = std::max(space.h->norm_bound(), 1e-300);
    const double tol = opts.tol_factor * norm;
    const int kd = static_cast<int>(dim);
    const int want = std::min(k, kd);
    const int max_iter = std::min<int>(opts.max_iterations, kd);

    std::mt19937_64 gen(opts.seed);
    std::vector<RitzPair> locked;

    for (int restart = 0; restart <= want + 1; ++restart) {
        bool complement_empty = false;
        const auto pairs =
            lanczos_sequence(space, locked, want, tol, max_iter, norm, gen, complement_empty);
        if (complement_empty) break;
        if (pairs.empty() && restart == 0) {
            throw std::runtime_error("lowest_levels: Lanczos did not converge within the "
                                     "iteration budget");
        }
        double new_min = std::numeric_limits<double>::infinity();
        for (const auto& p : pairs) new_min = std::min(new_min, p.value);
        locked.insert(locked.end(), pairs.begin(), pairs.end());
        std::sort(locked.begin(), locked.end(),
                  [](const RitzPair& a, const RitzPair& b) { return a.value < b.value; });
        if (static_cast<int>(locked.size()) >= want && pairs.empty()) break;
        // stop once an extra sequence finds nothing at or below the k-th level
        if (static_cast<int>(locked.size()) >= want &&
            new_min > locked[static_cast<std::size_t>(want - 1)].value + tol) {
            break;
        }
    }
    if (static_cast<int>(locked.size()) < want) {
        throw std::runtime_error("lowest_levels: Lanczos did not converge within the "
                                 "iteration budget");
    }

    LowestLevels out;
    for (int i = 0; i < want; ++i) {
        out.eigenvalues.push_back(locked[static_cast<std::size_t>(i)].value);
        out.eigenvectors.push_back(std::move(locked[static_cast<std::size_t>(i)].vector));
    }
    for (int i = 0; i + 1 < want; ++i) {
        out.degenerate_with_next.push_back(out.eigenvalues[static_cast<std::size_t>(i + 1)] -
                                               out.eigenvalues[static_cast<std::size_t>(i)] <
                                           opts.degeneracy_factor * norm);
    }
    return out;
}

LowestLevels dense_lowest(const ActionSpace& space, int k, const EigenOptions& opts) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(space.dense());
    const double norm = std::max(space.h->norm_bound(), 1e-300);
    const int want = std::min<int>(k, static_cast<int>(space.dim()));
    LowestLevels out;
    for (int i = 0; i < want; ++i) out.eigenvalues.push_back(es.eigenvalues()(i));
    for (int i = 0; i + 1 < want; ++i) {
        out.degenerate_with_next.push_back(es.eigenvalues()(i + 1) - es.eigenvalues()(i) <
                                           opts.degeneracy_factor * norm);
    }
    for (int i = 0; i < want; ++i) out.eigenvectors.push_back(es.eigenvectors().col(i));
    return out;
}

}  // namespace

LowestLevels lowest_levels(const SpinHamiltonian& h, int k, std::optional<int> sector,
                           const EigenOptions& opts) {
    if (k < 1) throw std::invalid_argument("lowest_levels: need k >= 1");
    ActionSpace space{&h, {}};
    const int n = h.qubit_count();
    if (sector) {
        if ((*sector + n) % 2 != 0 || std::abs(*sector) > n) {
            throw std::invalid_argument("lowest_levels: sector incompatible with qubit count");
        }
        if (!commutes_with_total_sz(h)) {
            throw std::invalid_argument("lowest_levels: sector requested for a Hamiltonian that "
                                        "does not commute with total sz");
        }
        const int weight = (*sector + n) / 2;
        for (std::uint32_t b = 0; b < h.dimension(); ++b) {
            if (std::popcount(b) == weight) space.states.push_back(b);
        }
        if (space.states.empty()) {
            throw std::invalid_argument("lowest_levels: empty sector");
        }
    }

    LowestLevels res = (space.dim() <= static_cast<std::size_t>(opts.dense_cutoff))
                           ? dense_lowest(space, k, opts)
                           : lanczos_lowest(space, k, opts);

    if (sector) {
        // embed sector eigenvectors into the full space
        for (auto& v : res.eigenvectors) {
            Eigen::VectorXd full = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(h.dimension()));
            for (std::size_t i = 0; i < space.states.size(); ++i) {
                full[static_cast<Eigen::Index>(space.states[i])] = v[static_cast<Eigen::Index>(i)];
            }
            v = std::move(full);
        }
    }
    return res;
}

}  // namespace quench
