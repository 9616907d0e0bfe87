#include "quench/ec3.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <string>

#include "quench/rng.hpp"

namespace quench {

Ec3Instance Ec3Instance::make(int n, std::vector<Ec3Clause> clauses) {
    if (n < 3) throw std::invalid_argument("Ec3Instance: need n >= 3");
    for (const auto& cl : clauses) {
        if (!(0 <= cl.a && cl.a < cl.b && cl.b < cl.c && cl.c < n)) {
            throw std::invalid_argument("Ec3Instance: clause indices must satisfy 0 <= a < b < c < n");
        }
    }
    std::sort(clauses.begin(), clauses.end());
    if (std::adjacent_find(clauses.begin(), clauses.end()) != clauses.end()) {
        throw std::invalid_argument("Ec3Instance: duplicate clause");
    }
    return Ec3Instance{n, std::move(clauses)};
}

bool Ec3Instance::satisfied_by(std::uint32_t z) const {
    for (const auto& cl : clauses) {
        const std::uint32_t mask =
            (std::uint32_t{1} << cl.a) | (std::uint32_t{1} << cl.b) | (std::uint32_t{1} << cl.c);
        if (std::popcount(z & mask) != 1) return false;
    }
    return true;
}

std::vector<std::uint32_t> ec3_solutions(const Ec3Instance& inst, std::size_t cap) {
    if (inst.n > 24) throw std::invalid_argument("ec3_solutions: brute force capped at n = 24");
    std::vector<std::uint32_t> out;
    const std::uint32_t dim = std::uint32_t{1} << inst.n;
    for (std::uint32_t z = 0; z < dim; ++z) {
        if (inst.satisfied_by(z)) {
            out.push_back(z);
            if (cap != 0 && out.size() >= cap) return out;
        }
    }
    return out;
}

Ec3Instance random_ec3_instance(int n, int m, std::uint64_t seed, const Ec3Options& opts) {
    if (n < 3) throw std::invalid_argument("random_ec3_instance: need n >= 3");
    const long long triples = static_cast<long long>(n) * (n - 1) * (n - 2) / 6;
    if (m < 1 || m > triples) {
        throw std::invalid_argument("random_ec3_instance: clause count out of range");
    }
    if (opts.require_unique_solution && n > 24) {
        throw std::invalid_argument("random_ec3_instance: uniqueness filter needs n <= 24");
    }
    std::mt19937_64 gen(seed);
    for (std::size_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
        std::vector<Ec3Clause> clauses;
        clauses.reserve(m);
        while (static_cast<int>(clauses.size()) < m) {
            int a = static_cast<int>(gen() % n);
            int b = static_cast<int>(gen() % n);
            int c = static_cast<int>(gen() % n);
            if (a == b || b == c || a == c) continue;
            if (a > b) std::swap(a, b);
            if (b > c) std::swap(b, c);
            if (a > b) std::swap(a, b);
            const Ec3Clause cl{a, b, c};
            if (std::find(clauses.begin(), clauses.end(), cl) != clauses.end()) continue;
            clauses.push_back(cl);
        }
        Ec3Instance inst = Ec3Instance::make(n, std::move(clauses));
        if (!opts.require_unique_solution) return inst;
        if (ec3_solutions(inst, 2).size() == 1) return inst;
    }
    throw std::runtime_error("random_ec3_instance: rejection budget exhausted without a "
                             "unique-solution instance");
}

SpinHamiltonian build_h_out(const Ec3Instance& inst) {
    SpinHamiltonian h(inst.n);
    std::map<std::pair<int, int>, double> pair_weight;
    std::vector<double> field(inst.n, 0.0);
    for (const auto& cl : inst.clauses) {
        pair_weight[{cl.a, cl.b}] += 2.0;
        pair_weight[{cl.a, cl.c}] += 2.0;
        pair_weight[{cl.b, cl.c}] += 2.0;
        field[cl.a] += 2.0;
        field[cl.b] += 2.0;
        field[cl.c] += 2.0;
    }
    for (const auto& [pr, w] : pair_weight) {
        h.add_term(w, {{pr.first, Pauli::Z}, {pr.second, Pauli::Z}});
    }
    for (int a = 0; a < inst.n; ++a) {
        if (field[a] != 0.0) h.add_term(field[a], {{a, Pauli::Z}});
    }
    // identity: 4 per clause ((sum sz)^2 expansion constant)
    h.add_term(4.0 * static_cast<double>(inst.clauses.size()), {});
    return h;
}

SpinHamiltonian build_h_in_x(const Ec3Instance& inst, WeightRule rule) {
    SpinHamiltonian h(inst.n);
    std::vector<double> weight(inst.n, rule == WeightRule::Unit ? 1.0 : 0.0);
    if (rule == WeightRule::ClauseDegree) {
        for (const auto& cl : inst.clauses) {
            weight[cl.a] += 1.0;
            weight[cl.b] += 1.0;
            weight[cl.c] += 1.0;
        }
    }
    for (int a = 0; a < inst.n; ++a) {
        if (weight[a] != 0.0) h.add_term(weight[a], {{a, Pauli::X}});
    }
    return h;
}

SpinHamiltonian build_h_in_xy(const Ec3Instance& inst) {
    SpinHamiltonian h(inst.n);
    std::map<std::pair<int, int>, double> pair_weight;
    for (const auto& cl : inst.clauses) {
        pair_weight[{cl.a, cl.b}] += 1.0;
        pair_weight[{cl.a, cl.c}] += 1.0;
        pair_weight[{cl.b, cl.c}] += 1.0;
    }
    for (const auto& [pr, w] : pair_weight) {
        h.add_term(-w, {{pr.first, Pauli::X}, {pr.second, Pauli::X}});
        h.add_term(-w, {{pr.first, Pauli::Y}, {pr.second, Pauli::Y}});
    }
    if (inst.n <= 10 && !commutes_with_total_sz(h)) {
        throw std::logic_error("build_h_in_xy: total-sz conservation check failed");
    }
    return h;
}

}  // namespace quench
