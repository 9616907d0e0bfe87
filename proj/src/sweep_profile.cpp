#include "quench/sweep_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "quench/quadrature.hpp"

namespace quench {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double interp_linear(const std::vector<double>& ts, const std::vector<double>& vs, double t) {
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.begin()) return vs.front();
    if (it == ts.end()) return vs.back();
    const std::size_t hi = static_cast<std::size_t>(it - ts.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
    return vs[lo] + w * (vs[hi] - vs[lo]);
}

}  // namespace

SweepProfile SweepProfile::constant(double v, TimeDomain dom) {
    return SweepProfile(Constant{v}, dom);
}

SweepProfile SweepProfile::exponential(double v0, double gamma, TimeDomain dom) {
    return SweepProfile(Exponential{v0, gamma}, dom);
}

SweepProfile SweepProfile::power_law(double v0, double t0, double x) {
    if (!(t0 > 0.0)) throw std::invalid_argument("SweepProfile::power_law: t0 must be > 0");
    return SweepProfile(PowerLaw{v0, t0, x}, TimeDomain{t0, kInfinity});
}

SweepProfile SweepProfile::power_law(double v0, double t0, double x, TimeDomain dom) {
    if (!(t0 > 0.0)) throw std::invalid_argument("SweepProfile::power_law: t0 must be > 0");
    if (!(dom.t_start > 0.0)) {
        throw std::invalid_argument("SweepProfile::power_law: domain must start at t > 0");
    }
    return SweepProfile(PowerLaw{v0, t0, x}, dom);
}

SweepProfile SweepProfile::linear(double v0, double rate, TimeDomain dom) {
    return SweepProfile(Linear{v0, rate}, dom);
}

SweepProfile SweepProfile::tabulated(std::vector<double> t, std::vector<double> v) {
    if (t.size() < 2 || t.size() != v.size()) {
        throw std::invalid_argument("SweepProfile::tabulated: need >= 2 samples with matching sizes");
    }
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) {
            throw std::invalid_argument("SweepProfile::tabulated: sample times must strictly increase");
        }
    }
    const TimeDomain dom{t.front(), t.back()};
    return SweepProfile(Tabulated{std::move(t), std::move(v)}, dom);
}

void SweepProfile::check_domain(double t) const {
    if (!domain_.contains(t)) {
        throw std::invalid_argument("SweepProfile: t = " + std::to_string(t) + " outside profile domain");
    }
}

double SweepProfile::value(double t) const {
    check_domain(t);
    return std::visit(
        Overloaded{
            [](const Constant& c) { return c.v; },
            [t](const Exponential& e) { return e.v0 * std::exp(-e.gamma * t); },
            [t](const PowerLaw& p) { return p.v0 * std::pow(t / p.t0, -p.x); },
            [t](const Linear& l) { return l.v0 + l.rate * t; },
            [t](const Tabulated& tab) { return interp_linear(tab.t, tab.v, t); },
        },
        form_);
}

double SweepProfile::derivative(double t) const {
    check_domain(t);
    return std::visit(
        Overloaded{
            [](const Constant&) { return 0.0; },
            [t](const Exponential& e) { return -e.gamma * e.v0 * std::exp(-e.gamma * t); },
            [t](const PowerLaw& p) { return -p.x / t * p.v0 * std::pow(t / p.t0, -p.x); },
            [](const Linear& l) { return l.rate; },
            [&, t](const Tabulated& tab) {
                const double span = tab.t.back() - tab.t.front();
                const double h = std::max(1e-6 * span, 1e-12);
                const double lo = std::max(t - h, tab.t.front());
                const double hi = std::min(t + h, tab.t.back());
                return (interp_linear(tab.t, tab.v, hi) - interp_linear(tab.t, tab.v, lo)) / (hi - lo);
            },
        },
        form_);
}

double SweepProfile::integral(double a, double b) const {
    check_domain(a);
    check_domain(b);
    return std::visit(
        Overloaded{
            [&](const Constant& c) { return c.v * (b - a); },
            [&](const Exponential& e) {
                if (e.gamma == 0.0) return e.v0 * (b - a);
                return e.v0 / e.gamma * (std::exp(-e.gamma * a) - std::exp(-e.gamma * b));
            },
            [&](const PowerLaw& p) {
                if (p.x == 1.0) return p.v0 * p.t0 * std::log(b / a);
                const double e = 1.0 - p.x;
                return p.v0 * p.t0 / e * (std::pow(b / p.t0, e) - std::pow(a / p.t0, e));
            },
            [&](const Linear& l) { return l.v0 * (b - a) + 0.5 * l.rate * (b * b - a * a); },
            [&](const Tabulated&) {
                if (a == b) return 0.0;
                return integrate_adaptive([this](double t) { return value(t); }, a, b, 1e-9);
            },
        },
        form_);
}

SweepProfile::Tail SweepProfile::tail_behavior() const {
    return std::visit(
        Overloaded{
            [](const Constant& c) { return c.v == 0.0 ? Tail::Convergent : Tail::Divergent; },
            [](const Exponential& e) {
                if (e.v0 == 0.0) return Tail::Convergent;
                return e.gamma > 0.0 ? Tail::Convergent : Tail::Divergent;
            },
            [](const PowerLaw& p) {
                if (p.v0 == 0.0) return Tail::Convergent;
                return p.x > 1.0 ? Tail::Convergent : Tail::Divergent;
            },
            [](const Linear& l) {
                return (l.rate == 0.0 && l.v0 == 0.0) ? Tail::Convergent : Tail::Divergent;
            },
            [](const Tabulated&) { return Tail::Unsupported; },
        },
        form_);
}

double SweepProfile::improper_integral(double a) const {
    check_domain(a);
    if (tail_behavior() != Tail::Convergent) {
        throw std::invalid_argument("SweepProfile::improper_integral: integral does not converge");
    }
    return std::visit(
        Overloaded{
            [](const Constant&) { return 0.0; },  // convergent only when v == 0
            [&](const Exponential& e) {
                if (e.v0 == 0.0) return 0.0;
                return e.v0 / e.gamma * std::exp(-e.gamma * a);
            },
            [&](const PowerLaw& p) {
                if (p.v0 == 0.0) return 0.0;
                return p.v0 * p.t0 / (p.x - 1.0) * std::pow(a / p.t0, 1.0 - p.x);
            },
            [](const Linear&) { return 0.0; },
            [](const Tabulated&) { return 0.0; },  // unreachable
        },
        form_);
}

SweepProfile SweepProfile::scaled(double factor) const {
    Form f = std::visit(
        Overloaded{
            [&](const Constant& c) { return Form(Constant{c.v * factor}); },
            [&](const Exponential& e) { return Form(Exponential{e.v0 * factor, e.gamma}); },
            [&](const PowerLaw& p) { return Form(PowerLaw{p.v0 * factor, p.t0, p.x}); },
            [&](const Linear& l) { return Form(Linear{l.v0 * factor, l.rate * factor}); },
            [&](const Tabulated& tab) {
                Tabulated out = tab;
                for (double& v : out.v) v *= factor;
                return Form(std::move(out));
            },
        },
        form_);
    return SweepProfile(std::move(f), domain_);
}

SweepProfile SweepProfile::square_root() const {
    Form f = std::visit(
        Overloaded{
            [&](const Constant& c) {
                if (c.v < 0.0) throw std::invalid_argument("square_root: negative profile");
                return Form(Constant{std::sqrt(c.v)});
            },
            [&](const Exponential& e) {
                if (e.v0 < 0.0) throw std::invalid_argument("square_root: negative profile");
                return Form(Exponential{std::sqrt(e.v0), 0.5 * e.gamma});
            },
            [&](const PowerLaw& p) {
                if (p.v0 < 0.0) throw std::invalid_argument("square_root: negative profile");
                return Form(PowerLaw{std::sqrt(p.v0), p.t0, 0.5 * p.x});
            },
            [&](const Linear&) -> Form {
                throw std::invalid_argument("square_root: not closed for Linear profiles");
            },
            [&](const Tabulated&) -> Form {
                throw std::invalid_argument("square_root: not closed for Tabulated profiles");
            },
        },
        form_);
    return SweepProfile(std::move(f), domain_);
}

}  // namespace quench
