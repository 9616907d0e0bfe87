#pragma once

#include <limits>
#include <variant>
#include <vector>

namespace quench {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct TimeDomain {
    double t_start = -kInfinity;
    double t_end = kInfinity;
    bool contains(double t) const { return t >= t_start && t <= t_end; }
};

// Scalar profile v(t) of an externally swept parameter, with an analytic
// derivative and definite integral for the closed forms.
class SweepProfile {
public:
    struct Constant {
        double v;
    };
    struct Exponential {  // v0 * exp(-gamma t)
        double v0, gamma;
    };
    struct PowerLaw {  // v0 * (t/t0)^-x, t0 > 0, defined for t > 0
        double v0, t0, x;
    };
    struct Linear {  // v0 + rate * t
        double v0, rate;
    };
    struct Tabulated {  // linear interpolation between samples
        std::vector<double> t, v;
    };
    using Form = std::variant<Constant, Exponential, PowerLaw, Linear, Tabulated>;

    static SweepProfile constant(double v, TimeDomain dom = {});
    static SweepProfile exponential(double v0, double gamma, TimeDomain dom = {});
    // default domain [t0, inf); any domain with t_start > 0 is accepted
    static SweepProfile power_law(double v0, double t0, double x);
    static SweepProfile power_law(double v0, double t0, double x, TimeDomain dom);
    static SweepProfile linear(double v0, double rate, TimeDomain dom = {});
    static SweepProfile tabulated(std::vector<double> t, std::vector<double> v);

    double value(double t) const;       // throws std::invalid_argument off-domain
    double derivative(double t) const;  // analytic; centered difference for Tabulated
    const TimeDomain& domain() const { return domain_; }
    const Form& form() const { return form_; }

    // Definite integral over [a, b] (both inside the domain): closed form for
    // Constant/Exponential/PowerLaw/Linear, adaptive Gauss-Kronrod for Tabulated.
    double integral(double a, double b) const;

    // Behaviour of the improper integral to +infinity.
    enum class Tail { Convergent, Divergent, Unsupported };
    Tail tail_behavior() const;
    double improper_integral(double a) const;  // throws unless Convergent

    SweepProfile scaled(double factor) const;
    // Pointwise square root; closed under sqrt for Constant/Exponential/PowerLaw
    // with v0 >= 0, throws for the other forms.
    SweepProfile square_root() const;

private:
    SweepProfile(Form f, TimeDomain d) : form_(std::move(f)), domain_(d) {}
    void check_domain(double t) const;

    Form form_;
    TimeDomain domain_;
};

}  // namespace quench
