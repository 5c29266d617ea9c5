// Radial profiles on an interval, with exact first and second derivatives.
//
// The closed-form families (sine, sinh, linear, constant, polynomial,
// exp-polynomial) evaluate analytically; tabulated profiles use second-order
// finite-difference stencils at the nodes (one-sided at the endpoints) and
// linear interpolation in between. Composite profiles (power, log-derivative,
// product, sum) apply exact chain rules on top of their bases, so residual
// checks built from them carry no discretization noise.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

namespace warpband {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double t) const;
    double clamp(double t) const;
};

bool same_interval(const Interval& a, const Interval& b, double tol = 1e-9);

enum class ProfileFamily {
    Sin,
    Sinh,
    Linear,
    Constant,
    Poly,
    ExpPoly,
    Tabulated,
    Power,
    LogDeriv,
    Product,
    Sum,
};

std::string family_name(ProfileFamily f);

struct ProfileValue {
    double f = 0.0;
    double df = 0.0;
    double ddf = 0.0;
};

class WarpingProfile {
  public:
    // xi(t) = a sin(b (t - offset))
    static WarpingProfile sine(double a, double b, double offset, Interval dom);
    // xi(t) = a sinh(b (t - offset))
    static WarpingProfile hyperbolic(double a, double b, double offset, Interval dom);
    // xi(t) = a (t - offset)
    static WarpingProfile linear(double a, double offset, Interval dom);
    static WarpingProfile constant(double c, Interval dom);
    // xi(t) = sum_k coeffs[k] t^k
    static WarpingProfile poly(std::vector<double> coeffs, Interval dom);
    // xi(t) = exp(sum_k coeffs[k] t^k)
    static WarpingProfile exp_poly(std::vector<double> coeffs, Interval dom);
    // uniform samples xi(t0 + i h), i = 0..N-1, N >= 5
    static WarpingProfile tabulated(double t0, double h, std::vector<double> values);
    // base(t)^p
    static WarpingProfile power_of(WarpingProfile base, double p);
    // c * base'(t) / base(t)
    static WarpingProfile log_derivative(WarpingProfile base, double c);
    static WarpingProfile product(WarpingProfile a, WarpingProfile b);
    static WarpingProfile sum(WarpingProfile a, WarpingProfile b);

    ProfileValue eval(double t) const;
    double value(double t) const { return eval(t).f; }
    double third_derivative(double t) const;

    const Interval& domain() const;
    ProfileFamily family() const;

    // Minimum of the profile over `samples` uniform points of `iv`.
    double min_on(const Interval& iv, int samples = 257) const;
    bool positive_on_interior(int samples = 257) const;

    nlohmann::json to_json() const;
    static WarpingProfile from_json(const nlohmann::json& j);

    struct Node;  // opaque payload, defined in profile.cpp

  private:
    explicit WarpingProfile(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// Free-function form of WarpingProfile::eval.
ProfileValue eval_profile(const WarpingProfile& profile, double t);

}  // namespace warpband
