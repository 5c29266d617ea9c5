#include "warpband/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "warpband/stability.hpp"

namespace warpband {

std::string sign_name(ModelSign s) {
    switch (s) {
        case ModelSign::Positive: return "positive";
        case ModelSign::Negative: return "negative";
        case ModelSign::Zero: return "zero";
    }
    return "?";
}

ModelSign sign_from_name(const std::string& name) {
    if (name == "positive") return ModelSign::Positive;
    if (name == "negative") return ModelSign::Negative;
    if (name == "zero") return ModelSign::Zero;
    throw std::invalid_argument("unknown model sign: " + name);
}

ModelCoefficients model_coefficients(int n, double gamma, double Lambda) {
    if (n != 3 && n != 4) throw std::invalid_argument("model dimension must be 3 or 4");
    if (!(Lambda > 0.0)) throw std::invalid_argument("model coefficients: Lambda must be positive");
    if (!(gamma > 0.0))
        throw std::invalid_argument(
            "model coefficients: gamma must be positive (gamma = 0 degenerates to the round sphere)");
    if (std::abs(gamma - 2.0) < 1e-12)
        throw std::invalid_argument("model coefficients: gamma = 2 is degenerate");
    const double d1 = 2.0 * (n - 2) - (n - 3) * gamma;  // under a^2
    const double d2 = 2.0 * n - (n - 1) * gamma;        // shared factor
    const double d3 = 2.0 * (n - 1) - (n - 2) * gamma;  // under b^2
    if (!(d1 > 0.0))
        throw std::invalid_argument("model coefficients: factor 2(n-2)-(n-3)gamma is not positive");
    if (!(d2 > 0.0))
        throw std::invalid_argument("model coefficients: factor 2n-(n-1)gamma is not positive");
    if (!(d3 > 0.0))
        throw std::invalid_argument("model coefficients: factor 2(n-1)-(n-2)gamma is not positive");

    ModelCoefficients c;
    c.a = std::sqrt((n - 1) * (n - 2) * d2 / (2.0 * Lambda * d1));
    c.b = std::abs(2.0 - gamma) * std::sqrt(2.0 * Lambda) / std::sqrt(d2 * d3);
    return c;
}

namespace {

WarpingProfile model_xi(const ModelSpec& spec, ModelSign sign) {
    const ModelCoefficients c = model_coefficients(spec.n, spec.gamma, spec.Lambda);
    switch (sign) {
        case ModelSign::Positive:
            return WarpingProfile::sine(c.a, c.b, 0.0, spec.domain);
        case ModelSign::Negative:
            return WarpingProfile::hyperbolic(c.a, c.b, 0.0, spec.domain);
        case ModelSign::Zero: {
            const ModelCoefficients k = model_coefficients(spec.n, spec.gamma, 1.0);
            return WarpingProfile::linear(k.a * k.b, 0.0, spec.domain);
        }
    }
    throw std::logic_error("unreachable model sign");
}

}  // namespace

ModelProfiles build_model_profile(const ModelSpec& spec, ModelSign sign) {
    WarpingProfile xi = model_xi(spec, sign);
    const double mc = (2.0 * (spec.n - 1) + spec.gamma * (2.0 - spec.n)) / (2.0 - spec.gamma);
    return ModelProfiles{
        xi,
        WarpingProfile::power_of(xi, 1.0 / (2.0 - spec.gamma)),
        WarpingProfile::log_derivative(xi, mc),
        WarpingProfile::log_derivative(xi, static_cast<double>(spec.n - 1)),
    };
}

double model_ode_residual(const WarpingProfile& rho, int n, double gamma, double Lambda, double t) {
    const ProfileValue r = rho.eval(t);
    if (!(r.f > 0.0)) throw std::domain_error("singular slice: rho(t) <= 0 at t=" + std::to_string(t));
    const double mc = (2.0 * (n - 1) + gamma * (2.0 - n)) / (2.0 - gamma);
    const double L = r.df / r.f;
    const double m = mc * L;
    const double mprime = mc * (r.ddf / r.f - L * L);
    const double G = gamma_coefficient(n, gamma);
    return mprime + G * m * m + Lambda - 0.5 * (n - 1) * (n - 2) / (r.f * r.f);
}

Interval default_model_domain(int n, double gamma, double Lambda, ModelSign sign) {
    if (gamma == 0.0) {
        // round sphere special case
        return Interval{0.02 * std::numbers::pi, 0.98 * std::numbers::pi};
    }
    const ModelCoefficients c =
        model_coefficients(n, gamma, sign == ModelSign::Zero ? 1.0 : Lambda);
    switch (sign) {
        case ModelSign::Positive: {
            const double period = std::numbers::pi / c.b;
            return Interval{0.02 * period, 0.98 * period};
        }
        case ModelSign::Negative:
        case ModelSign::Zero:
            return Interval{0.05 / c.b, 1.5 / c.b};
    }
    throw std::logic_error("unreachable model sign");
}

ModelBand make_model_band(ModelSpec spec, ModelSign sign) {
    if (spec.domain.length() <= 0.0)
        spec.domain = default_model_domain(spec.n, spec.gamma, spec.Lambda, sign);

    if (spec.gamma == 0.0) {
        const double want = 0.5 * spec.n * (spec.n - 1);
        if (std::abs(spec.Lambda - want) > 1e-12 || sign != ModelSign::Positive)
            throw std::invalid_argument(
                "gamma = 0 admits only the round-sphere model with Lambda = n(n-1)/2");
        WarpingProfile xi = WarpingProfile::sine(1.0, 1.0, 0.0, spec.domain);
        ModelProfiles profs{
            xi,
            WarpingProfile::constant(1.0, spec.domain),
            WarpingProfile::log_derivative(xi, static_cast<double>(spec.n - 1)),
            WarpingProfile::log_derivative(xi, static_cast<double>(spec.n - 1)),
        };
        SymmetricBand band(spec.n, profs.rho, profs.u, 0.0);
        return ModelBand{spec, sign, want, profs, band};
    }

    ModelProfiles profs = build_model_profile(spec, sign);
    double signed_Lambda = 0.0;
    if (sign == ModelSign::Positive) signed_Lambda = spec.Lambda;
    if (sign == ModelSign::Negative) signed_Lambda = -spec.Lambda;
    SymmetricBand band(spec.n, profs.rho, profs.u, spec.gamma);
    return ModelBand{spec, sign, signed_Lambda, profs, band};
}

}  // namespace warpband
