// Model warped metrics with constant spectral scalar curvature.
//
// For a target constant Lambda > 0 the metric profile xi(t) = a sin(b t) with
//
//   a(gamma, Lambda)^2 = (n-1)(n-2)(2n - (n-1)gamma) / (2 Lambda (2(n-2) - (n-3)gamma))
//   b(gamma, Lambda)^2 = (2-gamma)^2 2 Lambda / ((2n - (n-1)gamma)(2(n-1) - (n-2)gamma))
//
// together with the weight u = xi^{1/(2-gamma)} gives a band whose spectral
// scalar curvature is identically Lambda. Lambda < 0 uses a sinh(b t) with the
// same coefficients at |Lambda|; Lambda = 0 uses the line a(gamma,1) b(gamma,1) t.
// The defect function m = ((2(n-1) - (n-2)gamma)/(2-gamma)) xi'/xi then solves
//
//   m' + Gamma m^2 + Lambda = (1/2)(n-1)(n-2) xi^{-2}
//
// with Gamma = gamma_coefficient(n, gamma); model_ode_residual measures the
// left-minus-right defect of that equation for an arbitrary profile.

#pragma once

#include "warpband/band.hpp"
#include "warpband/profile.hpp"

namespace warpband {

struct ModelSpec {
    int n = 3;
    double gamma = 1.0;
    double Lambda = 2.0;  // magnitude of the target constant
    Interval domain;
};

enum class ModelSign { Positive, Negative, Zero };

std::string sign_name(ModelSign s);
ModelSign sign_from_name(const std::string& name);

struct ModelCoefficients {
    double a = 0.0;
    double b = 0.0;
};

// Throws std::invalid_argument naming the offending factor when a parameter
// leaves the admissible range (Lambda <= 0, gamma <= 0, or a vanishing
// denominator). gamma = 0 is rejected here; the round sphere rho = sin t with
// Lambda = n(n-1)/2 is handled separately by make_model_band.
ModelCoefficients model_coefficients(int n, double gamma, double Lambda);

struct ModelProfiles {
    WarpingProfile rho;  // xi
    WarpingProfile u;    // xi^{1/(2-gamma)}
    WarpingProfile m;    // weighted mean curvature of the model slices
    WarpingProfile h;    // unweighted mean curvature (n-1) xi'/xi
};

ModelProfiles build_model_profile(const ModelSpec& spec, ModelSign sign);

// Defect of the model curvature equation at one slice of an arbitrary profile.
double model_ode_residual(const WarpingProfile& rho, int n, double gamma, double Lambda, double t);

// A reasonable evaluation window for the family: the middle 96% of the first
// sine arch for Positive, and [0.05, 1.5]/b-style windows for the others.
Interval default_model_domain(int n, double gamma, double Lambda, ModelSign sign);

// Fully assembled model band plus its defect profiles. For gamma = 0 only the
// round sphere (Lambda = n(n-1)/2, xi = sin t, u = 1) is available.
struct ModelBand {
    ModelSpec spec;
    ModelSign sign = ModelSign::Positive;
    double signed_Lambda = 0.0;  // +Lambda, -Lambda, or 0
    ModelProfiles profiles;
    SymmetricBand band;
};

ModelBand make_model_band(ModelSpec spec, ModelSign sign);

}  // namespace warpband
