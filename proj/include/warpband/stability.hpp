// Second-variation machinery at a round slice: the zero-order potentials of
// the stability operator, the reduced operator spectrum on round
// cross-sections, the Gauss-Bonnet margin in dimension three, and the
// conformal scalar-curvature change used by the dimension-four argument.

#pragma once

#include <vector>

#include "warpband/axisym.hpp"
#include "warpband/band.hpp"

namespace warpband {

// (2n - (n-1)gamma) / (2 (2(n-1) - (n-2)gamma))
double gamma_coefficient(int n, double gamma);

struct StabilityPotentials {
    double Z = 0.0;
    double W = 0.0;
    double W_bound = 0.0;     // -(1/2)(n-1)(n-2)/rho(t)^2
    double Gamma = 0.0;
    double square_term = 0.0; // (w_nu - mu/(2(n-1)-(n-2)gamma))^2
};

// Potentials of the linearized defect operator at a slice. f is the test
// prescription entering Z; mu_nu the normal derivative of the prescription.
StabilityPotentials stability_potentials(const SymmetricBand& band, double t, double mu,
                                         double mu_nu, double f);

struct SpectrumEntry {
    int degree = 0;
    int multiplicity = 0;
    double lambda = 0.0;
};

// Eigenvalues of -(4/(4-gamma)) Lap + (1/2)((n-1)(n-2)/radius^2 -
// (n-1)(n-2)/xi_val^2) on the round S^{n-1} of the given radius, via the
// closed-form sphere spectrum k(k+n-2)/radius^2, degrees 0..k_max. The two
// lowest modes carry the content; the default padding stops at degree 8.
std::vector<SpectrumEntry> ltilde_spectrum(int n, double gamma, double radius, double xi_val,
                                           int k_max = 8);

// 2 pi chi - 4 pi rho(t)^2 / xi(tau)^2 for the round slice (n = 3 only).
double gauss_bonnet_margin(int euler_char, const SymmetricBand& band, double t,
                           const WarpingProfile& xi_profile, double tau);

// Scalar curvature of v^{4 alpha} g_Sigma on the round S^{n_cross} of the
// given radius, evaluated at polar angle theta for an axisymmetric v > 0:
//   v^{-4 alpha} (R_Sigma - 8 alpha v^{-1} Lap v - 8 alpha (alpha-1) |grad log v|^2)
double listing_conformal_scalar(int n_cross, const AxisymmetricPoly& v, double alpha,
                                double radius, double theta);

}  // namespace warpband
