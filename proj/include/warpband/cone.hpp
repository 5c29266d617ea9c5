// Tangent-cone analysis: closed-form curvature components of the model cone,
// the cross-section size condition, the spectral descent identity relating
// cone and cross-section curvatures, a Newton solver for foliation leaves of
// constant weighted-mean-curvature defect over perturbed cones, and the
// weighted sign estimate for the leaf defect.

#pragma once

#include <vector>

#include "warpband/axisym.hpp"
#include "warpband/band.hpp"

namespace warpband {

struct ConeModel {
    double A = 1.0;      // aperture: metric dt^2 + A^2 t^2 g_sphere
    int n = 3;
    double gamma = 0.0;  // must be < 2 here
    double alpha = 0.5;  // weight exponent, u = t^alpha

    // alpha = 1/(2 - gamma) is the exponent the comparison geometry forces;
    // other exponents are accepted for probing and flagged non-conformant.
    ConeModel(double A_, int n_, double gamma_);
    ConeModel(double A_, int n_, double gamma_, double alpha_);

    bool conformant(double tol = 1e-12) const;
};

// Closed-form scaled components (R_rad t^2, R_sph t^2) of the cone comparison
// tensor:
//   ( (2(n-1) - (n-2)gamma)/(2-gamma),  (n-2)(A^-2 - 1) + 2(n-1)/(2-gamma) ).
// The radial entry coincides with the radial component of modified_tensors on
// rho = A t, u = t^{1/(2-gamma)}. The spherical entry is the hypothesis margin
// of the cross-section condition; it exceeds the variational tensor's
// spherical component by the A-independent constant 2(n-1)/(2-gamma) - (n-2).
std::pair<double, double> cone_tensor_components(const ConeModel& cone);

struct ConditionMargin {
    bool holds = false;
    double margin = 0.0;
};

// margin = (n-2)(A^-2 - 1) + 2(n-1)/(2-gamma); holds iff margin >= 0.
ConditionMargin cross_section_condition(int n, double gamma, double A);

// Max over a polar grid of the defect of
//   lambda(g_Sigma, v) = Lambda(cone, t^alpha v) + alpha gamma (alpha+n-2)/t^2
//                        + (n-1)(n-2)/(2 t^2)
// where lambda is the weighted cross-section curvature on the sphere of
// radius A t and Lambda the spectral scalar curvature of the cone band.
double spectral_descent_residual(const ConeModel& cone, const AxisymmetricPoly& v, double t);

// Mean curvature of the axisymmetric graph {tau = T(theta)} inside the
// perturbed cone metric d tau^2 + b^2 (d theta^2 + sin^2 theta g_fiber) with
// b(tau, theta) = A tau exp(p(theta) tau), the normal pointing toward
// increasing tau. p and T are polynomials in x = cos theta; p = 0 recovers
// the exact cone. Exposed for direct testing against closed-form surfaces.
double cone_graph_mean_curvature(int n, double A, const AxisymmetricPoly& p,
                                 const AxisymmetricPoly& T, double x);

struct LeafSolution {
    std::vector<double> coeffs;   // harmonic-mode coefficients of v (degrees 1..modes)
    double eta_hat = 0.0;         // constant defect of the solved leaf
    double residual_norm = 0.0;   // sup norm of the projected residual at exit
    int iterations = 0;
    bool converged = false;
};

// Solves F(t, v) = 0 for the zero-average v whose graph {tau = 1 + t v} has
// constant weighted-mean-curvature defect in the perturbed cone metric with
// b = A tau exp(t q(theta) tau) (a second-order angular correction of the
// cone, scaled by t); Newton iteration on the truncated axisymmetric harmonic
// basis (degrees 1..modes). The linearization at t = 0 is the cross-section
// Laplacian on zero-average functions. Non-convergence within 50 iterations
// is reported through the converged flag.
LeafSolution cone_foliation_leaf(const ConeModel& cone, const AxisymmetricPoly& q, double t,
                                 int modes);

// Weighted upper bound for the average leaf defect rate between two cones
// joined by the affine aperture family: integrates -1/2 <R, dg> u^2 over the
// unit cone and -1/2 <A, dg> u^2 over its cross-section, normalized by the
// weighted cross-section volume. Nonpositive whenever R >= 0, A >= 0, and the
// cone dominates the comparison. Requires a conformant comparison cone with
// A >= A_comparison.
double eta_hat_sign_estimate(const ConeModel& cone, const ConeModel& comparison, double t);

// The cone as a symmetric band rho = A t, u = t^alpha over (0, t_max].
SymmetricBand cone_band(const ConeModel& cone, double t_max);

}  // namespace warpband
