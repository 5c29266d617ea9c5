// Numerical verification of the variational identities: the weighted energy
// and its first variation, the linearized slice defect, the weighted
// Dirichlet-form rewrite on the round two-sphere, the modified curvature
// tensors, and the boundary/bulk integral identities they satisfy under
// radial perturbations of the weight or the metric profile.

#pragma once

#include "warpband/axisym.hpp"
#include "warpband/band.hpp"

namespace warpband {

struct QuadraticFormReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double grid_h = 0.0;            // refinement parameter the residual was measured at
    double convergence_order = 0.0; // log2(residual(h) / residual(h/2)); NaN when at rounding floor
};

// E({t <= s}) = vol(S^{n-1}) [ u(s)^gamma rho(s)^{n-1}
//                              - int_{t_-}^{s} u^gamma mu rho^{n-1} dt ].
double energy_functional(const SymmetricBand& band, const WarpingProfile& mu, double s,
                         int quad_nodes = 2001);

// Centered difference of E at s against vol(S^{n-1}) eta(s) u^gamma rho^{n-1}.
QuadraticFormReport first_variation_check(const SymmetricBand& band, const WarpingProfile& mu,
                                          double s, double h_fd, int quad_nodes = 2001);

// Centered difference of eta(t) = H + gamma u'/u - mu against its closed-form
// linearization along the slice family (constant test function).
QuadraticFormReport linearized_eta_check(const SymmetricBand& band, const WarpingProfile& mu,
                                         double s, double eps);

// Quadrature check of the weighted Dirichlet-form rewrite on the round S^2 of
// the given radius, for axisymmetric u > 0 and phi:
//   int u^g phi L phi  =  4/(4-g) int |grad psi|^2
//                         - g (1 - g/4) int |psi grad w - grad psi / (2(1-g/4))|^2
// with psi = u^{g/2} phi, w = log u; the intermediate expanded form is checked
// as well and the worst of the two defects is reported.
QuadraticFormReport rewrite_identity_check(double gamma, const AxisymmetricPoly& u,
                                           const AxisymmetricPoly& phi, double radius,
                                           int quad_nodes = 2001);

struct ModifiedTensors {
    double R_rad = 0.0;  // radial unit component of the modified Ricci tensor
    double R_sph = 0.0;  // tangential unit component
    double A_sph = 0.0;  // tangential unit component of the modified boundary tensor
};

// Unit-frame components of
//   R = Ric - 2 g* Hess(u)/u + 2 g* grad(u grad u)/u^2 - g* div(u grad u)/u^2 g
//       - Hess(u^2)/u^2 + (Lap u^2 / u^2) g          (g* = gamma)
// and A = A_boundary - (2 - gamma) u^{-1} u_nu g_boundary, for the rotationally
// symmetric band (nu = +d/dt orientation).
ModifiedTensors modified_tensors(const SymmetricBand& band, double t);

enum class VariationFamily { VaryU, VaryG };

// Residual of the first-variation integral identity under a radial
// perturbation family. VaryU perturbs the weight u -> u + eps delta and checks
//   int_dM delta_u(H + gamma u^-1 u_nu) u^2 + int_M u^2 delta_u(Lambda) = 0;
// VaryG perturbs the metric profile rho -> rho + eps delta and checks the same
// left side against -1/2 int u^2 <R, dg> - 1/2 int_dM u^2 <A, dg> with
// dg = 2 rho delta g_sphere. Variations are centered differences in eps;
// integrals are composite Simpson with quad_nodes points. Both sides carry
// the plain u^2 weight throughout; no sigma-weighted variant (which would
// replace u^2 by u^{2-2 sigma}) is provided.
QuadraticFormReport integral_identity_check(const SymmetricBand& band, VariationFamily family,
                                            const WarpingProfile& delta, double eps,
                                            int quad_nodes = 2001);

}  // namespace warpband
