// Rotationally symmetric bands g = dt^2 + rho(t)^2 g_{S^{n-1}} with a radial
// weight u(t), and the pointwise geometry of their round slices.
//
// Orientation convention: the slice normal is nu = +d/dt (pointing from the
// lower boundary toward the upper one) and H = tr(grad nu), so for the round
// sphere rho = sin t the equator has H = 0 with H > 0 below it.

#pragma once

#include "warpband/profile.hpp"

namespace warpband {

class SymmetricBand {
  public:
    // Throws std::invalid_argument if n is not 3 or 4, if gamma is out of the
    // admissible range (gamma < 4 for n = 3, gamma < 3 for n = 4, gamma != 2),
    // if the profile domains disagree, or if a profile fails positivity.
    // With conical = true the metric profile may vanish at the lower endpoint.
    SymmetricBand(int n, WarpingProfile rho, WarpingProfile u, double gamma, bool conical = false);

    int dimension() const { return n_; }
    double gamma() const { return gamma_; }
    bool conical() const { return conical_; }
    const WarpingProfile& rho() const { return rho_; }
    const WarpingProfile& weight() const { return u_; }
    const Interval& domain() const { return rho_.domain(); }

  private:
    int n_;
    double gamma_;
    bool conical_;
    WarpingProfile rho_;
    WarpingProfile u_;
};

struct SliceGeometry {
    double t = 0.0;
    double H = 0.0;        // mean curvature (n-1) rho'/rho
    double Hw = 0.0;       // weighted mean curvature H + gamma u'/u
    double R_slice = 0.0;  // intrinsic scalar curvature (n-1)(n-2)/rho^2
    double u_nu = 0.0;     // normal derivative of the weight
    double mu = 0.0;       // prescription value at the slice
    double eta = 0.0;      // Hw - mu
    double A0_norm2 = 0.0; // |traceless second fundamental form|^2, zero on round slices
};

// Ambient scalar curvature R = -2(n-1) rho''/rho + (n-1)(n-2)(1 - rho'^2)/rho^2.
double scalar_curvature(const SymmetricBand& band, double t);

// Laplacian of the radial weight, u'' + (n-1)(rho'/rho) u'.
double weight_laplacian(const SymmetricBand& band, double t);

SliceGeometry slice_geometry(const SymmetricBand& band, double t, double mu);

// -gamma (Lap u)/u + R/2.
double spectral_scalar_curvature(const SymmetricBand& band, double t);

// Profile u^{1-sigma}. Substituting it reduces the sigma-weighted curvature
// expression -gamma u^{-1} Lap u + R/2 + sigma gamma u^{-2} |grad u|^2 to the
// sigma-free form with exponent sigma_reduced_exponent(sigma, gamma).
// Throws std::invalid_argument for sigma = 1.
WarpingProfile sigma_reduction(const WarpingProfile& u, double sigma, double gamma);
double sigma_reduced_exponent(double sigma, double gamma);

// Volume of the unit d-sphere (vol(S^2) = 4 pi, vol(S^3) = 2 pi^2).
double sphere_volume(int dim);

}  // namespace warpband
