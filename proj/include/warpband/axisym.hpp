// Axisymmetric functions on round spheres, represented as polynomials in
// x = cos(theta). In this chart the sphere Laplacian and gradient pairing are
// polynomial-rational with no pole at the axis:
//
//   Lap f   = ((1 - x^2) f_xx - d x f_x) / r^2        on S^d of radius r
//   <grad f, grad g> = (1 - x^2) f_x g_x / r^2
//   int_{S^d_r} F dA = vol(S^{d-1}) r^d int_{-1}^{1} F (1-x^2)^{(d-2)/2} dx

#pragma once

#include <vector>

namespace warpband {

class AxisymmetricPoly {
  public:
    AxisymmetricPoly() : c_{0.0} {}
    explicit AxisymmetricPoly(std::vector<double> coeffs);
    static AxisymmetricPoly constant(double c);

    double operator()(double x) const;
    double dx(double x) const;
    double dxx(double x) const;

    // value and first/second theta-derivatives at theta = acos(x)
    void theta_derivatives(double x, double& f, double& df, double& ddf) const;

    const std::vector<double>& coeffs() const { return c_; }
    double min_on_grid(int samples = 513) const;

    AxisymmetricPoly& add_scaled(const AxisymmetricPoly& other, double s);

  private:
    std::vector<double> c_;
};

// Legendre P_k and Chebyshev-U_k as coefficient polynomials; these are the
// axisymmetric spherical harmonics on S^2 and S^3 respectively.
AxisymmetricPoly legendre_poly(int k);
AxisymmetricPoly chebyshev_u_poly(int k);

// Laplace-Beltrami of an axisymmetric function on S^d of radius r.
double sphere_laplacian(const AxisymmetricPoly& f, int d, double radius, double x);

struct QuadratureRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Legendre rule on [-1, 1] (weight 1).
QuadratureRule gauss_legendre(int n);
// Gauss-Chebyshev rule of the second kind (weight sqrt(1 - x^2)).
QuadratureRule gauss_chebyshev2(int n);

// Rule integrating f(x) (1-x^2)^{(d-2)/2} dx for the cross-section dimension d.
QuadratureRule sphere_rule(int d, int n);

}  // namespace warpband
