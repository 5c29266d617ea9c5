#include "warpband/stability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace warpband {

double gamma_coefficient(int n, double gamma) {
    const double denom = 2.0 * (n - 1) - (n - 2) * gamma;
    if (std::abs(denom) < 1e-14)
        throw std::invalid_argument("gamma_coefficient: 2(n-1)-(n-2)gamma vanishes");
    return (2.0 * n - (n - 1) * gamma) / (2.0 * denom);
}

StabilityPotentials stability_potentials(const SymmetricBand& band, double t, double mu,
                                         double mu_nu, double f) {
    const int n = band.dimension();
    const double gamma = band.gamma();
    const SliceGeometry s = slice_geometry(band, t, mu);
    const ProfileValue u = band.weight().eval(t);
    const double w_nu = u.df / u.f;
    const double Lambda = spectral_scalar_curvature(band, t);
    const double denomC = 2.0 * (n - 1) - (n - 2) * gamma;

    StabilityPotentials out;
    out.Gamma = gamma_coefficient(n, gamma);
    out.Z = -(1.0 / (n - 1)) * s.eta * (n * f - gamma * w_nu) - (n / (2.0 * (n - 1))) * f * f;
    const double diff = w_nu - mu / denomC;
    out.square_term = diff * diff;
    out.W = -0.5 * s.A0_norm2 - (out.Gamma * mu * mu + mu_nu + Lambda) -
            (denomC / (2.0 * (n - 1))) * gamma * out.square_term;
    const double rho = band.rho().eval(t).f;
    out.W_bound = -0.5 * (n - 1) * (n - 2) / (rho * rho);
    return out;
}

namespace {
// dim(harmonics of degree k on S^d): C(k+d, d) - C(k+d-2, d)
int sphere_multiplicity(int k, int d) {
    auto binom = [](int a, int b) {
        if (b < 0 || b > a) return 0.0;
        double r = 1.0;
        for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    if (k == 0) return 1;
    return static_cast<int>(std::lround(binom(k + d, d) - binom(k + d - 2, d)));
}
}  // namespace

std::vector<SpectrumEntry> ltilde_spectrum(int n, double gamma, double radius, double xi_val,
                                           int k_max) {
    if (n != 3 && n != 4) throw std::invalid_argument("ltilde_spectrum: dimension must be 3 or 4");
    if (!(radius > 0.0)) throw std::invalid_argument("ltilde_spectrum: radius must be positive");
    if (!(xi_val > 0.0)) throw std::invalid_argument("ltilde_spectrum: xi_val must be positive");
    if ((n == 3 && !(gamma < 4.0)) || (n == 4 && !(gamma < 3.0)))
        throw std::invalid_argument("ltilde_spectrum: gamma out of range for this dimension");
    if (k_max < 0) throw std::invalid_argument("ltilde_spectrum: k_max must be non-negative");

    const double pref = 4.0 / (4.0 - gamma);
    const double shift =
        0.5 * (n - 1) * (n - 2) * (1.0 / (radius * radius) - 1.0 / (xi_val * xi_val));
    std::vector<SpectrumEntry> out;
    out.reserve(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        SpectrumEntry e;
        e.degree = k;
        e.multiplicity = sphere_multiplicity(k, n - 1);
        e.lambda = pref * k * (k + n - 2) / (radius * radius) + shift;
        out.push_back(e);
    }
    return out;
}

double gauss_bonnet_margin(int euler_char, const SymmetricBand& band, double t,
                           const WarpingProfile& xi_profile, double tau) {
    if (band.dimension() != 3)
        throw std::invalid_argument("gauss_bonnet_margin requires a three-dimensional band");
    const double rho = band.rho().eval(t).f;
    if (!(rho > 0.0)) throw std::domain_error("singular slice: rho(t) <= 0");
    const double xi = xi_profile.eval(tau).f;
    if (!(xi > 0.0)) throw std::domain_error("gauss_bonnet_margin: xi(tau) <= 0");
    return 2.0 * std::numbers::pi * euler_char -
           4.0 * std::numbers::pi * rho * rho / (xi * xi);
}

double listing_conformal_scalar(int n_cross, const AxisymmetricPoly& v, double alpha,
                                double radius, double theta) {
    if (n_cross != 2 && n_cross != 3)
        throw std::invalid_argument("listing_conformal_scalar: cross-section dimension must be 2 or 3");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("listing_conformal_scalar: alpha must lie in (0, 1)");
    if (!(v.min_on_grid() > 0.0))
        throw std::domain_error("listing_conformal_scalar: conformal factor must be positive");

    const double x = std::cos(theta);
    const double vv = v(x);
    const double lap = sphere_laplacian(v, n_cross, radius, x);
    const double grad_log2 = (1.0 - x * x) * v.dx(x) * v.dx(x) / (vv * vv * radius * radius);
    const double R_sigma = n_cross * (n_cross - 1) / (radius * radius);
    return std::pow(vv, -4.0 * alpha) *
           (R_sigma - 8.0 * alpha * lap / vv - 8.0 * alpha * (alpha - 1.0) * grad_log2);
}

}  // namespace warpband
