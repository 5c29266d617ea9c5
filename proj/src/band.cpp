#include "warpband/band.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace warpband {

namespace {

void require_positive(const WarpingProfile& p, const char* what, bool allow_lower_zero) {
    const Interval d = p.domain();
    const int samples = 257;
    const double pad = allow_lower_zero ? d.length() / (samples + 1) : 0.0;
    const double m = p.min_on(Interval{d.lo + pad, d.hi}, samples);
    if (!(m > 0.0))
        throw std::invalid_argument(std::string(what) + " profile must be positive (min sample " +
                                    std::to_string(m) + ")");
}

double checked_rho(const SymmetricBand& band, double t) {
    const double r = band.rho().eval(t).f;
    if (!(r > 0.0)) throw std::domain_error("singular slice: rho(t) <= 0 at t=" + std::to_string(t));
    return r;
}

}  // namespace

SymmetricBand::SymmetricBand(int n, WarpingProfile rho, WarpingProfile u, double gamma, bool conical)
    : n_(n), gamma_(gamma), conical_(conical), rho_(std::move(rho)), u_(std::move(u)) {
    if (n != 3 && n != 4) throw std::invalid_argument("band dimension must be 3 or 4");
    if (std::abs(gamma - 2.0) < 1e-12)
        throw std::invalid_argument("gamma = 2 is a degenerate exponent and is rejected");
    if (n == 3 && !(gamma < 4.0)) throw std::invalid_argument("n = 3 requires gamma < 4");
    if (n == 4 && !(gamma < 3.0)) throw std::invalid_argument("n = 4 requires gamma < 3");
    if (!same_interval(rho_.domain(), u_.domain()))
        throw std::invalid_argument("metric and weight profiles must share one domain");
    require_positive(rho_, "metric", conical_);
    require_positive(u_, "weight", conical_);
}

double scalar_curvature(const SymmetricBand& band, double t) {
    const ProfileValue r = band.rho().eval(t);
    if (!(r.f > 0.0)) throw std::domain_error("singular slice: rho(t) <= 0 at t=" + std::to_string(t));
    const int n = band.dimension();
    return -2.0 * (n - 1) * r.ddf / r.f + (n - 1) * (n - 2) * (1.0 - r.df * r.df) / (r.f * r.f);
}

double weight_laplacian(const SymmetricBand& band, double t) {
    const ProfileValue r = band.rho().eval(t);
    const ProfileValue u = band.weight().eval(t);
    if (!(r.f > 0.0)) throw std::domain_error("singular slice: rho(t) <= 0 at t=" + std::to_string(t));
    return u.ddf + (band.dimension() - 1) * (r.df / r.f) * u.df;
}

SliceGeometry slice_geometry(const SymmetricBand& band, double t, double mu) {
    const double rho = checked_rho(band, t);
    const ProfileValue r = band.rho().eval(t);
    const ProfileValue u = band.weight().eval(t);
    if (!(u.f > 0.0)) throw std::domain_error("singular slice: u(t) <= 0 at t=" + std::to_string(t));
    const int n = band.dimension();

    SliceGeometry s;
    s.t = t;
    s.H = (n - 1) * r.df / rho;
    s.u_nu = u.df;
    s.Hw = s.H + band.gamma() * u.df / u.f;
    s.R_slice = (n - 1) * (n - 2) / (rho * rho);
    s.mu = mu;
    s.eta = s.Hw - mu;
    s.A0_norm2 = 0.0;  // round slices of warped products are umbilic
    return s;
}

double spectral_scalar_curvature(const SymmetricBand& band, double t) {
    const ProfileValue u = band.weight().eval(t);
    if (!(u.f > 0.0)) throw std::domain_error("singular slice: u(t) <= 0 at t=" + std::to_string(t));
    return -band.gamma() * weight_laplacian(band, t) / u.f + 0.5 * scalar_curvature(band, t);
}

WarpingProfile sigma_reduction(const WarpingProfile& u, double sigma, double gamma) {
    (void)gamma;  // recombined by the caller via sigma_reduced_exponent
    if (std::abs(sigma - 1.0) < 1e-14)
        throw std::invalid_argument("sigma = 1 needs a logarithmic substitution, which is unsupported");
    return WarpingProfile::power_of(u, 1.0 - sigma);
}

double sigma_reduced_exponent(double sigma, double gamma) { return gamma / (1.0 - sigma); }

double sphere_volume(int dim) {
    if (dim == 2) return 4.0 * std::numbers::pi;
    if (dim == 3) return 2.0 * std::numbers::pi * std::numbers::pi;
    if (dim == 1) return 2.0 * std::numbers::pi;
    throw std::invalid_argument("sphere_volume supports dimensions 1..3");
}

}  // namespace warpband
