#include "warpband/variation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "warpband/parallel.hpp"

namespace warpband {

namespace {

double order_from_pair(double r1, double r2) {
    if (!(r1 > 1e-14) || !(r2 > 1e-14)) return std::numeric_limits<double>::quiet_NaN();
    return std::log2(r1 / r2);
}

}  // namespace

double energy_functional(const SymmetricBand& band, const WarpingProfile& mu, double s,
                         int quad_nodes) {
    const Interval dom = band.domain();
    if (!(s > dom.lo) || !dom.contains(s))
        throw std::domain_error("energy_functional: s outside (t_-, t_+]");
    const int n = band.dimension();
    const double gamma = band.gamma();
    const double omega = sphere_volume(n - 1);

    const double uS = band.weight().eval(s).f;
    const double rhoS = band.rho().eval(s).f;
    const double boundary = std::pow(uS, gamma) * std::pow(rhoS, n - 1);

    const double bulk = par::simpson(
        [&](double t) {
            return std::pow(band.weight().eval(t).f, gamma) * mu.eval(t).f *
                   std::pow(band.rho().eval(t).f, n - 1);
        },
        dom.lo, s, quad_nodes);

    return omega * (boundary - bulk);
}

QuadraticFormReport first_variation_check(const SymmetricBand& band, const WarpingProfile& mu,
                                          double s, double h_fd, int quad_nodes) {
    if (!(h_fd > 0.0)) throw std::invalid_argument("first_variation_check: h_fd must be positive");
    const Interval dom = band.domain();
    if (!(s - h_fd > dom.lo) || !(s + h_fd <= dom.hi + 1e-12 * dom.length()))
        throw std::domain_error("first_variation_check: FD stencil leaves the band domain");

    const int n = band.dimension();
    const double gamma = band.gamma();
    const double omega = sphere_volume(n - 1);

    auto lhs_at = [&](double h) {
        return (energy_functional(band, mu, s + h, quad_nodes) -
                energy_functional(band, mu, s - h, quad_nodes)) /
               (2.0 * h);
    };
    const SliceGeometry g = slice_geometry(band, s, mu.eval(s).f);
    const double rhs = omega * g.eta * std::pow(band.weight().eval(s).f, gamma) *
                       std::pow(band.rho().eval(s).f, n - 1);

    QuadraticFormReport rep;
    rep.grid_h = h_fd;
    rep.lhs = lhs_at(h_fd);
    rep.rhs = rhs;
    rep.residual = std::abs(rep.lhs - rep.rhs);
    const double finer = std::abs(lhs_at(0.5 * h_fd) - rhs);
    rep.convergence_order = order_from_pair(rep.residual, finer);
    return rep;
}

QuadraticFormReport linearized_eta_check(const SymmetricBand& band, const WarpingProfile& mu,
                                         double s, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("linearized_eta_check: eps must be positive");
    const Interval dom = band.domain();
    if (!(s - eps > dom.lo) || !(s + eps < dom.hi))
        throw std::domain_error("linearized_eta_check: stencil leaves the band domain");

    const int n = band.dimension();
    const double gamma = band.gamma();

    auto eta_at = [&](double t) { return slice_geometry(band, t, mu.eval(t).f).eta; };
    auto lhs_at = [&](double e) { return (eta_at(s + e) - eta_at(s - e)) / (2.0 * e); };

    // closed-form linearization along the slice foliation (test function 1):
    //   -Ric(nu) - |A|^2 - gamma w_nu^2 + gamma (Lap u - Lap_Sigma u - H u_nu)/u - mu'
    const ProfileValue r = band.rho().eval(s);
    const ProfileValue u = band.weight().eval(s);
    const double ric_nu = -(n - 1) * r.ddf / r.f;
    const double A2 = (n - 1) * (r.df / r.f) * (r.df / r.f);
    const double w_nu = u.df / u.f;
    const double H = (n - 1) * r.df / r.f;
    const double lap_u = weight_laplacian(band, s);
    const double rhs =
        -(ric_nu + A2) - gamma * w_nu * w_nu + gamma * (lap_u - 0.0 - H * u.df) / u.f - mu.eval(s).df;

    QuadraticFormReport rep;
    rep.grid_h = eps;
    rep.lhs = lhs_at(eps);
    rep.rhs = rhs;
    rep.residual = std::abs(rep.lhs - rep.rhs);
    rep.convergence_order = order_from_pair(rep.residual, std::abs(lhs_at(0.5 * eps) - rhs));
    return rep;
}

namespace {

struct RewriteIntegrals {
    double lhs = 0.0;
    double rhs = 0.0;
    double mid = 0.0;
};

RewriteIntegrals rewrite_integrals(double gamma, const AxisymmetricPoly& u,
                                   const AxisymmetricPoly& phi, double radius, int nodes) {
    const double r2 = radius * radius;

    auto lhs_integrand = [&](double x) {
        const double uv = u(x);
        const double Lphi = -sphere_laplacian(phi, 2, radius, x) -
                            gamma * phi(x) * sphere_laplacian(u, 2, radius, x) / uv -
                            gamma * (1.0 - x * x) * (u.dx(x) / uv) * phi.dx(x) / r2;
        return std::pow(uv, gamma) * phi(x) * Lphi;
    };
    auto psi_parts = [&](double x, double& psi, double& psix) {
        const double uv = u(x);
        psi = std::pow(uv, 0.5 * gamma) * phi(x);
        psix = std::pow(uv, 0.5 * gamma) * (phi.dx(x) + 0.5 * gamma * (u.dx(x) / uv) * phi(x));
    };
    auto rhs_integrand = [&](double x) {
        double psi, psix;
        psi_parts(x, psi, psix);
        const double wx = u.dx(x) / u(x);
        const double s2 = 1.0 - x * x;
        const double grad_psi2 = s2 * psix * psix / r2;
        const double c = 1.0 / (2.0 * (1.0 - 0.25 * gamma));
        const double diff = psi * wx - c * psix;
        return 4.0 / (4.0 - gamma) * grad_psi2 -
               gamma * (1.0 - 0.25 * gamma) * s2 * diff * diff / r2;
    };
    auto mid_integrand = [&](double x) {
        double psi, psix;
        psi_parts(x, psi, psix);
        const double wx = u.dx(x) / u(x);
        const double s2 = 1.0 - x * x;
        return s2 * psix * psix / r2 + gamma * s2 * wx * psix * psi / r2 +
               (0.25 * gamma * gamma - gamma) * s2 * wx * wx * psi * psi / r2;
    };

    const double area_factor = sphere_volume(1) * r2;  // 2 pi r^2, measure dx on [-1, 1]
    RewriteIntegrals out;
    out.lhs = area_factor * par::simpson(lhs_integrand, -1.0, 1.0, nodes);
    out.rhs = area_factor * par::simpson(rhs_integrand, -1.0, 1.0, nodes);
    out.mid = area_factor * par::simpson(mid_integrand, -1.0, 1.0, nodes);
    return out;
}

}  // namespace

QuadraticFormReport rewrite_identity_check(double gamma, const AxisymmetricPoly& u,
                                           const AxisymmetricPoly& phi, double radius,
                                           int quad_nodes) {
    if (std::abs(gamma - 4.0) < 1e-12)
        throw std::invalid_argument("rewrite_identity_check: gamma = 4 makes the prefactor singular");
    if (!(gamma < 4.0))
        throw std::invalid_argument("rewrite_identity_check: gamma must be below 4");
    if (!(u.min_on_grid() > 0.0))
        throw std::domain_error("rewrite_identity_check: u must be positive");

    const RewriteIntegrals coarse = rewrite_integrals(gamma, u, phi, radius, quad_nodes);
    const RewriteIntegrals fine = rewrite_integrals(gamma, u, phi, radius, 2 * quad_nodes - 1);

    QuadraticFormReport rep;
    rep.grid_h = 2.0 / (quad_nodes - 1);
    rep.lhs = coarse.lhs;
    rep.rhs = coarse.rhs;
    rep.residual = std::max(std::abs(coarse.lhs - coarse.rhs), std::abs(coarse.rhs - coarse.mid));
    const double fine_res =
        std::max(std::abs(fine.lhs - fine.rhs), std::abs(fine.rhs - fine.mid));
    rep.convergence_order = order_from_pair(rep.residual, fine_res);
    return rep;
}

ModifiedTensors modified_tensors(const SymmetricBand& band, double t) {
    const ProfileValue r = band.rho().eval(t);
    const ProfileValue u = band.weight().eval(t);
    if (!(r.f > 0.0)) throw std::domain_error("singular slice: rho(t) <= 0 at t=" + std::to_string(t));
    if (!(u.f > 0.0)) throw std::domain_error("singular slice: u(t) <= 0 at t=" + std::to_string(t));
    const int n = band.dimension();
    const double gamma = band.gamma();

    const double L = r.df / r.f;
    const double ric_rad = -(n - 1) * r.ddf / r.f;
    const double ric_sph = -r.ddf / r.f + (n - 2) * (1.0 - r.df * r.df) / (r.f * r.f);
    const double hess_rad = u.ddf;
    const double hess_sph = L * u.df;
    const double lap = u.ddf + (n - 1) * L * u.df;
    const double grad2 = u.df * u.df;
    const double u2 = u.f * u.f;

    // g-proportional scalars shared by both components
    const double div_term = -gamma * (grad2 + u.f * lap) / u2;
    const double lap_sq_term = (2.0 * u.f * lap + 2.0 * grad2) / u2;

    ModifiedTensors out;
    out.R_rad = ric_rad - 2.0 * gamma * hess_rad / u.f +
                2.0 * gamma * (grad2 + u.f * hess_rad) / u2 + div_term -
                (2.0 * u.f * hess_rad + 2.0 * grad2) / u2 + lap_sq_term;
    out.R_sph = ric_sph - 2.0 * gamma * hess_sph / u.f + 2.0 * gamma * (u.f * hess_sph) / u2 +
                div_term - (2.0 * u.f * hess_sph) / u2 + lap_sq_term;
    out.A_sph = L - (2.0 - gamma) * u.df / u.f;
    return out;
}

namespace {

// spectral scalar curvature from raw profile triples, so that perturbed
// families can be evaluated without building new profile objects
double lambda_of(int n, double gamma, const ProfileValue& r, const ProfileValue& u) {
    const double L = r.df / r.f;
    const double R =
        -2.0 * (n - 1) * r.ddf / r.f + (n - 1) * (n - 2) * (1.0 - r.df * r.df) / (r.f * r.f);
    const double lap = u.ddf + (n - 1) * L * u.df;
    return -gamma * lap / u.f + 0.5 * R;
}

ProfileValue shifted(const ProfileValue& base, const ProfileValue& delta, double eps) {
    return ProfileValue{base.f + eps * delta.f, base.df + eps * delta.df,
                        base.ddf + eps * delta.ddf};
}

double identity_residual(const SymmetricBand& band, VariationFamily family,
                         const WarpingProfile& delta, double eps, int nodes, double& lhs_out,
                         double& rhs_out) {
    const Interval dom = band.domain();
    const int n = band.dimension();
    const double gamma = band.gamma();
    const double omega = sphere_volume(n - 1);

    // positivity of the perturbed profile across the stencil
    {
        const WarpingProfile& target = (family == VariationFamily::VaryU) ? band.weight() : band.rho();
        const int probes = 257;
        for (int i = 0; i < probes; ++i) {
            const double t = dom.lo + dom.length() * i / (probes - 1);
            const double base = target.eval(t).f;
            const double d = delta.eval(t).f;
            if (!(base + eps * d > 0.0) || !(base - eps * d > 0.0))
                throw std::domain_error("integral_identity_check: positivity violated within the FD stencil");
        }
    }

    auto d_lambda = [&](double t) {
        const ProfileValue r = band.rho().eval(t);
        const ProfileValue u = band.weight().eval(t);
        const ProfileValue d = delta.eval(t);
        if (family == VariationFamily::VaryU)
            return (lambda_of(n, gamma, r, shifted(u, d, eps)) -
                    lambda_of(n, gamma, r, shifted(u, d, -eps))) /
                   (2.0 * eps);
        return (lambda_of(n, gamma, shifted(r, d, eps), u) -
                lambda_of(n, gamma, shifted(r, d, -eps), u)) /
               (2.0 * eps);
    };

    // weighted mean curvature with outward normal sign: +1 at t_+, -1 at t_-
    auto d_Hw = [&](double t, double sign) {
        const ProfileValue r = band.rho().eval(t);
        const ProfileValue u = band.weight().eval(t);
        const ProfileValue d = delta.eval(t);
        auto hw = [&](const ProfileValue& rr, const ProfileValue& uu) {
            return sign * ((n - 1) * rr.df / rr.f + gamma * uu.df / uu.f);
        };
        if (family == VariationFamily::VaryU)
            return (hw(r, shifted(u, d, eps)) - hw(r, shifted(u, d, -eps))) / (2.0 * eps);
        return (hw(shifted(r, d, eps), u) - hw(shifted(r, d, -eps), u)) / (2.0 * eps);
    };

    auto boundary_weight = [&](double t) {
        const double u = band.weight().eval(t).f;
        const double rho = band.rho().eval(t).f;
        return omega * u * u * std::pow(rho, n - 1);
    };

    const double lhs = boundary_weight(dom.hi) * d_Hw(dom.hi, +1.0) +
                       boundary_weight(dom.lo) * d_Hw(dom.lo, -1.0) +
                       par::simpson(
                           [&](double t) {
                               const double u = band.weight().eval(t).f;
                               const double rho = band.rho().eval(t).f;
                               return omega * u * u * std::pow(rho, n - 1) * d_lambda(t);
                           },
                           dom.lo, dom.hi, nodes);

    double rhs = 0.0;
    if (family == VariationFamily::VaryG) {
        // <T, dg> = (n-1) T_sph 2 delta/rho for dg = 2 rho delta g_sphere
        rhs = -0.5 * par::simpson(
                        [&](double t) {
                            const double u = band.weight().eval(t).f;
                            const double rho = band.rho().eval(t).f;
                            const double pair = (n - 1) * modified_tensors(band, t).R_sph * 2.0 *
                                                delta.eval(t).f / rho;
                            return omega * u * u * std::pow(rho, n - 1) * pair;
                        },
                        dom.lo, dom.hi, nodes);
        auto boundary_pair = [&](double t, double sign) {
            const ModifiedTensors mt = modified_tensors(band, t);
            const double rho = band.rho().eval(t).f;
            return (n - 1) * (sign * mt.A_sph) * 2.0 * delta.eval(t).f / rho;
        };
        rhs += -0.5 * (boundary_weight(dom.hi) * boundary_pair(dom.hi, +1.0) +
                       boundary_weight(dom.lo) * boundary_pair(dom.lo, -1.0));
    }

    lhs_out = lhs;
    rhs_out = rhs;
    return std::abs(lhs - rhs);
}

}  // namespace

QuadraticFormReport integral_identity_check(const SymmetricBand& band, VariationFamily family,
                                            const WarpingProfile& delta, double eps,
                                            int quad_nodes) {
    if (!(eps > 0.0)) throw std::invalid_argument("integral_identity_check: eps must be positive");
    if (!same_interval(delta.domain(), band.domain()))
        throw std::invalid_argument("integral_identity_check: delta domain must match the band");

    QuadraticFormReport rep;
    rep.grid_h = eps;
    rep.residual = identity_residual(band, family, delta, eps, quad_nodes, rep.lhs, rep.rhs);
    double l2, r2v;
    const double fine =
        identity_residual(band, family, delta, 0.5 * eps, 2 * quad_nodes - 1, l2, r2v);
    rep.convergence_order = order_from_pair(rep.residual, fine);
    return rep;
}

}  // namespace warpband
