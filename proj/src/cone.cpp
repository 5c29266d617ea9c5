#include "warpband/cone.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "warpband/parallel.hpp"
#include "warpband/variation.hpp"

namespace warpband {

namespace {
void validate_cone(double A, int n, double gamma) {
    if (!(A > 0.0)) throw std::invalid_argument("cone aperture must be positive");
    if (n != 3 && n != 4) throw std::invalid_argument("cone dimension must be 3 or 4");
    if (!(gamma < 2.0)) throw std::invalid_argument("cone analysis requires gamma < 2");
}
}  // namespace

ConeModel::ConeModel(double A_, int n_, double gamma_)
    : ConeModel(A_, n_, gamma_, 1.0 / (2.0 - gamma_)) {}

ConeModel::ConeModel(double A_, int n_, double gamma_, double alpha_)
    : A(A_), n(n_), gamma(gamma_), alpha(alpha_) {
    validate_cone(A, n, gamma);
}

bool ConeModel::conformant(double tol) const {
    return std::abs(alpha - 1.0 / (2.0 - gamma)) <= tol;
}

std::pair<double, double> cone_tensor_components(const ConeModel& cone) {
    const int n = cone.n;
    const double g = cone.gamma;
    const double rad = (2.0 * (n - 1) - (n - 2) * g) / (2.0 - g);
    const double sph = (n - 2) * (1.0 / (cone.A * cone.A) - 1.0) + 2.0 * (n - 1) / (2.0 - g);
    return {rad, sph};
}

ConditionMargin cross_section_condition(int n, double gamma, double A) {
    validate_cone(A, n, gamma);
    const double margin = (n - 2) * (1.0 / (A * A) - 1.0) + 2.0 * (n - 1) / (2.0 - gamma);
    return {margin >= 0.0, margin};
}

double spectral_descent_residual(const ConeModel& cone, const AxisymmetricPoly& v, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("spectral_descent_residual: t must be positive");
    if (!(v.min_on_grid() > 0.0))
        throw std::domain_error("spectral_descent_residual: v must be positive");
    const int n = cone.n;
    const double g = cone.gamma;
    const double A = cone.A;
    const double al = cone.alpha;
    const double t2 = t * t;

    // ambient curvature of the cone band (rho = A t)
    const double R_cone = (n - 1) * (n - 2) * (1.0 - A * A) / (A * A * t2);

    const int samples = 201;
    return par::max_abs(samples, [&](std::int64_t i) {
        const double x = -0.999 + 1.998 * static_cast<double>(i) / (samples - 1);
        const double vv = v(x);
        // weighted curvature of the cross-section at radius A t
        const double lam =
            -g * sphere_laplacian(v, n - 1, A * t, x) / vv + 0.5 * (n - 1) * (n - 2) / (A * t * A * t);
        // spectral scalar curvature of the cone with weight t^alpha v(x)
        const double lap_over_u =
            (al * (al + n - 2) + sphere_laplacian(v, n - 1, A, x) / vv) / t2;
        const double Lambda = -g * lap_over_u + 0.5 * R_cone;
        const double correction = al * g * (al + n - 2) / t2 + 0.5 * (n - 1) * (n - 2) / t2;
        return lam - Lambda - correction;
    });
}

double cone_graph_mean_curvature(int n, double A, const AxisymmetricPoly& p,
                                 const AxisymmetricPoly& T, double x) {
    // metric blocks scale with b(tau, theta) = A tau exp(p(theta) tau); the
    // graph is the level set {tau - T(theta) = 0} with normal grad(tau - T)/|.|
    double pf, pth, pthth;
    p.theta_derivatives(x, pf, pth, pthth);
    double Tf, Tth, Tthth;
    T.theta_derivatives(x, Tf, Tth, Tthth);

    const double s2 = 1.0 - x * x;
    const double s = std::sqrt(std::max(1e-300, s2));
    const double cot = x / s;

    const double b = A * Tf * std::exp(pf * Tf);  // b at tau = T(theta)
    const double b2 = b * b;
    const double beta_tau = 1.0 / Tf + pf;        // d log b / d tau at fixed theta
    const double beta_theta = pth * Tf;           // d log b / d theta at fixed tau
    const double W2 = 1.0 + Tth * Tth / b2;
    const double W = std::sqrt(W2);
    // d/d theta of W at fixed tau, evaluated on the graph
    const double Wtheta = (Tth * Tthth / b2 - Tth * Tth * beta_theta / b2) / W;

    return (n - 1) * beta_tau / W + Tth * Tth * beta_tau / (b2 * W * W2) -
           ((n - 3) * beta_theta + (n - 2) * cot) * Tth / (b2 * W) - Tthth / (b2 * W) +
           Tth * Wtheta / (b2 * W2);
}

namespace {

struct LeafProblem {
    const ConeModel& cone;
    const AxisymmetricPoly& q;
    double t;
    int modes;
    QuadratureRule rule;
    std::vector<AxisymmetricPoly> basis;  // degrees 0..modes
    std::vector<double> basis_norm2;      // int Y_k^2 w(x) dx

    AxisymmetricPoly scaled_q;  // t * q

    double measure = 0.0;  // int w(x) dx

    LeafProblem(const ConeModel& c, const AxisymmetricPoly& q_, double t_, int modes_)
        : cone(c), q(q_), t(t_), modes(modes_) {
        const int d = c.n - 1;
        rule = sphere_rule(d, std::max(64, 6 * modes));
        basis.reserve(modes + 1);
        for (int k = 0; k <= modes; ++k)
            basis.push_back(d == 2 ? legendre_poly(k) : chebyshev_u_poly(k));
        basis_norm2.resize(modes + 1, 0.0);
        for (std::size_t j = 0; j < rule.x.size(); ++j) {
            measure += rule.w[j];
            for (int k = 0; k <= modes; ++k) {
                const double y = basis[k](rule.x[j]);
                basis_norm2[k] += rule.w[j] * y * y;
            }
        }
        std::vector<double> sc = q.coeffs();
        for (double& v : sc) v *= t;
        scaled_q = AxisymmetricPoly(std::move(sc));
    }

    AxisymmetricPoly assemble_v(const std::vector<double>& c) const {
        AxisymmetricPoly v;  // zero
        for (int k = 1; k <= modes; ++k) v.add_scaled(basis[k], c[k - 1]);
        return v;
    }

    // defect eta_hat(theta) of the graph tau = 1 + t v
    double eta_at(const AxisymmetricPoly& Tpoly, double x) const {
        const double H = cone_graph_mean_curvature(cone.n, cone.A, scaled_q, Tpoly, x);
        double pf, pth, pthth;
        scaled_q.theta_derivatives(x, pf, pth, pthth);
        double Tf, Tth, Tthth;
        Tpoly.theta_derivatives(x, Tf, Tth, Tthth);
        const double b = cone.A * Tf * std::exp(pf * Tf);
        const double W = std::sqrt(1.0 + Tth * Tth / (b * b));
        const double al = cone.alpha;
        const double m_model = (cone.n - 1 + cone.gamma * al) / Tf;
        return H + cone.gamma * al / (Tf * W) - m_model;
    }

    // projected residual: coefficients of eta_hat / t on modes 1..K
    std::vector<double> residual(const std::vector<double>& c) const {
        AxisymmetricPoly v = assemble_v(c);
        AxisymmetricPoly Tpoly = AxisymmetricPoly::constant(1.0);
        Tpoly.add_scaled(v, t);
        std::vector<double> r(modes, 0.0);
        for (std::size_t j = 0; j < rule.x.size(); ++j) {
            const double f = eta_at(Tpoly, rule.x[j]) / t;
            for (int k = 1; k <= modes; ++k)
                r[k - 1] += rule.w[j] * f * basis[k](rule.x[j]);
        }
        for (int k = 1; k <= modes; ++k) r[k - 1] /= basis_norm2[k];
        return r;
    }

    double eta_average(const std::vector<double>& c) const {
        AxisymmetricPoly v = assemble_v(c);
        AxisymmetricPoly Tpoly = AxisymmetricPoly::constant(1.0);
        Tpoly.add_scaled(v, t);
        double s = 0.0;
        for (std::size_t j = 0; j < rule.x.size(); ++j)
            s += rule.w[j] * eta_at(Tpoly, rule.x[j]);
        return s / measure;
    }
};

void solve_dense(std::vector<double>& M, std::vector<double>& rhs, int k) {
    // Gaussian elimination with partial pivoting; M is k x k row-major
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(M[r * k + col]) > std::abs(M[piv * k + col])) piv = r;
        if (std::abs(M[piv * k + col]) < 1e-300)
            throw std::runtime_error("leaf solver: singular Newton system");
        if (piv != col) {
            for (int j = 0; j < k; ++j) std::swap(M[piv * k + j], M[col * k + j]);
            std::swap(rhs[piv], rhs[col]);
        }
        const double d = M[col * k + col];
        for (int r = col + 1; r < k; ++r) {
            const double f = M[r * k + col] / d;
            for (int j = col; j < k; ++j) M[r * k + j] -= f * M[col * k + j];
            rhs[r] -= f * rhs[col];
        }
    }
    for (int col = k - 1; col >= 0; --col) {
        double s = rhs[col];
        for (int j = col + 1; j < k; ++j) s -= M[col * k + j] * rhs[j];
        rhs[col] = s / M[col * k + col];
    }
}

}  // namespace

LeafSolution cone_foliation_leaf(const ConeModel& cone, const AxisymmetricPoly& q, double t,
                                 int modes) {
    if (modes < 2) throw std::invalid_argument("cone_foliation_leaf: need at least 2 modes");
    if (!(t > 0.0)) throw std::invalid_argument("cone_foliation_leaf: scale t must be positive");
    // smallness of the metric perturbation relative to the cone at this scale
    {
        double worst = 0.0;
        for (int i = 0; i <= 256; ++i) {
            const double x = -1.0 + 2.0 * i / 256.0;
            worst = std::max(worst, std::abs(std::exp(2.0 * t * q(x)) - 1.0));
        }
        if (worst >= 0.1)
            throw std::invalid_argument(
                "cone_foliation_leaf: perturbation exceeds 10% of the cone metric at this scale");
    }

    LeafProblem prob(cone, q, t, modes);
    std::vector<double> c(modes, 0.0);
    LeafSolution sol;

    const int max_iter = 50;
    const double tol = 1e-12;
    std::vector<double> r = prob.residual(c);
    auto sup = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };

    for (int it = 0; it < max_iter; ++it) {
        sol.iterations = it;
        sol.residual_norm = sup(r);
        if (sol.residual_norm < tol) {
            sol.converged = true;
            break;
        }
        // forward-difference Jacobian
        std::vector<double> J(modes * modes, 0.0);
        for (int k = 0; k < modes; ++k) {
            const double step = 1e-7 * std::max(1.0, std::abs(c[k]));
            std::vector<double> cp = c;
            cp[k] += step;
            const std::vector<double> rp = prob.residual(cp);
            for (int i = 0; i < modes; ++i) J[i * modes + k] = (rp[i] - r[i]) / step;
        }
        std::vector<double> rhsv(modes);
        for (int i = 0; i < modes; ++i) rhsv[i] = -r[i];
        solve_dense(J, rhsv, modes);
        for (int i = 0; i < modes; ++i) c[i] += rhsv[i];
        r = prob.residual(c);
    }
    sol.residual_norm = sup(r);
    if (sol.residual_norm < tol) sol.converged = true;
    sol.coeffs = c;
    sol.eta_hat = prob.eta_average(c);
    return sol;
}

double eta_hat_sign_estimate(const ConeModel& cone, const ConeModel& comparison, double t) {
    if (cone.n != comparison.n || cone.gamma != comparison.gamma)
        throw std::invalid_argument("eta_hat_sign_estimate: cone families must share (n, gamma)");
    if (!comparison.conformant())
        throw std::invalid_argument("eta_hat_sign_estimate: comparison must be the conformant model cone");
    if (!(cone.A >= comparison.A * (1.0 - 1e-12)))
        throw std::invalid_argument(
            "eta_hat_sign_estimate: cone metric must dominate the comparison (A >= A_model)");
    if (!(t > 0.0)) throw std::invalid_argument("eta_hat_sign_estimate: scale must be positive");

    const int n = cone.n;
    const double Am = comparison.A;
    const double dA2 = cone.A * cone.A - Am * Am;
    if (dA2 == 0.0) return 0.0;

    const double omega = sphere_volume(n - 1);
    const double alpha = comparison.alpha;
    SymmetricBand base = cone_band(comparison, 1.0);

    // -1/2 int_{tau <= 1} u^2 <R, dg> dV; dg = dA2 tau^2 g_sphere gives
    // <R, dg> = (n-1) R_sph dA2 / Am^2 in the unit frame
    auto bulk_integrand = [&](double tau) {
        if (tau <= 0.0) return 0.0;  // integrand vanishes at the tip
        const double Rs = modified_tensors(base, tau).R_sph;
        const double pair = (n - 1) * Rs * dA2 / (Am * Am);
        return -0.5 * std::pow(tau, 2.0 * alpha) * pair * omega * std::pow(Am * tau, n - 1);
    };
    const double bulk = par::simpson(bulk_integrand, 0.0, 1.0, 4001);

    const ModifiedTensors mt1 = modified_tensors(base, 1.0);
    const double boundary =
        -0.5 * (n - 1) * mt1.A_sph * dA2 / (Am * Am) * omega * std::pow(Am, n - 1);

    const double cross_volume = omega * std::pow(Am, n - 1);  // u(1) = 1
    return (bulk + boundary) / cross_volume;
}

SymmetricBand cone_band(const ConeModel& cone, double t_max) {
    if (!(t_max > 0.0)) throw std::invalid_argument("cone_band: t_max must be positive");
    const Interval dom{0.0, t_max};
    WarpingProfile rho = WarpingProfile::linear(cone.A, 0.0, dom);
    WarpingProfile u =
        WarpingProfile::power_of(WarpingProfile::linear(1.0, 0.0, dom), cone.alpha);
    return SymmetricBand(cone.n, rho, u, cone.gamma, /*conical=*/true);
}

}  // namespace warpband
