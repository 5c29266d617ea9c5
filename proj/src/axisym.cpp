#include "warpband/axisym.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace warpband {

AxisymmetricPoly::AxisymmetricPoly(std::vector<double> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(0.0);
}

AxisymmetricPoly AxisymmetricPoly::constant(double c) { return AxisymmetricPoly({c}); }

double AxisymmetricPoly::operator()(double x) const {
    double f = 0.0;
    for (std::size_t k = c_.size(); k-- > 0;) f = f * x + c_[k];
    return f;
}

double AxisymmetricPoly::dx(double x) const {
    double f = 0.0;
    for (std::size_t k = c_.size(); k-- > 1;) f = f * x + c_[k] * static_cast<double>(k);
    return f;
}

double AxisymmetricPoly::dxx(double x) const {
    double f = 0.0;
    for (std::size_t k = c_.size(); k-- > 2;)
        f = f * x + c_[k] * static_cast<double>(k) * static_cast<double>(k - 1);
    return f;
}

void AxisymmetricPoly::theta_derivatives(double x, double& f, double& df, double& ddf) const {
    const double s2 = 1.0 - x * x;  // sin^2(theta)
    const double s = std::sqrt(std::max(0.0, s2));
    f = (*this)(x);
    df = -s * dx(x);
    ddf = -x * dx(x) + s2 * dxx(x);
}

double AxisymmetricPoly::min_on_grid(int samples) const {
    double m = (*this)(-1.0);
    for (int i = 1; i < samples; ++i) m = std::min(m, (*this)(-1.0 + 2.0 * i / (samples - 1)));
    return m;
}

AxisymmetricPoly& AxisymmetricPoly::add_scaled(const AxisymmetricPoly& other, double s) {
    if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), 0.0);
    for (std::size_t k = 0; k < other.c_.size(); ++k) c_[k] += s * other.c_[k];
    return *this;
}

AxisymmetricPoly legendre_poly(int k) {
    if (k < 0) throw std::invalid_argument("legendre_poly: negative degree");
    std::vector<double> pm1{1.0};        // P_0
    if (k == 0) return AxisymmetricPoly(pm1);
    std::vector<double> p{0.0, 1.0};     // P_1
    for (int j = 1; j < k; ++j) {
        // (j+1) P_{j+1} = (2j+1) x P_j - j P_{j-1}
        std::vector<double> nxt(p.size() + 1, 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) nxt[i + 1] += (2.0 * j + 1.0) * p[i];
        for (std::size_t i = 0; i < pm1.size(); ++i) nxt[i] -= static_cast<double>(j) * pm1[i];
        for (double& v : nxt) v /= (j + 1.0);
        pm1 = std::move(p);
        p = std::move(nxt);
    }
    return AxisymmetricPoly(p);
}

AxisymmetricPoly chebyshev_u_poly(int k) {
    if (k < 0) throw std::invalid_argument("chebyshev_u_poly: negative degree");
    std::vector<double> um1{1.0};     // U_0
    if (k == 0) return AxisymmetricPoly(um1);
    std::vector<double> u{0.0, 2.0};  // U_1
    for (int j = 1; j < k; ++j) {
        std::vector<double> nxt(u.size() + 1, 0.0);
        for (std::size_t i = 0; i < u.size(); ++i) nxt[i + 1] += 2.0 * u[i];
        for (std::size_t i = 0; i < um1.size(); ++i) nxt[i] -= um1[i];
        um1 = std::move(u);
        u = std::move(nxt);
    }
    return AxisymmetricPoly(u);
}

double sphere_laplacian(const AxisymmetricPoly& f, int d, double radius, double x) {
    return ((1.0 - x * x) * f.dxx(x) - d * x * f.dx(x)) / (radius * radius);
}

QuadratureRule gauss_legendre(int n) {
    if (n < 2) throw std::invalid_argument("gauss_legendre: need at least 2 nodes");
    QuadratureRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton from the Chebyshev-angle initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 1; j < n; ++j) {
                const double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

QuadratureRule gauss_chebyshev2(int n) {
    if (n < 2) throw std::invalid_argument("gauss_chebyshev2: need at least 2 nodes");
    QuadratureRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int j = 1; j <= n; ++j) {
        const double th = std::numbers::pi * j / (n + 1.0);
        r.x[j - 1] = std::cos(th);
        r.w[j - 1] = std::numbers::pi / (n + 1.0) * std::sin(th) * std::sin(th);
    }
    return r;
}

QuadratureRule sphere_rule(int d, int n) {
    if (d == 2) return gauss_legendre(n);
    if (d == 3) return gauss_chebyshev2(n);
    throw std::invalid_argument("sphere_rule supports cross-section dimensions 2 and 3");
}

}  // namespace warpband
