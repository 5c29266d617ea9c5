#include "warpband/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace warpband {

namespace {
constexpr double kDomainSlack = 1e-9;
}

bool Interval::contains(double t) const {
    const double slack = kDomainSlack * std::max(1.0, length());
    return t >= lo - slack && t <= hi + slack;
}

double Interval::clamp(double t) const { return std::min(hi, std::max(lo, t)); }

bool same_interval(const Interval& a, const Interval& b, double tol) {
    const double scale = std::max({1.0, a.length(), b.length()});
    return std::abs(a.lo - b.lo) <= tol * scale && std::abs(a.hi - b.hi) <= tol * scale;
}

std::string family_name(ProfileFamily f) {
    switch (f) {
        case ProfileFamily::Sin: return "sin";
        case ProfileFamily::Sinh: return "sinh";
        case ProfileFamily::Linear: return "linear";
        case ProfileFamily::Constant: return "constant";
        case ProfileFamily::Poly: return "poly";
        case ProfileFamily::ExpPoly: return "exppoly";
        case ProfileFamily::Tabulated: return "tabulated";
        case ProfileFamily::Power: return "power";
        case ProfileFamily::LogDeriv: return "logderiv";
        case ProfileFamily::Product: return "product";
        case ProfileFamily::Sum: return "sum";
    }
    return "?";
}

struct WarpingProfile::Node {
    ProfileFamily family = ProfileFamily::Constant;
    Interval dom;

    double a = 0.0, b = 0.0, offset = 0.0;  // sin / sinh / linear / constant
    double p = 0.0;                         // power exponent or logderiv scale
    std::vector<double> coeffs;             // poly / exppoly

    double t0 = 0.0, h = 0.0;  // tabulated
    std::vector<double> values, d1, d2;

    std::shared_ptr<const Node> base, base2;
};

namespace {

using Node = WarpingProfile::Node;

// Horner with derivative tracking (f, f', f'')
void poly_eval2(const std::vector<double>& c, double t, double& f, double& df, double& ddf) {
    f = 0.0;
    df = 0.0;
    ddf = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        ddf = ddf * t + 2.0 * df;
        df = df * t + f;
        f = f * t + c[k];
    }
}

double poly_d3(const std::vector<double>& c, double t) {
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 3;) {
        const double kk = static_cast<double>(k);
        s = s * t + c[k] * kk * (kk - 1.0) * (kk - 2.0);
    }
    return s;
}

ProfileValue eval_node(const Node& n, double t);
double third_node(const Node& n, double t);

ProfileValue eval_node(const Node& n, double t) {
    switch (n.family) {
        case ProfileFamily::Sin: {
            const double x = n.b * (t - n.offset);
            return {n.a * std::sin(x), n.a * n.b * std::cos(x), -n.a * n.b * n.b * std::sin(x)};
        }
        case ProfileFamily::Sinh: {
            const double x = n.b * (t - n.offset);
            return {n.a * std::sinh(x), n.a * n.b * std::cosh(x), n.a * n.b * n.b * std::sinh(x)};
        }
        case ProfileFamily::Linear:
            return {n.a * (t - n.offset), n.a, 0.0};
        case ProfileFamily::Constant:
            return {n.a, 0.0, 0.0};
        case ProfileFamily::Poly: {
            ProfileValue v;
            poly_eval2(n.coeffs, t, v.f, v.df, v.ddf);
            return v;
        }
        case ProfileFamily::ExpPoly: {
            double q, dq, ddq;
            poly_eval2(n.coeffs, t, q, dq, ddq);
            const double e = std::exp(q);
            return {e, e * dq, e * (ddq + dq * dq)};
        }
        case ProfileFamily::Tabulated: {
            const int N = static_cast<int>(n.values.size());
            const double s = (t - n.t0) / n.h;
            int i = static_cast<int>(std::floor(s));
            i = std::min(std::max(i, 0), N - 2);
            const double lam = s - i;
            auto lerp = [&](const std::vector<double>& arr) {
                return (1.0 - lam) * arr[i] + lam * arr[i + 1];
            };
            return {lerp(n.values), lerp(n.d1), lerp(n.d2)};
        }
        case ProfileFamily::Power: {
            const ProfileValue b = eval_node(*n.base, t);
            const double p = n.p;
            if (b.f <= 0.0 && std::floor(p) != p)
                throw std::domain_error("power profile: base non-positive at t=" + std::to_string(t));
            const double fp1 = std::pow(b.f, p - 1.0);
            const double fp2 = std::pow(b.f, p - 2.0);
            return {std::pow(b.f, p), p * fp1 * b.df, p * (p - 1.0) * fp2 * b.df * b.df + p * fp1 * b.ddf};
        }
        case ProfileFamily::LogDeriv: {
            const ProfileValue b = eval_node(*n.base, t);
            if (b.f == 0.0) throw std::domain_error("log-derivative profile: base vanishes at t=" + std::to_string(t));
            const double L = b.df / b.f;
            const double dL = b.ddf / b.f - L * L;
            const double d3 = third_node(*n.base, t);
            const double ddL = d3 / b.f - 3.0 * b.df * b.ddf / (b.f * b.f) + 2.0 * L * L * L;
            return {n.p * L, n.p * dL, n.p * ddL};
        }
        case ProfileFamily::Product: {
            const ProfileValue x = eval_node(*n.base, t);
            const ProfileValue y = eval_node(*n.base2, t);
            return {x.f * y.f, x.df * y.f + x.f * y.df, x.ddf * y.f + 2.0 * x.df * y.df + x.f * y.ddf};
        }
        case ProfileFamily::Sum: {
            const ProfileValue x = eval_node(*n.base, t);
            const ProfileValue y = eval_node(*n.base2, t);
            return {x.f + y.f, x.df + y.df, x.ddf + y.ddf};
        }
    }
    throw std::logic_error("unreachable profile family");
}

double third_node(const Node& n, double t) {
    switch (n.family) {
        case ProfileFamily::Sin: {
            const double x = n.b * (t - n.offset);
            return -n.a * n.b * n.b * n.b * std::cos(x);
        }
        case ProfileFamily::Sinh: {
            const double x = n.b * (t - n.offset);
            return n.a * n.b * n.b * n.b * std::cosh(x);
        }
        case ProfileFamily::Linear:
        case ProfileFamily::Constant:
            return 0.0;
        case ProfileFamily::Poly:
            return poly_d3(n.coeffs, t);
        case ProfileFamily::ExpPoly: {
            double q, dq, ddq;
            poly_eval2(n.coeffs, t, q, dq, ddq);
            const double d3q = poly_d3(n.coeffs, t);
            return std::exp(q) * (d3q + 3.0 * ddq * dq + dq * dq * dq);
        }
        case ProfileFamily::Tabulated: {
            // one-sided slope of the nodal second-derivative table
            const int N = static_cast<int>(n.values.size());
            const double s = (t - n.t0) / n.h;
            int i = static_cast<int>(std::floor(s));
            i = std::min(std::max(i, 0), N - 2);
            return (n.d2[i + 1] - n.d2[i]) / n.h;
        }
        case ProfileFamily::Power: {
            const ProfileValue b = eval_node(*n.base, t);
            const double d3 = third_node(*n.base, t);
            const double p = n.p;
            return p * (p - 1.0) * (p - 2.0) * std::pow(b.f, p - 3.0) * b.df * b.df * b.df +
                   3.0 * p * (p - 1.0) * std::pow(b.f, p - 2.0) * b.df * b.ddf +
                   p * std::pow(b.f, p - 1.0) * d3;
        }
        case ProfileFamily::Product: {
            const ProfileValue x = eval_node(*n.base, t);
            const ProfileValue y = eval_node(*n.base2, t);
            const double x3 = third_node(*n.base, t);
            const double y3 = third_node(*n.base2, t);
            return x3 * y.f + 3.0 * x.ddf * y.df + 3.0 * x.df * y.ddf + x.f * y3;
        }
        case ProfileFamily::Sum:
            return third_node(*n.base, t) + third_node(*n.base2, t);
        case ProfileFamily::LogDeriv:
            throw std::logic_error("third derivative of a log-derivative profile is not supported");
    }
    throw std::logic_error("unreachable profile family");
}

std::shared_ptr<Node> make_node(ProfileFamily fam, Interval dom) {
    auto n = std::make_shared<Node>();
    n->family = fam;
    n->dom = dom;
    return n;
}

}  // namespace

WarpingProfile WarpingProfile::sine(double a, double b, double offset, Interval dom) {
    auto n = make_node(ProfileFamily::Sin, dom);
    n->a = a;
    n->b = b;
    n->offset = offset;
    return WarpingProfile(n);
}

WarpingProfile WarpingProfile::hyperbolic(double a, double b, double offset, Interval dom) {
    auto n = make_node(ProfileFamily::Sinh, dom);
    n->a = a;
    n->b = b;
    n->offset = offset;
    return WarpingProfile(n);
}

WarpingProfile WarpingProfile::linear(double a, double offset, Interval dom) {
    auto n = make_node(ProfileFamily::Linear, dom);
    n->a = a;
    n->offset = offset;
    return WarpingProfile(n);
}

WarpingProfile WarpingProfile::constant(double c, Interval dom) {
    auto n = make_node(ProfileFamily::Constant, dom);
    n->a = c;
    return WarpingProfile(n);
}

WarpingProfile WarpingProfile::poly(std::vector<double> coeffs, Interval dom) {
    auto n = make_node(ProfileFamily::Poly, dom);
    n->coeffs = std::move(coeffs);
    return WarpingProfile(n);
}

WarpingProfile WarpingProfile::exp_poly(std::vector<double> coeffs, Interval dom) {
    auto n = make_node(ProfileFamily::ExpPoly, dom);
    n->coeffs = std::move(coeffs);
    return WarpingProfile(n);
}

WarpingProfile WarpingProfile::tabulated(double t0, double h, std::vector<double> values) {
    if (h <= 0.0) throw std::invalid_argument("tabulated profile: spacing must be positive");
    const int N = static_cast<int>(values.size());
    if (N < 5) throw std::invalid_argument("tabulated profile: need at least 5 nodes");
    auto n = make_node(ProfileFamily::Tabulated, Interval{t0, t0 + (N - 1) * h});
    n->t0 = t0;
    n->h = h;
    n->values = std::move(values);

    const auto& f = n->values;
    n->d1.resize(N);
    n->d2.resize(N);
    n->d1[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    n->d1[N - 1] = (3.0 * f[N - 1] - 4.0 * f[N - 2] + f[N - 3]) / (2.0 * h);
    n->d2[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
    n->d2[N - 1] = (2.0 * f[N - 1] - 5.0 * f[N - 2] + 4.0 * f[N - 3] - f[N - 4]) / (h * h);
    for (int i = 1; i < N - 1; ++i) {
        n->d1[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
        n->d2[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
    }
    return WarpingProfile(n);
}

WarpingProfile WarpingProfile::power_of(WarpingProfile base, double p) {
    auto n = make_node(ProfileFamily::Power, base.domain());
    n->p = p;
    n->base = base.node_;
    return WarpingProfile(n);
}

WarpingProfile WarpingProfile::log_derivative(WarpingProfile base, double c) {
    auto n = make_node(ProfileFamily::LogDeriv, base.domain());
    n->p = c;
    n->base = base.node_;
    return WarpingProfile(n);
}

WarpingProfile WarpingProfile::product(WarpingProfile a, WarpingProfile b) {
    if (!same_interval(a.domain(), b.domain()))
        throw std::invalid_argument("product profile: factor domains differ");
    auto n = make_node(ProfileFamily::Product, a.domain());
    n->base = a.node_;
    n->base2 = b.node_;
    return WarpingProfile(n);
}

WarpingProfile WarpingProfile::sum(WarpingProfile a, WarpingProfile b) {
    if (!same_interval(a.domain(), b.domain()))
        throw std::invalid_argument("sum profile: summand domains differ");
    auto n = make_node(ProfileFamily::Sum, a.domain());
    n->base = a.node_;
    n->base2 = b.node_;
    return WarpingProfile(n);
}

ProfileValue WarpingProfile::eval(double t) const {
    if (!node_->dom.contains(t))
        throw std::domain_error("profile evaluated outside its domain: t=" + std::to_string(t));
    return eval_node(*node_, t);
}

double WarpingProfile::third_derivative(double t) const {
    if (!node_->dom.contains(t))
        throw std::domain_error("profile evaluated outside its domain: t=" + std::to_string(t));
    return third_node(*node_, t);
}

const Interval& WarpingProfile::domain() const { return node_->dom; }

ProfileFamily WarpingProfile::family() const { return node_->family; }

double WarpingProfile::min_on(const Interval& iv, int samples) const {
    double m = eval(iv.lo).f;
    for (int i = 1; i < samples; ++i) {
        const double t = iv.lo + iv.length() * i / (samples - 1);
        m = std::min(m, eval(t).f);
    }
    return m;
}

bool WarpingProfile::positive_on_interior(int samples) const {
    const Interval& d = node_->dom;
    const double pad = d.length() / (samples + 1);
    return min_on(Interval{d.lo + pad, d.hi - pad}, samples) > 0.0;
}

ProfileValue eval_profile(const WarpingProfile& profile, double t) { return profile.eval(t); }

nlohmann::json WarpingProfile::to_json() const {
    nlohmann::json j;
    const Node& n = *node_;
    j["family"] = family_name(n.family);
    switch (n.family) {
        case ProfileFamily::Sin:
        case ProfileFamily::Sinh:
            j["a"] = n.a;
            j["b"] = n.b;
            j["offset"] = n.offset;
            j["domain"] = {n.dom.lo, n.dom.hi};
            break;
        case ProfileFamily::Linear:
            j["a"] = n.a;
            j["offset"] = n.offset;
            j["domain"] = {n.dom.lo, n.dom.hi};
            break;
        case ProfileFamily::Constant:
            j["a"] = n.a;
            j["domain"] = {n.dom.lo, n.dom.hi};
            break;
        case ProfileFamily::Poly:
        case ProfileFamily::ExpPoly:
            j["coeffs"] = n.coeffs;
            j["domain"] = {n.dom.lo, n.dom.hi};
            break;
        case ProfileFamily::Tabulated:
            j["t0"] = n.t0;
            j["h"] = n.h;
            j["values"] = n.values;
            break;
        case ProfileFamily::Power:
            j["p"] = n.p;
            j["base"] = WarpingProfile(n.base).to_json();
            break;
        case ProfileFamily::LogDeriv:
            j["c"] = n.p;
            j["base"] = WarpingProfile(n.base).to_json();
            break;
        case ProfileFamily::Product:
        case ProfileFamily::Sum:
            j["base"] = WarpingProfile(n.base).to_json();
            j["base2"] = WarpingProfile(n.base2).to_json();
            break;
    }
    return j;
}

WarpingProfile WarpingProfile::from_json(const nlohmann::json& j) {
    const std::string fam = j.at("family").get<std::string>();
    auto dom = [&]() {
        const auto& d = j.at("domain");
        return Interval{d.at(0).get<double>(), d.at(1).get<double>()};
    };
    if (fam == "sin")
        return sine(j.at("a").get<double>(), j.at("b").get<double>(), j.value("offset", 0.0), dom());
    if (fam == "sinh")
        return hyperbolic(j.at("a").get<double>(), j.at("b").get<double>(), j.value("offset", 0.0), dom());
    if (fam == "linear") return linear(j.at("a").get<double>(), j.value("offset", 0.0), dom());
    if (fam == "constant") return constant(j.at("a").get<double>(), dom());
    if (fam == "poly") return poly(j.at("coeffs").get<std::vector<double>>(), dom());
    if (fam == "exppoly") return exp_poly(j.at("coeffs").get<std::vector<double>>(), dom());
    if (fam == "tabulated")
        return tabulated(j.value("t0", 0.0), j.at("h").get<double>(),
                         j.at("values").get<std::vector<double>>());
    if (fam == "power") return power_of(from_json(j.at("base")), j.at("p").get<double>());
    if (fam == "logderiv") return log_derivative(from_json(j.at("base")), j.at("c").get<double>());
    if (fam == "product") return product(from_json(j.at("base")), from_json(j.at("base2")));
    if (fam == "sum") return sum(from_json(j.at("base")), from_json(j.at("base2")));
    throw std::invalid_argument("unknown profile family: " + fam);
}

}  // namespace warpband
