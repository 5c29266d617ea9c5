#include "warpband/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <stdexcept>

#include "warpband/checker.hpp"
#include "warpband/cone.hpp"
#include "warpband/model.hpp"
#include "warpband/parallel.hpp"
#include "warpband/stability.hpp"
#include "warpband/variation.hpp"

namespace warpband {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ConvergenceRecord convergence_order(std::vector<double> h, std::vector<double> residuals) {
    if (h.size() != residuals.size())
        throw std::invalid_argument("convergence_order: level counts disagree");
    if (h.size() < 3) throw std::invalid_argument("convergence_order: need at least 3 levels");

    ConvergenceRecord rec;
    rec.h = std::move(h);
    rec.residuals = std::move(residuals);

    bool all_floor = true;
    for (double r : rec.residuals) all_floor = all_floor && std::abs(r) < 1e-14;
    if (all_floor) {
        rec.exact = true;
        rec.fitted_order = std::numeric_limits<double>::quiet_NaN();
        return rec;
    }

    // least squares on the levels with usable residuals
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < rec.h.size(); ++i) {
        if (!(rec.residuals[i] > 0.0) || !(rec.h[i] > 0.0)) continue;
        const double x = std::log(rec.h[i]);
        const double y = std::log(rec.residuals[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) {
        rec.exact = true;
        rec.fitted_order = std::numeric_limits<double>::quiet_NaN();
        return rec;
    }
    rec.fitted_order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return rec;
}

std::string command_name(Command c) {
    switch (c) {
        case Command::Model: return "model";
        case Command::Spectrum: return "spectrum";
        case Command::Verify: return "verify";
        case Command::Cone: return "cone";
        case Command::CheckBand: return "check-band";
    }
    return "?";
}

Command command_from_name(const std::string& name) {
    if (name == "model") return Command::Model;
    if (name == "spectrum") return Command::Spectrum;
    if (name == "verify") return Command::Verify;
    if (name == "cone") return Command::Cone;
    if (name == "check-band") return Command::CheckBand;
    throw std::invalid_argument("unknown command: " + name);
}

nlohmann::json RunConfig::to_json() const {
    return nlohmann::json{{"command", command_name(command)},
                          {"parameters", parameters},
                          {"output_path", output_path},
                          {"tolerance", tolerance}};
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    c.command = command_from_name(j.at("command").get<std::string>());
    c.parameters = j.value("parameters", nlohmann::json::object());
    c.output_path = j.value("output_path", std::string{});
    c.tolerance = j.value("tolerance", 1e-8);
    if (!(c.tolerance > 0.0)) throw std::invalid_argument("tolerance must be strictly positive");
    return c;
}

namespace {

std::filesystem::path resolve_output(const std::string& requested, const std::string& fallback) {
    std::filesystem::path p = requested.empty() ? std::filesystem::path(fallback)
                                                : std::filesystem::path(requested);
    if (const char* dir = std::getenv("WARPBAND_OUTDIR"); dir && *dir && p.is_relative())
        p = std::filesystem::path(dir) / p;
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    return p;
}

std::ofstream open_output(const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw std::invalid_argument("cannot open output file: " + p.string());
    return out;
}

nlohmann::json report_row(const std::string& identity, const QuadraticFormReport& r, bool pass) {
    return nlohmann::json{{"identity", identity},
                          {"lhs", r.lhs},
                          {"rhs", r.rhs},
                          {"residual", r.residual},
                          {"grid_h", r.grid_h},
                          {"convergence_order", r.convergence_order},
                          {"pass", pass}};
}

int run_model(const RunConfig& cfg) {
    const auto& p = cfg.parameters;
    ModelSpec spec;
    spec.n = p.value("n", 3);
    spec.gamma = p.value("gamma", 1.0);
    spec.Lambda = p.value("lambda", 2.0);
    if (p.contains("domain"))
        spec.domain = Interval{p["domain"][0].get<double>(), p["domain"][1].get<double>()};
    const ModelSign sign = sign_from_name(p.value("sign", std::string("positive")));
    const int grid = p.value("grid", 1000);

    const ModelBand mb = make_model_band(spec, sign);
    double a = 1.0, b = 1.0;
    if (spec.gamma != 0.0) {
        const ModelCoefficients c = model_coefficients(
            spec.n, spec.gamma, sign == ModelSign::Zero ? 1.0 : spec.Lambda);
        a = c.a;
        b = c.b;
    }

    auto out = open_output(resolve_output(cfg.output_path, "model.csv"));
    out << "# a=" << fmt17(a) << " b=" << fmt17(b) << " sign=" << sign_name(sign) << "\n";
    out << "t,xi,m,u,lambda_residual\n";
    const Interval dom = mb.band.domain();
    double worst = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double t = dom.lo + dom.length() * i / (grid - 1);
        const double res = spectral_scalar_curvature(mb.band, t) - mb.signed_Lambda;
        const double ode =
            model_ode_residual(mb.profiles.rho, spec.n, spec.gamma, mb.signed_Lambda, t);
        worst = std::max({worst, std::abs(res), std::abs(ode)});
        out << fmt17(t) << ',' << fmt17(mb.profiles.rho.eval(t).f) << ','
            << fmt17(mb.profiles.m.eval(t).f) << ',' << fmt17(mb.profiles.u.eval(t).f) << ','
            << fmt17(res) << '\n';
    }
    std::cout << "model: a=" << fmt17(a) << " b=" << fmt17(b)
              << " max_residual=" << fmt17(worst) << "\n";
    return worst < cfg.tolerance ? 0 : 1;
}

int run_spectrum(const RunConfig& cfg) {
    const auto& p = cfg.parameters;
    const auto entries =
        ltilde_spectrum(p.value("n", 3), p.value("gamma", 0.0), p.value("radius", 1.0),
                        p.value("xi", 1.0), p.value("kmax", 8));
    auto out = open_output(resolve_output(cfg.output_path, "spectrum.csv"));
    out << "k,multiplicity,lambda\n";
    for (const auto& e : entries)
        out << e.degree << ',' << e.multiplicity << ',' << fmt17(e.lambda) << '\n';
    std::cout << "spectrum: lambda0=" << fmt17(entries.front().lambda) << "\n";
    return 0;
}

SymmetricBand default_verify_band() {
    const Interval dom{0.4, 2.6};
    return SymmetricBand(3, WarpingProfile::sine(1.0, 1.0, 0.0, dom),
                         WarpingProfile::exp_poly({0.0, 0.3, -0.1}, dom), 1.0);
}

int run_verify(const RunConfig& cfg) {
    const auto& p = cfg.parameters;
    const std::string identity = p.value("identity", std::string("first-variation"));
    const unsigned seed = p.value("seed", 12345u);
    auto out = open_output(resolve_output(cfg.output_path, "verify.jsonl"));

    bool all_pass = true;
    auto emit = [&](const std::string& name, const QuadraticFormReport& r, bool pass) {
        all_pass = all_pass && pass;
        out << report_row(name, r, pass).dump() << "\n";
    };

    if (identity == "first-variation" || identity == "linearized-eta") {
        const SymmetricBand band = default_verify_band();
        const WarpingProfile mu = WarpingProfile::constant(0.5, band.domain());
        const double s = 1.3;
        const QuadraticFormReport r =
            identity == "first-variation"
                ? first_variation_check(band, mu, s, p.value("h", 1e-3))
                : linearized_eta_check(band, mu, s, p.value("h", 1e-4));
        emit(identity, r, r.convergence_order > 1.5 || r.residual < 1e-10);
    } else if (identity == "rewrite") {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> coef(-0.25, 0.25), gdist(0.0, 3.5);
        const int draws = p.value("draws", 20);
        for (int i = 0; i < draws; ++i) {
            AxisymmetricPoly u({1.0, coef(rng), coef(rng)});
            AxisymmetricPoly phi({coef(rng), 1.0, coef(rng), coef(rng)});
            const QuadraticFormReport r = rewrite_identity_check(gdist(rng), u, phi, 1.0);
            emit(identity, r, r.residual < 1e-8);
        }
    } else if (identity == "vary-u" || identity == "vary-g") {
        const SymmetricBand band = default_verify_band();
        const WarpingProfile delta = WarpingProfile::poly({0.2, 0.1, 0.05}, band.domain());
        const QuadraticFormReport r = integral_identity_check(
            band, identity == "vary-u" ? VariationFamily::VaryU : VariationFamily::VaryG, delta,
            p.value("eps", 1e-4));
        emit(identity, r, r.convergence_order > 1.5 || r.residual < 1e-9);
    } else if (identity == "sigma-reduction") {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> coef(-0.2, 0.2);
        const Interval dom{0.5, 1.5};
        const SymmetricBand cyl(3, WarpingProfile::constant(1.0, dom),
                                WarpingProfile::exp_poly({0.0, coef(rng), coef(rng)}, dom), 1.0);
        const double sigma = p.value("sigma", 0.5);
        const WarpingProfile v = sigma_reduction(cyl.weight(), sigma, cyl.gamma());
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double t = dom.lo + dom.length() * i / 100.0;
            const ProfileValue u = cyl.weight().eval(t);
            const ProfileValue rv = cyl.rho().eval(t);
            const double lap_u = u.ddf + 2.0 * (rv.df / rv.f) * u.df;
            const double lhs = -lap_u / u.f + sigma * (u.df / u.f) * (u.df / u.f);
            const ProfileValue vv = v.eval(t);
            const double lap_v = vv.ddf + 2.0 * (rv.df / rv.f) * vv.df;
            const double rhs = -(1.0 / (1.0 - sigma)) * lap_v / vv.f;
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        QuadraticFormReport r;
        r.residual = worst;
        emit(identity, r, worst < 1e-9);
    } else {
        throw std::invalid_argument("unknown identity: " + identity);
    }
    std::cout << "verify " << identity << ": " << (all_pass ? "pass" : "FAIL") << "\n";
    return all_pass ? 0 : 1;
}

int run_cone(const RunConfig& cfg) {
    const auto& p = cfg.parameters;
    ConeModel cone(p.value("aperture", 1.0), p.value("n", 3), p.value("gamma", 0.0));
    if (p.contains("alpha")) cone = ConeModel(cone.A, cone.n, cone.gamma, p["alpha"].get<double>());
    const double t = p.value("t", 0.01);
    const int modes = p.value("modes", 16);

    auto out = open_output(resolve_output(cfg.output_path, "cone.jsonl"));
    const auto [rad, sph] = cone_tensor_components(cone);
    const ConditionMargin cm = cross_section_condition(cone.n, cone.gamma, cone.A);
    out << nlohmann::json{{"record", "tensors"},
                          {"R_rad_t2", rad},
                          {"R_sph_t2", sph},
                          {"condition_margin", cm.margin},
                          {"condition_holds", cm.holds},
                          {"conformant", cone.conformant()}}
            .dump()
        << "\n";

    bool ok = cm.holds;
    if (p.value("g1_eps", 0.0) != 0.0) {
        const int mode = p.value("g1_mode", 1);
        AxisymmetricPoly q = (cone.n == 3) ? legendre_poly(mode) : chebyshev_u_poly(mode);
        std::vector<double> qc = q.coeffs();
        for (double& c : qc) c *= p["g1_eps"].get<double>();
        const LeafSolution leaf = cone_foliation_leaf(cone, AxisymmetricPoly(qc), t, modes);
        out << nlohmann::json{{"record", "leaf"},
                              {"coeffs", leaf.coeffs},
                              {"eta_hat", leaf.eta_hat},
                              {"residual_norm", leaf.residual_norm},
                              {"iterations", leaf.iterations},
                              {"converged", leaf.converged}}
                .dump()
            << "\n";
        ok = ok && leaf.converged;
    }
    std::cout << "cone: margin=" << fmt17(cm.margin) << (ok ? " pass" : " FAIL") << "\n";
    return ok ? 0 : 1;
}

int run_check_band(const RunConfig& cfg) {
    const auto& p = cfg.parameters;
    const auto& jb = p.at("band");
    SymmetricBand band(jb.at("n").get<int>(), WarpingProfile::from_json(jb.at("rho")),
                       WarpingProfile::from_json(jb.at("u")), jb.at("gamma").get<double>(),
                       jb.value("conical", false));
    const auto& jm = p.at("model");
    ModelSpec spec;
    spec.n = jm.at("n").get<int>();
    spec.gamma = jm.at("gamma").get<double>();
    spec.Lambda = jm.at("lambda").get<double>();
    if (jm.contains("domain"))
        spec.domain = Interval{jm["domain"][0].get<double>(), jm["domain"][1].get<double>()};
    const ModelBand model =
        make_model_band(spec, sign_from_name(jm.value("sign", std::string("positive"))));
    ComparisonMap map{WarpingProfile::from_json(p.at("map").at("tau"))};

    const HypothesisReport rep = hypothesis_report(band, model, map, cfg.tolerance);

    auto out = open_output(resolve_output(cfg.output_path, "check_band.json"));
    nlohmann::json jr{{"verdict", verdict_name(rep.verdict)},
                      {"min_lambda_margin", rep.min_lambda_margin},
                      {"argmin_t", rep.argmin_t},
                      {"boundary_plus_margin", rep.boundary_plus_margin},
                      {"boundary_minus_margin", rep.boundary_minus_margin},
                      {"map_admissible", rep.map_admissible},
                      {"m_monotone", rep.m_monotone},
                      {"violations", rep.violations}};
    out << jr.dump(2) << "\n";

    if (rep.verdict != Verdict::Violated) {
        const SweepTrajectory traj = foliation_sweep(band, model, map);
        auto tout = open_output(resolve_output("", "sweep.csv"));
        tout << "t,eta,Q,monotone\n";
        for (const auto& pt : traj.points)
            tout << fmt17(pt.t) << ',' << fmt17(pt.eta) << ',' << fmt17(pt.Q) << ','
                 << fmt17(pt.monotone) << '\n';
    }
    std::cout << "check-band: " << verdict_name(rep.verdict) << "\n";
    return rep.verdict == Verdict::Violated ? 1 : 0;
}

}  // namespace

int run_config(const RunConfig& config) {
    switch (config.command) {
        case Command::Model: return run_model(config);
        case Command::Spectrum: return run_spectrum(config);
        case Command::Verify: return run_verify(config);
        case Command::Cone: return run_cone(config);
        case Command::CheckBand: return run_check_band(config);
    }
    throw std::invalid_argument("unknown command");
}

}  // namespace warpband
