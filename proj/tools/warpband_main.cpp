// Command-line front end. Subcommands mirror the library modules:
//
//   warpband model      --n 3 --gamma 1 --lambda 2 [--sign positive] [--grid 1000]
//   warpband spectrum   --n 3 --gamma 0 --radius 1 --xi 1 [--kmax 8]
//   warpband verify     --identity rewrite [--seed 7] [--draws 20]
//   warpband cone       --n 3 --gamma 0.5 --aperture 0.8 [--t 0.01 --modes 16 --g1-eps 0.05]
//   warpband check-band --config cfg.json
//
// Every subcommand also accepts --config <file> holding the full run
// configuration, --out <path>, and --tolerance <tol>. The environment
// variable WARPBAND_OUTDIR prefixes relative output paths.
//
// Exit codes: 0 all checks pass, 1 a check is violated, 2 configuration error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "warpband/report.hpp"

namespace {

warpband::RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    nlohmann::json j;
    in >> j;
    return warpband::RunConfig::from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical checks for warped-band rigidity"};
    app.require_subcommand(0, 1);
    app.fallthrough();  // let --out/--tolerance appear after the subcommand

    std::string config_path, out_path;
    double tolerance = 1e-8;
    app.add_option("--config", config_path, "run configuration (JSON)");
    app.add_option("--out", out_path, "primary output file");
    app.add_option("--tolerance", tolerance, "global pass/fail tolerance");

    // model
    auto* model = app.add_subcommand("model", "constant-curvature model family");
    int m_n = 3, m_grid = 1000;
    double m_gamma = 1.0, m_lambda = 2.0;
    std::string m_sign = "positive";
    model->add_option("--n", m_n);
    model->add_option("--gamma", m_gamma);
    model->add_option("--lambda", m_lambda);
    model->add_option("--sign", m_sign)->check(CLI::IsMember({"positive", "negative", "zero"}));
    model->add_option("--grid", m_grid);

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "reduced stability operator spectrum");
    int s_n = 3, s_kmax = 8;
    double s_gamma = 0.0, s_radius = 1.0, s_xi = 1.0;
    spectrum->add_option("--n", s_n);
    spectrum->add_option("--gamma", s_gamma);
    spectrum->add_option("--radius", s_radius);
    spectrum->add_option("--xi", s_xi);
    spectrum->add_option("--kmax", s_kmax);

    // verify
    auto* verify = app.add_subcommand("verify", "variational identity checks");
    std::string v_identity = "first-variation";
    unsigned v_seed = 12345;
    int v_draws = 20;
    double v_h = 1e-3, v_eps = 1e-4;
    verify->add_option("--identity", v_identity)
        ->check(CLI::IsMember({"first-variation", "linearized-eta", "rewrite", "vary-u", "vary-g",
                               "sigma-reduction"}));
    verify->add_option("--seed", v_seed);
    verify->add_option("--draws", v_draws);
    verify->add_option("--fd-step", v_h);
    verify->add_option("--eps", v_eps);

    // cone
    auto* cone = app.add_subcommand("cone", "tangent-cone checks and leaf solver");
    int c_n = 3, c_modes = 16, c_g1mode = 1;
    double c_gamma = 0.0, c_A = 1.0, c_t = 0.01, c_g1eps = 0.0, c_alpha = -1.0;
    cone->add_option("--n", c_n);
    cone->add_option("--gamma", c_gamma);
    cone->add_option("--aperture", c_A);
    cone->add_option("--alpha", c_alpha);
    cone->add_option("--t", c_t);
    cone->add_option("--modes", c_modes);
    cone->add_option("--g1-mode", c_g1mode);
    cone->add_option("--g1-eps", c_g1eps);

    // check-band
    auto* check = app.add_subcommand("check-band", "hypothesis report for a configured band");
    std::string cb_config;
    check->add_option("--config", cb_config, "band + model + map bundle (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        warpband::RunConfig cfg;
        if (!config_path.empty()) {
            cfg = load_config_file(config_path);
        } else if (model->parsed()) {
            cfg.command = warpband::Command::Model;
            cfg.parameters = {{"n", m_n}, {"gamma", m_gamma}, {"lambda", m_lambda},
                              {"sign", m_sign}, {"grid", m_grid}};
        } else if (spectrum->parsed()) {
            cfg.command = warpband::Command::Spectrum;
            cfg.parameters = {{"n", s_n}, {"gamma", s_gamma}, {"radius", s_radius},
                              {"xi", s_xi}, {"kmax", s_kmax}};
        } else if (verify->parsed()) {
            cfg.command = warpband::Command::Verify;
            cfg.parameters = {{"identity", v_identity}, {"seed", v_seed}, {"draws", v_draws},
                              {"h", v_h}, {"eps", v_eps}};
        } else if (cone->parsed()) {
            cfg.command = warpband::Command::Cone;
            cfg.parameters = {{"n", c_n}, {"gamma", c_gamma}, {"aperture", c_A},
                              {"t", c_t}, {"modes", c_modes}, {"g1_mode", c_g1mode},
                              {"g1_eps", c_g1eps}};
            if (c_alpha > 0.0) cfg.parameters["alpha"] = c_alpha;
        } else if (check->parsed()) {
            if (cb_config.empty())
                throw std::invalid_argument("check-band requires --config");
            std::ifstream in(cb_config);
            if (!in) throw std::invalid_argument("cannot read config file: " + cb_config);
            nlohmann::json bundle;
            in >> bundle;
            cfg.command = warpband::Command::CheckBand;
            cfg.parameters = bundle;
            if (bundle.contains("tolerance")) cfg.tolerance = bundle["tolerance"].get<double>();
        } else {
            std::cerr << app.help() << "\n";
            return 2;
        }
        if (!out_path.empty()) cfg.output_path = out_path;
        if (app.count("--tolerance") > 0) cfg.tolerance = tolerance;
        return warpband::run_config(cfg);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
