#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "warpband/report.hpp"

using namespace warpband;
namespace fs = std::filesystem;

namespace {

struct OutdirGuard {
    fs::path dir;
    OutdirGuard() {
        dir = fs::temp_directory_path() / "warpband_test_out";
        fs::create_directories(dir);
        setenv("WARPBAND_OUTDIR", dir.c_str(), 1);
    }
    ~OutdirGuard() { unsetenv("WARPBAND_OUTDIR"); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("convergence order fitting") {
    SUBCASE("constructed second-order data") {
        const ConvergenceRecord rec =
            convergence_order({0.1, 0.05, 0.025}, {1e-2, 2.5e-3, 6.25e-4});
        CHECK_FALSE(rec.exact);
        CHECK(rec.fitted_order == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("rounding-floor residuals report the exact sentinel") {
        const ConvergenceRecord rec =
            convergence_order({0.1, 0.05, 0.025}, {1e-15, 2e-16, 3e-15});
        CHECK(rec.exact);
    }
    SUBCASE("two levels are not enough") {
        CHECK_THROWS_AS(convergence_order({0.1, 0.05}, {1e-2, 2.5e-3}), std::invalid_argument);
    }
}

TEST_CASE("run configuration round-trips through JSON") {
    RunConfig cfg;
    cfg.command = Command::Cone;
    cfg.parameters = {{"n", 4}, {"gamma", 0.5}, {"aperture", 0.8}, {"t", 0.01}};
    cfg.output_path = "cone_out.jsonl";
    cfg.tolerance = 1e-9;
    const RunConfig back = RunConfig::from_json(cfg.to_json());
    CHECK(back.command == cfg.command);
    CHECK(back.parameters == cfg.parameters);
    CHECK(back.output_path == cfg.output_path);
    CHECK(back.tolerance == cfg.tolerance);
}

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(command_from_name("foo"), std::invalid_argument);
    nlohmann::json j{{"command", "model"}, {"tolerance", -1.0}};
    CHECK_THROWS_AS(RunConfig::from_json(j), std::invalid_argument);
}

TEST_CASE("model run emits coefficients and passes") {
    OutdirGuard guard;
    RunConfig cfg;
    cfg.command = Command::Model;
    cfg.parameters = {{"n", 3}, {"gamma", 1.0}, {"lambda", 2.0}, {"sign", "positive"}};
    cfg.output_path = "model_a.csv";
    cfg.tolerance = 1e-8;
    CHECK(run_config(cfg) == 0);
    const std::string text = slurp(guard.dir / "model_a.csv");
    CHECK(text.find("# a=1 b=0.57735026918962") != std::string::npos);
    CHECK(text.find("t,xi,m,u,lambda_residual") != std::string::npos);
}

TEST_CASE("spectrum run emits the eigenvalue table") {
    OutdirGuard guard;
    RunConfig cfg;
    cfg.command = Command::Spectrum;
    cfg.parameters = {{"n", 3}, {"gamma", 0.0}, {"radius", 1.0}, {"xi", 1.0}, {"kmax", 2}};
    cfg.output_path = "spec.csv";
    CHECK(run_config(cfg) == 0);
    const std::string text = slurp(guard.dir / "spec.csv");
    CHECK(text.find("0,1,0\n") != std::string::npos);
    CHECK(text.find("1,3,2\n") != std::string::npos);
    CHECK(text.find("2,5,6\n") != std::string::npos);
}

TEST_CASE("verify run reports identity checks as JSON lines") {
    OutdirGuard guard;
    RunConfig cfg;
    cfg.command = Command::Verify;
    cfg.parameters = {{"identity", "rewrite"}, {"draws", 5}, {"seed", 3u}};
    cfg.output_path = "rewrite.jsonl";
    CHECK(run_config(cfg) == 0);
    std::ifstream in(guard.dir / "rewrite.jsonl");
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j.at("pass").get<bool>());
        CHECK(j.at("residual").get<double>() < 1e-8);
        ++rows;
    }
    CHECK(rows == 5);
}

TEST_CASE("check-band run on the model itself reports the rigidity case") {
    OutdirGuard guard;
    const nlohmann::json xi{{"family", "sin"},
                            {"a", 1.0},
                            {"b", 0.5773502691896258},
                            {"domain", {0.11, 5.33}}};
    RunConfig cfg;
    cfg.command = Command::CheckBand;
    cfg.parameters = {
        {"band",
         {{"n", 3},
          {"gamma", 1.0},
          {"rho", xi},
          {"u", xi}}},
        {"model", {{"n", 3}, {"gamma", 1.0}, {"lambda", 2.0}, {"sign", "positive"},
                   {"domain", {0.11, 5.33}}}},
        {"map", {{"tau", {{"family", "linear"}, {"a", 1.0}, {"domain", {0.11, 5.33}}}}}}};
    cfg.output_path = "report.json";
    CHECK(run_config(cfg) == 0);
    const auto j = nlohmann::json::parse(slurp(guard.dir / "report.json"));
    CHECK(j.at("verdict").get<std::string>() == "RigidityCase");
    CHECK(fs::exists(guard.dir / "sweep.csv"));
}

TEST_CASE("floating point output carries 17 significant digits") {
    CHECK(fmt17(1.0 / 3.0) == "0.33333333333333331");
    CHECK(fmt17(2.0) == "2");
}
