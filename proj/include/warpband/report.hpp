// Convergence-order bookkeeping, run configuration, and the command
// dispatcher behind the command-line tool. Configurations are JSON; outputs
// are CSV or JSON-lines with floating-point values printed to 17 significant
// digits.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace warpband {

struct ConvergenceRecord {
    std::vector<double> h;
    std::vector<double> residuals;
    double fitted_order = 0.0;  // least-squares slope of log residual vs log h
    bool exact = false;         // all residuals at rounding floor (< 1e-14)
};

// Throws std::invalid_argument with fewer than 3 refinement levels.
ConvergenceRecord convergence_order(std::vector<double> h, std::vector<double> residuals);

enum class Command { Model, Spectrum, Verify, Cone, CheckBand };
std::string command_name(Command c);
Command command_from_name(const std::string& name);

struct RunConfig {
    Command command = Command::Model;
    nlohmann::json parameters;   // nested, mirrors the module inputs
    std::string output_path;     // primary output file (empty = command default)
    double tolerance = 1e-8;

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
};

// Dispatches the configured command, writes its outputs, prints a summary to
// stdout. Returns 0 when all checks pass, 1 when a check is violated;
// configuration errors surface as exceptions (the CLI maps them to exit 2).
int run_config(const RunConfig& config);

// 17-significant-digit formatting used for all numeric output.
std::string fmt17(double v);

}  // namespace warpband
