// Timing comparison of the OpenMP kernels against their serial references:
// a max-|residual| scan of the model curvature equation over a large grid,
// and composite Simpson quadrature of a weighted-volume integrand.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "warpband/model.hpp"
#include "warpband/parallel.hpp"

using namespace warpband;

namespace {

template <class F>
double time_ms(F&& f, int reps, double& result) {
    // one warm-up, then best of reps
    result = f();
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        result = f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main() {
    std::printf("threads: %d (parallel %s)\n\n", par::thread_count(),
                par::parallel_enabled() ? "on" : "off");

    const ModelSpec spec{3, 1.0, 2.0, {}};
    const ModelBand mb = make_model_band(spec, ModelSign::Positive);
    const Interval dom = mb.band.domain();
    const long grid = 4'000'000;

    auto residual_at = [&](std::int64_t i) {
        const double t = dom.lo + dom.length() * static_cast<double>(i) / (grid - 1);
        return model_ode_residual(mb.profiles.rho, spec.n, spec.gamma, spec.Lambda, t);
    };

    double r_par = 0.0, r_ser = 0.0;
    const double t_scan_par = time_ms([&] { return par::max_abs(grid, residual_at); }, 3, r_par);
    const double t_scan_ser =
        time_ms([&] { return par::max_abs_serial(grid, residual_at); }, 3, r_ser);
    std::printf("max-|residual| scan, %ld points:\n", grid);
    std::printf("  parallel: %8.2f ms   (max = %.3e)\n", t_scan_par, r_par);
    std::printf("  serial:   %8.2f ms   (max = %.3e)\n", t_scan_ser, r_ser);
    std::printf("  speedup:  %8.2fx   agreement: %.1e\n\n", t_scan_ser / t_scan_par,
                std::abs(r_par - r_ser));

    auto integrand = [&](double t) {
        const double u = mb.profiles.u.eval(t).f;
        const double rho = mb.profiles.rho.eval(t).f;
        return u * u * rho * rho * std::exp(std::sin(8.0 * t));
    };
    double q_par = 0.0, q_ser = 0.0;
    const int nodes = 2'000'001;
    const double t_q_par =
        time_ms([&] { return par::simpson(integrand, dom.lo, dom.hi, nodes); }, 3, q_par);
    const double t_q_ser =
        time_ms([&] { return par::simpson_serial(integrand, dom.lo, dom.hi, nodes); }, 3, q_ser);
    std::printf("simpson quadrature, %d nodes:\n", nodes);
    std::printf("  parallel: %8.2f ms   (value = %.15g)\n", t_q_par, q_par);
    std::printf("  serial:   %8.2f ms   (value = %.15g)\n", t_q_ser, q_ser);
    std::printf("  speedup:  %8.2fx   agreement: %.1e\n", t_q_ser / t_q_par,
                std::abs(q_par - q_ser) / std::abs(q_ser));
    return 0;
}
