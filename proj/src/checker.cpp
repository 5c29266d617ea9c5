#include "warpband/checker.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "warpband/parallel.hpp"
#include "warpband/report.hpp"

namespace warpband {

ComparisonMap identity_map(const Interval& dom) {
    return ComparisonMap{WarpingProfile::linear(1.0, 0.0, dom)};
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::AllHold: return "AllHold";
        case Verdict::Violated: return "Violated";
        case Verdict::RigidityCase: return "RigidityCase";
    }
    return "?";
}

namespace {

struct SliceMargins {
    double lambda_margin;
    double tau;
    double dtau;
    double rho_minus_xi;
};

SliceMargins margins_at(const SymmetricBand& band, const ModelBand& model,
                        const ComparisonMap& map, double t) {
    const ProfileValue tv = map.tau.eval(t);
    const double tau = model.band.domain().clamp(tv.f);
    SliceMargins m;
    m.tau = tv.f;
    m.dtau = tv.df;
    m.lambda_margin =
        spectral_scalar_curvature(band, t) - spectral_scalar_curvature(model.band, tau);
    m.rho_minus_xi = band.rho().eval(t).f - model.profiles.rho.eval(tau).f;
    return m;
}

RigidityReport rigidity_flags(const SymmetricBand& band, const ModelBand& model,
                              const ComparisonMap& map, double tol, int grid_n) {
    const Interval dom = band.domain();
    const int n = band.dimension();
    const double gamma = band.gamma();
    const double denomC = 2.0 * (n - 1) - (n - 2) * gamma;

    RigidityReport rep;
    rep.slices.resize(grid_n);
    rep.all_hold = true;
    for (int i = 0; i < grid_n; ++i) {
        const double t = dom.lo + dom.length() * i / (grid_n - 1);
        const SliceMargins m = margins_at(band, model, map, t);
        const double tau = model.band.domain().clamp(m.tau);
        const double mu = model.profiles.m.eval(tau).f;
        const ProfileValue u = band.weight().eval(t);

        RigidityFlags f;
        f.t = t;
        f.a0_zero = true;
        f.rho_matches = std::abs(m.rho_minus_xi) <= tol * std::max(1.0, std::abs(band.rho().eval(t).f));
        f.tau_unit_speed = std::abs(m.dtau - 1.0) <= tol;
        f.w_nu_matches = std::abs(u.df / u.f - mu / denomC) <= tol;
        f.lambda_tight = std::abs(m.lambda_margin) <= tol;
        rep.all_hold = rep.all_hold && f.a0_zero && f.rho_matches && f.tau_unit_speed &&
                       f.w_nu_matches && f.lambda_tight;
        rep.slices[i] = f;
    }
    return rep;
}

}  // namespace

HypothesisReport hypothesis_report(const SymmetricBand& band, const ModelBand& model,
                                   const ComparisonMap& map, double tol, int grid_n) {
    if (band.dimension() != model.band.dimension())
        throw std::invalid_argument("hypothesis_report: band and model dimensions differ");
    if (grid_n < 3) throw std::invalid_argument("hypothesis_report: grid too small");

    const Interval dom = band.domain();
    const Interval mdom = model.band.domain();

    HypothesisReport rep;
    rep.grid.resize(grid_n);
    rep.lambda_margin.resize(grid_n);

    std::vector<double> dtau(grid_n), map_deficit(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        const double t = dom.lo + dom.length() * i / (grid_n - 1);
        rep.grid[i] = t;
        const SliceMargins m = margins_at(band, model, map, t);
        rep.lambda_margin[i] = m.lambda_margin;
        dtau[i] = m.dtau;
        map_deficit[i] = m.rho_minus_xi;
    }

    auto argmin = std::min_element(rep.lambda_margin.begin(), rep.lambda_margin.end());
    rep.min_lambda_margin = *argmin;
    rep.argmin_t = rep.grid[static_cast<std::size_t>(argmin - rep.lambda_margin.begin())];

    // boundary comparisons (slice normal +d/dt on both; the inequality flips
    // orientation at the lower boundary)
    const double tau_plus = mdom.clamp(map.tau.eval(dom.hi).f);
    const double tau_minus = mdom.clamp(map.tau.eval(dom.lo).f);
    const double hw_plus = slice_geometry(band, dom.hi, 0.0).Hw;
    const double hw_minus = slice_geometry(band, dom.lo, 0.0).Hw;
    rep.boundary_plus_margin = hw_plus - model.profiles.m.eval(tau_plus).f;
    rep.boundary_minus_margin = model.profiles.m.eval(tau_minus).f - hw_minus;

    // map admissibility: |tau'| <= 1, rho >= xi(tau), endpoints onto the model boundary
    const double scale = std::max(1.0, mdom.length());
    bool speed_ok = true, dominance_ok = true;
    for (int i = 0; i < grid_n; ++i) {
        speed_ok = speed_ok && std::abs(dtau[i]) <= 1.0 + tol;
        dominance_ok = dominance_ok && map_deficit[i] >= -tol * scale;
    }
    const bool endpoints_ok = std::abs(map.tau.eval(dom.lo).f - mdom.lo) <= tol * scale &&
                              std::abs(map.tau.eval(dom.hi).f - mdom.hi) <= tol * scale;
    rep.map_admissible = speed_ok && dominance_ok && endpoints_ok;

    // monotone defect function of the model
    double worst_mprime = -1e300;
    for (int i = 0; i < grid_n; ++i) {
        const double s = mdom.lo + mdom.length() * i / (grid_n - 1);
        worst_mprime = std::max(worst_mprime, model.profiles.m.eval(s).df);
    }
    rep.m_monotone = worst_mprime < tol;

    if (rep.min_lambda_margin < -tol) rep.violations.push_back("curvature comparison fails at t=" +
                                                               std::to_string(rep.argmin_t));
    if (rep.boundary_plus_margin < -tol) rep.violations.push_back("upper boundary comparison fails");
    if (rep.boundary_minus_margin < -tol) rep.violations.push_back("lower boundary comparison fails");
    if (!speed_ok) rep.violations.push_back("map exceeds unit speed");
    if (!dominance_ok) rep.violations.push_back("metric does not dominate the model through the map");
    if (!endpoints_ok) rep.violations.push_back("map does not reach the model boundary values");
    if (!rep.m_monotone) rep.violations.push_back("model defect function is not strictly decreasing");

    if (!rep.violations.empty()) {
        rep.verdict = Verdict::Violated;
        return rep;
    }
    // equality flags always use their own default tolerance, independent of
    // the (possibly looser) margin tolerance
    rep.verdict = rigidity_flags(band, model, map, 1e-8, std::min(grid_n, 257)).all_hold
                      ? Verdict::RigidityCase
                      : Verdict::AllHold;
    return rep;
}

SweepTrajectory foliation_sweep(const SymmetricBand& band, const ModelBand& model,
                                const ComparisonMap& map, int grid_n, double margin_tol,
                                double mono_tol) {
    if (grid_n < 3) throw std::invalid_argument("foliation_sweep: empty or degenerate range");
    const Interval dom = band.domain();
    if (!(dom.length() > 0.0)) throw std::invalid_argument("foliation_sweep: empty range");
    const int n = band.dimension();
    const double gamma = band.gamma();

    SweepTrajectory traj;
    traj.points.resize(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        const double t = dom.lo + dom.length() * i / (grid_n - 1);
        const SliceMargins m = margins_at(band, model, map, t);
        if (m.lambda_margin < -margin_tol)
            throw std::runtime_error("foliation_sweep: curvature hypothesis fails at t=" +
                                     std::to_string(t) + " (margin " +
                                     std::to_string(m.lambda_margin) + ")");
        const double tau = model.band.domain().clamp(m.tau);
        const double mu = model.profiles.m.eval(tau).f;
        const SliceGeometry g = slice_geometry(band, t, mu);
        const ProfileValue u = band.weight().eval(t);

        SweepPoint p;
        p.t = t;
        p.eta = g.eta;
        p.Q = (n * mu - gamma * u.df / u.f) / (n - 1);
        traj.points[i] = p;
        traj.max_abs_eta = std::max(traj.max_abs_eta, std::abs(g.eta));
    }

    // cumulative trapezoid of Q, then the damped defect
    double acc = 0.0;
    traj.points[0].monotone = traj.points[0].eta;
    for (int i = 1; i < grid_n; ++i) {
        const double dt = traj.points[i].t - traj.points[i - 1].t;
        acc += 0.5 * (traj.points[i].Q + traj.points[i - 1].Q) * dt;
        traj.points[i].monotone = traj.points[i].eta * std::exp(std::min(acc, 700.0));
    }

    traj.monotone_nonincreasing = true;
    for (int i = 1; i < grid_n; ++i) {
        if (traj.points[i].monotone > traj.points[i - 1].monotone + mono_tol) {
            traj.monotone_nonincreasing = false;
            traj.first_violation_t = traj.points[i].t;
            break;
        }
    }
    return traj;
}

RigidityReport rigidity_report(const SymmetricBand& band, const ModelBand& model,
                               const ComparisonMap& map, double tol, int grid_n,
                               double hypothesis_tol) {
    const HypothesisReport hyp = hypothesis_report(band, model, map, hypothesis_tol);
    if (hyp.verdict == Verdict::Violated)
        throw std::logic_error("rigidity_report requires a band whose hypotheses hold");
    return rigidity_flags(band, model, map, tol, grid_n);
}

std::string barrier_name(BarrierClass c) {
    switch (c) {
        case BarrierClass::StrictBarrier: return "StrictBarrier";
        case BarrierClass::ApproximateBarrier: return "ApproximateBarrier";
        case BarrierClass::NotBarrier: return "NotBarrier";
    }
    return "?";
}

BarrierReport barrier_classifier(const SymmetricBand& band, const ModelBand& model,
                                 double t_level) {
    if (!band.conical())
        throw std::invalid_argument("barrier_classifier requires a conical band");
    const double gamma = band.gamma();
    if (std::abs(gamma - model.spec.gamma) > 1e-12)
        throw std::invalid_argument("barrier_classifier: band and model exponents differ");
    const Interval dom = band.domain();
    if (!(t_level > dom.lo && t_level <= dom.hi))
        throw std::invalid_argument("barrier_classifier: level outside the band");

    const int n = band.dimension();
    const double asym = (n - 1) + gamma / (2.0 - gamma);  // model leading coefficient

    const int levels = 9;
    std::vector<double> ts(levels), d(levels);
    for (int k = 0; k < levels; ++k) {
        const double t = t_level * std::pow(0.5, k);
        if (!(t > dom.lo)) {
            ts.resize(k);
            d.resize(k);
            break;
        }
        const double hw = slice_geometry(band, t, 0.0).Hw;
        ts[k] = t;
        d[k] = t * hw - asym;
    }
    if (ts.size() < 3)
        throw std::invalid_argument("barrier_classifier: too few scales above the tip");

    BarrierReport rep;
    rep.margin = d.back();

    bool all_tiny = true;
    for (double v : d) all_tiny = all_tiny && std::abs(v) < 1e-10;
    if (all_tiny) {
        rep.cls = BarrierClass::ApproximateBarrier;
        rep.decay_rate = 0.0;
        return rep;
    }

    std::vector<double> mags(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) mags[i] = std::abs(d[i]);
    const ConvergenceRecord rec = convergence_order(ts, mags);
    rep.decay_rate = rec.exact ? 10.0 : rec.fitted_order;

    if (rep.decay_rate >= 0.5)
        rep.cls = BarrierClass::ApproximateBarrier;
    else
        rep.cls = (rep.margin < 0.0) ? BarrierClass::StrictBarrier : BarrierClass::NotBarrier;
    return rep;
}

}  // namespace warpband
