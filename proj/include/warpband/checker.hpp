// End-to-end hypothesis checking for a symmetric band compared against a
// model band through a radial comparison map: pointwise curvature margins,
// boundary margins, map admissibility, the foliation sweep with its monotone
// quantity, equality (rigidity) detection, and the conical barrier
// classifier.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "warpband/band.hpp"
#include "warpband/model.hpp"

namespace warpband {

struct ComparisonMap {
    // monotone radial reduction tau: [t_-, t_+] -> model interval
    WarpingProfile tau;
};

ComparisonMap identity_map(const Interval& dom);

enum class Verdict { AllHold, Violated, RigidityCase };
std::string verdict_name(Verdict v);

struct HypothesisReport {
    std::vector<double> grid;
    std::vector<double> lambda_margin;  // Lambda_band - Lambda_model(tau)
    double min_lambda_margin = 0.0;
    double argmin_t = 0.0;
    double boundary_plus_margin = 0.0;   // Hw(t_+) - m(tau(t_+))
    double boundary_minus_margin = 0.0;  // m(tau(t_-)) - Hw(t_-)
    bool map_admissible = false;
    bool m_monotone = false;
    Verdict verdict = Verdict::Violated;
    std::vector<std::string> violations;
};

HypothesisReport hypothesis_report(const SymmetricBand& band, const ModelBand& model,
                                   const ComparisonMap& map, double tol, int grid_n = 1001);

struct SweepPoint {
    double t = 0.0;
    double eta = 0.0;
    double Q = 0.0;         // damping coefficient (n mu - gamma w_nu)/(n-1)
    double monotone = 0.0;  // eta(t) exp(int_{t_-}^t Q)
};

struct SweepTrajectory {
    std::vector<SweepPoint> points;
    double max_abs_eta = 0.0;
    bool monotone_nonincreasing = false;
    std::optional<double> first_violation_t;
};

// Sweeps the slices with mu = m_model(tau(t)); requires the curvature margin
// to hold on the range (throws std::runtime_error naming the first failing
// slice otherwise). On round slices the lowest eigenfunction of the reduced
// stability operator is constant; with the unit-square-integral normalization
// the damping ratio collapses to Q = (n mu - gamma w_nu)/(n-1) pointwise.
// The non-increasing check allows increases up to mono_tol.
SweepTrajectory foliation_sweep(const SymmetricBand& band, const ModelBand& model,
                                const ComparisonMap& map, int grid_n = 2001,
                                double margin_tol = 1e-8, double mono_tol = 1e-7);

struct RigidityFlags {
    double t = 0.0;
    bool a0_zero = true;        // structural for round slices
    bool rho_matches = false;   // rho = xi(tau)
    bool tau_unit_speed = false;
    bool w_nu_matches = false;  // w_nu = mu/(2(n-1)-(n-2)gamma)
    bool lambda_tight = false;  // curvature margin vanishes
};

struct RigidityReport {
    std::vector<RigidityFlags> slices;
    bool all_hold = false;
};

// Equality detection at the given flag tolerance. The hypotheses are
// re-checked first at hypothesis_tol (a looser gate than the flags, so that
// near-model bands can still be interrogated); a Violated verdict throws
// std::logic_error.
RigidityReport rigidity_report(const SymmetricBand& band, const ModelBand& model,
                               const ComparisonMap& map, double tol, int grid_n = 257,
                               double hypothesis_tol = 1e-4);

enum class BarrierClass { StrictBarrier, ApproximateBarrier, NotBarrier };
std::string barrier_name(BarrierClass c);

struct BarrierReport {
    BarrierClass cls = BarrierClass::NotBarrier;
    double margin = 0.0;       // limit estimate of t (Hw - model asymptote)
    double decay_rate = 0.0;   // fitted slope of |margin(t)| vs t
};

// Classifies the slices of a conical band near its tip against the model
// asymptote (n - 1 + gamma/(2-gamma))/t: strict when t * defect stays bounded
// away from zero (negative side), approximate when it decays, not-a-barrier
// when it is bounded away on the positive side.
BarrierReport barrier_classifier(const SymmetricBand& band, const ModelBand& model,
                                 double t_level);

}  // namespace warpband
