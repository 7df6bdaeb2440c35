#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lienard/dynamics.hpp"
#include "lienard/system.hpp"

namespace lienard {

enum class CheckId {
    XdotNeg,
    YdotNeg,
    XddotNeg,
    YddotPos,
    PhiNonneg,
    PhidotPos,
    DedtNeg,
    RateBound,
    LieResidual,
};

inline constexpr std::array<CheckId, 9> kAllChecks{
    CheckId::XdotNeg,   CheckId::YdotNeg,   CheckId::XddotNeg,
    CheckId::YddotPos,  CheckId::PhiNonneg, CheckId::PhidotPos,
    CheckId::DedtNeg,   CheckId::RateBound, CheckId::LieResidual,
};

/// Stable identifier used in reports, e.g. "XDOT_NEG".
std::string check_name(CheckId id);

struct CheckTally {
    long pass = 0;
    long fail = 0;
    /// Passing samples whose margin is below 1e-10 (only tracked for the
    /// non-strict PHI_NONNEG check).
    long boundary = 0;
    /// Smallest signed margin seen; positive means satisfied. Absent when no
    /// sample was evaluated.
    std::optional<double> min_margin;
    /// x-range of failing samples, when any.
    std::optional<std::pair<double, double>> fail_x_range;
};

struct MinorskyReport {
    std::string system_name;
    double eps = 0.0;
    double band_multiplier = 0.0;
    long n_points = 0;
    std::map<CheckId, CheckTally> checks;
    bool assumptions_hold = false;
    bool overall = false;
};

/// Relative tolerance on the Lie-derivative identity residual.
inline constexpr double kLieRelTol = 1e-8;

struct PointChecks {
    std::array<double, 9> margins{};  // indexed like kAllChecks
};

/// Signed margins of all nine checks at one state; positive means satisfied.
PointChecks point_margins(const LienardSystem& sys, const State& s);

/**
 * Evaluates the curvature/energy sign conditions at every sample of the
 * slow-vicinity segment of a converged cycle. Checks never abort the run;
 * failures are counted. overall is true iff the assumptions hold, at least
 * one sample was evaluated and no check recorded a failure.
 *
 * Throws std::invalid_argument for an unconverged cycle; vicinity extraction
 * errors propagate.
 */
MinorskyReport minorsky_report(const LienardSystem& sys, const LimitCycle& cycle,
                               double band_multiplier, const VicinityOptions& vopts = {});

/// Report for a system whose hypotheses fail: all tallies empty, overall false.
MinorskyReport unevaluated_report(const LienardSystem& sys, double band_multiplier);

struct ConvergenceStudy {
    std::vector<double> eps_values;
    /// max |y - y_slow(x)| over slow-descent samples with x in the probe window.
    std::vector<double> distances;
    double fitted_order = 0.0;
    /// Same measurement against the critical manifold y = F(x).
    std::vector<double> critical_distances;
    double critical_fitted_order = 0.0;
};

/// Least-squares slope of log(values) against log(eps).
double fit_loglog_slope(const std::vector<double>& eps, const std::vector<double>& values);

struct StudyOptions {
    double cycle_tol = 1e-9;
    int max_iter = 50;
    double y_guess = 1.0;
    CycleOptions cycle;
};

/**
 * For each eps, finds the limit cycle and measures how far its slow descent
 * lies from the phi = 0 slow branch (and from the critical manifold) over
 * x_probe, then fits the order in eps. The eps values run concurrently.
 */
ConvergenceStudy convergence_study(const LienardSystem& sys, const std::vector<double>& eps_list,
                                   std::pair<double, double> x_probe, const StudyOptions& opts = {});

}  // namespace lienard
