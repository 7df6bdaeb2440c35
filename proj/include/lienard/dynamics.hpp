#pragma once

#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "lienard/system.hpp"

namespace lienard {

struct Trajectory {
    std::vector<State> samples;
    long accepted_steps = 0;
    long rejected_steps = 0;
    double tol_used = 0.0;

    const State& front() const { return samples.front(); }
    const State& back() const { return samples.back(); }
    double span() const { return samples.back().t - samples.front().t; }
};

/// One Dormand-Prince 5(4) step: the fifth-order solution plus the
/// difference to the embedded fourth-order solution.
struct StepResult {
    State next;
    Vec2 error;
};

StepResult dopri_step(const LienardSystem& sys, const State& s, double h);

struct IntegrateOptions {
    /// Upper bound on the step as a multiple of eps.
    double max_step_eps_fraction = 0.2;
    double min_step = 1e-14;
    long max_steps = 50'000'000;
    /// Called after each accepted step with (previous, current); returning
    /// true ends the integration at the current sample.
    std::function<bool(const State&, const State&)> stop;
};

/**
 * Adaptive Dormand-Prince 5(4) integration with PI step-size control from
 * s0 to t_end. Every accepted step is emitted as a sample. The local error
 * estimate of each step is kept below tol in the mixed absolute/relative
 * maximum norm.
 *
 * Throws std::invalid_argument on bad arguments and NumericalError when the
 * step size underflows or the state stops being finite.
 */
Trajectory integrate(const LienardSystem& sys, const State& s0, double t_end, double tol,
                     const IntegrateOptions& opts = {});

struct LimitCycle {
    double period = 0.0;
    double section_value = 0.0;
    Trajectory orbit;
    double amplitude_x = 0.0;
    double x_max = 0.0;
    double x_min = 0.0;
    bool converged = false;
    int iterations = 0;
    /// Section values y_0, y_1, ... of the return-map iteration.
    std::vector<double> iterates;
};

struct CycleOptions {
    double integration_tol = 1e-10;
    /// Time accuracy of the section and extremum events.
    double event_tol = 1e-12;
};

/**
 * Iterates the Poincare return map on {x = 0, xdot > 0} starting from
 * (0, y_guess) until successive section values agree within tol.
 *
 * Throws NumericalError("no return") when the flow does not come back to the
 * section within 10 (1 + 1/eps) time units. Non-convergence within max_iter
 * is reported through LimitCycle::converged.
 */
LimitCycle find_limit_cycle(const LienardSystem& sys, double y_guess, double tol, int max_iter,
                            const CycleOptions& opts = {});

struct VicinitySegment {
    std::vector<State> samples;
    std::pair<double, double> x_range{0.0, 0.0};
    double band_width = 0.0;
};

struct VicinityOptions {
    /// Samples need x >= a + x_margin, a being the positive zero of F.
    double x_margin = 0.1;
    double x_window = 10.0;
};

/**
 * Longest run of consecutive samples that lie right of a + x_margin, move
 * left (xdot < 0), and sit within c * eps of the slow branch. Samples where
 * the slow branch does not exist (fold neighbourhood) are skipped without
 * ending a run and are never part of the result.
 *
 * Throws std::runtime_error when no sample qualifies or when F has no single
 * positive zero.
 */
VicinitySegment extract_vicinity(const Trajectory& traj, const LienardSystem& sys, double c,
                                 const VicinityOptions& opts = {});

/// CSV with header t,x,y,xdot,ydot,phi,E,dEdt.
void write_trajectory_csv(std::ostream& os, const LienardSystem& sys, const Trajectory& traj);

}  // namespace lienard
