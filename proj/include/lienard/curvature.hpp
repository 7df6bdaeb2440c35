#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "lienard/system.hpp"

namespace lienard {

/// Velocity, acceleration and jerk of the trajectory through a state.
struct FlowDerivatives {
    double xdot = 0.0, ydot = 0.0;
    double xddot = 0.0, yddot = 0.0;
    double xdddot = 0.0, ydddot = 0.0;

    Vec2 velocity() const { return {xdot, ydot}; }
    Vec2 acceleration() const { return {xddot, yddot}; }
    Vec2 jerk() const { return {xdddot, ydddot}; }
};

struct CurvatureSample {
    State state;
    FlowDerivatives d;
    double phi = 0.0;
    double phi_dot = 0.0;
};

/**
 * One abscissa of the zero set of the flow curvature function, written as
 * offsets u = y - F(x) from the critical manifold.
 */
struct ManifoldBranch {
    double x = 0.0;
    std::optional<double> u_slow;
    std::optional<double> u_fast;
    std::optional<double> y_slow;
    bool fold_excluded = false;
};

/// Closed-form time derivatives up to third order. The third derivative is
/// obtained as J * Xddot + (dJ/dt) * Xdot.
FlowDerivatives flow_derivatives(const LienardSystem& sys, const State& s);

/// xddot * ydot + g'(x) * xdot^2, which equals det(Xddot, Xdot).
double phi(const LienardSystem& sys, const State& s);

/// xdddot * ydot - ydddot * xdot.
double phi_dot(const LienardSystem& sys, const State& s);

/// Same quantity as phi_dot, expanded through ydddot = -g'' xdot^2 - g' xddot.
double phi_dot_expanded(const LienardSystem& sys, const State& s);

CurvatureSample curvature_sample(const LienardSystem& sys, const State& s);

/// phi_dot - [tr(J) phi + det(dJ/dt Xdot, Xdot)]. Vanishes identically.
double lie_identity_residual(const LienardSystem& sys, const State& s);

/// Relative fold tolerance: |f(x)| below fold_tol_scale * max(1, |g(x)|)
/// marks a fold neighbourhood.
inline constexpr double kFoldTolScale = 1e-6;

/**
 * Solves g'(x) u^2 + f(x) g(x) u + eps g(x)^2 = 0, the phi = 0 condition in
 * the offset u = y - F(x). The root of smaller magnitude is the slow branch.
 */
ManifoldBranch slow_branches(const LienardSystem& sys, double x, double fold_tol_scale = kFoldTolScale);

std::vector<ManifoldBranch> slow_manifold_table(const LienardSystem& sys, double x_lo, double x_hi,
                                                int n, double fold_tol_scale = kFoldTolScale);

/// CSV with header x,y_slow,u_slow,u_fast,fold_excluded; absent values are
/// empty fields.
void write_manifold_csv(std::ostream& os, const std::vector<ManifoldBranch>& rows);

}  // namespace lienard
