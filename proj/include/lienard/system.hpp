#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "lienard/poly.hpp"

namespace lienard {

/// Raised when a numerical procedure cannot produce a result (stiffness,
/// blow-up, missing section return).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// det(a, b) for the 2x2 matrix with columns a and b.
inline double det(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    double trace() const { return a11 + a22; }
    Vec2 operator*(const Vec2& v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
};

/// A point (x, y) of the phase plane at time t.
struct State {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
};

/**
 * Singularly perturbed generalized Lienard system
 *
 *     eps * x' = y - F(x),
 *           y' = -g(x),
 *
 * together with the polynomials derived from F and g: f = F', G = int_0^x g,
 * g', g'' and G''' (= g''). Immutable once constructed.
 */
class LienardSystem {
  public:
    LienardSystem(std::string name, Polynomial F, Polynomial g, double eps);

    const std::string& name() const { return name_; }
    double eps() const { return eps_; }

    const Polynomial& F() const { return F_; }
    const Polynomial& f() const { return f_; }
    const Polynomial& fp() const { return fp_; }
    const Polynomial& g() const { return g_; }
    const Polynomial& G() const { return G_; }
    const Polynomial& gp() const { return gp_; }
    const Polynomial& gpp() const { return gpp_; }
    const Polynomial& Gppp() const { return gpp_; }

    /// Same polynomials, different singular parameter.
    LienardSystem with_eps(double eps) const;

  private:
    std::string name_;
    double eps_;
    Polynomial F_, f_, fp_;
    Polynomial g_, G_, gp_, gpp_;
};

/// Throws std::invalid_argument("epsilon must be positive") when eps <= 0.
LienardSystem make_system(const Polynomial& F, const Polynomial& g, double eps,
                          std::string name = "system");

/// (xdot, ydot) at the state.
Vec2 vector_field(const LienardSystem& sys, const State& s);

/// Jacobian [[-f/eps, 1/eps], [-g', 0]] at abscissa x.
Mat2 jacobian(const LienardSystem& sys, double x);

/// Time derivative of the Jacobian along the flow through s.
Mat2 jacobian_rate(const LienardSystem& sys, const State& s);

/// The critical manifold y = F(x).
double critical_manifold(const LienardSystem& sys, double x);

struct AssumptionCheck {
    bool holds = false;
    std::optional<double> witness;
    std::string detail;
};

struct AssumptionReport {
    AssumptionCheck parity_and_sign;      // I
    AssumptionCheck regularity;           // II
    AssumptionCheck growth;               // III
    AssumptionCheck single_positive_zero; // IV
    /// g' >= 0 on [0, x_max]; required by the curvature sign results but not
    /// one of the four classical hypotheses.
    AssumptionCheck gprime_nonneg;
    std::optional<double> positive_zero_a;

    bool all_hold() const {
        return parity_and_sign.holds && regularity.holds && growth.holds &&
               single_positive_zero.holds;
    }
};

/**
 * Checks the four classical hypotheses guaranteeing a unique stable limit
 * cycle on the window [-x_max, x_max], using exact polynomial structure
 * (parity, leading term) for the global parts. Failures are reported, never
 * thrown.
 */
AssumptionReport check_assumptions(const LienardSystem& sys, double x_max = 10.0);

}  // namespace lienard
