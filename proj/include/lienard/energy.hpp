#pragma once

#include <optional>
#include <string>

#include "lienard/system.hpp"

namespace lienard {

struct EnergySample {
    State state;
    double E = 0.0;
    double dEdt = 0.0;
    double H = 0.0;
    double dHdt = 0.0;
};

/// eps * xdot^2 / 2 + G(x): kinetic plus potential energy.
double total_energy(const LienardSystem& sys, const State& s);

/// -f(x) * xdot^2.
double energy_rate(const LienardSystem& sys, const State& s);

/// G'^2 - 2 G G'' as an exact polynomial.
Polynomial H_polynomial(const LienardSystem& sys);
/// Same for an explicit potential, e.g. one with a nonzero constant term.
Polynomial H_polynomial(const Polynomial& G);

/// -2 G(x) G'''(x) xdot.
double H_rate(const LienardSystem& sys, const State& s);

EnergySample energy_sample(const LienardSystem& sys, const State& s);

enum class CaseLabel { Case1HNonNeg, Case2HNonPos, Mixed };
enum class SignLabel { NonNeg, NonPos, Mixed };

std::string to_string(CaseLabel c);
std::string to_string(SignLabel s);

struct CaseClassification {
    CaseLabel case_label = CaseLabel::Mixed;
    Polynomial H_poly;
    /// True when H vanishes identically (boundary between the two cases).
    bool H_identically_zero = false;
    SignLabel Gppp_sign = SignLabel::Mixed;
    /// Case 1: smallest C1 with g(x) <= C1 x on (0, x_max].
    /// Case 2: largest C1 with g(x) >= C1 x on (0, x_max].
    /// Absent for mixed H or when g(0) != 0.
    std::optional<double> C1_witness;
};

/**
 * Sign-certifies H on (0, x_max] through root isolation and reports the sign
 * of G''' there. An identically zero H is reported as case 1 and an
 * identically zero G''' as non-positive.
 */
CaseClassification classify_case(const LienardSystem& sys, double x_max = 10.0);

/// eps * phi - [2 g' E + H - f xdot ydot].
double curvature_energy_residual(const LienardSystem& sys, const State& s);

/// Left side 2 g'' xdot E + 2 g' dE/dt + dH/dt minus right side
/// 2 f xdot yddot with yddot = -g' xdot.
double relation_rate_residual(const LienardSystem& sys, const State& s);

/// Magnitude scale used to turn relation_rate_residual into a relative error.
double relation_rate_scale(const LienardSystem& sys, const State& s);

/// relation_rate_residual with the term eps g'' xdot^3 (coming from the
/// -g'' xdot entry of dJ/dt) restored on the right side. Vanishes for every
/// g, whereas the uncorrected residual equals exactly eps g'' xdot^3.
double relation_rate_residual_corrected(const LienardSystem& sys, const State& s);

/// y ydot + eps g xdot - F ydot, i.e. d/dt(y^2/2 + eps G) - F ydot.
double yform_energy_residual(const LienardSystem& sys, const State& s);

/// y ydot + eps G' xdot - F ydot - eps [dE/dt|closed + f xdot^2], the
/// equivalence between the two energy forms.
double yform_energy_chain_residual(const LienardSystem& sys, const State& s);

}  // namespace lienard
