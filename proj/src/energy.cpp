#include "lienard/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lienard/curvature.hpp"

namespace lienard {

double total_energy(const LienardSystem& sys, const State& s) {
    const double xdot = vector_field(sys, s).x;
    return 0.5 * sys.eps() * xdot * xdot + sys.G()(s.x);
}

double energy_rate(const LienardSystem& sys, const State& s) {
    const double xdot = vector_field(sys, s).x;
    return -sys.f()(s.x) * xdot * xdot;
}

Polynomial H_polynomial(const LienardSystem& sys) { return H_polynomial(sys.G()); }

Polynomial H_polynomial(const Polynomial& G) {
    const Polynomial Gp = derivative(G);
    const Polynomial Gpp = derivative(Gp);
    return Gp * Gp - scale(G * Gpp, 2.0);
}

double H_rate(const LienardSystem& sys, const State& s) {
    const double xdot = vector_field(sys, s).x;
    return -2.0 * sys.G()(s.x) * sys.Gppp()(s.x) * xdot;
}

EnergySample energy_sample(const LienardSystem& sys, const State& s) {
    return {s, total_energy(sys, s), energy_rate(sys, s), H_polynomial(sys)(s.x), H_rate(sys, s)};
}

std::string to_string(CaseLabel c) {
    switch (c) {
        case CaseLabel::Case1HNonNeg: return "CASE1_H_NONNEG";
        case CaseLabel::Case2HNonPos: return "CASE2_H_NONPOS";
        case CaseLabel::Mixed: return "MIXED";
    }
    return "MIXED";
}

std::string to_string(SignLabel s) {
    switch (s) {
        case SignLabel::NonNeg: return "NONNEG";
        case SignLabel::NonPos: return "NONPOS";
        case SignLabel::Mixed: return "MIXED";
    }
    return "MIXED";
}

namespace {

// Extremes of g(x)/x on (0, x_max] for g with g(0) = 0.
std::optional<Range> slope_range(const Polynomial& g, double x_max) {
    if (g.coeff(0) != 0.0) return std::nullopt;
    if (g.is_zero()) return Range{0.0, 0.0};
    std::vector<double> q(g.coeffs().begin() + 1, g.coeffs().end());
    return range_on_interval(Polynomial(std::move(q)), 0.0, x_max);
}

}  // namespace

CaseClassification classify_case(const LienardSystem& sys, double x_max) {
    if (!(x_max > 0.0)) throw std::invalid_argument("x_max must be positive");
    CaseClassification out;
    out.H_poly = H_polynomial(sys);
    out.H_identically_zero = out.H_poly.is_zero();

    switch (sign_on_interval(out.H_poly, 0.0, x_max)) {
        case Sign::Zero:
        case Sign::NonNegative: out.case_label = CaseLabel::Case1HNonNeg; break;
        case Sign::NonPositive: out.case_label = CaseLabel::Case2HNonPos; break;
        case Sign::Mixed: out.case_label = CaseLabel::Mixed; break;
    }

    switch (sign_on_interval(sys.Gppp(), 0.0, x_max)) {
        case Sign::Zero:
        case Sign::NonPositive: out.Gppp_sign = SignLabel::NonPos; break;
        case Sign::NonNegative: out.Gppp_sign = SignLabel::NonNeg; break;
        case Sign::Mixed: out.Gppp_sign = SignLabel::Mixed; break;
    }

    if (out.case_label != CaseLabel::Mixed) {
        if (auto r = slope_range(sys.g(), x_max)) {
            out.C1_witness = out.case_label == CaseLabel::Case1HNonNeg ? r->max : r->min;
        }
    }
    return out;
}

double curvature_energy_residual(const LienardSystem& sys, const State& s) {
    const Vec2 v = vector_field(sys, s);
    const double rhs = 2.0 * sys.gp()(s.x) * total_energy(sys, s) + H_polynomial(sys)(s.x) -
                       sys.f()(s.x) * v.x * v.y;
    return sys.eps() * phi(sys, s) - rhs;
}

namespace {

struct RateTerms {
    double lhs;
    double rhs;
};

RateTerms relation_rate_terms(const LienardSystem& sys, const State& s) {
    const double xdot = vector_field(sys, s).x;
    const double x = s.x;
    const double gp = sys.gp()(x);
    const double lhs = 2.0 * sys.gpp()(x) * xdot * total_energy(sys, s) +
                       2.0 * gp * energy_rate(sys, s) + H_rate(sys, s);
    const double yddot = -gp * xdot;
    const double rhs = 2.0 * sys.f()(x) * xdot * yddot;
    return {lhs, rhs};
}

}  // namespace

double relation_rate_residual(const LienardSystem& sys, const State& s) {
    const RateTerms t = relation_rate_terms(sys, s);
    return t.lhs - t.rhs;
}

double relation_rate_scale(const LienardSystem& sys, const State& s) {
    const RateTerms t = relation_rate_terms(sys, s);
    return std::max({1.0, std::abs(t.lhs), std::abs(t.rhs)});
}

double relation_rate_residual_corrected(const LienardSystem& sys, const State& s) {
    const RateTerms t = relation_rate_terms(sys, s);
    const double xdot = vector_field(sys, s).x;
    return t.lhs - (t.rhs + sys.eps() * sys.gpp()(s.x) * xdot * xdot * xdot);
}

double yform_energy_residual(const LienardSystem& sys, const State& s) {
    const Vec2 v = vector_field(sys, s);
    const double lhs = s.y * v.y + sys.eps() * sys.g()(s.x) * v.x;
    return lhs - sys.F()(s.x) * v.y;
}

double yform_energy_chain_residual(const LienardSystem& sys, const State& s) {
    const FlowDerivatives d = flow_derivatives(sys, s);
    const double e = sys.eps();
    const double gx = sys.g()(s.x);
    const double lhs = s.y * d.ydot + e * gx * d.xdot - sys.F()(s.x) * d.ydot;
    const double dE = e * d.xdot * d.xddot + gx * d.xdot;
    return lhs - e * (dE + sys.f()(s.x) * d.xdot * d.xdot);
}

}  // namespace lienard
