#include "lienard/curvature.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "lienard/format.hpp"

namespace lienard {

FlowDerivatives flow_derivatives(const LienardSystem& sys, const State& s) {
    const double x = s.x;
    const double e = sys.eps();
    const double f = sys.f()(x);
    const double gp = sys.gp()(x);

    FlowDerivatives d;
    const Vec2 v = vector_field(sys, s);
    d.xdot = v.x;
    d.ydot = v.y;
    d.xddot = (d.ydot - f * d.xdot) / e;
    d.yddot = -gp * d.xdot;

    const Mat2 J = jacobian(sys, x);
    const Mat2 dJ = jacobian_rate(sys, s);
    const Vec2 jerk_a = J * d.acceleration();
    const Vec2 jerk_b = dJ * d.velocity();
    d.xdddot = jerk_a.x + jerk_b.x;
    d.ydddot = jerk_a.y + jerk_b.y;
    return d;
}

double phi(const LienardSystem& sys, const State& s) {
    const FlowDerivatives d = flow_derivatives(sys, s);
    return d.xddot * d.ydot + sys.gp()(s.x) * d.xdot * d.xdot;
}

double phi_dot(const LienardSystem& sys, const State& s) {
    const FlowDerivatives d = flow_derivatives(sys, s);
    return d.xdddot * d.ydot - d.ydddot * d.xdot;
}

double phi_dot_expanded(const LienardSystem& sys, const State& s) {
    const FlowDerivatives d = flow_derivatives(sys, s);
    const double gp = sys.gp()(s.x);
    const double gpp = sys.gpp()(s.x);
    return d.xdddot * d.ydot + d.xdot * (gpp * d.xdot * d.xdot + gp * d.xddot);
}

CurvatureSample curvature_sample(const LienardSystem& sys, const State& s) {
    CurvatureSample c;
    c.state = s;
    c.d = flow_derivatives(sys, s);
    c.phi = c.d.xddot * c.d.ydot + sys.gp()(s.x) * c.d.xdot * c.d.xdot;
    c.phi_dot = c.d.xdddot * c.d.ydot - c.d.ydddot * c.d.xdot;
    return c;
}

double lie_identity_residual(const LienardSystem& sys, const State& s) {
    const CurvatureSample c = curvature_sample(sys, s);
    const Mat2 J = jacobian(sys, s.x);
    const Mat2 dJ = jacobian_rate(sys, s);
    const Vec2 v = c.d.velocity();
    return c.phi_dot - (J.trace() * c.phi + det(dJ * v, v));
}

ManifoldBranch slow_branches(const LienardSystem& sys, double x, double fold_tol_scale) {
    ManifoldBranch b;
    b.x = x;
    const double f = sys.f()(x);
    const double g = sys.g()(x);
    const double gp = sys.gp()(x);
    const double e = sys.eps();

    if (std::abs(f) < fold_tol_scale * std::max(1.0, std::abs(g))) {
        b.fold_excluded = true;
        return b;
    }

    // a u^2 + bq u + c = 0
    const double a = gp;
    const double bq = f * g;
    const double c = e * g * g;

    if (std::abs(a) <= 1e-13) {
        b.u_slow = -e * g / f;
    } else {
        const double disc = bq * bq - 4.0 * a * c;
        if (disc < 0.0) return b;
        const double q = -0.5 * (bq + std::copysign(std::sqrt(disc), bq));
        double r1, r2;
        if (q == 0.0) {
            r1 = r2 = 0.0;
        } else {
            r1 = q / a;
            r2 = c / q;
        }
        if (std::abs(r1) <= std::abs(r2)) {
            b.u_slow = r1;
            b.u_fast = r2;
        } else {
            b.u_slow = r2;
            b.u_fast = r1;
        }
    }
    b.y_slow = sys.F()(x) + *b.u_slow;
    return b;
}

std::vector<ManifoldBranch> slow_manifold_table(const LienardSystem& sys, double x_lo, double x_hi,
                                                int n, double fold_tol_scale) {
    if (!(x_lo < x_hi)) throw std::invalid_argument("slow_manifold_table: require x_lo < x_hi");
    if (n < 2) throw std::invalid_argument("slow_manifold_table: require n >= 2");
    std::vector<ManifoldBranch> rows;
    rows.reserve(static_cast<std::size_t>(n));
    const double h = (x_hi - x_lo) / (n - 1);
    for (int i = 0; i < n; ++i) {
        const double x = (i == n - 1) ? x_hi : x_lo + h * i;
        rows.push_back(slow_branches(sys, x, fold_tol_scale));
    }
    return rows;
}

void write_manifold_csv(std::ostream& os, const std::vector<ManifoldBranch>& rows) {
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    os << "x,y_slow,u_slow,u_fast,fold_excluded\n";
    for (const auto& r : rows) {
        os << format_double(r.x) << ',' << opt(r.y_slow) << ',' << opt(r.u_slow) << ','
           << opt(r.u_fast) << ',' << (r.fold_excluded ? 1 : 0) << '\n';
    }
}

}  // namespace lienard
