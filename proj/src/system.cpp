#include "lienard/system.hpp"

#include <cmath>
#include <sstream>

namespace lienard {

LienardSystem::LienardSystem(std::string name, Polynomial F, Polynomial g, double eps)
    : name_(std::move(name)), eps_(eps), F_(std::move(F)), g_(std::move(g)) {
    if (!(eps_ > 0.0) || !std::isfinite(eps_)) throw std::invalid_argument("epsilon must be positive");
    f_ = derivative(F_);
    fp_ = derivative(f_);
    G_ = antiderivative(g_, 0.0);
    gp_ = derivative(g_);
    gpp_ = derivative(gp_);
}

LienardSystem LienardSystem::with_eps(double eps) const { return {name_, F_, g_, eps}; }

LienardSystem make_system(const Polynomial& F, const Polynomial& g, double eps, std::string name) {
    return {std::move(name), F, g, eps};
}

Vec2 vector_field(const LienardSystem& sys, const State& s) {
    return {(s.y - sys.F()(s.x)) / sys.eps(), -sys.g()(s.x)};
}

Mat2 jacobian(const LienardSystem& sys, double x) {
    const double e = sys.eps();
    return {-sys.f()(x) / e, 1.0 / e, -sys.gp()(x), 0.0};
}

Mat2 jacobian_rate(const LienardSystem& sys, const State& s) {
    const double xdot = vector_field(sys, s).x;
    return {-sys.fp()(s.x) * xdot / sys.eps(), 0.0, -sys.gpp()(s.x) * xdot, 0.0};
}

double critical_manifold(const LienardSystem& sys, double x) { return sys.F()(x); }

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

AssumptionCheck check_parity_and_sign(const LienardSystem& sys, double x_max) {
    AssumptionCheck c;
    std::ostringstream why;
    bool ok = true;
    if (!is_even(sys.f())) {
        ok = false;
        why << "f is not even (odd-degree coefficient present); ";
    }
    if (sys.g().is_zero()) {
        ok = false;
        why << "g vanishes identically; ";
    } else {
        if (!is_odd(sys.g())) {
            ok = false;
            why << "g is not odd (even-degree coefficient present); ";
        }
        const auto roots = real_roots(sys.g(), x_max * 1e-9, x_max);
        if (!roots.empty()) {
            ok = false;
            why << "g has a zero at x = " << fmt(roots.front()) << " in (0, x_max]; ";
        }
        if (!(sys.g()(0.5 * x_max) > 0.0)) {
            ok = false;
            why << "g(x_max/2) <= 0 so x g(x) > 0 fails; ";
        }
    }
    const double f0 = sys.f()(0.0);
    c.witness = f0;
    if (!(f0 < 0.0)) {
        ok = false;
        why << "f(0) = " << fmt(f0) << " is not negative; ";
    }
    c.holds = ok;
    c.detail = ok ? "f even, g odd, x g(x) > 0, f(0) < 0" : why.str();
    if (!ok) c.detail.erase(c.detail.size() - 2);
    return c;
}

}  // namespace

AssumptionReport check_assumptions(const LienardSystem& sys, double x_max) {
    if (!(x_max > 0.0)) throw std::invalid_argument("x_max must be positive");
    AssumptionReport rep;
    rep.parity_and_sign = check_parity_and_sign(sys, x_max);

    // II: polynomials are continuous and locally Lipschitz everywhere.
    {
        const Range r = range_on_interval(sys.gp(), -x_max, x_max);
        const double lip = std::max(std::abs(r.min), std::abs(r.max));
        rep.regularity = {true, lip,
                          "polynomial f, g are continuous; Lipschitz constant of g on window = " +
                              fmt(lip)};
    }

    // III
    {
        const auto deg = sys.F().degree();
        const bool ok = deg && (*deg % 2 == 1) && sys.F().leading() > 0.0;
        rep.growth.holds = ok;
        if (deg) rep.growth.witness = static_cast<double>(*deg);
        rep.growth.detail = ok ? "F has odd degree with positive leading coefficient"
                               : "F does not tend to +/- infinity with x (needs odd degree, "
                                 "positive leading coefficient)";
    }

    // IV
    {
        AssumptionCheck& c = rep.single_positive_zero;
        if (sys.F().is_zero()) {
            c.detail = "F vanishes identically";
        } else {
            const auto zeros = real_roots(sys.F(), x_max * 1e-9, x_max);
            if (zeros.size() != 1) {
                c.detail = "F has " + std::to_string(zeros.size()) + " positive zeros in (0, x_max]";
            } else {
                const double a = zeros.front();
                c.witness = a;
                const bool f_crosses = !sys.f().is_zero() && a < x_max &&
                                       !real_roots(sys.f(), a, x_max).empty();
                const bool f_pos = sys.f()(0.5 * (a + x_max)) > 0.0;
                if (!f_crosses && f_pos) {
                    c.holds = true;
                    c.detail = "single positive zero a = " + fmt(a) + ", F increasing beyond a";
                    rep.positive_zero_a = a;
                } else {
                    c.detail = "F is not monotone increasing on [a, x_max] with a = " + fmt(a);
                }
            }
        }
    }

    {
        const Range r = range_on_interval(sys.gp(), 0.0, x_max);
        rep.gprime_nonneg.holds = r.min >= 0.0;
        rep.gprime_nonneg.witness = r.min;
        rep.gprime_nonneg.detail = "min g' on [0, x_max] = " + fmt(r.min);
    }
    return rep;
}

}  // namespace lienard
