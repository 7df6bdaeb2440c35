#include "lienard/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "lienard/curvature.hpp"
#include "lienard/energy.hpp"
#include "lienard/format.hpp"

namespace lienard {

namespace {

// Dormand & Prince (1980) tableau. The system is autonomous, so the stage
// abscissae are not needed.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

bool finite(const State& s) { return std::isfinite(s.x) && std::isfinite(s.y) && std::isfinite(s.t); }

Vec2 rhs(const LienardSystem& sys, double x, double y) { return vector_field(sys, {0.0, x, y}); }

double error_norm(const StepResult& r, const State& s, double tol) {
    const double sx = tol + tol * std::max(std::abs(s.x), std::abs(r.next.x));
    const double sy = tol + tol * std::max(std::abs(s.y), std::abs(r.next.y));
    return std::max(std::abs(r.error.x) / sx, std::abs(r.error.y) / sy);
}

// Bisection on a sign change of value(dopri_step(from, tau)) for tau in (0, h].
template <class Fn>
double locate(const LienardSystem& sys, const State& from, double h, double tol, const Fn& value) {
    double lo = 0.0, hi = h;
    const double v_lo = value(from);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double vm = value(dopri_step(sys, from, mid).next);
        if ((vm < 0.0) == (v_lo < 0.0) && vm != 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

}  // namespace

StepResult dopri_step(const LienardSystem& sys, const State& s, double h) {
    const double x = s.x, y = s.y;
    const Vec2 k1 = rhs(sys, x, y);
    const Vec2 k2 = rhs(sys, x + h * a21 * k1.x, y + h * a21 * k1.y);
    const Vec2 k3 = rhs(sys, x + h * (a31 * k1.x + a32 * k2.x), y + h * (a31 * k1.y + a32 * k2.y));
    const Vec2 k4 = rhs(sys, x + h * (a41 * k1.x + a42 * k2.x + a43 * k3.x),
                        y + h * (a41 * k1.y + a42 * k2.y + a43 * k3.y));
    const Vec2 k5 = rhs(sys, x + h * (a51 * k1.x + a52 * k2.x + a53 * k3.x + a54 * k4.x),
                        y + h * (a51 * k1.y + a52 * k2.y + a53 * k3.y + a54 * k4.y));
    const Vec2 k6 =
        rhs(sys, x + h * (a61 * k1.x + a62 * k2.x + a63 * k3.x + a64 * k4.x + a65 * k5.x),
            y + h * (a61 * k1.y + a62 * k2.y + a63 * k3.y + a64 * k4.y + a65 * k5.y));
    StepResult r;
    r.next.t = s.t + h;
    r.next.x = x + h * (b1 * k1.x + b3 * k3.x + b4 * k4.x + b5 * k5.x + b6 * k6.x);
    r.next.y = y + h * (b1 * k1.y + b3 * k3.y + b4 * k4.y + b5 * k5.y + b6 * k6.y);
    const Vec2 k7 = rhs(sys, r.next.x, r.next.y);
    r.error.x = h * (e1 * k1.x + e3 * k3.x + e4 * k4.x + e5 * k5.x + e6 * k6.x + e7 * k7.x);
    r.error.y = h * (e1 * k1.y + e3 * k3.y + e4 * k4.y + e5 * k5.y + e6 * k6.y + e7 * k7.y);
    return r;
}

Trajectory integrate(const LienardSystem& sys, const State& s0, double t_end, double tol,
                     const IntegrateOptions& opts) {
    if (!(t_end > s0.t)) throw std::invalid_argument("t_end must exceed the initial time");
    if (!(tol >= 1e-13 && tol <= 1e-3)) throw std::invalid_argument("tol must lie in [1e-13, 1e-3]");
    if (!finite(s0)) throw std::invalid_argument("initial state must be finite");

    constexpr double safety = 0.9, fac_min = 0.2, fac_max = 5.0;
    constexpr double alpha = 0.7 / 5.0, beta = 0.4 / 5.0;

    Trajectory traj;
    traj.tol_used = tol;
    traj.samples.push_back(s0);

    const double h_max = opts.max_step_eps_fraction * sys.eps();
    double h = std::min({h_max, 0.01 * (t_end - s0.t), 1e-3 * sys.eps()});
    double err_prev = 1e-4;
    bool last_rejected = false;
    State cur = s0;

    while (cur.t < t_end) {
        if (traj.accepted_steps + traj.rejected_steps >= opts.max_steps)
            throw NumericalError("integration step budget exhausted");
        if (h < opts.min_step) throw NumericalError("integration stalled (stiffness)");
        const bool final_step = cur.t + h >= t_end;
        const double step = final_step ? t_end - cur.t : h;

        StepResult r = dopri_step(sys, cur, step);
        const double err = error_norm(r, cur, tol);
        if (!std::isfinite(err) || !finite(r.next)) {
            ++traj.rejected_steps;
            h = step * fac_min;
            last_rejected = true;
            continue;
        }
        if (err <= 1.0) {
            double fac = err == 0.0 ? fac_max
                                    : safety * std::pow(err, -alpha) * std::pow(err_prev, beta);
            fac = std::clamp(fac, fac_min, fac_max);
            if (last_rejected) fac = std::min(fac, 1.0);
            err_prev = std::max(err, 1e-4);
            if (final_step) r.next.t = t_end;
            if (std::abs(r.next.x) > 1e150 || std::abs(r.next.y) > 1e150) throw NumericalError("blow-up");
            const State prev = cur;
            cur = r.next;
            traj.samples.push_back(cur);
            ++traj.accepted_steps;
            last_rejected = false;
            h = std::min(h_max, step * fac);
            if (opts.stop && opts.stop(prev, cur)) break;
        } else {
            ++traj.rejected_steps;
            const double fac = std::max(fac_min, safety * std::pow(err, -alpha));
            h = step * fac;
            last_rejected = true;
        }
    }
    return traj;
}

namespace {

struct SectionReturn {
    Trajectory orbit;
    double y_return;
};

SectionReturn return_map(const LienardSystem& sys, double y0, const CycleOptions& opts) {
    IntegrateOptions io;
    io.stop = [](const State& prev, const State& cur) { return prev.x < 0.0 && cur.x >= 0.0; };
    const double horizon = 10.0 * (1.0 + 1.0 / sys.eps());
    Trajectory traj = integrate(sys, {0.0, 0.0, y0}, horizon, opts.integration_tol, io);
    const std::size_t n = traj.samples.size();
    if (n < 2 || !(traj.samples[n - 2].x < 0.0 && traj.samples[n - 1].x >= 0.0))
        throw NumericalError("no return");

    const State prev = traj.samples[n - 2];
    const double h = traj.samples[n - 1].t - prev.t;
    const double tau = locate(sys, prev, h, opts.event_tol, [](const State& s) { return s.x; });
    State hit = dopri_step(sys, prev, tau).next;
    traj.samples.back() = hit;
    return {std::move(traj), hit.y};
}

// Extremes of x over the orbit, with each turning point (xdot = 0) refined.
std::pair<double, double> x_extent(const LienardSystem& sys, const Trajectory& orbit, double event_tol) {
    double lo = orbit.samples.front().x, hi = lo;
    auto xdot = [&](const State& s) { return vector_field(sys, s).x; };
    for (std::size_t i = 0; i < orbit.samples.size(); ++i) {
        const State& s = orbit.samples[i];
        lo = std::min(lo, s.x);
        hi = std::max(hi, s.x);
        if (i + 1 == orbit.samples.size()) break;
        const State& nx = orbit.samples[i + 1];
        const double d0 = xdot(s), d1 = xdot(nx);
        if (d0 != 0.0 && d1 != 0.0 && (d0 < 0.0) != (d1 < 0.0)) {
            const double tau = locate(sys, s, nx.t - s.t, event_tol, xdot);
            const double xe = dopri_step(sys, s, tau).next.x;
            lo = std::min(lo, xe);
            hi = std::max(hi, xe);
        }
    }
    return {lo, hi};
}

}  // namespace

LimitCycle find_limit_cycle(const LienardSystem& sys, double y_guess, double tol, int max_iter,
                            const CycleOptions& opts) {
    if (!(y_guess > 0.0)) throw std::invalid_argument("y_guess must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");

    LimitCycle lc;
    lc.iterates.push_back(y_guess);
    double y = y_guess;
    SectionReturn last;
    for (int k = 0; k < max_iter; ++k) {
        last = return_map(sys, y, opts);
        lc.iterations = k + 1;
        lc.iterates.push_back(last.y_return);
        const double step = std::abs(last.y_return - y);
        y = last.y_return;
        if (step <= tol) {
            lc.converged = true;
            break;
        }
    }
    lc.section_value = last.orbit.samples.front().y;
    lc.orbit = std::move(last.orbit);
    lc.period = lc.orbit.span();
    std::tie(lc.x_min, lc.x_max) = x_extent(sys, lc.orbit, opts.event_tol);
    lc.amplitude_x = std::max(std::abs(lc.x_min), std::abs(lc.x_max));
    return lc;
}

VicinitySegment extract_vicinity(const Trajectory& traj, const LienardSystem& sys, double c,
                                 const VicinityOptions& opts) {
    if (!(c > 0.0)) throw std::invalid_argument("band multiplier must be positive");
    const AssumptionReport rep = check_assumptions(sys, opts.x_window);
    if (!rep.positive_zero_a) throw std::runtime_error("vicinity needs a single positive zero of F");
    const double x_lo = *rep.positive_zero_a + opts.x_margin;
    const double band = c * sys.eps();

    std::vector<State> best, run;
    auto close_run = [&] {
        if (run.size() > best.size()) best = run;
        run.clear();
    };
    for (const State& s : traj.samples) {
        const ManifoldBranch b = slow_branches(sys, s.x);
        if (b.fold_excluded || !b.y_slow) continue;
        const bool ok = s.x >= x_lo && vector_field(sys, s).x < 0.0 && std::abs(s.y - *b.y_slow) <= band;
        if (ok) {
            run.push_back(s);
        } else {
            close_run();
        }
    }
    close_run();
    if (best.empty())
        throw std::runtime_error("trajectory does not visit the slow vicinity (integrate longer)");

    VicinitySegment seg;
    seg.band_width = band;
    auto [mn, mx] = std::minmax_element(best.begin(), best.end(),
                                        [](const State& a, const State& b) { return a.x < b.x; });
    seg.x_range = {mn->x, mx->x};
    seg.samples = std::move(best);
    return seg;
}

void write_trajectory_csv(std::ostream& os, const LienardSystem& sys, const Trajectory& traj) {
    os << "t,x,y,xdot,ydot,phi,E,dEdt\n";
    for (const State& s : traj.samples) {
        const Vec2 v = vector_field(sys, s);
        os << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.y) << ','
           << format_double(v.x) << ',' << format_double(v.y) << ',' << format_double(phi(sys, s))
           << ',' << format_double(total_energy(sys, s)) << ','
           << format_double(energy_rate(sys, s)) << '\n';
    }
}

}  // namespace lienard
