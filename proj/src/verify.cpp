#include "lienard/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "lienard/curvature.hpp"
#include "lienard/energy.hpp"
#include "lienard/format.hpp"

namespace lienard {

std::string check_name(CheckId id) {
    switch (id) {
        case CheckId::XdotNeg: return "XDOT_NEG";
        case CheckId::YdotNeg: return "YDOT_NEG";
        case CheckId::XddotNeg: return "XDDOT_NEG";
        case CheckId::YddotPos: return "YDDOT_POS";
        case CheckId::PhiNonneg: return "PHI_NONNEG";
        case CheckId::PhidotPos: return "PHIDOT_POS";
        case CheckId::DedtNeg: return "DEDT_NEG";
        case CheckId::RateBound: return "RATE_BOUND";
        case CheckId::LieResidual: return "LIE_RESIDUAL";
    }
    return "UNKNOWN";
}

PointChecks point_margins(const LienardSystem& sys, const State& s) {
    const CurvatureSample c = curvature_sample(sys, s);
    const double x = s.x;
    const double gp = sys.gp()(x);
    const double E = total_energy(sys, s);
    const double dE = energy_rate(sys, s);
    const double d_2gpE = 2.0 * sys.gpp()(x) * c.d.xdot * E + 2.0 * gp * dE;
    const double lie_rel = std::abs(lie_identity_residual(sys, s)) / std::max(1.0, std::abs(c.phi_dot));

    PointChecks p;
    p.margins = {
        -c.d.xdot,
        -c.d.ydot,
        -c.d.xddot,
        c.d.yddot,
        c.phi,
        c.phi_dot,
        -dE,
        -(d_2gpE + H_rate(sys, s)),
        kLieRelTol - lie_rel,
    };
    return p;
}

MinorskyReport unevaluated_report(const LienardSystem& sys, double band_multiplier) {
    MinorskyReport rep;
    rep.system_name = sys.name();
    rep.eps = sys.eps();
    rep.band_multiplier = band_multiplier;
    for (CheckId id : kAllChecks) rep.checks[id] = {};
    rep.assumptions_hold = check_assumptions(sys).all_hold();
    rep.overall = false;
    return rep;
}

MinorskyReport minorsky_report(const LienardSystem& sys, const LimitCycle& cycle,
                               double band_multiplier, const VicinityOptions& vopts) {
    if (!cycle.converged) throw std::invalid_argument("minorsky_report needs a converged limit cycle");
    MinorskyReport rep = unevaluated_report(sys, band_multiplier);

    const VicinitySegment seg = extract_vicinity(cycle.orbit, sys, band_multiplier, vopts);
    rep.n_points = static_cast<long>(seg.samples.size());

    for (const State& s : seg.samples) {
        const PointChecks pc = point_margins(sys, s);
        for (std::size_t k = 0; k < kAllChecks.size(); ++k) {
            const CheckId id = kAllChecks[k];
            const double m = pc.margins[k];
            CheckTally& t = rep.checks[id];
            const bool ok = id == CheckId::PhiNonneg ? m >= 0.0 : m > 0.0;
            if (ok) {
                ++t.pass;
                if (id == CheckId::PhiNonneg && m < 1e-10) ++t.boundary;
            } else {
                ++t.fail;
                if (!t.fail_x_range) {
                    t.fail_x_range = std::pair{s.x, s.x};
                } else {
                    t.fail_x_range->first = std::min(t.fail_x_range->first, s.x);
                    t.fail_x_range->second = std::max(t.fail_x_range->second, s.x);
                }
            }
            t.min_margin = t.min_margin ? std::min(*t.min_margin, m) : m;
        }
    }

    bool clean = rep.n_points > 0 && rep.assumptions_hold;
    for (const auto& [id, t] : rep.checks) clean = clean && t.fail == 0;
    rep.overall = clean;
    return rep;
}

double fit_loglog_slope(const std::vector<double>& eps, const std::vector<double>& values) {
    if (eps.size() != values.size() || eps.size() < 2)
        throw std::invalid_argument("need ≥ 2 epsilons to fit order");
    const double n = static_cast<double>(eps.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        const double lx = std::log(eps[i]);
        const double ly = std::log(values[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

struct ProbeDistances {
    double to_branch = 0.0;
    double to_critical = 0.0;
};

ProbeDistances probe_one(const LienardSystem& sys, std::pair<double, double> x_probe,
                         const StudyOptions& opts) {
    const LimitCycle lc = find_limit_cycle(sys, opts.y_guess, opts.cycle_tol, opts.max_iter, opts.cycle);
    if (!lc.converged)
        throw NumericalError("limit cycle did not converge at eps = " + format_double(sys.eps()));
    ProbeDistances d;
    long hits = 0;
    for (const State& s : lc.orbit.samples) {
        if (s.x < x_probe.first || s.x > x_probe.second) continue;
        if (!(vector_field(sys, s).x < 0.0)) continue;
        const ManifoldBranch b = slow_branches(sys, s.x);
        if (!b.y_slow) continue;
        d.to_branch = std::max(d.to_branch, std::abs(s.y - *b.y_slow));
        d.to_critical = std::max(d.to_critical, std::abs(s.y - sys.F()(s.x)));
        ++hits;
    }
    if (hits == 0)
        throw NumericalError("no slow-descent samples in the probe window at eps = " +
                             format_double(sys.eps()));
    return d;
}

}  // namespace

ConvergenceStudy convergence_study(const LienardSystem& sys, const std::vector<double>& eps_list,
                                   std::pair<double, double> x_probe, const StudyOptions& opts) {
    if (eps_list.size() < 2) throw std::invalid_argument("need ≥ 2 epsilons to fit order");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] >= 0.005)) throw std::invalid_argument("every epsilon must be >= 0.005");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw std::invalid_argument("epsilon list must be strictly decreasing");
    }
    if (!(x_probe.first < x_probe.second)) throw std::invalid_argument("probe window must be ordered");

    std::vector<std::future<ProbeDistances>> jobs;
    for (double e : eps_list) {
        jobs.push_back(std::async(std::launch::async, [&sys, e, x_probe, &opts] {
            return probe_one(sys.with_eps(e), x_probe, opts);
        }));
    }
    ConvergenceStudy st;
    st.eps_values = eps_list;
    for (auto& j : jobs) {
        const ProbeDistances d = j.get();
        st.distances.push_back(d.to_branch);
        st.critical_distances.push_back(d.to_critical);
    }
    st.fitted_order = fit_loglog_slope(st.eps_values, st.distances);
    st.critical_fitted_order = fit_loglog_slope(st.eps_values, st.critical_distances);
    return st;
}

}  // namespace lienard
