// lienard: command-line front end for the Lienard curvature toolkit.
//
// Exit codes: 0 success, 1 verification false, 2 usage or config error,
// 3 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lienard/curvature.hpp"
#include "lienard/dynamics.hpp"
#include "lienard/energy.hpp"
#include "lienard/io.hpp"
#include "lienard/system.hpp"
#include "lienard/verify.hpp"

namespace {

using namespace lienard;

enum Exit { kOk = 0, kFalse = 1, kUsage = 2, kNumerical = 3 };

struct Overrides {
    std::string config;
    std::optional<std::string> out;
    std::optional<double> tol, band, eps;
    bool dump = false;

    std::optional<double> x0, y0, t_end;
    std::optional<double> x_lo, x_hi, fold_tol;
    std::optional<int> n;
    std::optional<double> margin, y_guess, cycle_tol;
    std::optional<int> max_iter;
    std::optional<std::vector<double>> eps_list;
    std::optional<double> probe_lo, probe_hi;
};

template <class T, class U>
void apply(const std::optional<T>& v, U& field) {
    if (v) field = *v;
}

RunConfig resolve(const Overrides& o) {
    RunConfig c = load_config(o.config);
    apply(o.out, c.out);
    apply(o.tol, c.tol);
    apply(o.band, c.band);
    apply(o.eps, c.eps);
    apply(o.x0, c.x0);
    apply(o.y0, c.y0);
    apply(o.t_end, c.t_end);
    apply(o.x_lo, c.x_range.first);
    apply(o.x_hi, c.x_range.second);
    apply(o.fold_tol, c.fold_tol);
    apply(o.n, c.n);
    apply(o.margin, c.margin);
    apply(o.y_guess, c.y_guess);
    apply(o.cycle_tol, c.cycle_tol);
    apply(o.max_iter, c.max_iter);
    apply(o.eps_list, c.eps_list);
    apply(o.probe_lo, c.probe.first);
    apply(o.probe_hi, c.probe.second);
    validate(c);
    return c;
}

void emit(const RunConfig& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
    } else {
        write_file_atomic(c.out, text);
    }
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

CycleOptions cycle_options(const RunConfig& c) {
    CycleOptions o;
    o.integration_tol = c.tol;
    return o;
}

int cmd_simulate(const RunConfig& c) {
    const LienardSystem sys = make_system(c);
    const Trajectory traj = integrate(sys, {0.0, c.x0, c.y0}, c.t_end, c.tol);
    std::ostringstream csv;
    write_trajectory_csv(csv, sys, traj);
    emit(c, csv.str());

    ordered_json s;
    s["system"] = sys.name();
    s["eps"] = sys.eps();
    s["samples"] = traj.samples.size();
    s["accepted_steps"] = traj.accepted_steps;
    s["rejected_steps"] = traj.rejected_steps;
    s["final"] = {{"t", traj.back().t}, {"x", traj.back().x}, {"y", traj.back().y}};
    (c.out.empty() ? std::cerr : std::cout) << dump(s);
    return kOk;
}

int cmd_manifold(const RunConfig& c) {
    const LienardSystem sys = make_system(c);
    const auto rows = slow_manifold_table(sys, c.x_range.first, c.x_range.second, c.n, c.fold_tol);
    std::ostringstream csv;
    write_manifold_csv(csv, rows);
    emit(c, csv.str());
    return kOk;
}

int cmd_verify(const RunConfig& c) {
    const LienardSystem sys = make_system(c);
    const AssumptionReport assumptions = check_assumptions(sys);
    MinorskyReport rep;
    if (!assumptions.all_hold()) {
        rep = unevaluated_report(sys, c.band);
    } else {
        const LimitCycle lc = find_limit_cycle(sys, c.y_guess, c.cycle_tol, c.max_iter, cycle_options(c));
        if (!lc.converged) {
            std::cerr << "error: limit cycle did not converge within " << c.max_iter << " iterations\n";
            return kNumerical;
        }
        VicinityOptions v;
        v.x_margin = c.margin;
        rep = minorsky_report(sys, lc, c.band, v);
    }
    ordered_json j = to_json(rep);
    j["assumptions"] = to_json(assumptions);
    emit(c, dump(j));
    return rep.overall ? kOk : kFalse;
}

int cmd_classify(const RunConfig& c) {
    emit(c, dump(to_json(classify_case(make_system(c)))));
    return kOk;
}

int cmd_study(const RunConfig& c) {
    StudyOptions o;
    o.cycle_tol = c.cycle_tol;
    o.max_iter = c.max_iter;
    o.y_guess = c.y_guess;
    o.cycle = cycle_options(c);
    emit(c, dump(to_json(convergence_study(make_system(c), c.eps_list, c.probe, o))));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flow curvature, slow manifolds and energy checks for Lienard systems"};
    app.require_subcommand(1);
    Overrides o;

    app.add_option("--config", o.config, "System config (JSON)")->required();
    app.add_option("--out", o.out, "Output file (default: standard output)");
    app.add_option("--tol", o.tol, "Integration tolerance (default 1e-9)");
    app.add_option("--band", o.band, "Vicinity band multiplier c, width c*eps (default 1.0)");
    app.add_option("--eps", o.eps, "Override epsilon");
    app.add_flag("--dump-config", o.dump, "Print the resolved config and exit");

    auto* sim = app.add_subcommand("simulate", "Integrate a trajectory and write CSV");
    sim->add_option("--x0", o.x0, "Initial x (default 0.1)");
    sim->add_option("--y0", o.y0, "Initial y (default 0.1)");
    sim->add_option("--t-end", o.t_end, "Final time (default 20)");

    auto* man = app.add_subcommand("manifold", "Tabulate the slow branch of the curvature manifold");
    man->add_option("--x-lo", o.x_lo, "Left end of the x range (default 1.2)");
    man->add_option("--x-hi", o.x_hi, "Right end of the x range (default 2.0)");
    man->add_option("--n", o.n, "Number of rows (default 100)");
    man->add_option("--fold-tol", o.fold_tol, "Fold exclusion when |f| <= fold_tol * max(1, |g|) (default 1e-6)");

    auto* ver = app.add_subcommand("verify", "Check the sign conditions along the limit cycle");
    ver->add_option("--margin", o.margin, "Offset above the positive zero of F (default 0.1)");
    ver->add_option("--y-guess", o.y_guess, "Initial y on the section x = 0 (default 1.0)");
    ver->add_option("--cycle-tol", o.cycle_tol, "Return map convergence tolerance (default 1e-8)");
    ver->add_option("--max-iter", o.max_iter, "Return map iteration cap (default 50)");

    auto* cls = app.add_subcommand("classify", "Sign classification of H and G'''");

    auto* stu = app.add_subcommand("study", "Convergence order of the slow branch in eps");
    stu->add_option("--eps-list", o.eps_list, "Strictly decreasing eps values, comma separated")->delimiter(',');
    stu->add_option("--probe-lo", o.probe_lo, "Left end of the probe x range (default 1.6)");
    stu->add_option("--probe-hi", o.probe_hi, "Right end of the probe x range (default 1.9)");
    stu->add_option("--y-guess", o.y_guess, "Initial y on the section x = 0 (default 1.0)");
    stu->add_option("--cycle-tol", o.cycle_tol, "Return map convergence tolerance (default 1e-8)");
    stu->add_option("--max-iter", o.max_iter, "Return map iteration cap (default 50)");

    for (auto* sub : {sim, man, ver, cls, stu}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const RunConfig c = resolve(o);
        if (o.dump) {
            std::cout << dump(to_json(c));
            return kOk;
        }
        if (*sim) return cmd_simulate(c);
        if (*man) return cmd_manifold(c);
        if (*ver) return cmd_verify(c);
        if (*cls) return cmd_classify(c);
        if (*stu) return cmd_study(c);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
    return kUsage;
}
