#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lienard/curvature.hpp"
#include "lienard/dynamics.hpp"
#include "lienard/energy.hpp"
#include "lienard/io.hpp"
#include "lienard/system.hpp"
#include "lienard/verify.hpp"

namespace py = pybind11;
using namespace lienard;

namespace {

std::string verify_json(const LienardSystem& sys, double band, double margin, double y_guess,
                        double cycle_tol, int max_iter) {
    const AssumptionReport a = check_assumptions(sys);
    MinorskyReport rep;
    if (!a.all_hold()) {
        rep = unevaluated_report(sys, band);
    } else {
        const LimitCycle lc = find_limit_cycle(sys, y_guess, cycle_tol, max_iter);
        if (!lc.converged) throw NumericalError("limit cycle did not converge");
        VicinityOptions v;
        v.x_margin = margin;
        rep = minorsky_report(sys, lc, band, v);
    }
    ordered_json j = to_json(rep);
    j["assumptions"] = to_json(a);
    return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lienard system curvature toolkit";

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<Polynomial>(m, "Polynomial")
        .def(py::init([](std::vector<double> c) { return Polynomial(std::move(c)); }), py::arg("coeffs"))
        .def_property_readonly("coeffs", &Polynomial::coeffs)
        .def_property_readonly("degree", &Polynomial::degree)
        .def("is_zero", &Polynomial::is_zero)
        .def("__call__", &Polynomial::operator())
        .def("derivative", [](const Polynomial& p) { return derivative(p); })
        .def("real_roots", [](const Polynomial& p, double lo, double hi) { return real_roots(p, lo, hi); })
        .def("__eq__", [](const Polynomial& a, const Polynomial& b) { return a == b; })
        .def("__repr__", [](const Polynomial& p) { return "Polynomial(" + coeffs_json(p).dump() + ")"; });

    py::class_<State>(m, "State")
        .def(py::init([](double t, double x, double y) { return State{t, x, y}; }),
             py::arg("t"), py::arg("x"), py::arg("y"))
        .def_readwrite("t", &State::t)
        .def_readwrite("x", &State::x)
        .def_readwrite("y", &State::y)
        .def("__repr__", [](const State& s) {
            return "State(t=" + std::to_string(s.t) + ", x=" + std::to_string(s.x) +
                   ", y=" + std::to_string(s.y) + ")";
        });

    py::class_<LienardSystem>(m, "LienardSystem")
        .def_property_readonly("name", &LienardSystem::name)
        .def_property_readonly("eps", &LienardSystem::eps)
        .def_property_readonly("F", &LienardSystem::F)
        .def_property_readonly("f", &LienardSystem::f)
        .def_property_readonly("g", &LienardSystem::g)
        .def_property_readonly("G", &LienardSystem::G)
        .def("with_eps", &LienardSystem::with_eps);

    m.def("make_system",
          [](std::vector<double> F, std::vector<double> g, double eps, std::string name) {
              return make_system(Polynomial(std::move(F)), Polynomial(std::move(g)), eps, std::move(name));
          },
          py::arg("F"), py::arg("g"), py::arg("eps"), py::arg("name") = "system");
    m.def("load_system", [](const std::string& path) { return make_system(load_config(path)); });

    py::class_<AssumptionCheck>(m, "AssumptionCheck")
        .def_readonly("holds", &AssumptionCheck::holds)
        .def_readonly("witness", &AssumptionCheck::witness)
        .def_readonly("detail", &AssumptionCheck::detail);

    m.def("check_assumptions", [](const LienardSystem& sys, double x_max) {
        const AssumptionReport r = check_assumptions(sys, x_max);
        py::dict d;
        d["I"] = r.parity_and_sign;
        d["II"] = r.regularity;
        d["III"] = r.growth;
        d["IV"] = r.single_positive_zero;
        d["gprime_nonneg"] = r.gprime_nonneg;
        d["a"] = r.positive_zero_a;
        d["all_hold"] = r.all_hold();
        return d;
    }, py::arg("system"), py::arg("x_max") = 10.0);

    m.def("phi", [](const LienardSystem& sys, double x, double y) { return phi(sys, {0.0, x, y}); });
    m.def("phi_dot", [](const LienardSystem& sys, double x, double y) { return phi_dot(sys, {0.0, x, y}); });
    m.def("lie_identity_residual",
          [](const LienardSystem& sys, double x, double y) { return lie_identity_residual(sys, {0.0, x, y}); });
    m.def("curvature_energy_residual",
          [](const LienardSystem& sys, double x, double y) { return curvature_energy_residual(sys, {0.0, x, y}); });
    m.def("total_energy", [](const LienardSystem& sys, double x, double y) { return total_energy(sys, {0.0, x, y}); });
    m.def("H_polynomial", [](const LienardSystem& sys) { return H_polynomial(sys); });

    py::class_<ManifoldBranch>(m, "ManifoldBranch")
        .def_readonly("x", &ManifoldBranch::x)
        .def_readonly("u_slow", &ManifoldBranch::u_slow)
        .def_readonly("u_fast", &ManifoldBranch::u_fast)
        .def_readonly("y_slow", &ManifoldBranch::y_slow)
        .def_readonly("fold_excluded", &ManifoldBranch::fold_excluded);
    m.def("slow_branches", &slow_branches, py::arg("system"), py::arg("x"),
          py::arg("fold_tol_scale") = kFoldTolScale);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def_readonly("accepted_steps", &Trajectory::accepted_steps)
        .def_readonly("rejected_steps", &Trajectory::rejected_steps)
        .def("__len__", [](const Trajectory& t) { return t.samples.size(); });
    m.def("integrate",
          [](const LienardSystem& sys, double x0, double y0, double t_end, double tol) {
              py::gil_scoped_release release;
              return integrate(sys, {0.0, x0, y0}, t_end, tol);
          },
          py::arg("system"), py::arg("x0"), py::arg("y0"), py::arg("t_end"), py::arg("tol") = 1e-9);

    py::class_<LimitCycle>(m, "LimitCycle")
        .def_readonly("period", &LimitCycle::period)
        .def_readonly("section_value", &LimitCycle::section_value)
        .def_readonly("orbit", &LimitCycle::orbit)
        .def_readonly("amplitude_x", &LimitCycle::amplitude_x)
        .def_readonly("converged", &LimitCycle::converged)
        .def_readonly("iterations", &LimitCycle::iterations);
    m.def("find_limit_cycle",
          [](const LienardSystem& sys, double y_guess, double tol, int max_iter) {
              py::gil_scoped_release release;
              return find_limit_cycle(sys, y_guess, tol, max_iter);
          },
          py::arg("system"), py::arg("y_guess") = 1.0, py::arg("tol") = 1e-8, py::arg("max_iter") = 50);

    m.def("classify_json", [](const LienardSystem& sys, double x_max) {
        return to_json(classify_case(sys, x_max)).dump();
    });
    m.def("verify_json", [](const LienardSystem& sys, double band, double margin, double y_guess,
                            double cycle_tol, int max_iter) {
        py::gil_scoped_release release;
        return verify_json(sys, band, margin, y_guess, cycle_tol, max_iter);
    });
    m.def("study_json", [](const LienardSystem& sys, std::vector<double> eps, std::pair<double, double> probe) {
        py::gil_scoped_release release;
        return to_json(convergence_study(sys, eps, probe)).dump();
    });
}
