#include "lienard/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lienard {

namespace {

double get_number(const ordered_json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string(key) + ": expected a number");
    return v.get<double>();
}

int get_int(const ordered_json& j, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string(key) + ": expected an integer");
    return v.get<int>();
}

std::vector<double> get_numbers(const ordered_json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_array()) throw ConfigError(std::string(key) + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(std::string(key) + ": expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::pair<double, double> get_pair(const ordered_json& j, const char* key,
                                   std::pair<double, double> fallback) {
    if (!j.contains(key)) return fallback;
    const auto v = get_numbers(j, key);
    if (v.size() != 2) throw ConfigError(std::string(key) + ": expected [lo, hi]");
    return {v[0], v[1]};
}

ordered_json nullable(const std::optional<double>& v) {
    return v && std::isfinite(*v) ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json check_json(const AssumptionCheck& c) {
    ordered_json j;
    j["holds"] = c.holds;
    j["witness"] = nullable(c.witness);
    j["detail"] = c.detail;
    return j;
}

}  // namespace

RunConfig parse_config(const ordered_json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    RunConfig c;
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw ConfigError("name: expected a string");
        c.name = j.at("name").get<std::string>();
    }
    for (const char* key : {"F", "g", "eps"})
        if (!j.contains(key)) throw ConfigError(std::string(key) + ": missing");
    c.F = get_numbers(j, "F");
    c.g = get_numbers(j, "g");
    c.eps = get_number(j, "eps", c.eps);

    c.x0 = get_number(j, "x0", c.x0);
    c.y0 = get_number(j, "y0", c.y0);
    c.t_end = get_number(j, "t_end", c.t_end);
    c.tol = get_number(j, "tol", c.tol);
    c.x_range = get_pair(j, "x_range", c.x_range);
    c.n = get_int(j, "n", c.n);
    c.fold_tol = get_number(j, "fold_tol", c.fold_tol);
    c.band = get_number(j, "band", c.band);
    c.margin = get_number(j, "margin", c.margin);
    c.y_guess = get_number(j, "y_guess", c.y_guess);
    c.cycle_tol = get_number(j, "cycle_tol", c.cycle_tol);
    c.max_iter = get_int(j, "max_iter", c.max_iter);
    if (j.contains("eps_list")) c.eps_list = get_numbers(j, "eps_list");
    c.probe = get_pair(j, "probe", c.probe);
    if (j.contains("out")) {
        if (!j.at("out").is_string()) throw ConfigError("out: expected a string");
        c.out = j.at("out").get<std::string>();
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: malformed JSON in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

void validate(const RunConfig& c) {
    auto finite = [](double v) { return std::isfinite(v); };
    if (c.F.empty()) throw ConfigError("F: coefficient array must be non-empty");
    if (c.g.empty()) throw ConfigError("g: coefficient array must be non-empty");
    for (double v : c.F)
        if (!finite(v)) throw ConfigError("F: coefficients must be finite");
    for (double v : c.g)
        if (!finite(v)) throw ConfigError("g: coefficients must be finite");
    if (!(c.eps > 0.0) || !finite(c.eps)) throw ConfigError("eps: must be positive");
    if (!finite(c.x0)) throw ConfigError("x0: must be finite");
    if (!finite(c.y0)) throw ConfigError("y0: must be finite");
    if (!(c.t_end > 0.0) || !finite(c.t_end)) throw ConfigError("t_end: must be positive");
    if (!(c.tol >= 1e-13 && c.tol <= 1e-3)) throw ConfigError("tol: must lie in [1e-13, 1e-3]");
    if (!(c.x_range.first < c.x_range.second)) throw ConfigError("x_range: must satisfy lo < hi");
    if (c.n < 2) throw ConfigError("n: must be at least 2");
    if (!(c.fold_tol > 0.0)) throw ConfigError("fold_tol: must be positive");
    if (!(c.band > 0.0) || !finite(c.band)) throw ConfigError("band: must be positive");
    if (!finite(c.margin)) throw ConfigError("margin: must be finite");
    if (!(c.y_guess > 0.0)) throw ConfigError("y_guess: must be positive");
    if (!(c.cycle_tol > 0.0)) throw ConfigError("cycle_tol: must be positive");
    if (c.max_iter < 1) throw ConfigError("max_iter: must be at least 1");
    for (std::size_t i = 0; i < c.eps_list.size(); ++i) {
        if (!(c.eps_list[i] > 0.0)) throw ConfigError("eps_list: entries must be positive");
        if (i > 0 && !(c.eps_list[i] < c.eps_list[i - 1]))
            throw ConfigError("eps_list: must be strictly decreasing");
    }
    if (!(c.probe.first < c.probe.second)) throw ConfigError("probe: must satisfy lo < hi");
}

ordered_json to_json(const RunConfig& c) {
    ordered_json j;
    j["name"] = c.name;
    j["F"] = c.F;
    j["g"] = c.g;
    j["eps"] = c.eps;
    j["x0"] = c.x0;
    j["y0"] = c.y0;
    j["t_end"] = c.t_end;
    j["tol"] = c.tol;
    j["x_range"] = {c.x_range.first, c.x_range.second};
    j["n"] = c.n;
    j["fold_tol"] = c.fold_tol;
    j["band"] = c.band;
    j["margin"] = c.margin;
    j["y_guess"] = c.y_guess;
    j["cycle_tol"] = c.cycle_tol;
    j["max_iter"] = c.max_iter;
    j["eps_list"] = c.eps_list;
    j["probe"] = {c.probe.first, c.probe.second};
    j["out"] = c.out;
    return j;
}

LienardSystem make_system(const RunConfig& c) {
    return make_system(Polynomial(c.F), Polynomial(c.g), c.eps, c.name);
}

ordered_json coeffs_json(const Polynomial& p) {
    ordered_json a = ordered_json::array();
    for (double v : p.coeffs()) a.push_back(v);
    return a;
}

ordered_json to_json(const AssumptionReport& r) {
    ordered_json j;
    j["I"] = check_json(r.parity_and_sign);
    j["II"] = check_json(r.regularity);
    j["III"] = check_json(r.growth);
    j["IV"] = check_json(r.single_positive_zero);
    j["gprime_nonneg"] = check_json(r.gprime_nonneg);
    j["positive_zero_a"] = nullable(r.positive_zero_a);
    j["all_hold"] = r.all_hold();
    return j;
}

ordered_json to_json(const MinorskyReport& r) {
    ordered_json j;
    j["system"] = r.system_name;
    j["eps"] = r.eps;
    j["band"] = r.band_multiplier;
    j["n_points"] = r.n_points;
    ordered_json checks = ordered_json::object();
    for (CheckId id : kAllChecks) {
        const auto it = r.checks.find(id);
        const CheckTally t = it == r.checks.end() ? CheckTally{} : it->second;
        ordered_json c;
        c["pass"] = t.pass;
        c["fail"] = t.fail;
        c["min_margin"] = nullable(t.min_margin);
        c["boundary"] = t.boundary;
        if (t.fail_x_range) c["fail_x_range"] = {t.fail_x_range->first, t.fail_x_range->second};
        checks[check_name(id)] = std::move(c);
    }
    j["checks"] = std::move(checks);
    j["overall"] = r.overall;
    j["assumptions_hold"] = r.assumptions_hold;
    return j;
}

ordered_json to_json(const CaseClassification& c) {
    ordered_json j;
    j["case"] = to_string(c.case_label);
    j["H_coeffs"] = coeffs_json(c.H_poly);
    j["C1_witness"] = nullable(c.C1_witness);
    j["Gppp_sign"] = to_string(c.Gppp_sign);
    j["H_identically_zero"] = c.H_identically_zero;
    return j;
}

ordered_json to_json(const ConvergenceStudy& s) {
    ordered_json j;
    j["eps_values"] = s.eps_values;
    j["distances"] = s.distances;
    j["fitted_order"] = s.fitted_order;
    j["critical_distances"] = s.critical_distances;
    j["critical_fitted_order"] = s.critical_fitted_order;
    return j;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

}  // namespace lienard
