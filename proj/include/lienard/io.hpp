#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lienard/curvature.hpp"
#include "lienard/energy.hpp"
#include "lienard/system.hpp"
#include "lienard/verify.hpp"

namespace lienard {

using ordered_json = nlohmann::ordered_json;

/// Invalid or missing configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/**
 * Everything a CLI run needs. The system part is mandatory in config files;
 * command parameters fall back to the defaults below.
 */
struct RunConfig {
    std::string name = "system";
    std::vector<double> F;
    std::vector<double> g;
    double eps = 0.05;

    // simulate
    double x0 = 0.1;
    double y0 = 0.1;
    double t_end = 20.0;
    double tol = 1e-9;

    // manifold
    std::pair<double, double> x_range{1.2, 2.0};
    int n = 100;
    double fold_tol = kFoldTolScale;

    // verify
    double band = 1.0;
    double margin = 0.1;
    double y_guess = 1.0;
    double cycle_tol = 1e-8;
    int max_iter = 50;

    // study
    std::vector<double> eps_list{0.1, 0.05, 0.025};
    std::pair<double, double> probe{1.6, 1.9};

    std::string out;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig parse_config(const ordered_json& j);
RunConfig load_config(const std::string& path);
ordered_json to_json(const RunConfig& c);

/// Throws ConfigError naming the first invalid field.
void validate(const RunConfig& c);

LienardSystem make_system(const RunConfig& c);

ordered_json to_json(const AssumptionReport& r);
ordered_json to_json(const MinorskyReport& r);
ordered_json to_json(const CaseClassification& c);
ordered_json to_json(const ConvergenceStudy& s);
ordered_json coeffs_json(const Polynomial& p);

/// Writes content to path through a temporary file and a rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace lienard
