#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
};

const fs::path& scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("lienard_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run run(const std::string& args) {
    const fs::path out = scratch() / "stdout.txt";
    const std::string cmd = std::string(LIENARD_CLI) + " " + args + " > " + out.string() + " 2> " +
                            (scratch() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

std::string cfg(const std::string& name) { return std::string(LIENARD_CONFIGS) + "/" + name; }

}  // namespace

TEST_CASE("simulate writes a CSV with increasing time") {
    const fs::path csv = scratch() / "traj.csv";
    const Run r = run("simulate --config " + cfg("vdp.json") + " --x0 0.1 --y0 0.1 --t-end 20 --out " + csv.string());
    REQUIRE(r.code == 0);
    const auto summary = nlohmann::json::parse(r.out);
    CHECK(summary["accepted_steps"].get<long>() > 0);
    CHECK(summary["final"]["t"].get<double>() == doctest::Approx(20.0));

    std::ifstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,x,y,xdot,ydot,phi,E,dEdt");
    double prev = -1.0;
    long rows = 0;
    bool increasing = true;
    while (std::getline(in, line)) {
        const double t = std::stod(line.substr(0, line.find(',')));
        increasing = increasing && t > prev;
        prev = t;
        ++rows;
    }
    CHECK(increasing);
    CHECK(rows == summary["samples"].get<long>());
}

TEST_CASE("usage and config errors exit with 2") {
    CHECK(run("simulate --config " + (scratch() / "missing.json").string()).code == 2);
    CHECK(run("simulate --config " + cfg("vdp.json") + " --t-end 0").code == 2);
    CHECK(run("manifold --config " + cfg("vdp.json") + " --n 1").code == 2);
    CHECK(run("simulate").code == 2);
    CHECK(run("--config " + cfg("vdp.json")).code == 2);
    CHECK(run("bogus --config " + cfg("vdp.json")).code == 2);
    CHECK(run("simulate --config " + cfg("vdp.json") + " --eps -1").code == 2);
    CHECK(run("--help").code == 0);

    const fs::path bad = scratch() / "bad.json";
    std::ofstream(bad) << R"({"F":[0,1],"g":[0,1],"eps":0})";
    CHECK(run("classify --config " + bad.string()).code == 2);
    CHECK(slurp(scratch() / "stderr.txt").find("eps") != std::string::npos);
}

TEST_CASE("integration failure exits with 3") {
    const fs::path blow = scratch() / "blow.json";
    std::ofstream(blow) << R"({"F":[0,0,0,-1],"g":[0,1],"eps":0.1})";
    CHECK(run("simulate --config " + blow.string() + " --x0 2 --y0 0 --t-end 10").code == 3);
}

TEST_CASE("manifold table") {
    Run r = run("manifold --config " + cfg("vdp.json") + " --x-lo 1.2 --x-hi 2 --n 100");
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,y_slow,u_slow,u_fast,fold_excluded");
    long rows = 0, folds = 0;
    while (std::getline(in, line)) {
        ++rows;
        folds += line.back() == '1';
    }
    CHECK(rows == 100);
    CHECK(folds == 0);

    r = run("manifold --config " + cfg("vdp.json") + " --x-lo 0.5 --x-hi 1.5 --n 101");
    REQUIRE(r.code == 0);
    CHECK(r.out.find(",,,,1") != std::string::npos);
}

TEST_CASE("classify") {
    Run r = run("classify --config " + cfg("vdp.json"));
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["case"] == "CASE1_H_NONNEG");
    CHECK(j["H_coeffs"].empty());
    CHECK(j["H_identically_zero"] == true);

    r = run("classify --config " + cfg("quintic.json"));
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["case"] == "CASE2_H_NONPOS");

    r = run("classify --config " + cfg("mixed_h.json"));
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["case"] == "MIXED");
}

TEST_CASE("verify on the counterexample reports and exits 1") {
    const Run r = run("verify --config " + cfg("even_g.json"));
    CHECK(r.code == 1);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["overall"] == false);
    CHECK(j["assumptions"]["I"]["holds"] == false);
    CHECK(j["n_points"] == 0);
}

TEST_CASE("verify on the bundled systems emits a report") {
    for (const char* name : {"vdp.json", "quintic.json"}) {
        const fs::path out = scratch() / "report.json";
        const Run r = run(std::string("verify --config ") + cfg(name) + " --out " + out.string());
        CAPTURE(name);
        CHECK((r.code == 0 || r.code == 1));
        const auto j = nlohmann::json::parse(slurp(out));
        CHECK(j["checks"].size() == 9);
        CHECK(j["n_points"].get<long>() > 0);
        CHECK(j["checks"]["LIE_RESIDUAL"]["fail"] == 0);
        CHECK((r.code == 0) == j["overall"].get<bool>());
    }
}

TEST_CASE("non-convergence exits with 3") {
    CHECK(run("verify --config " + cfg("vdp.json") + " --max-iter 1 --cycle-tol 1e-15").code == 3);
}

TEST_CASE("dump-config round trip") {
    const Run r = run("simulate --config " + cfg("vdp.json") + " --tol 1e-7 --band 2 --t-end 3 --dump-config");
    REQUIRE(r.code == 0);
    const fs::path dumped = scratch() / "dumped.json";
    std::ofstream(dumped) << r.out;
    const Run again = run("simulate --config " + dumped.string() + " --dump-config");
    REQUIRE(again.code == 0);
    CHECK(again.out == r.out);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["tol"] == 1e-7);
    CHECK(j["band"] == 2.0);
    CHECK(j["t_end"] == 3.0);
}

TEST_CASE("study") {
    const Run r = run("study --config " + cfg("vdp.json") + " --eps-list 0.1,0.05,0.025 --probe-lo 1.6 --probe-hi 1.9");
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["fitted_order"].get<double>() >= 1.5);
    CHECK(run("study --config " + cfg("vdp.json") + " --eps-list 0.1").code == 2);
}
