#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "lienard/system.hpp"

namespace testing {

inline lienard::LienardSystem vdp(double eps = 0.05) {
    return lienard::make_system(lienard::Polynomial{0.0, -1.0, 0.0, 1.0 / 3.0}, lienard::Polynomial{0.0, 1.0},
                                eps, "van_der_pol");
}

inline lienard::LienardSystem quintic(double eps = 0.05) {
    return lienard::make_system(lienard::Polynomial{0.0, -1.0, 0.0, 1.0 / 3.0, 0.0, 0.2},
                                lienard::Polynomial{0.0, 1.0, 0.0, 1.0 / 3.0}, eps, "quintic");
}

inline lienard::LienardSystem even_g(double eps = 0.05) {
    return lienard::make_system(lienard::Polynomial{0.0, -1.0, 0.0, 1.0 / 3.0}, lienard::Polynomial{0.0, 0.0, 1.0},
                                eps, "even_g");
}

inline std::string config_path(const std::string& file) { return std::string(LIENARD_CONFIGS) + "/" + file; }

// Plain field evaluation straight from the definition, independent of the
// library's helpers.
inline lienard::Vec2 field(const lienard::LienardSystem& sys, double x, double y) {
    return {(y - sys.F()(x)) / sys.eps(), -sys.g()(x)};
}

// Classical fixed-step RK4, used as an oracle for short time shifts.
inline lienard::State rk4_shift(const lienard::LienardSystem& sys, lienard::State s, double dt, int steps = 64) {
    const double h = dt / steps;
    for (int i = 0; i < steps; ++i) {
        const auto k1 = field(sys, s.x, s.y);
        const auto k2 = field(sys, s.x + 0.5 * h * k1.x, s.y + 0.5 * h * k1.y);
        const auto k3 = field(sys, s.x + 0.5 * h * k2.x, s.y + 0.5 * h * k2.y);
        const auto k4 = field(sys, s.x + h * k3.x, s.y + h * k3.y);
        s.x += h / 6.0 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
        s.y += h / 6.0 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
        s.t += h;
    }
    return s;
}

// Centered difference of q along the flow.
template <class Q>
double flow_fd(const lienard::LienardSystem& sys, const lienard::State& s, double h, Q q) {
    return (q(rk4_shift(sys, s, h)) - q(rk4_shift(sys, s, -h))) / (2.0 * h);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testing
