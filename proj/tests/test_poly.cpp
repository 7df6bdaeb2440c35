#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "lienard/poly.hpp"

using lienard::Polynomial;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    std::vector<double> v(deg(rng) + 1);
    for (double& x : v) x = c(rng);
    return Polynomial(v);
}

// Sum of |c_k| |x|^k, the natural scale for rounding errors in evaluation.
double abs_scale(const Polynomial& p, double x) {
    double s = 0.0;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) s += std::abs(p.coeffs()[k]) * std::pow(std::abs(x), k);
    return std::max(s, 1e-300);
}

}  // namespace

TEST_CASE("canonical form and degree") {
    CHECK(Polynomial{1.0, 2.0, 0.0, 0.0}.coeffs() == std::vector<double>{1.0, 2.0});
    CHECK(Polynomial{0.0, 0.0}.is_zero());
    CHECK_FALSE(Polynomial{}.degree().has_value());
    CHECK(Polynomial{1.0, 1e-15, 3.0}.coeffs() == std::vector<double>{1.0, 0.0, 3.0});
    CHECK(Polynomial{2.0, 1e-14}.degree() == 0);
    CHECK(Polynomial{2.0, 2e-14}.degree() == 1);
    CHECK(Polynomial({1.0, 1e-9}, 1e-8).degree() == 0);
    CHECK(Polynomial::monomial(3, 2.0).coeffs() == std::vector<double>{0, 0, 0, 2.0});
    CHECK(Polynomial::constant(0.0).is_zero());
}

TEST_CASE("eval") {
    const Polynomial F{0.0, -1.0, 0.0, 1.0 / 3.0};
    CHECK(F(2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(eval(Polynomial{}, 7.5) == 0.0);
    CHECK(Polynomial{4.25}(1e9) == 4.25);
    const Polynomial F2{0.0, -1.0, 0.0, 1.0 / 3.0, 0.0, 0.2};
    CHECK(F2(1.0) == doctest::Approx(-7.0 / 15.0).epsilon(1e-15));
}

TEST_CASE("derivative and antiderivative") {
    CHECK(derivative(Polynomial{0.0, -1.0, 0.0, 1.0 / 3.0}) == Polynomial{-1.0, 0.0, 1.0});
    CHECK(derivative(Polynomial{3.0}).is_zero());
    CHECK(derivative(Polynomial{}).is_zero());
    const Polynomial G{0.0, 0.0, 0.5, 0.0, 1.0 / 12.0};
    const Polynomial g = derivative(G);
    CHECK(g.coeff(1) == doctest::Approx(1.0));
    CHECK(g.coeff(3) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(g.degree() == 3);

    CHECK(antiderivative(Polynomial{0.0, 1.0}, 0.0) == Polynomial{0.0, 0.0, 0.5});
    CHECK(antiderivative(Polynomial{}, 5.0) == Polynomial{5.0});
    const Polynomial Gi = antiderivative(Polynomial{0.0, 1.0, 0.0, 1.0 / 3.0}, 0.0);
    CHECK(Gi.coeff(2) == doctest::Approx(0.5));
    CHECK(Gi.coeff(4) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
}

TEST_CASE("arithmetic") {
    const Polynomial x{0.0, 1.0};
    CHECK(mul(x, x) == Polynomial{0.0, 0.0, 1.0});
    CHECK(add(Polynomial{-1.0, 0.0, 1.0}, Polynomial{1.0}) == Polynomial{0.0, 0.0, 1.0});
    CHECK(sub(x, x).is_zero());
    CHECK(scale(x, 0.0).is_zero());
    CHECK((2.0 * x) == Polynomial{0.0, 2.0});

    const Polynomial G{0.0, 0.0, 0.5};
    const Polynomial Gp = derivative(G);
    const Polynomial H = Gp * Gp - scale(G * derivative(Gp), 2.0);
    CHECK(H.is_zero());
}

TEST_CASE("parity") {
    CHECK(is_even(Polynomial{-1.0, 0.0, 1.0}));
    CHECK_FALSE(is_even(Polynomial{-1.0, 1.0}));
    CHECK(is_odd(Polynomial{0.0, 1.0, 0.0, 2.0}));
    CHECK_FALSE(is_odd(Polynomial{0.0, 0.0, 1.0}));
    CHECK(is_even(Polynomial{}));
    CHECK(is_odd(Polynomial{}));
}

TEST_CASE("real_roots") {
    auto r = real_roots(Polynomial{-1.0, 0.0, 1.0}, 0.0, 3.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-12));

    r = real_roots(Polynomial{-1.0, 0.0, 1.0, 0.0, 1.0}, 0.0, 3.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(std::sqrt((std::sqrt(5.0) - 1.0) / 2.0)).epsilon(1e-12));
    CHECK(r[0] == doctest::Approx(0.786151).epsilon(1e-6));

    r = real_roots(Polynomial{0.0, -1.0, 0.0, 1.0 / 3.0}, 0.1, 3.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    CHECK_THROWS_WITH_AS(real_roots(Polynomial{}, 0.0, 1.0), "zero polynomial has no isolated roots",
                         std::invalid_argument);
    CHECK_THROWS_AS(real_roots(Polynomial{1.0, 1.0}, 1.0, 0.0), std::invalid_argument);
    CHECK(real_roots(Polynomial{1.0, 0.0, 1.0}, -5.0, 5.0).empty());
}

TEST_CASE("real_roots finds touching and endpoint roots") {
    // (x - 0.3)^2 (x + 2)
    const Polynomial p = Polynomial{-0.3, 1.0} * Polynomial{-0.3, 1.0} * Polynomial{2.0, 1.0};
    auto r = real_roots(p, -3.0, 3.0);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(0.3).epsilon(1e-6));

    r = real_roots(Polynomial{0.0, 1.0}, 0.0, 1.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == 0.0);
}

TEST_CASE("sign and range on an interval") {
    using lienard::Sign;
    CHECK(sign_on_interval(Polynomial{}, 0.0, 1.0) == Sign::Zero);
    CHECK(sign_on_interval(Polynomial{0.0, 0.0, 1.0}, 0.0, 10.0) == Sign::NonNegative);
    CHECK(sign_on_interval(Polynomial{0.0, 0.0, 0.0, 0.0, -0.5, 0.0, -1.0 / 18.0}, 0.0, 10.0) == Sign::NonPositive);
    CHECK(sign_on_interval(Polynomial{-1.0, 0.0, 1.0}, 0.0, 3.0) == Sign::Mixed);
    // tangent at 1, nonnegative overall
    CHECK(sign_on_interval(Polynomial{1.0, -2.0, 1.0}, 0.0, 3.0) == Sign::NonNegative);

    const auto rg = range_on_interval(Polynomial{0.0, -1.0, 0.0, 1.0 / 3.0}, 0.0, 3.0);
    CHECK(rg.min == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
    CHECK(rg.max == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("property: evaluation is a ring homomorphism") {
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> X(-10.0, 10.0);
    for (int trial = 0; trial < 500; ++trial) {
        const Polynomial p = random_poly(rng, 6);
        const Polynomial q = random_poly(rng, 6);
        const double x = X(rng);
        const double sum_scale = abs_scale(p, x) + abs_scale(q, x);
        CHECK(std::abs(add(p, q)(x) - (p(x) + q(x))) <= 1e-12 * sum_scale);
        CHECK(std::abs(mul(p, q)(x) - p(x) * q(x)) <= 1e-12 * abs_scale(p, x) * abs_scale(q, x));
    }
}

TEST_CASE("property: derivative inverts antiderivative") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> C(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Polynomial p = random_poly(rng, 8);
        const Polynomial back = derivative(antiderivative(p, C(rng)));
        REQUIRE(back.coeffs().size() == p.coeffs().size());
        // c / (k + 1) * (k + 1) may differ from c by one rounding
        for (std::size_t k = 0; k < p.coeffs().size(); ++k)
            CHECK(std::abs(back.coeffs()[k] - p.coeffs()[k]) <= 2.3e-16 * std::abs(p.coeffs()[k]));
    }
}

TEST_CASE("property: Horner agrees with the power sum") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> X(-10.0, 10.0);
    for (int trial = 0; trial < 500; ++trial) {
        const Polynomial p = random_poly(rng, 10);
        const double x = X(rng);
        double naive = 0.0;
        for (std::size_t k = 0; k < p.coeffs().size(); ++k) naive += p.coeffs()[k] * std::pow(x, k);
        CHECK(std::abs(p(x) - naive) <= 1e-13 * abs_scale(p, x));
    }
}

TEST_CASE("property: returned roots are roots and are separated") {
    std::mt19937_64 rng(99);
    const double tol = 1e-12;
    for (int trial = 0; trial < 200; ++trial) {
        const Polynomial p = random_poly(rng, 7);
        if (p.is_zero()) continue;
        const auto roots = real_roots(p, -4.0, 4.0, tol);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            const double r = roots[i];
            const double slope = std::abs(derivative(p)(r));
            CHECK(std::abs(p(r)) <= std::max(1e-10, tol * std::max(1.0, slope) * 4.0) + 1e-12 * abs_scale(p, r));
            if (i > 0) CHECK(roots[i] - roots[i - 1] >= tol);
        }
    }
}
