#include "lienard/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lienard {

namespace {

void canonicalize(std::vector<double>& c, double snap) {
    for (double& v : c) {
        if (std::abs(v) <= snap) v = 0.0;
    }
    while (!c.empty() && c.back() == 0.0) c.pop_back();
}

// Shrinks [a, b] around a sign change of fn until it is narrower than tol.
template <class Fn>
double bisect(const Fn& fn, double a, double b, double tol) {
    double fa = fn(a);
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = fn(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs, double snap) : coeffs_(std::move(coeffs)) {
    canonicalize(coeffs_, snap);
}

Polynomial::Polynomial(std::initializer_list<double> coeffs)
    : Polynomial(std::vector<double>(coeffs)) {}

Polynomial Polynomial::monomial(int degree, double c) {
    if (degree < 0) throw std::invalid_argument("monomial degree must be non-negative");
    std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
    v.back() = c;
    return Polynomial(std::move(v));
}

std::optional<int> Polynomial::degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return static_cast<int>(coeffs_.size()) - 1;
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double eval(const Polynomial& p, double x) { return p(x); }

Polynomial derivative(const Polynomial& p) {
    const auto& c = p.coeffs();
    if (c.size() <= 1) return {};
    std::vector<double> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
    return Polynomial(std::move(d));
}

Polynomial antiderivative(const Polynomial& p, double c0) {
    const auto& c = p.coeffs();
    std::vector<double> a(c.size() + 1, 0.0);
    a[0] = c0;
    for (std::size_t k = 0; k < c.size(); ++k) a[k + 1] = c[k] / static_cast<double>(k + 1);
    return Polynomial(std::move(a));
}

Polynomial add(const Polynomial& p, const Polynomial& q) {
    std::vector<double> r(std::max(p.coeffs().size(), q.coeffs().size()), 0.0);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = p.coeff(k) + q.coeff(k);
    return Polynomial(std::move(r));
}

Polynomial sub(const Polynomial& p, const Polynomial& q) {
    std::vector<double> r(std::max(p.coeffs().size(), q.coeffs().size()), 0.0);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = p.coeff(k) - q.coeff(k);
    return Polynomial(std::move(r));
}

Polynomial mul(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    const auto& a = p.coeffs();
    const auto& b = q.coeffs();
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return Polynomial(std::move(r));
}

Polynomial scale(const Polynomial& p, double c) {
    std::vector<double> r = p.coeffs();
    for (double& v : r) v *= c;
    return Polynomial(std::move(r));
}

bool is_even(const Polynomial& p) {
    const auto& c = p.coeffs();
    for (std::size_t k = 1; k < c.size(); k += 2)
        if (c[k] != 0.0) return false;
    return true;
}

bool is_odd(const Polynomial& p) {
    const auto& c = p.coeffs();
    for (std::size_t k = 0; k < c.size(); k += 2)
        if (c[k] != 0.0) return false;
    return true;
}

std::vector<double> real_roots(const Polynomial& p, double lo, double hi, double tol,
                               const RootOptions& opts) {
    if (p.is_zero()) throw std::invalid_argument("zero polynomial has no isolated roots");
    if (!(lo < hi)) throw std::invalid_argument("real_roots: require lo < hi");
    if (!(tol > 0.0)) throw std::invalid_argument("real_roots: require tol > 0");
    if (opts.cells < 1) throw std::invalid_argument("real_roots: require at least one cell");

    std::vector<double> roots;
    if (p.degree() == 0) return roots;

    const Polynomial dp = derivative(p);
    const int n = opts.cells;
    const double width = (hi - lo) / n;
    auto node = [&](int i) { return i == n ? hi : lo + width * i; };

    std::vector<double> v(n + 1), dv(n + 1);
    for (int i = 0; i <= n; ++i) {
        v[i] = p(node(i));
        dv[i] = dp(node(i));
    }

    for (int i = 0; i <= n; ++i) {
        if (v[i] == 0.0) roots.push_back(node(i));
    }
    for (int i = 0; i < n; ++i) {
        const double a = node(i), b = node(i + 1);
        if (v[i] == 0.0 || v[i + 1] == 0.0) continue;
        if ((v[i] < 0.0) != (v[i + 1] < 0.0)) {
            roots.push_back(bisect(p, a, b, tol));
            continue;
        }
        // No crossing: look for a touching (even-multiplicity) root.
        if (dv[i] != 0.0 && dv[i + 1] != 0.0 && (dv[i] < 0.0) != (dv[i + 1] < 0.0)) {
            const double c = bisect(dp, a, b, tol);
            const double pc = std::abs(p(c));
            if (pc <= opts.touch_threshold && pc <= std::min(std::abs(v[i]), std::abs(v[i + 1])))
                roots.push_back(c);
        }
    }

    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots) {
        if (out.empty() || r - out.back() > 2.0 * tol) out.push_back(r);
    }
    return out;
}

Sign sign_on_interval(const Polynomial& p, double lo, double hi) {
    if (p.is_zero()) return Sign::Zero;
    std::vector<double> pts{lo};
    for (double r : real_roots(p, lo, hi)) pts.push_back(r);
    pts.push_back(hi);

    bool pos = false, neg = false;
    auto record = [&](double v) {
        if (v > 0.0) pos = true;
        if (v < 0.0) neg = true;
    };
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        if (pts[k + 1] > pts[k]) record(p(0.5 * (pts[k] + pts[k + 1])));
    }
    record(p(hi));
    if (pos && neg) return Sign::Mixed;
    if (pos) return Sign::NonNegative;
    if (neg) return Sign::NonPositive;
    return Sign::Zero;
}

Range range_on_interval(const Polynomial& p, double lo, double hi) {
    double mn = std::min(p(lo), p(hi));
    double mx = std::max(p(lo), p(hi));
    const Polynomial dp = derivative(p);
    if (!dp.is_zero() && lo < hi) {
        for (double c : real_roots(dp, lo, hi)) {
            mn = std::min(mn, p(c));
            mx = std::max(mx, p(c));
        }
    }
    return {mn, mx};
}

}  // namespace lienard
