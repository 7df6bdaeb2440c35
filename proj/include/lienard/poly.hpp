#pragma once

#include <optional>
#include <span>
#include <vector>

namespace lienard {

/// Coefficients with magnitude at or below this value are snapped to zero
/// after every construction and arithmetic operation.
inline constexpr double kDefaultZeroSnap = 1e-14;

/**
 * Dense univariate polynomial with real coefficients in ascending degree
 * order (coeffs()[k] multiplies x^k).
 *
 * Always held in canonical form: no coefficient with |c| <= snap, and the
 * trailing coefficient is nonzero unless the polynomial is identically zero,
 * in which case coeffs() is empty.
 */
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs, double snap = kDefaultZeroSnap);
    Polynomial(std::initializer_list<double> coeffs);

    static Polynomial constant(double c) { return Polynomial({c}); }
    static Polynomial monomial(int degree, double c = 1.0);

    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Coefficient of x^k, zero beyond the stored range.
    double coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

    /// Degree, or nullopt for the zero polynomial.
    std::optional<int> degree() const;
    bool is_zero() const { return coeffs_.empty(); }

    double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }

    /// Horner evaluation.
    double operator()(double x) const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

  private:
    std::vector<double> coeffs_;
};

double eval(const Polynomial& p, double x);
Polynomial derivative(const Polynomial& p);
Polynomial antiderivative(const Polynomial& p, double c0 = 0.0);

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial sub(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);
Polynomial scale(const Polynomial& p, double c);

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) { return add(p, q); }
inline Polynomial operator-(const Polynomial& p, const Polynomial& q) { return sub(p, q); }
inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }
inline Polynomial operator*(double c, const Polynomial& p) { return scale(p, c); }

/// True when every odd-degree coefficient is exactly zero.
bool is_even(const Polynomial& p);
/// True when every even-degree coefficient is exactly zero.
bool is_odd(const Polynomial& p);

struct RootOptions {
    int cells = 1024;
    /// A non-crossing local minimum of |p| below this is reported as a root.
    double touch_threshold = 1e-10;
};

/**
 * All distinct real roots of p in [lo, hi], sorted ascending, each located to
 * within tol.
 *
 * Odd-multiplicity roots are bracketed by sign changes on a uniform grid and
 * refined by bisection. Even-multiplicity roots are found as interior local
 * minimizers of |p| (sign changes of p') where |p| falls below
 * opts.touch_threshold.
 *
 * Throws std::invalid_argument for the zero polynomial or a bad interval.
 */
std::vector<double> real_roots(const Polynomial& p, double lo, double hi, double tol = 1e-12,
                               const RootOptions& opts = {});

/// Sign of p over an interval, certified through root isolation.
enum class Sign { NonNegative, NonPositive, Mixed, Zero };

/**
 * Classifies the sign of p on (lo, hi]. Roots are isolated first and p is
 * sampled strictly between consecutive roots and at hi, so the result holds
 * on the whole interval rather than on a sample grid.
 */
Sign sign_on_interval(const Polynomial& p, double lo, double hi);

/// Extrema of p over the closed interval [lo, hi].
struct Range {
    double min;
    double max;
};
Range range_on_interval(const Polynomial& p, double lo, double hi);

}  // namespace lienard
