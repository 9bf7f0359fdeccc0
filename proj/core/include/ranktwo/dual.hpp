#pragma once

#include <cmath>

#include "ranktwo/errors.hpp"

namespace ranktwo {

/// First-order dual number: a value together with one directional
/// derivative. Evaluating a field expression on duals seeded with a
/// coordinate direction yields the exact partial derivative in that
/// direction, which is what the "analytic partials" of the field types
/// are made of.
struct Dual {
    double v = 0.0;
    double d = 0.0;

    constexpr Dual() = default;
    constexpr Dual(double value) : v(value) {}
    constexpr Dual(double value, double deriv) : v(value), d(deriv) {}
};

constexpr Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
constexpr Dual operator-(Dual a) { return {-a.v, -a.d}; }
constexpr Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }

inline Dual operator/(Dual a, Dual b) {
    const double inv = 1.0 / b.v;
    const double q = a.v * inv;
    return {q, (a.d - q * b.d) * inv};
}

inline Dual& operator+=(Dual& a, Dual b) { a = a + b; return a; }
inline Dual& operator-=(Dual& a, Dual b) { a = a - b; return a; }
inline Dual& operator*=(Dual& a, Dual b) { a = a * b; return a; }
inline Dual& operator/=(Dual& a, Dual b) { a = a / b; return a; }

inline Dual sqrt(Dual a) {
    const double s = std::sqrt(a.v);
    return {s, s > 0.0 ? a.d / (2.0 * s) : 0.0};
}
inline Dual sin(Dual a) { return {std::sin(a.v), a.d * std::cos(a.v)}; }
inline Dual cos(Dual a) { return {std::cos(a.v), -a.d * std::sin(a.v)}; }
inline Dual sinh(Dual a) { return {std::sinh(a.v), a.d * std::cosh(a.v)}; }
inline Dual cosh(Dual a) { return {std::cosh(a.v), a.d * std::sinh(a.v)}; }
inline Dual exp(Dual a) { const double e = std::exp(a.v); return {e, a.d * e}; }

constexpr double value_of(double x) { return x; }
constexpr double value_of(Dual x) { return x.v; }

template <class T>
constexpr T sq(T x) { return x * x; }

/// Quotient that treats an exact 0/0 as 0. The reduced systems contain
/// terms whose numerator vanishes identically on the stratum where the
/// denominator vanishes (singular equilibria); there the continuous
/// extension by zero is the intended value. A nonzero numerator over a
/// zero denominator is a genuine domain violation and raises.
template <class T>
T safe_div(const T& num, const T& den) {
    if (value_of(den) != 0.0) return num / den;
    if (value_of(num) == 0.0) return T(0.0);
    throw DomainError("division by zero outside the declared domain");
}

/// Square root that raises instead of returning NaN when the guard
/// expression goes negative.
template <class T>
T guarded_sqrt(const T& x) {
    if (value_of(x) < 0.0) throw DomainError("square root of negative guard expression");
    using std::sqrt;
    return sqrt(x);
}

}  // namespace ranktwo
