#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "ranktwo/errors.hpp"

namespace ranktwo::ode {

using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// One classical fixed-step RK4 step from (t, y) with step h, into out.
inline void rk4_step(const Rhs& f, double t, std::span<const double> y, double h,
                     std::span<double> out) {
    const size_t n = y.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    f(t, y, k1);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    f(t + 0.5 * h, tmp, k2);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    f(t + 0.5 * h, tmp, k3);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    f(t + h, tmp, k4);
    for (size_t i = 0; i < n; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

/// Result of one embedded Dormand-Prince 5(4) trial step.
struct Dp54Step {
    std::vector<double> y5;   // fifth-order solution
    double error_norm = 0.0;  // mixed abs/rel norm of y5 - y4
};

/// One Dormand-Prince 5(4) trial step; the caller decides acceptance from
/// error_norm <= 1.
inline Dp54Step dp54_try_step(const Rhs& f, double t, std::span<const double> y, double h,
                              double rtol, double atol) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const size_t n = y.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n);

    f(t, y, k1);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    f(t + c2 * h, tmp, k2);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h, tmp, k3);
    for (size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * h, tmp, k4);
    for (size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h, tmp, k5);
    for (size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(t + h, tmp, k6);

    Dp54Step out;
    out.y5.resize(n);
    for (size_t i = 0; i < n; ++i)
        out.y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(t + h, out.y5, k7);

    double norm = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double err =
            h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(out.y5[i]));
        norm = std::max(norm, std::abs(err) / scale);
    }
    out.error_norm = norm;
    return out;
}

/// Integrate y' = f(t, y) from t0 to t1 with the adaptive 5(4) pair,
/// invoking on_accept(t, y) after every accepted step (not for t0).
/// Raises ConvergenceError if the step size underflows h_min.
inline void dp54_integrate(const Rhs& f, double t0, double t1, std::span<const double> y0,
                           double rtol, double atol, double h_min, double h_max,
                           const std::function<void(double, std::span<const double>)>& on_accept) {
    require(t1 != t0, "dp54_integrate: empty interval");
    const double dir = t1 > t0 ? 1.0 : -1.0;
    std::vector<double> y(y0.begin(), y0.end());
    double t = t0;
    double h = dir * std::min(h_max, std::abs(t1 - t0));

    while (dir * (t1 - t) > 0.0) {
        double h_step = h;
        if (std::abs(h_step) > std::abs(t1 - t)) h_step = t1 - t;
        const Dp54Step trial = dp54_try_step(f, t, y, h_step, rtol, atol);
        if (trial.error_norm <= 1.0) {
            t += h_step;
            y = trial.y5;
            if (on_accept) on_accept(t, y);
            const double grow = trial.error_norm > 0.0
                                    ? 0.9 * std::pow(trial.error_norm, -0.2)
                                    : 5.0;
            h = h_step * std::clamp(grow, 0.2, 5.0);
            if (std::abs(h) > h_max) h = dir * h_max;
        } else {
            h = h_step * std::clamp(0.9 * std::pow(trial.error_norm, -0.2), 0.1, 0.9);
            if (std::abs(h) < h_min)
                throw ConvergenceError("dp54_integrate: step size underflow");
        }
    }
}

/// Adaptive Simpson quadrature on [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol) {
    struct Impl {
        const std::function<double(double)>& f;
        double recurse(double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) const {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0) return left + right;
            if (std::abs(left + right - whole) <= 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
                   recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        }
    };
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return Impl{f}.recurse(a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace ranktwo::ode
