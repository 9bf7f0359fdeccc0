#include "ranktwo/linflow.hpp"

#include <cmath>
#include <span>
#include <vector>

#include "ranktwo/ode.hpp"

namespace ranktwo::linflow {

namespace {

void check_interval(const CoefficientCurve& curve, double a, double b) {
    if (!curve.admits(a, b))
        throw DomainError("linflow: requested x1 interval touches a singularity of A");
}

}  // namespace

Eigen::Matrix2d fundamental_matrix(const CoefficientCurve& curve, double x1_0, double x1,
                                   double tol) {
    require(static_cast<bool>(curve.A), "fundamental_matrix: empty coefficient curve");
    require(tol > 0.0, "fundamental_matrix: tolerance must be positive");
    check_interval(curve, x1_0, x1);
    if (x1 == x1_0) return Eigen::Matrix2d::Identity();

    // Flatten g (column-major) and integrate all four entries at once.
    const ode::Rhs rhs = [&curve](double s, std::span<const double> y, std::span<double> dy) {
        const Eigen::Matrix2d A = curve.A(s);
        Eigen::Map<const Eigen::Matrix2d> g(y.data());
        Eigen::Map<Eigen::Matrix2d> out(dy.data());
        out = A * g;
    };

    std::vector<double> y0 = {1.0, 0.0, 0.0, 1.0};
    std::vector<double> y_end = y0;
    const double span = std::abs(x1 - x1_0);
    try {
        ode::dp54_integrate(rhs, x1_0, x1, y0, tol, tol * 1e-2, span * 1e-15, span,
                            [&y_end](double, std::span<const double> y) {
                                y_end.assign(y.begin(), y.end());
                            });
    } catch (const ConvergenceError&) {
        throw ConvergenceError("fundamental_matrix: step-size underflow on [" +
                               std::to_string(x1_0) + ", " + std::to_string(x1) + "]");
    }
    return Eigen::Map<const Eigen::Matrix2d>(y_end.data());
}

std::array<double, 2> casimir_values(const CoefficientCurve& curve, double x1_0,
                                     std::array<double, 3> state, double tol) {
    const Eigen::Matrix2d g = fundamental_matrix(curve, x1_0, state[0], tol);
    const Eigen::Vector2d x(state[1], state[2]);
    const Eigen::Vector2d c = g.inverse() * x;
    return {c(0), c(1)};
}

double wronskian_residual(const CoefficientCurve& curve, double x1_0, double x1, double tol) {
    const Eigen::Matrix2d g = fundamental_matrix(curve, x1_0, x1, tol);
    const double integral = ode::adaptive_simpson(
        [&curve](double s) { return curve.A(s).trace(); }, x1_0, x1, tol / 10.0);
    return std::abs(g.determinant() - std::exp(integral));
}

}  // namespace ranktwo::linflow
