#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <limits>

#include "ranktwo/errors.hpp"

namespace ranktwo::linflow {

/// Coefficient matrix A(x1) of the non-autonomous linear system
///   d/dx1 (x3, x4)^T = A(x1) (x3, x4)^T,
/// together with the open interval on which its entries are finite.
struct CoefficientCurve {
    std::function<Eigen::Matrix2d(double)> A;
    double x1_min = -std::numeric_limits<double>::infinity();
    double x1_max = std::numeric_limits<double>::infinity();

    bool admits(double a, double b) const {
        return std::min(a, b) > x1_min && std::max(a, b) < x1_max;
    }
};

/// Fundamental matrix g(x1) with g(x1_0) = Id solving dg/dx1 = A(x1) g,
/// by adaptive embedded Runge-Kutta with local error below tol.
/// Refuses intervals whose closure touches a pole of A.
Eigen::Matrix2d fundamental_matrix(const CoefficientCurve& curve, double x1_0, double x1,
                                   double tol = 1e-12);

/// Implicit first integrals c = g(x1)^{-1} (x3, x4)^T for the state
/// (x1, x3, x4), with base point x1_0.
std::array<double, 2> casimir_values(const CoefficientCurve& curve, double x1_0,
                                     std::array<double, 3> state, double tol = 1e-12);

/// Liouville health check: | det g(x1) - exp(int_{x1_0}^{x1} tr A) |, the
/// quadrature done by adaptive Simpson at tol/10.
double wronskian_residual(const CoefficientCurve& curve, double x1_0, double x1,
                          double tol = 1e-12);

}  // namespace ranktwo::linflow
