#pragma once

#include <optional>
#include <span>

#include "ranktwo/multivec.hpp"

namespace ranktwo::pfaff {

/// Kernel data of the Pfaffian pair
///   theta1 = -h3(x1,x3,x4) dx1 + dx3,   theta2 = -h4(x1,x3,x4) dx1 + dx4,
/// plus, for the five-dimensional extension, the variety function phi with
/// theta0 = dphi. h3 and h4 are fields on (x1,x3,x4); independence of x2
/// (and x5) is enforced by construction, since they are evaluated only on
/// those three coordinates.
struct PfaffianSpec {
    ScalarField h3;  // dim 3, arguments (x1, x3, x4)
    ScalarField h4;  // dim 3, arguments (x1, x3, x4)
    std::optional<ScalarField> phi;         // dim 5
    std::optional<CovectorField> phi_grad;  // analytic gradient of phi; derived if absent

    /// h3 as a field on R^dim (dim = 4 or 5), reading (x1, x3, x4).
    ScalarField h3_on(int dim) const;
    ScalarField h4_on(int dim) const;

    /// Gradient covector of phi: the supplied analytic one, or one derived
    /// from phi by dual-number differentiation (its own partials then fall
    /// back to finite differences).
    CovectorField phi_gradient() const;
};

struct KernelForms {
    CovectorField theta1;
    CovectorField theta2;
    std::optional<CovectorField> theta0;  // dphi, present for dim 5
};

/// The kernel 1-forms on R^4 or R^5. dim = 5 requires phi.
KernelForms kernel_oneforms(const PfaffianSpec& spec, int dim);

/// Rank-two bivector on R^4 annihilating theta1, theta2:
///   W^{12} = lambda12, W^{23} = -lambda12 h3, W^{24} = -lambda12 h4,
///   W^{13} = W^{14} = W^{34} = 0.
BivectorField build_r4(const PfaffianSpec& spec, const ScalarField& lambda12);

/// Rank-two bivector on R^5 annihilating dphi, theta1, theta2:
///   W^{12} = -f phi_5,  W^{23} = f h3 phi_5,  W^{24} = f h4 phi_5,
///   W^{15} = f phi_2,   W^{35} = f h3 phi_2,  W^{45} = f h4 phi_2,
///   W^{25} = -f (phi_1 + h3 phi_3 + h4 phi_4),
///   W^{13} = W^{14} = W^{34} = 0,
/// with phi_i the partials of phi.
BivectorField build_r5(const PfaffianSpec& spec, const ScalarField& f);

/// Hamiltonian vector field X_H = sharp(Lambda, dH).
VectorField hamiltonian_vf(const BivectorField& biv, const ScalarField& H);

/// One-shot evaluation of X_H at a point.
std::vector<double> hamiltonian_vf_at(const BivectorField& biv, const ScalarField& H,
                                      std::span<const double> x);

/// Max-norm of d theta_i - Delta_i^j ^ theta_j (i = 1,2) over the
/// coordinate basis bivectors at x, with the standard integrability choice
///   Delta_1^1 = (dh3/dx3) dx1, Delta_1^2 = (dh3/dx4) dx1,
///   Delta_2^1 = (dh4/dx3) dx1, Delta_2^2 = (dh4/dx4) dx1.
/// Identically zero in exact arithmetic for any spec.
double frobenius_residual(const PfaffianSpec& spec, int dim, std::span<const double> x);

}  // namespace ranktwo::pfaff
