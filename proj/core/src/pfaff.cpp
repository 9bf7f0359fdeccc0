#include "ranktwo/pfaff.hpp"

#include <cmath>

namespace ranktwo::pfaff {

namespace {

void check_dim45(int dim) {
    require(dim == 4 || dim == 5, "pfaff: dimension must be 4 or 5");
}

}  // namespace

ScalarField PfaffianSpec::h3_on(int dim) const {
    check_dim45(dim);
    return h3.pulled_back(dim, {0, 2, 3});
}

ScalarField PfaffianSpec::h4_on(int dim) const {
    check_dim45(dim);
    return h4.pulled_back(dim, {0, 2, 3});
}

CovectorField PfaffianSpec::phi_gradient() const {
    require(phi.has_value(), "PfaffianSpec: phi not set");
    if (phi_grad) return *phi_grad;
    std::vector<ScalarField> comps;
    comps.reserve(5);
    for (int i = 0; i < 5; ++i) {
        comps.push_back(ScalarField::from_values(
            5, [p = *phi, i](std::span<const double> x) { return p.partial(i, x); }));
    }
    return {5, std::move(comps)};
}

KernelForms kernel_oneforms(const PfaffianSpec& spec, int dim) {
    check_dim45(dim);
    if (dim == 5 && !spec.phi)
        throw ContractError("kernel_oneforms: dim 5 requires a variety function phi");

    std::vector<ScalarField> t1(static_cast<size_t>(dim), ScalarField::zero(dim));
    std::vector<ScalarField> t2(static_cast<size_t>(dim), ScalarField::zero(dim));
    t1[0] = -spec.h3_on(dim);
    t1[2] = ScalarField::constant(dim, 1.0);
    t2[0] = -spec.h4_on(dim);
    t2[3] = ScalarField::constant(dim, 1.0);

    KernelForms out;
    out.theta1 = CovectorField(dim, std::move(t1));
    out.theta2 = CovectorField(dim, std::move(t2));
    if (dim == 5) out.theta0 = spec.phi_gradient();
    return out;
}

BivectorField build_r4(const PfaffianSpec& spec, const ScalarField& lambda12) {
    require(lambda12.valid() && lambda12.dim() == 4, "build_r4: lambda12 must be a field on R^4");
    const ScalarField h3 = spec.h3_on(4);
    const ScalarField h4 = spec.h4_on(4);
    BivectorField biv(4);
    biv.set_upper(0, 1, lambda12);
    biv.set_upper(1, 2, -(lambda12 * h3));
    biv.set_upper(1, 3, -(lambda12 * h4));
    return biv;
}

BivectorField build_r5(const PfaffianSpec& spec, const ScalarField& f) {
    require(f.valid() && f.dim() == 5, "build_r5: f must be a field on R^5");
    if (!spec.phi) throw ContractError("build_r5: spec has no variety function phi");
    const ScalarField h3 = spec.h3_on(5);
    const ScalarField h4 = spec.h4_on(5);
    const CovectorField g = spec.phi_gradient();
    const ScalarField& g1 = g.component(0);
    const ScalarField& g2 = g.component(1);
    const ScalarField& g3 = g.component(2);
    const ScalarField& g4 = g.component(3);
    const ScalarField& g5 = g.component(4);

    BivectorField biv(5);
    biv.set_upper(0, 1, -(f * g5));
    biv.set_upper(1, 2, f * h3 * g5);
    biv.set_upper(1, 3, f * h4 * g5);
    biv.set_upper(0, 4, f * g2);
    biv.set_upper(2, 4, f * h3 * g2);
    biv.set_upper(3, 4, f * h4 * g2);
    biv.set_upper(1, 4, -(f * (g1 + h3 * g3 + h4 * g4)));
    return biv;
}

VectorField hamiltonian_vf(const BivectorField& biv, const ScalarField& H) {
    require(H.valid() && H.dim() == biv.dim(), "hamiltonian_vf: dimension mismatch");
    const int n = biv.dim();
    std::vector<ScalarField> comps;
    comps.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        comps.push_back(ScalarField::from_values(n, [biv, H, i](std::span<const double> x) {
            return hamiltonian_vf_at(biv, H, x)[static_cast<size_t>(i)];
        }));
    }
    return {n, std::move(comps)};
}

std::vector<double> hamiltonian_vf_at(const BivectorField& biv, const ScalarField& H,
                                      std::span<const double> x) {
    require(H.dim() == biv.dim(), "hamiltonian_vf_at: dimension mismatch");
    return sharp(biv, H.gradient(x), x);
}

double frobenius_residual(const PfaffianSpec& spec, int dim, std::span<const double> x) {
    check_dim45(dim);
    require(static_cast<int>(x.size()) == dim, "frobenius_residual: point dimension mismatch");

    const ScalarField h3 = spec.h3_on(dim);
    const ScalarField h4 = spec.h4_on(dim);
    const double h3v = h3(x);
    const double h4v = h4(x);
    const auto dh3 = h3.gradient(x);
    const auto dh4 = h4.gradient(x);

    // theta_i coefficient vectors at x
    std::vector<double> th1(static_cast<size_t>(dim), 0.0), th2(static_cast<size_t>(dim), 0.0);
    th1[0] = -h3v;
    th1[2] = 1.0;
    th2[0] = -h4v;
    th2[3] = 1.0;

    // Delta_i^j are multiples of dx1; only their first coefficient is nonzero.
    const double d11 = dh3[2], d12 = dh3[3];  // dh3/dx3, dh3/dx4
    const double d21 = dh4[2], d22 = dh4[3];  // dh4/dx3, dh4/dx4

    auto wedge_ab = [](double ua, double wb, double ub, double wa) { return ua * wb - ub * wa; };

    double res = 0.0;
    for (int a = 0; a < dim; ++a) {
        for (int b = a + 1; b < dim; ++b) {
            // d theta: only component 0 of theta_i is non-constant
            const double dth1 = (b == 0 ? -dh3[static_cast<size_t>(a)] : 0.0) -
                                (a == 0 ? -dh3[static_cast<size_t>(b)] : 0.0);
            const double dth2 = (b == 0 ? -dh4[static_cast<size_t>(a)] : 0.0) -
                                (a == 0 ? -dh4[static_cast<size_t>(b)] : 0.0);
            const double da1 = (a == 0) ? 1.0 : 0.0;  // basis coefficient of dx1 at slot a
            const double db1 = (b == 0) ? 1.0 : 0.0;
            const double w1 =
                d11 * wedge_ab(da1, th1[static_cast<size_t>(b)], db1, th1[static_cast<size_t>(a)]) +
                d12 * wedge_ab(da1, th2[static_cast<size_t>(b)], db1, th2[static_cast<size_t>(a)]);
            const double w2 =
                d21 * wedge_ab(da1, th1[static_cast<size_t>(b)], db1, th1[static_cast<size_t>(a)]) +
                d22 * wedge_ab(da1, th2[static_cast<size_t>(b)], db1, th2[static_cast<size_t>(a)]);
            res = std::max(res, std::abs(dth1 - w1));
            res = std::max(res, std::abs(dth2 - w2));
        }
    }
    return res;
}

}  // namespace ranktwo::pfaff
