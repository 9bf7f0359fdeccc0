#include "ranktwo/verify.hpp"

#include <algorithm>
#include <cmath>

#include "ranktwo/pfaff.hpp"

namespace ranktwo::verify {

namespace {

using systems::SystemSpec;
using systems::Variant;

struct Box {
    std::vector<std::pair<double, double>> ranges;
};

Box interior_box(const SystemSpec& spec) {
    Box b;
    if (spec.name == "disk") {
        b.ranges = {{-0.9, 0.9}, {-1, 1}, {-1, 1}, {-1, 1}, {0.1, 2}};
    } else if (spec.name == "routh_sphere") {
        b.ranges = {{-0.95, 0.95}, {-1, 1}, {-1, 1}, {-1, 1}, {0.1, 2}};
    } else if (spec.name == "surface_ball") {
        b.ranges = {{0.2, 2}, {-1, 1}, {-1, 1}, {-1, 1}, {0.1, 2}};
    } else {
        b.ranges = {{-1.5, 1.5}, {-1.5, 1.5}, {-1.5, 1.5}, {-1.5, 1.5}};
    }
    b.ranges.resize(static_cast<size_t>(spec.dim));
    return b;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double matrix_max_abs(const Eigen::MatrixXd& W) { return W.cwiseAbs().maxCoeff(); }

ScalarField one_plus_x1_sq(int dim) {
    return ScalarField::smooth(dim, [](auto x) { return 1.0 + x[0] * x[0]; });
}

Check make_check(std::string name, long long samples, double residual, double tol) {
    return {std::move(name), samples, residual, tol, residual < tol};
}

/// The bivector selected by the system's multiplier, with the optional test
/// mutation applied.
BivectorField build(const SystemSpec& spec, const Options& opt) {
    ScalarField mult = spec.multiplier;
    if (opt.mutation == "flip_multiplier_sign") mult = -1.0 * mult;
    if (spec.dim == 4) return pfaff::build_r4(spec.pfaffian, mult);
    return pfaff::build_r5(spec.pfaffian, mult);
}

void jacobi_checks(const SystemSpec& spec, const BivectorField& biv,
                   const std::vector<Point>& pts, const Options& opt, const std::string& prefix,
                   std::vector<Check>& out) {
    const BivectorField scaled = scale(biv, one_plus_x1_sq(spec.dim));
    double res = 0.0, res_scaled = 0.0;
    for (const auto& p : pts) {
        res = std::max(res, schouten_self(biv, p).max_abs());
        res_scaled = std::max(res_scaled, schouten_self(scaled, p).max_abs());
    }
    out.push_back(make_check(prefix + "/jacobi", static_cast<long long>(pts.size()), res,
                             opt.tol_jacobi));
    out.push_back(make_check(prefix + "/jacobi_scaled", static_cast<long long>(pts.size()),
                             res_scaled, opt.tol_jacobi));
}

void kernel_checks(const SystemSpec& spec, const BivectorField& biv,
                   const std::vector<Point>& pts, const Options& opt, const std::string& prefix,
                   std::vector<Check>& out) {
    const auto forms = pfaff::kernel_oneforms(spec.pfaffian, spec.dim);
    double res = 0.0;
    for (const auto& p : pts) {
        const double scale = 1.0 + matrix_max_abs(biv.matrix(p));
        double r = max_abs(sharp(biv, forms.theta1, p));
        r = std::max(r, max_abs(sharp(biv, forms.theta2, p)));
        if (forms.theta0) r = std::max(r, max_abs(sharp(biv, *forms.theta0, p)));
        res = std::max(res, r / scale);
    }
    out.push_back(make_check(prefix + "/kernel", static_cast<long long>(pts.size()), res,
                             opt.tol_kernel));
}

void frobenius_check(const SystemSpec& spec, const std::vector<Point>& pts, const Options& opt,
                     const std::string& prefix, std::vector<Check>& out) {
    double res = 0.0;
    for (const auto& p : pts)
        res = std::max(res, pfaff::frobenius_residual(spec.pfaffian, spec.dim, p));
    out.push_back(make_check(prefix + "/frobenius", static_cast<long long>(pts.size()), res,
                             opt.tol_frobenius));
}

void hamiltonian_check(const SystemSpec& spec, const BivectorField& biv,
                       const std::vector<Point>& pts, const Options& opt,
                       const std::string& prefix, std::vector<Check>& out) {
    double res = 0.0;
    for (const auto& p : pts) {
        const auto lhs = spec.vf(p);
        const auto rhs = pfaff::hamiltonian_vf_at(biv, spec.energy, p);
        double num = 0.0;
        for (size_t i = 0; i < lhs.size(); ++i) num = std::max(num, std::abs(lhs[i] - rhs[i]));
        res = std::max(res, num / (1.0 + max_abs(lhs)));
    }
    out.push_back(make_check(prefix + "/hamiltonianity", static_cast<long long>(pts.size()), res,
                             opt.tol_hamiltonian));
}

void partials_check(const SystemSpec& spec, const std::vector<Point>& pts, const Options& opt,
                    const std::string& prefix, std::vector<Check>& out) {
    // Analytic partials of the shipped fields against the central-difference
    // oracle; normalized by the partial's magnitude so that truncation error
    // on steep fields near the box edge does not mask real sign or factor
    // bugs (those deviate at order 1).
    (void)opt;
    const long long n = std::min<long long>(static_cast<long long>(pts.size()), 100);
    double res = 0.0;
    std::vector<const ScalarField*> fields = {&spec.energy, &spec.multiplier};
    if (spec.phi) fields.push_back(&*spec.phi);
    for (long long k = 0; k < n; ++k) {
        const auto& p = pts[static_cast<size_t>(k)];
        for (const ScalarField* f : fields) {
            for (int i = 0; i < spec.dim; ++i) {
                const double a = f->partial(i, p);
                res = std::max(res, std::abs(a - f->fd_partial(i, p)) / (1.0 + std::abs(a)));
            }
        }
    }
    out.push_back(make_check(prefix + "/partials_fd_consistency", n, res, 1e-6));
}

void conservation_checks(const SystemSpec& spec, const std::vector<Point>& pts,
                         const Options& opt, const std::string& prefix,
                         std::vector<Check>& out) {
    double res_e = 0.0, res_phi = 0.0;
    for (const auto& p : pts) {
        const auto v = spec.vf(p);
        const auto gE = spec.energy.gradient(p);
        double s = 0.0;
        for (size_t i = 0; i < v.size(); ++i) s += v[i] * gE[i];
        res_e = std::max(res_e, std::abs(s));
        if (spec.phi) {
            const auto gphi = spec.phi->gradient(p);
            double sp = 0.0;
            for (size_t i = 0; i < v.size(); ++i) sp += v[i] * gphi[i];
            res_phi = std::max(res_phi, std::abs(sp));
        }
    }
    out.push_back(make_check(prefix + "/conservation_energy", static_cast<long long>(pts.size()),
                             res_e, opt.tol_conservation));
    if (spec.phi)
        out.push_back(make_check(prefix + "/conservation_phi", static_cast<long long>(pts.size()),
                                 res_phi, opt.tol_conservation));
}

void rank_checks(const SystemSpec& spec, const BivectorField& biv, const std::vector<Point>& pts,
                 const Options& opt, const std::string& prefix, std::vector<Check>& out) {
    long long bad = 0;
    for (const auto& p : pts)
        if (rank_at(biv, p, opt.rank_tol) != 2) ++bad;
    out.push_back(make_check(prefix + "/rank_interior", static_cast<long long>(pts.size()),
                             static_cast<double>(bad), 0.5));

    if (spec.dim == 5) {
        const auto fixtures = singular_fixtures(spec.name);
        double comp_res = 0.0;
        long long nonzero_rank = 0;
        for (const auto& p : fixtures) {
            comp_res = std::max(comp_res, matrix_max_abs(biv.matrix(p)));
            if (rank_at(biv, p, opt.rank_tol) != 0) ++nonzero_rank;
        }
        out.push_back(make_check(prefix + "/rank_singular_components",
                                 static_cast<long long>(fixtures.size()), comp_res,
                                 opt.tol_singular));
        out.push_back(make_check(prefix + "/rank_singular_zero",
                                 static_cast<long long>(fixtures.size()),
                                 static_cast<double>(nonzero_rank), 0.5));
    }
}

void scaling_closure_check(const SystemSpec& spec, const std::vector<Point>& pts,
                           const Options& opt, const std::string& prefix,
                           std::vector<Check>& out) {
    if (spec.dim != 4) return;
    const ScalarField a = one_plus_x1_sq(4);
    const BivectorField left = pfaff::build_r4(spec.pfaffian, a * spec.multiplier);
    const BivectorField right = scale(pfaff::build_r4(spec.pfaffian, spec.multiplier), a);
    double res = 0.0;
    for (const auto& p : pts) {
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                const double l = left.component(i, j, p);
                const double r = right.component(i, j, p);
                res = std::max(res, std::abs(l - r) / (1.0 + std::max(std::abs(l), std::abs(r))));
            }
        }
    }
    out.push_back(make_check(prefix + "/scaling_closure", static_cast<long long>(pts.size()), res,
                             opt.tol_scaling));
}

void restriction_check(const SystemSpec& r4, const SystemSpec& r5, const std::vector<Point>& pts4,
                       const Options& opt, const std::string& prefix, std::vector<Check>& out) {
    double res = 0.0;
    for (const auto& p4 : pts4) {
        Point p5(p4.begin(), p4.end());
        p5.push_back(systems::variety_fifth_coordinate(r5, p4));
        const auto v5 = r5.vf(p5);
        const auto v4 = r4.vf(p4);
        for (int i = 0; i < 4; ++i)
            res = std::max(res, std::abs(v5[static_cast<size_t>(i)] - v4[static_cast<size_t>(i)]));
    }
    out.push_back(make_check(prefix + "/restriction", static_cast<long long>(pts4.size()), res,
                             opt.tol_restriction));
}

void cylinder_checks(const systems::CylinderParams& params, const SystemSpec& spec,
                     const std::vector<Point>& pts, const Options& opt,
                     std::vector<Check>& out) {
    const BivectorField L1 = systems::cylinder_lambda1(params);
    const BivectorField L2 = systems::cylinder_lambda2(params);
    const auto cas = systems::cylinder_casimir_fields(params);

    // Pencil members are Poisson and all produce the same Hamiltonian field.
    double res_jac = 0.0, res_ham = 0.0;
    for (double lam : {-1.0, 0.5, 2.0}) {
        const BivectorField pencil = systems::cylinder_pencil(params, lam);
        for (const auto& p : pts) {
            res_jac = std::max(res_jac, schouten_self(pencil, p).max_abs());
            const auto lhs = spec.vf(p);
            const auto rhs = pfaff::hamiltonian_vf_at(pencil, spec.energy, p);
            double num = 0.0;
            for (size_t i = 0; i < lhs.size(); ++i) num = std::max(num, std::abs(lhs[i] - rhs[i]));
            res_ham = std::max(res_ham, num / (1.0 + max_abs(lhs)));
        }
    }
    out.push_back(make_check("cylinder/pencil_jacobi", static_cast<long long>(pts.size()) * 3,
                             res_jac, opt.tol_jacobi));
    out.push_back(make_check("cylinder/pencil_hamiltonianity",
                             static_cast<long long>(pts.size()) * 3, res_ham,
                             opt.tol_hamiltonian));

    double res_compat = 0.0;
    for (const auto& p : pts) res_compat = std::max(res_compat, schouten_pair(L1, L2, p).max_abs());
    out.push_back(make_check("cylinder/pair_compatibility", static_cast<long long>(pts.size()),
                             res_compat, opt.tol_compat));

    // ker L1 contains dc1, dc2; ker L2 contains dc1, dc3.
    double res_ker = 0.0;
    for (const auto& p : pts) {
        const double s1 = 1.0 + matrix_max_abs(L1.matrix(p));
        const double s2 = 1.0 + matrix_max_abs(L2.matrix(p));
        res_ker = std::max(res_ker, max_abs(sharp(L1, cas[0].gradient(p), p)) / s1);
        res_ker = std::max(res_ker, max_abs(sharp(L1, cas[1].gradient(p), p)) / s1);
        res_ker = std::max(res_ker, max_abs(sharp(L2, cas[0].gradient(p), p)) / s2);
        res_ker = std::max(res_ker, max_abs(sharp(L2, cas[2].gradient(p), p)) / s2);
    }
    out.push_back(make_check("cylinder/casimir_kernel", static_cast<long long>(pts.size()),
                             res_ker, opt.tol_kernel));

    // Generator relations: sharp(L1, dc3) = (2 r s4 / rho) / (alpha r^2) vf
    // and sharp(L2, dc2) = -(s4 / (rho m g)) vf.
    const double al = params.alpha();
    double res_gen = 0.0;
    for (const auto& p : pts) {
        const auto v = spec.vf(p);
        const auto l1c3 = sharp(L1, cas[2].gradient(p), p);
        const auto l2c2 = sharp(L2, cas[1].gradient(p), p);
        const double f1 = (2.0 * params.r * p[3] / params.rho) / (al * params.r * params.r);
        const double f2 = -p[3] / (params.rho * params.m * params.g);
        for (size_t i = 0; i < v.size(); ++i) {
            res_gen = std::max(res_gen, std::abs(l1c3[i] - f1 * v[i]));
            res_gen = std::max(res_gen, std::abs(l2c2[i] - f2 * v[i]));
        }
    }
    out.push_back(make_check("cylinder/generator_relations", static_cast<long long>(pts.size()),
                             res_gen, opt.tol_generator));
}

}  // namespace

std::vector<Point> sample_box(const SystemSpec& spec, long long count, SplitMix64& rng) {
    const Box box = interior_box(spec);
    std::vector<Point> pts;
    pts.reserve(static_cast<size_t>(count));
    for (long long k = 0; k < count; ++k) {
        Point p(static_cast<size_t>(spec.dim));
        for (int i = 0; i < spec.dim; ++i) {
            const auto& r = box.ranges[static_cast<size_t>(i)];
            p[static_cast<size_t>(i)] = rng.uniform(r.first, r.second);
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

std::vector<Point> singular_fixtures(std::string_view system_name) {
    if (system_name == "disk" || system_name == "routh_sphere") {
        return {{1.0, 0.0, 0.0, 0.7, 0.0},
                {-1.0, 0.0, 0.0, 0.7, 0.0},
                {1.0, 0.0, 0.0, -1.3, 0.0},
                {-1.0, 0.0, 0.0, 1.0, 0.0}};
    }
    if (system_name == "surface_ball") {
        return {{0.0, 0.0, 0.0, 0.8, 0.0}, {0.0, 0.0, 0.0, -2.0, 0.0}};
    }
    return {};
}

std::vector<Check> system_checks(std::string_view name, const systems::Params& params,
                                 const Options& opt) {
    std::vector<Check> out;
    SplitMix64 rng(opt.seed);

    std::vector<Variant> variants;
    if (name == "cylinder")
        variants = {Variant::reduced4};
    else
        variants = {Variant::reduced4, Variant::extended5};

    SystemSpec r4_spec, r5_spec;
    for (Variant v : variants) {
        SystemSpec spec = systems::make_system(name, params, v);
        const std::string prefix =
            std::string(name) + "/" + std::string(systems::to_string(v));
        const auto pts = sample_box(spec, opt.samples, rng);
        const BivectorField biv = build(spec, opt);

        jacobi_checks(spec, biv, pts, opt, prefix, out);
        kernel_checks(spec, biv, pts, opt, prefix, out);
        frobenius_check(spec, pts, opt, prefix, out);
        hamiltonian_check(spec, biv, pts, opt, prefix, out);
        conservation_checks(spec, pts, opt, prefix, out);
        partials_check(spec, pts, opt, prefix, out);
        rank_checks(spec, biv, pts, opt, prefix, out);
        scaling_closure_check(spec, pts, opt, prefix, out);

        if (v == Variant::reduced4)
            r4_spec = spec;
        else
            r5_spec = spec;
    }

    if (name != "cylinder") {
        const long long n_restrict = std::min<long long>(opt.samples, 200);
        const auto pts4 = sample_box(r4_spec, n_restrict, rng);
        restriction_check(r4_spec, r5_spec, pts4, opt, std::string(name), out);
    } else {
        const auto* cy = std::get_if<systems::CylinderParams>(&params);
        require(cy != nullptr, "system_checks: cylinder requires CylinderParams");
        const auto pts = sample_box(r4_spec, opt.samples, rng);
        cylinder_checks(*cy, r4_spec, pts, opt, out);
    }
    return out;
}

std::vector<Check> heisenberg_checks(const Options& opt) {
    // X = d_x - y d_z, Y = d_y + x d_z on R^3; the wedge has rank two
    // everywhere but [W,W] = 4 d_x ^ d_y ^ d_z.
    const VectorField X(3, {ScalarField::constant(3, 1.0), ScalarField::zero(3),
                            ScalarField::smooth(3, [](auto x) { return -x[1]; })});
    const VectorField Y(3, {ScalarField::zero(3), ScalarField::constant(3, 1.0),
                            ScalarField::smooth(3, [](auto x) { return x[0]; })});
    const BivectorField biv = wedge(X, Y);

    SplitMix64 rng(opt.seed);
    double res = 0.0;
    long long n = std::max<long long>(opt.samples, 10);
    for (long long k = 0; k < n; ++k) {
        Point p = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        res = std::max(res, schouten_self(biv, p).max_abs());
    }
    std::vector<Check> out;
    out.push_back(make_check("heisenberg/jacobi", n, res, opt.tol_jacobi));
    return out;
}

bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

}  // namespace ranktwo::verify
