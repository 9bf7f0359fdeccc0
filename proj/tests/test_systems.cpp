#include <doctest.h>

#include <cmath>

#include "ranktwo/integrate.hpp"
#include "ranktwo/pfaff.hpp"
#include "ranktwo/systems.hpp"
#include "support/oracles.hpp"

using namespace ranktwo;
using namespace ranktwo::systems;

TEST_SUITE("systems") {

// --- double-entry transcription checks ------------------------------------

TEST_CASE("disk vector field and energy match the independent transcription") {
    const DiskParams pr{1.3, 0.8, 9.81};
    const auto r4 = make_disk(pr, Variant::reduced4);
    const auto r5 = make_disk(pr, Variant::extended5);
    SplitMix64 rng(101);
    for (int k = 0; k < 200; ++k) {
        const Point p5 = {rng.uniform(-0.9, 0.9), rng.uniform(-1, 1), rng.uniform(-1, 1),
                          rng.uniform(-1, 1), rng.uniform(0, 2)};
        const Point p4(p5.begin(), p5.begin() + 4);
        CHECK(oracle::max_abs_diff(r5.vf(p5), oracle::disk_vf5(pr, p5)) < 1e-12);
        CHECK(oracle::max_abs_diff(r4.vf(p4), oracle::disk_vf4(pr, p4)) < 1e-12);
        CHECK(r5.energy(p5) == doctest::Approx(oracle::disk_energy5(pr, p5)).epsilon(1e-13));
        CHECK(r4.energy(p4) == doctest::Approx(oracle::disk_energy4(pr, p4)).epsilon(1e-13));
    }
}

TEST_CASE("sphere vector field and energy match the independent transcription") {
    const RouthSphereParams pr{1.1, 0.9, 9.81, 0.4, 0.37, 0.41};
    const auto r4 = make_routh_sphere(pr, Variant::reduced4);
    const auto r5 = make_routh_sphere(pr, Variant::extended5);
    SplitMix64 rng(102);
    for (int k = 0; k < 200; ++k) {
        const Point p5 = {rng.uniform(-0.95, 0.95), rng.uniform(-1, 1), rng.uniform(-1, 1),
                          rng.uniform(-1, 1), rng.uniform(0, 2)};
        const Point p4(p5.begin(), p5.begin() + 4);
        CHECK(oracle::max_abs_diff(r5.vf(p5), oracle::sphere_vf5(pr, p5)) < 1e-12);
        CHECK(oracle::max_abs_diff(r4.vf(p4), oracle::sphere_vf4(pr, p4)) < 1e-12);
        CHECK(r5.energy(p5) == doctest::Approx(oracle::sphere_energy5(pr, p5)).epsilon(1e-13));
        CHECK(r4.energy(p4) == doctest::Approx(oracle::sphere_energy4(pr, p4)).epsilon(1e-13));
    }
}

TEST_CASE("surface-ball vector field and energy match the independent transcription") {
    for (const Profile& prof : {paraboloid(0.5), even_quartic(0.3, 0.1), cosh_profile()}) {
        SurfaceBallParams pr;
        pr.profile = prof;
        const auto r4 = make_surface_ball(pr, Variant::reduced4);
        const auto r5 = make_surface_ball(pr, Variant::extended5);
        SplitMix64 rng(103);
        for (int k = 0; k < 100; ++k) {
            const Point p5 = {rng.uniform(0.2, 2), rng.uniform(-1, 1), rng.uniform(-1, 1),
                              rng.uniform(-1, 1), rng.uniform(0, 2)};
            const Point p4(p5.begin(), p5.begin() + 4);
            CHECK(oracle::max_abs_diff(r5.vf(p5), oracle::ball_vf5(pr, p5)) < 1e-12);
            CHECK(oracle::max_abs_diff(r4.vf(p4), oracle::ball_vf4(pr, p4)) < 1e-12);
            CHECK(r5.energy(p5) == doctest::Approx(oracle::ball_energy5(pr, p5)).epsilon(1e-13));
            CHECK(r4.energy(p4) == doctest::Approx(oracle::ball_energy4(pr, p4)).epsilon(1e-13));
        }
    }
}

TEST_CASE("cylinder vector field and energy match the independent transcription") {
    const CylinderParams pr{1.2, 0.3, 9.81, 0.05, 1.4};
    const auto spec = make_cylinder(pr);
    SplitMix64 rng(104);
    for (int k = 0; k < 200; ++k) {
        const Point p = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                         rng.uniform(-2, 2)};
        CHECK(oracle::max_abs_diff(spec.vf(p), oracle::cylinder_vf(pr, p)) < 1e-13);
        CHECK(spec.energy(p) == doctest::Approx(oracle::cylinder_energy(pr, p)).epsilon(1e-13));
    }
}

// --- the denominator adjudication ------------------------------------------

TEST_CASE("surface ball: 1/(1+phi'^2) rows are Hamiltonian, 1/(1+phi') rows are not") {
    SurfaceBallParams pr;  // paraboloid, phi' != 0 away from the vertex
    const auto spec = make_surface_ball(pr, Variant::extended5);
    const auto biv = build_bivector(spec);
    SplitMix64 rng(105);
    double res_corrected = 0.0, res_printed = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Point p = {rng.uniform(0.2, 2), rng.uniform(-1, 1), rng.uniform(-1, 1),
                         rng.uniform(-1, 1), rng.uniform(0.1, 2)};
        const auto ham = pfaff::hamiltonian_vf_at(biv, spec.energy, p);
        res_corrected =
            std::max(res_corrected, oracle::max_abs_diff(ham, oracle::ball_vf5(pr, p, true)));
        res_printed =
            std::max(res_printed, oracle::max_abs_diff(ham, oracle::ball_vf5(pr, p, false)));
    }
    CHECK(res_corrected < 1e-10);
    CHECK(res_printed > 1e-3);  // the uncorrected variant fails decisively
}

// --- spec examples -----------------------------------------------------------

TEST_CASE("disk reduced4 examples") {
    const auto spec = make_disk(DiskParams{1, 1, 1}, Variant::reduced4);
    const Point origin = {0.0, 0.0, 0.0, 0.0};
    const auto v0 = spec.vf(origin);
    for (double c : v0) CHECK(c == doctest::Approx(0.0));
    CHECK(spec.energy(origin) == doctest::Approx(0.8));  // lambda = 0.8 g / r

    const Point p = {0.0, 0.1, 0.2, 0.3};
    const auto v = spec.vf(p);
    CHECK(v[0] == doctest::Approx(0.1));
    CHECK(v[2] == doctest::Approx(-0.06));
    CHECK(v[3] == doctest::Approx(-2.0 / 150.0));  // -(2/3)(0.1)(0.2)
}

TEST_CASE("surface ball with paraboloid profile is regular at the vertex") {
    SurfaceBallParams pr;
    pr.profile = paraboloid(0.5);
    for (Variant v : {Variant::reduced4, Variant::extended5}) {
        const auto spec = make_surface_ball(pr, v);
        Point p(static_cast<size_t>(spec.dim), 0.0);
        p[0] = 1e-12;
        p[3] = 0.6;
        if (spec.dim == 5) p[4] = 0.2;
        const auto vf = spec.vf(p);
        for (double c : vf) CHECK(std::isfinite(c));
        CHECK(std::isfinite(spec.energy(p)));
    }
}

TEST_CASE("domain guards") {
    const auto disk5 = make_disk(DiskParams{}, Variant::extended5);
    CHECK_FALSE(domain_guard(disk5, Point{2.0, 0.0, 0.0, 0.0, 0.0}));
    CHECK(domain_guard(disk5, Point{1.0, 0.5, 0.0, 0.3, 0.0}));        // sigma2*sigma3 = 0
    CHECK_FALSE(domain_guard(disk5, Point{1.0, 0.5, 0.5, 0.3, 0.0}));  // sigma2*sigma3 != 0
    CHECK(domain_guard(disk5, Point{0.3, 9.0, -3.0, 1.0, 4.0}));

    const auto disk4 = make_disk(DiskParams{}, Variant::reduced4);
    CHECK_FALSE(domain_guard(disk4, Point{1.0, 0.0, 0.0, 0.0}));
    CHECK(domain_guard(disk4, Point{0.99, 0.0, 0.0, 0.0}));

    const auto sphere5 = make_routh_sphere(RouthSphereParams{}, Variant::extended5);
    CHECK(domain_guard(sphere5, Point{7.0, -2.0, 11.0, 0.5, -3.0}));

    const auto ball5 = make_surface_ball(SurfaceBallParams{}, Variant::extended5);
    CHECK_FALSE(domain_guard(ball5, Point{-0.1, 0.0, 0.0, 0.0, 0.0}));
    CHECK(domain_guard(ball5, Point{0.0, 0.0, 0.0, 0.0, 0.0}));
}

TEST_CASE("equilibrium residuals") {
    const CylinderParams cp;
    const auto cyl = make_cylinder(cp);
    const double s40 = 0.8, s10 = 0.4;
    const Point eq = {s10, 0.0, -cp.m * cp.g * cp.rho / (cp.M * s40), s40};
    CHECK(equilibrium_residual(cyl, eq) < 1e-12);

    const auto disk5 = make_disk(DiskParams{}, Variant::extended5);
    CHECK(equilibrium_residual(disk5, Point{1.0, 0.0, 0.0, 0.7, 0.0}) == 0.0);
    CHECK(equilibrium_residual(disk5, Point{-1.0, 0.0, 0.0, 0.7, 0.0}) == 0.0);
    CHECK(equilibrium_residual(disk5, Point{0.2, 0.3, 0.1, 0.4, 0.5}) > 0.0);

    const auto sphere5 = make_routh_sphere(RouthSphereParams{}, Variant::extended5);
    CHECK(equilibrium_residual(sphere5, Point{1.0, 0.0, 0.0, 1.3, 0.0}) == 0.0);

    // disk regular equilibrium: solve the sigma2-row for sigma5
    const DiskParams dp{1, 1, 1};
    const auto disk5u = make_disk(dp, Variant::extended5);
    const double s1 = 0.3, s3 = 0.5, s4 = 0.7;
    const double lam = dp.lambda();
    const double s5 = (1.2 * s3 * s4 + 0.8 * s1 * s3 * s3 / (1 - s1 * s1) +
                       lam * s1 * std::sqrt(1 - s1 * s1)) /
                      s1;
    CHECK(equilibrium_residual(disk5u, Point{s1, 0.0, s3, s4, s5}) < 1e-12);

    // surface-ball regular equilibrium: solve the p2-row for p5
    SurfaceBallParams bp;
    const auto ball5 = make_surface_ball(bp, Variant::extended5);
    const double p1 = 0.8, p3 = 0.4, p4 = 0.9;
    const double sr = std::sqrt(2.0 * p1);
    const double al = bp.alpha();
    const double p5 = 0.5 * (bp.m * bp.g / al * sr * bp.profile.d1(sr) +
                             bp.M / (al * bp.r * bp.r) * bp.profile.d1(sr) / sr * p3 * p4);
    CHECK(equilibrium_residual(ball5, Point{p1, 0.0, p3, p4, p5}) < 1e-12);
}

TEST_CASE("sphere energy at the singular equilibria is I3 s4^2/2 +- m g a") {
    const RouthSphereParams pr;
    const auto spec = make_routh_sphere(pr, Variant::extended5);
    const double s4 = 1.7;
    CHECK(spec.energy(Point{1.0, 0.0, 0.0, s4, 0.0}) ==
          doctest::Approx(0.5 * pr.I3 * s4 * s4 + pr.m * pr.g * pr.offset_a));
    CHECK(spec.energy(Point{-1.0, 0.0, 0.0, s4, 0.0}) ==
          doctest::Approx(0.5 * pr.I3 * s4 * s4 - pr.m * pr.g * pr.offset_a));
}

TEST_CASE("jellet integrals") {
    RouthSphereParams pr;
    pr.m = 1.0;
    pr.r = 1.0;
    pr.offset_a = 0.5;
    pr.I1 = pr.I3 = 0.4;
    CHECK(jellet_integrals(pr, Point{0.3, 0.1, 0.0, 0.0, 0.2}).first == doctest::Approx(0.0));
    CHECK(jellet_integrals(pr, Point{0.3, 0.1, 0.0, 0.0, 0.2}).second == doctest::Approx(0.0));

    const auto [j, k] = jellet_integrals(pr, Point{0.0, 0.9, 1.0, 1.0, 0.1});
    CHECK(j == doctest::Approx(0.6));
    CHECK(k == doctest::Approx(std::sqrt(0.66)));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make_disk(DiskParams{-1, 1, 1}, Variant::reduced4), ContractError);
    RouthSphereParams bad_offset;
    bad_offset.offset_a = 1.5;  // >= r
    CHECK_THROWS_AS(make_routh_sphere(bad_offset, Variant::reduced4), ContractError);
    CylinderParams narrow;
    narrow.rho = 0.1;  // <= r
    CHECK_THROWS_AS(make_cylinder(narrow), ContractError);
    CHECK_THROWS_AS(make_system("cylinder", CylinderParams{}, Variant::extended5), ContractError);
    CHECK_THROWS_AS(make_system("nonsense", DiskParams{}, Variant::reduced4), ContractError);
    CHECK_THROWS_AS(make_system("disk", CylinderParams{}, Variant::reduced4), ContractError);

    SurfaceBallParams odd;
    odd.profile = custom_profile(
        "odd-cubic", [](double s) { return s * s * s; }, [](double s) { return 3 * s * s; },
        [](double s) { return 6 * s; });
    CHECK(evenness_residual(odd.profile) > 1e-3);
    CHECK_THROWS_AS(make_surface_ball(odd, Variant::reduced4), ContractError);

    CHECK(evenness_residual(paraboloid(0.7)) < 1e-12);
    CHECK(evenness_residual(even_quartic(0.2, 0.05)) < 1e-12);
    CHECK(evenness_residual(cosh_profile()) < 1e-12);
}

TEST_CASE("custom profile matches the shipped paraboloid") {
    const Profile shipped = paraboloid(0.5);
    const Profile user = custom_profile(
        "user-parab", [](double s) { return 0.5 * s * s; }, [](double s) { return s; },
        [](double) { return 1.0; });
    SurfaceBallParams a, b;
    a.profile = shipped;
    b.profile = user;
    const auto sa = make_surface_ball(a, Variant::extended5);
    const auto sb = make_surface_ball(b, Variant::extended5);
    SplitMix64 rng(7);
    for (int k = 0; k < 20; ++k) {
        const Point p = {rng.uniform(0.2, 2), rng.uniform(-1, 1), rng.uniform(-1, 1),
                         rng.uniform(-1, 1), rng.uniform(0, 2)};
        CHECK(oracle::max_abs_diff(sa.vf(p), sb.vf(p)) < 1e-12);
    }
}

TEST_CASE("variety lift puts points on the zero set of phi") {
    const auto disk5 = make_disk(DiskParams{}, Variant::extended5);
    const auto ball5 = make_surface_ball(SurfaceBallParams{}, Variant::extended5);
    SplitMix64 rng(8);
    for (int k = 0; k < 20; ++k) {
        Point p4 = {rng.uniform(-0.9, 0.9), rng.uniform(-1, 1), rng.uniform(-1, 1),
                    rng.uniform(-1, 1)};
        Point p5(p4.begin(), p4.end());
        p5.push_back(variety_fifth_coordinate(disk5, p4));
        CHECK(std::abs((*disk5.phi)(p5)) < 1e-12);

        p4[0] = rng.uniform(0.2, 2.0);
        Point q5(p4.begin(), p4.end());
        q5.push_back(variety_fifth_coordinate(ball5, p4));
        CHECK(std::abs((*ball5.phi)(q5)) < 1e-12);
    }
    const auto cyl = make_cylinder(CylinderParams{});
    CHECK_THROWS_AS(variety_fifth_coordinate(cyl, Point{0, 0, 0, 0}), ContractError);
}

// --- cylinder closed forms -----------------------------------------------------

TEST_CASE("cylinder analytic solution: initial condition and falling branch") {
    const CylinderParams pr;
    const Point x0 = {0.4, -0.3, 0.8, 1.2};
    const auto s0 = cylinder_analytic(pr, x0, 0.0);
    for (int i = 0; i < 4; ++i) CHECK(s0[static_cast<size_t>(i)] == doctest::Approx(x0[static_cast<size_t>(i)]));

    // sigma4 = 0, sigma2(0) = 0: pure fall, quadratic height
    const Point drop = {1.0, 0.0, 0.25, 0.0};
    const double t = 0.7;
    const auto s = cylinder_analytic(pr, drop, t);
    CHECK(s[0] == doctest::Approx(1.0 - 0.5 * pr.r * pr.sigma_g() * t * t));
    CHECK(s[1] == doctest::Approx(pr.sigma_g() * t));
    CHECK(s[2] == doctest::Approx(0.25));
    CHECK(s[3] == doctest::Approx(0.0));
}

TEST_CASE("cylinder analytic solution solves the reduced equations") {
    const CylinderParams pr;
    const Point x0 = {0.0, 0.1, 0.2, 0.5};
    const double h = 1e-6;
    for (double t : {0.3, 1.1, 2.9}) {
        const auto sm = cylinder_analytic(pr, x0, t - h);
        const auto s0 = cylinder_analytic(pr, x0, t);
        const auto sp = cylinder_analytic(pr, x0, t + h);
        const auto vf = oracle::cylinder_vf(pr, s0);
        for (int i = 0; i < 4; ++i) {
            const double fd = (sp[static_cast<size_t>(i)] - sm[static_cast<size_t>(i)]) / (2 * h);
            CHECK(fd == doctest::Approx(vf[static_cast<size_t>(i)]).epsilon(1e-5));
        }
    }
}

TEST_CASE("cylinder reconstruction solves the unreduced equations") {
    const CylinderParams pr;
    const double al = pr.alpha();
    const Point x0 = {0.2, 0.4, -0.3, 0.9};
    const double theta0 = 0.7;
    const double h = 1e-6;
    for (double t : {0.5, 1.7}) {
        const auto fm = cylinder_reconstruct(pr, x0, theta0, t - h);
        const auto f0 = cylinder_reconstruct(pr, x0, theta0, t);
        const auto fp = cylinder_reconstruct(pr, x0, theta0, t + h);
        const double radial = f0.omega1 * std::cos(f0.theta) + f0.omega2 * std::sin(f0.theta);
        const double w1_dot = pr.m / al * (pr.g / pr.r + pr.r / pr.rho * f0.omega3 * radial) *
                              std::sin(f0.theta);
        const double w2_dot = -pr.m / al * (pr.g / pr.r + pr.r / pr.rho * f0.omega3 * radial) *
                              std::cos(f0.theta);
        const double th_dot = -pr.r / pr.rho * f0.omega3;
        const double z_dot =
            pr.r * (f0.omega2 * std::cos(f0.theta) - f0.omega1 * std::sin(f0.theta));
        CHECK((fp.omega1 - fm.omega1) / (2 * h) == doctest::Approx(w1_dot).epsilon(1e-5));
        CHECK((fp.omega2 - fm.omega2) / (2 * h) == doctest::Approx(w2_dot).epsilon(1e-5));
        CHECK((fp.theta - fm.theta) / (2 * h) == doctest::Approx(th_dot).epsilon(1e-8));
        CHECK((fp.z - fm.z) / (2 * h) == doctest::Approx(z_dot).epsilon(1e-5));
    }

    // energy of the unreduced motion is conserved
    const double E0 = cylinder_frame_energy(pr, cylinder_reconstruct(pr, x0, theta0, 0.0));
    double drift = 0.0;
    for (double t = 0.0; t <= 5.0; t += 0.05) {
        const double E = cylinder_frame_energy(pr, cylinder_reconstruct(pr, x0, theta0, t));
        drift = std::max(drift, std::abs(E - E0));
    }
    CHECK(drift / std::max(1.0, std::abs(E0)) < 1e-8);
}

TEST_CASE("cylinder reconstruction inverts the invariants at t = 0") {
    const CylinderParams pr;
    const double theta0 = 1.1, w10 = 0.4, w20 = -0.2, w30 = 0.8, z0 = 0.3;
    const Point x0 = {z0, w10 * std::sin(theta0) - w20 * std::cos(theta0),
                      -w10 * std::cos(theta0) - w20 * std::sin(theta0), w30};
    const auto f = cylinder_reconstruct(pr, x0, theta0, 0.0);
    CHECK(f.omega1 == doctest::Approx(w10));
    CHECK(f.omega2 == doctest::Approx(w20));
    CHECK(f.omega3 == doctest::Approx(w30));
    CHECK(f.z == doctest::Approx(z0));
}

TEST_CASE("cylinder pencil endpoints and Poisson property") {
    const CylinderParams pr;
    const auto L1 = cylinder_lambda1(pr);
    const auto L2 = cylinder_lambda2(pr);
    const auto at0 = cylinder_pencil(pr, 0.0);
    const auto at1 = cylinder_pencil(pr, 1.0);
    SplitMix64 rng(9);
    for (int k = 0; k < 20; ++k) {
        const Point p = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                         rng.uniform(-1.5, 1.5)};
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                CHECK(at0.component(i, j, p) == doctest::Approx(L1.component(i, j, p)));
                CHECK(at1.component(i, j, p) == doctest::Approx(L2.component(i, j, p)));
            }
        }
        for (double lam : {-1.0, 0.5, 2.0})
            CHECK(schouten_self(cylinder_pencil(pr, lam), p).max_abs() < 1e-8);
        CHECK(schouten_pair(L1, L2, p).max_abs() < 1e-8);
    }
}

TEST_CASE("cylinder pencil members all generate the reduced field") {
    const CylinderParams pr;
    const auto spec = make_cylinder(pr);
    SplitMix64 rng(10);
    for (double lam : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
        const auto biv = cylinder_pencil(pr, lam);
        for (int k = 0; k < 20; ++k) {
            const Point p = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                             rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
            const auto lhs = spec.vf(p);
            const auto rhs = pfaff::hamiltonian_vf_at(biv, spec.energy, p);
            CHECK(oracle::max_abs_diff(lhs, rhs) < 1e-12);
        }
    }
}

TEST_CASE("cylinder Casimirs: zero point, kernel membership") {
    const CylinderParams pr;
    const auto c = cylinder_casimirs(pr, Point{0, 0, 0, 0});
    CHECK(c[0] == doctest::Approx(0.0));
    CHECK(c[1] == doctest::Approx(0.0));
    CHECK(c[2] == doctest::Approx(0.0));

    const auto L1 = cylinder_lambda1(pr);
    const auto L2 = cylinder_lambda2(pr);
    const auto fields = cylinder_casimir_fields(pr);
    SplitMix64 rng(12);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Point p = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                         rng.uniform(-1.5, 1.5)};
        for (double v : sharp(L1, fields[0].gradient(p), p)) worst = std::max(worst, std::abs(v));
        for (double v : sharp(L1, fields[1].gradient(p), p)) worst = std::max(worst, std::abs(v));
        for (double v : sharp(L2, fields[0].gradient(p), p)) worst = std::max(worst, std::abs(v));
        for (double v : sharp(L2, fields[2].gradient(p), p)) worst = std::max(worst, std::abs(v));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("cylinder generator relations") {
    const CylinderParams pr;
    const auto spec = make_cylinder(pr);
    const auto L1 = cylinder_lambda1(pr);
    const auto L2 = cylinder_lambda2(pr);
    const auto fields = cylinder_casimir_fields(pr);
    const double al = pr.alpha();
    SplitMix64 rng(13);
    for (int k = 0; k < 30; ++k) {
        const Point p = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                         rng.uniform(-1.5, 1.5)};
        const auto v = spec.vf(p);
        const auto a = sharp(L1, fields[2].gradient(p), p);
        const auto b = sharp(L2, fields[1].gradient(p), p);
        const double f1 = 2.0 * pr.r * p[3] / pr.rho / (al * pr.r * pr.r);
        const double f2 = -p[3] / (pr.rho * pr.m * pr.g);
        for (size_t i = 0; i < v.size(); ++i) {
            CHECK(a[i] == doctest::Approx(f1 * v[i]).epsilon(1e-9));
            CHECK(b[i] == doctest::Approx(f2 * v[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("extended bivectors vanish at the singular equilibria") {
    const auto disk5 = make_disk(DiskParams{}, Variant::extended5);
    const auto sphere5 = make_routh_sphere(RouthSphereParams{}, Variant::extended5);
    const auto ball5 = make_surface_ball(SurfaceBallParams{}, Variant::extended5);
    const auto bd = build_bivector(disk5);
    const auto bs = build_bivector(sphere5);
    const auto bb = build_bivector(ball5);
    for (double s4 : {0.7, -1.3}) {
        CHECK(bd.matrix(Point{1.0, 0.0, 0.0, s4, 0.0}).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(bd.matrix(Point{-1.0, 0.0, 0.0, s4, 0.0}).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(bs.matrix(Point{1.0, 0.0, 0.0, s4, 0.0}).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(bs.matrix(Point{-1.0, 0.0, 0.0, s4, 0.0}).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(bb.matrix(Point{0.0, 0.0, 0.0, s4, 0.0}).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(rank_at(bd, Point{1.0, 0.0, 0.0, 0.7, 0.0}) == 0);
    CHECK(rank_at(bs, Point{-1.0, 0.0, 0.0, 1.0, 0.0}) == 0);
    CHECK(rank_at(bb, Point{0.0, 0.0, 0.0, 0.8, 0.0}) == 0);
}

TEST_CASE("restriction of the extended field to the variety matches reduced4") {
    for (const std::string& name : {std::string("disk"), std::string("routh_sphere"),
                                    std::string("surface_ball")}) {
        Params params;
        if (name == "disk") params = DiskParams{};
        else if (name == "routh_sphere") params = RouthSphereParams{};
        else params = SurfaceBallParams{};
        const auto r4 = make_system(name, params, Variant::reduced4);
        const auto r5 = make_system(name, params, Variant::extended5);
        SplitMix64 rng(14);
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            Point p4;
            if (name == "surface_ball")
                p4 = {rng.uniform(0.2, 2), rng.uniform(-1, 1), rng.uniform(-1, 1),
                      rng.uniform(-1, 1)};
            else
                p4 = {rng.uniform(-0.9, 0.9), rng.uniform(-1, 1), rng.uniform(-1, 1),
                      rng.uniform(-1, 1)};
            Point p5(p4.begin(), p4.end());
            p5.push_back(variety_fifth_coordinate(r5, p4));
            const auto v5 = r5.vf(p5);
            const auto v4 = r4.vf(p4);
            for (int i = 0; i < 4; ++i)
                worst = std::max(worst,
                                 std::abs(v5[static_cast<size_t>(i)] - v4[static_cast<size_t>(i)]));
        }
        CHECK(worst < 1e-9);
    }
}

}  // TEST_SUITE
