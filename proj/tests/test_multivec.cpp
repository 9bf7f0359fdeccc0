#include <doctest.h>

#include "ranktwo/multivec.hpp"
#include "support/oracles.hpp"

using namespace ranktwo;

namespace {

BivectorField canonical_12(int dim) {
    BivectorField biv(dim);
    biv.set_upper(0, 1, ScalarField::constant(dim, 1.0));
    return biv;
}

VectorField heisenberg_x() {
    return {3, {ScalarField::constant(3, 1.0), ScalarField::zero(3),
                ScalarField::smooth(3, [](auto x) { return -x[1]; })}};
}

VectorField heisenberg_y() {
    return {3, {ScalarField::zero(3), ScalarField::constant(3, 1.0),
                ScalarField::smooth(3, [](auto x) { return x[0]; })}};
}

}  // namespace

TEST_SUITE("multivec") {

TEST_CASE("sharp on the canonical bivector in R^2") {
    const BivectorField biv = canonical_12(2);
    const Point p = {0.3, -1.2};
    const auto v1 = sharp(biv, std::vector<double>{0.0, 1.0}, p);
    CHECK(v1[0] == doctest::Approx(1.0));
    CHECK(v1[1] == doctest::Approx(0.0));
    const auto v2 = sharp(biv, std::vector<double>{1.0, 0.0}, p);
    CHECK(v2[0] == doctest::Approx(0.0));
    CHECK(v2[1] == doctest::Approx(-1.0));
}

TEST_CASE("sharp rejects a covector of the wrong dimension") {
    const BivectorField biv = canonical_12(2);
    CHECK_THROWS_AS(sharp(biv, std::vector<double>{1.0, 0.0, 0.0}, Point{0.0, 0.0}),
                    ContractError);
}

TEST_CASE("schouten_self vanishes for constant bivectors") {
    BivectorField biv(4);
    biv.set_upper(0, 1, ScalarField::constant(4, 2.0));
    biv.set_upper(1, 3, ScalarField::constant(4, -0.7));
    biv.set_upper(2, 3, ScalarField::constant(4, 1.5));
    const auto t = schouten_self(biv, Point{0.4, -1.0, 2.0, 0.1});
    CHECK(t.max_abs() == doctest::Approx(0.0));
}

TEST_CASE("schouten_self on the Heisenberg wedge has component (1,2,3) = 4") {
    const BivectorField biv = wedge(heisenberg_x(), heisenberg_y());
    SplitMix64 rng(99);
    for (int k = 0; k < 5; ++k) {
        const Point p = {rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const auto t = schouten_self(biv, p);
        CHECK(t.at(0, 1, 2) == doctest::Approx(4.0).epsilon(1e-12));
    }
}

TEST_CASE("wedge of the Heisenberg pair expands to (1, x, y)") {
    const BivectorField biv = wedge(heisenberg_x(), heisenberg_y());
    const Point p = {0.7, -0.4, 2.0};
    CHECK(biv.component(0, 1, p) == doctest::Approx(1.0));
    CHECK(biv.component(0, 2, p) == doctest::Approx(0.7));   // x
    CHECK(biv.component(1, 2, p) == doctest::Approx(-0.4));  // y
}

TEST_CASE("wedge basics") {
    const VectorField e1(3, {ScalarField::constant(3, 1.0), ScalarField::zero(3),
                             ScalarField::zero(3)});
    const VectorField e2(3, {ScalarField::zero(3), ScalarField::constant(3, 1.0),
                             ScalarField::zero(3)});
    const Point p = {0.0, 0.0, 0.0};
    const BivectorField b = wedge(e1, e2);
    CHECK(b.component(0, 1, p) == doctest::Approx(1.0));
    CHECK(b.component(0, 2, p) == doctest::Approx(0.0));
    CHECK(b.component(1, 2, p) == doctest::Approx(0.0));

    const BivectorField zero = wedge(e1, e1);
    CHECK(zero.matrix(p).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("schouten_pair: polarization reproduces the self bracket") {
    SplitMix64 rng(7);
    const VectorField X = oracle::random_poly_vf(3, rng);
    const VectorField Y = oracle::random_poly_vf(3, rng);
    const BivectorField biv = wedge(X, Y);
    const Point p = {0.2, -0.6, 0.9};
    const auto self = schouten_self(biv, p);
    const auto pair = schouten_pair(biv, biv, p);
    for (size_t m = 0; m < self.comp.size(); ++m)
        CHECK(pair.comp[m] == doctest::Approx(self.comp[m]).epsilon(1e-10));
}

TEST_CASE("schouten_pair of d1^d2 and x1 d1^d2 vanishes") {
    BivectorField a(3);
    a.set_upper(0, 1, ScalarField::constant(3, 1.0));
    BivectorField b(3);
    b.set_upper(0, 1, ScalarField::coordinate(3, 0));
    const auto t = schouten_pair(a, b, Point{0.4, 1.1, -0.3});
    CHECK(t.max_abs() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("schouten_pair is symmetric for bivectors") {
    SplitMix64 rng(21);
    const BivectorField a = wedge(oracle::random_poly_vf(4, rng), oracle::random_poly_vf(4, rng));
    const BivectorField b = wedge(oracle::random_poly_vf(4, rng), oracle::random_poly_vf(4, rng));
    const Point p = {0.1, -0.2, 0.5, 0.9};
    const auto ab = schouten_pair(a, b, p);
    const auto ba = schouten_pair(b, a, p);
    for (size_t m = 0; m < ab.comp.size(); ++m)
        CHECK(ab.comp[m] == doctest::Approx(ba.comp[m]).epsilon(1e-10));
}

TEST_CASE("[X^Y, X^Y] = 2 X^Y^[X,Y] for random polynomial pairs") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 3; ++trial) {
        const VectorField X = oracle::random_poly_vf(4, rng);
        const VectorField Y = oracle::random_poly_vf(4, rng);
        const BivectorField biv = wedge(X, Y);
        const TrivectorField rhs = wedge3(X, Y, lie_bracket(X, Y));
        for (int k = 0; k < 4; ++k) {
            Point p(4);
            for (auto& c : p) c = rng.uniform(-0.8, 0.8);
            const auto lhs = schouten_self(biv, p);
            const auto r = rhs(p);
            for (size_t m = 0; m < lhs.comp.size(); ++m)
                CHECK(lhs.comp[m] == doctest::Approx(2.0 * r.comp[m]).epsilon(1e-6));
        }
    }
}

TEST_CASE("rank_at") {
    const Point p4 = {0.0, 0.0, 0.0, 0.0};
    CHECK(rank_at(BivectorField(4), p4) == 0);
    CHECK(rank_at(canonical_12(4), p4) == 2);

    // full-rank antisymmetric matrix in R^4
    BivectorField full(4);
    full.set_upper(0, 1, ScalarField::constant(4, 1.0));
    full.set_upper(2, 3, ScalarField::constant(4, 2.0));
    full.set_upper(0, 2, ScalarField::constant(4, 0.3));
    CHECK(rank_at(full, p4) == 4);
    CHECK_THROWS_AS(rank_at(full, p4, -1.0), ContractError);
}

TEST_CASE("rank is always even on random bivectors") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        BivectorField biv(5);
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                biv.set_upper(i, j, ScalarField::constant(5, rng.uniform(-1, 1)));
        const int r = rank_at(biv, Point{0, 0, 0, 0, 0});
        CHECK(r % 2 == 0);
    }
}

TEST_CASE("scale by one and by zero") {
    SplitMix64 rng(11);
    const BivectorField biv = wedge(oracle::random_poly_vf(3, rng), oracle::random_poly_vf(3, rng));
    const Point p = {0.5, -0.1, 0.8};
    const auto same = scale(biv, ScalarField::constant(3, 1.0));
    const auto none = scale(biv, ScalarField::zero(3));
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            CHECK(same.component(i, j, p) == doctest::Approx(biv.component(i, j, p)));
            CHECK(none.component(i, j, p) == doctest::Approx(0.0));
        }
    }
}

TEST_CASE("antisymmetry of reconstructed matrices is exact") {
    SplitMix64 rng(31);
    const BivectorField biv = wedge(oracle::random_poly_vf(5, rng), oracle::random_poly_vf(5, rng));
    for (int k = 0; k < 10; ++k) {
        Point p(5);
        for (auto& c : p) c = rng.uniform(-2, 2);
        const Eigen::MatrixXd W = biv.matrix(p);
        CHECK((W + W.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("analytic partials agree with central finite differences") {
    SplitMix64 rng(77);
    double worst = 0.0;
    for (int f = 0; f < 5; ++f) {
        const ScalarField field = oracle::random_poly_field(4, rng);
        REQUIRE(field.has_analytic_partials());
        for (int k = 0; k < 20; ++k) {
            Point p(4);
            for (auto& c : p) c = rng.uniform(-1.5, 1.5);
            for (int i = 0; i < 4; ++i)
                worst = std::max(worst, std::abs(field.partial(i, p) - field.fd_partial(i, p)));
        }
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("trivector signed accessor") {
    TrivectorValue t;
    t.dim = 4;
    t.comp = {1.0, 2.0, 3.0, 4.0};  // (0,1,2), (0,1,3), (0,2,3), (1,2,3)
    CHECK(t.at(0, 1, 2) == doctest::Approx(1.0));
    CHECK(t.at(1, 0, 2) == doctest::Approx(-1.0));
    CHECK(t.at(2, 0, 1) == doctest::Approx(1.0));
    CHECK(t.at(3, 2, 1) == doctest::Approx(-4.0));
    CHECK(t.at(1, 1, 2) == doctest::Approx(0.0));
    CHECK(t.max_abs() == doctest::Approx(4.0));
}

TEST_CASE("safe_div and guarded_sqrt domain behavior") {
    CHECK(safe_div(0.0, 0.0) == 0.0);
    CHECK(safe_div(1.0, 2.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(safe_div(1.0, 0.0), DomainError);
    CHECK(guarded_sqrt(4.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(guarded_sqrt(-1e-12), DomainError);
    // dual path keeps the derivative when the numerator merely passes through 0
    const Dual num{0.0, 1.0};
    const Dual den{2.0, 0.0};
    const Dual q = safe_div(num, den);
    CHECK(q.v == doctest::Approx(0.0));
    CHECK(q.d == doctest::Approx(0.5));
}

}  // TEST_SUITE
