#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "betaflow/rng.hpp"
#include "betaflow/transforms.hpp"
#include "oracles.hpp"

using namespace betaflow;

namespace {

UnitCube3 random_cube(RngStream& rng, double margin) {
    const double span = 1.0 - 2.0 * margin;
    return {margin + span * rng.uniform(), margin + span * rng.uniform(),
            margin + span * rng.uniform()};
}

// Random interior triple whose matrix image keeps a conditioning margin:
// the normalized off-diagonal coordinate is recoverable at full double
// precision only away from the D2 boundary.
TanTriple conditioned_triple(RngStream& rng, double margin) {
    for (;;) {
        const double span = 1.0 - 2.0 * margin;
        const TanTriple t{margin + span * rng.uniform(),
                          margin + span * rng.uniform(),
                          (2.0 * rng.uniform() - 1.0) * (1.0 - margin)};
        if (tan_triple_inv(1, t).in_d2(1e-3)) return t;
    }
}

Sym2 random_d2(RngStream& rng, double margin) {
    return tan_triple_inv(1, conditioned_triple(rng, margin));
}

}  // namespace

TEST_CASE("psi worked example") {
    const UnitCube3 y = psi(1, {0.5, 0.5, 0.1});
    CHECK(y.y1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(y.y2 == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(y.y3 == doctest::Approx(4.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("psi axis symmetry") {
    RngStream rng(11);
    for (int i = 0; i < 1000; ++i) {
        const HPoint x = psi_inv(1, random_cube(rng, 1e-3));
        const UnitCube3 a = psi(2, x);
        const UnitCube3 b = psi(1, {x.x2, x.x1, x.x3});
        CHECK(a.y1 == b.y1);
        CHECK(a.y2 == b.y2);
        CHECK(a.y3 == b.y3);
    }
}

TEST_CASE("psi_inv worked example and boundary continuity") {
    const HPoint x = psi_inv(1, {0.5, 0.3, 4.0 / 7.0});
    CHECK(x.x1 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(x.x2 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(x.x3 == doctest::Approx(0.1).epsilon(1e-13));

    const HPoint limit = psi_inv(1, {0.4, 0.6, 1e-9});
    CHECK(limit.x3 <= 1e-9);
    CHECK(std::fabs(limit.x2 - 0.6) <= 1e-9);
}

TEST_CASE("psi_inv output satisfies the region identities") {
    RngStream rng(12);
    for (int i = 0; i < 100000; ++i) {
        const UnitCube3 y = random_cube(rng, 1e-6);
        const HPoint x = psi_inv(1, y);
        CHECK(x.in_region(0.0));
        CHECK(std::fabs(x.slack_lower() - y.y1 * y.y2) <= 1e-14);
        CHECK(std::fabs(x.slack_upper() -
                        (1.0 - y.y1) * (1.0 - y.y2) * (1.0 - y.y3)) <= 1e-14);
    }
}

TEST_CASE("psi roundtrips in both directions") {
    // the 1e-13 budget needs points conditioned away from the boundary;
    // the third coordinate recovers through a (1 - y2)-sized denominator
    RngStream rng(13);
    for (int axis : {1, 2}) {
        for (int i = 0; i < 10000; ++i) {
            const UnitCube3 y = random_cube(rng, 1e-3);
            const UnitCube3 back = psi(axis, psi_inv(axis, y));
            CHECK(std::fabs(back.y1 - y.y1) <= 1e-13);
            CHECK(std::fabs(back.y2 - y.y2) <= 1e-13);
            CHECK(std::fabs(back.y3 - y.y3) <= 1e-13);

            const HPoint x = psi_inv(axis, random_cube(rng, 1e-3));
            const HPoint x_back = psi_inv(axis, psi(axis, x));
            CHECK(std::fabs(x_back.x1 - x.x1) <= 1e-13);
            CHECK(std::fabs(x_back.x2 - x.x2) <= 1e-13);
            CHECK(std::fabs(x_back.x3 - x.x3) <= 1e-13);
        }
    }
}

TEST_CASE("big_psi worked values and involution") {
    const UnitCube3 z = big_psi({0.5, 0.5, 0.5});
    CHECK(z.y1 == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(z.y2 == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(z.y3 == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
    const UnitCube3 back = big_psi(z);
    CHECK(back.y1 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(back.y2 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(back.y3 == doctest::Approx(0.5).epsilon(1e-14));

    RngStream rng(14);
    for (int i = 0; i < 10000; ++i) {
        const UnitCube3 y = random_cube(rng, 1e-6);
        const UnitCube3 twice = big_psi(big_psi(y));
        CHECK(std::fabs(twice.y1 - y.y1) <= 1e-12);
        CHECK(std::fabs(twice.y2 - y.y2) <= 1e-12);
        CHECK(std::fabs(twice.y3 - y.y3) <= 1e-12);
    }
}

TEST_CASE("big_psi agrees with the composed route") {
    RngStream rng(15);
    for (int i = 0; i < 10000; ++i) {
        const UnitCube3 y = random_cube(rng, 1e-3);
        const UnitCube3 direct = big_psi(y);
        const UnitCube3 composed = psi(2, psi_inv(1, y));
        CHECK(std::fabs(direct.y1 - composed.y1) <= 1e-13);
        CHECK(std::fabs(direct.y2 - composed.y2) <= 1e-13);
        CHECK(std::fabs(direct.y3 - composed.y3) <= 1e-13);
    }
}

TEST_CASE("psi_jacobian worked value, symmetry, finite differences") {
    CHECK(psi_jacobian(1, {0.5, 0.5, 0.1}) ==
          doctest::Approx(40.0 / 7.0).epsilon(1e-14));

    RngStream rng(16);
    for (int i = 0; i < 100; ++i) {
        const double span = 0.9;
        const UnitCube3 y{0.05 + span * rng.uniform(), 0.05 + span * rng.uniform(),
                          0.05 + span * rng.uniform()};
        const HPoint x = psi_inv(1, y);
        CHECK(psi_jacobian(2, x) ==
              doctest::Approx(psi_jacobian(1, {x.x2, x.x1, x.x3})).epsilon(1e-15));
        for (int axis : {1, 2}) {
            const double analytic = psi_jacobian(axis, x);
            const double numeric = oracles::numeric_jacobian_det(
                [axis](const Eigen::Vector3d& v) {
                    const UnitCube3 im = psi(axis, {v[0], v[1], v[2]});
                    return Eigen::Vector3d{im.y1, im.y2, im.y3};
                },
                x.vec());
            CHECK(std::fabs(numeric - analytic) <= 1e-5 * analytic);
        }
    }
}

TEST_CASE("tan_triple worked example and diagonal case") {
    const TanTriple t = tan_triple(1, {0.5, 0.2, 0.5});
    CHECK(t.diag == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.schur == doctest::Approx(0.42).epsilon(1e-14));
    CHECK(t.v == doctest::Approx(0.2 / std::sqrt(0.145)).epsilon(1e-14));

    const TanTriple diag = tan_triple(1, {0.3, 0.0, 0.7});
    CHECK(diag.diag == 0.3);
    CHECK(diag.schur == 0.7);
    CHECK(diag.v == 0.0);
}

TEST_CASE("tan triple roundtrips and determinant identity") {
    RngStream rng(17);
    for (int axis : {1, 2}) {
        for (int i = 0; i < 10000; ++i) {
            const TanTriple t = conditioned_triple(rng, 1e-6);
            const Sym2 x = tan_triple_inv(axis, t);
            CHECK(x.in_d2(0.0));
            CHECK(std::fabs(x.det() - t.diag * t.schur) <= 1e-13);
            CHECK(std::fabs(x.det_complement() -
                            (1.0 - t.diag) * (1.0 - t.schur) * (1.0 - t.v * t.v)) <=
                  1e-13);
            const TanTriple back = tan_triple(axis, x);
            CHECK(std::fabs(back.diag - t.diag) <= 1e-13);
            CHECK(std::fabs(back.schur - t.schur) <= 1e-13);
            CHECK(std::fabs(back.v - t.v) <= 1e-13);

            const Sym2 x2 = random_d2(rng, 1e-6);
            const Sym2 x2_back = tan_triple_inv(axis, tan_triple(axis, x2));
            CHECK(std::fabs(x2_back.x11 - x2.x11) <= 1e-13);
            CHECK(std::fabs(x2_back.x12 - x2.x12) <= 1e-13);
            CHECK(std::fabs(x2_back.x22 - x2.x22) <= 1e-13);
        }
    }
}

TEST_CASE("tan_triple_inv worked roundtrip and v = 0") {
    const Sym2 x = tan_triple_inv(1, {0.5, 0.42, 0.5252257});
    CHECK(std::fabs(x.x11 - 0.5) <= 1e-7);
    CHECK(std::fabs(x.x12 - 0.2) <= 1e-7);
    CHECK(std::fabs(x.x22 - 0.5) <= 1e-7);

    const Sym2 d = tan_triple_inv(2, {0.6, 0.25, 0.0});
    CHECK(d.x12 == 0.0);
    CHECK(d.x22 == 0.6);
    CHECK(d.x11 == 0.25);
}

TEST_CASE("kshirsagar decomposition") {
    const TriFactor f = kshirsagar_decompose({0.5, 0.0, 0.5});
    CHECK(f.t11 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(f.t12 == 0.0);
    CHECK(f.t22 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

    RngStream rng(18);
    for (int i = 0; i < 10000; ++i) {
        const Sym2 x = random_d2(rng, 1e-6);
        const TriFactor g = kshirsagar_decompose(x);
        const Sym2 back = g.reconstruct();
        CHECK(std::fabs(back.x11 - x.x11) <= 1e-14);
        CHECK(std::fabs(back.x12 - x.x12) <= 1e-14);
        CHECK(std::fabs(back.x22 - x.x22) <= 1e-14);
    }
}

TEST_CASE("neutrality map worked example and exact third coordinate") {
    const UnitCube3 z = neutrality_map({0.5, 0.5, 0.5});
    CHECK(z.y1 == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(z.y2 == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
    CHECK(z.y3 == doctest::Approx(0.125).epsilon(1e-15));

    RngStream rng(19);
    for (int i = 0; i < 1000; ++i) {
        const UnitCube3 y = random_cube(rng, 1e-6);
        const UnitCube3 w = neutrality_map(y);
        CHECK(w.y3 == (1.0 - y.y1) * (1.0 - y.y2) * y.y3);
        CHECK(w.inside(0.0));
    }
}

TEST_CASE("dirichlet_rep reproduces the involution image") {
    RngStream rng(20);
    for (int i = 0; i < 10000; ++i) {
        const UnitCube3 y = random_cube(rng, 1e-3);
        const DirichletRep rep = dirichlet_rep(y);
        CHECK(rep.u > 0.0);
        CHECK(rep.v1 > 0.0);
        CHECK(rep.v1 < 1.0);
        CHECK(rep.v2 > 0.0);
        const UnitCube3 z = big_psi(y);
        CHECK(std::fabs((rep.v1 + rep.v2) / (1.0 + rep.v2) - z.y1) <= 1e-12);
        CHECK(std::fabs(rep.u * rep.v1 - z.y2) <= 1e-12);
        CHECK(std::fabs(rep.u * rep.v2 / (1.0 - rep.u * rep.v1) - z.y3) <= 1e-12);
    }
}

TEST_CASE("boundary policy rejects near-boundary inputs") {
    CHECK_THROWS_AS(psi(1, HPoint{0.5, 0.5, 1e-13}), std::domain_error);
    CHECK_THROWS_AS(psi(1, HPoint{0.5, 0.5, 0.25 - 1e-14}), std::domain_error);
    CHECK_THROWS_AS(big_psi(UnitCube3{1e-13, 0.5, 0.5}), std::domain_error);
    CHECK_THROWS_AS(big_psi(UnitCube3{0.5, 1.0 - 1e-13, 0.5}), std::domain_error);
    CHECK_THROWS_AS(tan_triple(1, Sym2{0.5, 0.5, 0.5}), std::domain_error);
    CHECK_THROWS_AS(psi(3, HPoint{0.5, 0.5, 0.1}), std::domain_error);
    CHECK_THROWS_AS(kshirsagar_decompose(Sym2{0.9, 0.4, 0.2}), std::domain_error);
}
