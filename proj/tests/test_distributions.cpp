#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "betaflow/distributions.hpp"
#include "betaflow/special_math.hpp"
#include "betaflow/stat_tests.hpp"
#include "betaflow/transforms.hpp"
#include "oracles.hpp"

using namespace betaflow;

namespace {

constexpr double kAlpha = 0.01;

Sym2 random_d2(RngStream& rng, double margin) {
    const double span = 1.0 - 2.0 * margin;
    for (;;) {
        const Sym2 x = tan_triple_inv(
            1, {margin + span * rng.uniform(), margin + span * rng.uniform(),
                (2.0 * rng.uniform() - 1.0) * (1.0 - margin)});
        if (x.in_d2(1e-3)) return x;
    }
}

}  // namespace

TEST_CASE("sample_beta uniform case stays under the KS critical value") {
    RngStream rng(101);
    const Eigen::ArrayXd x = sample_beta_batch(rng, 1.0, 1.0, 100000);
    const double d = ks_statistic_one(x, [](double t) { return t; });
    // lambda for Q(lambda) = 0.01 is about 1.628
    CHECK(d <= 1.628 / std::sqrt(100000.0));
}

TEST_CASE("sample_beta moments") {
    RngStream rng(102);
    const int n = 100000;
    const Eigen::ArrayXd x = sample_beta_batch(rng, 2.0, 3.0, n);
    const double sigma = std::sqrt(2.0 * 3.0 / (25.0 * 6.0));
    CHECK(std::fabs(x.mean() - 0.4) <= 4.0 * sigma / std::sqrt(double(n)));
    CHECK(x.minCoeff() > 0.0);
    CHECK(x.maxCoeff() < 1.0);
}

TEST_CASE("sample_beta endpoint shapes pass KS against the CDF oracle") {
    RngStream rng(103);
    const Eigen::ArrayXd x = sample_beta_batch(rng, 0.5, 0.5, 100000);
    const TestReport rep = ks_one_sample(
        "beta-half", x, [](double t) { return reg_inc_beta(t, 0.5, 0.5); }, kAlpha, 103);
    CHECK(rep.pass);
}

TEST_CASE("sample_beta rejects bad shapes") {
    RngStream rng(104);
    CHECK_THROWS_AS(sample_beta(rng, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(sample_beta(rng, 1.0, -2.0), std::domain_error);
    CHECK_THROWS_AS(sample_gamma(rng, 0.0), std::domain_error);
}

TEST_CASE("beta_logpdf closed forms and normalization") {
    CHECK(std::fabs(beta_logpdf(0.5, 1.0, 1.0)) <= 1e-14);
    CHECK(beta_logpdf(0.5, 2.0, 2.0) == doctest::Approx(std::log(1.5)).epsilon(1e-14));
    CHECK_THROWS_AS(beta_logpdf(0.0, 2.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(beta_logpdf(1.0, 2.0, 2.0), std::domain_error);

    const double mass = oracles::integrate(
        [](double t) { return std::exp(beta_logpdf(t, 2.0, 3.0)); }, 1e-12,
        1.0 - 1e-12, 128);
    CHECK(std::fabs(mass - 1.0) <= 1e-6);
}

TEST_CASE("beta2 log density, CDF and sampler") {
    // alpha = 1: logpdf -> ln(beta) as x -> 0+
    CHECK(beta2_logpdf(1e-12, 1.0, 2.5) == doctest::Approx(std::log(2.5)).epsilon(1e-9));
    CHECK_THROWS_AS(beta2_logpdf(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(beta2_logpdf(-1.0, 1.0, 1.0), std::domain_error);

    // CDF against direct quadrature of the density
    for (const double x : {0.2, 0.7, 1.0, 2.5, 8.0}) {
        const double quad = oracles::adaptive_simpson(
            [](double t) { return std::exp(beta2_logpdf(t, 1.5, 2.5)); }, 1e-12, x,
            1e-11);
        CHECK(std::fabs(beta2_cdf(x, 1.5, 2.5) - quad) <= 1e-8);
    }

    // Monte Carlo normalization through the u/(1-u) substitution
    RngStream rng(105);
    const int n = 200000;
    double mc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        const double x = u / (1.0 - u);
        mc += std::exp(beta2_logpdf(x, 1.5, 2.5)) / ((1.0 - u) * (1.0 - u));
    }
    mc /= n;
    CHECK(std::fabs(mc - 1.0) <= 0.01);

    // draws: positive, median near 1 for the symmetric case, KS against CDF
    RngStream rng2(106);
    const Eigen::ArrayXd draws = sample_beta2_batch(rng2, 1.0, 1.0, 100000);
    CHECK(draws.minCoeff() > 0.0);
    const double below_one =
        static_cast<double>((draws < 1.0).count()) / static_cast<double>(draws.size());
    CHECK(std::fabs(below_one - 0.5) <= 4.0 * 0.5 / std::sqrt(100000.0));

    RngStream rng3(107);
    const Eigen::ArrayXd draws2 = sample_beta2_batch(rng3, 1.5, 2.5, 100000);
    const TestReport rep = ks_one_sample(
        "beta2", draws2, [](double t) { return beta2_cdf(t, 1.5, 2.5); }, kAlpha, 107);
    CHECK(rep.pass);
}

TEST_CASE("sample_dirichlet3 simplex membership and marginals") {
    RngStream rng(108);
    for (int i = 0; i < 1000; ++i) {
        const Eigen::Vector3d w = sample_dirichlet3(rng, 1.7, 0.6, 2.2);
        CHECK(std::fabs(w.sum() - 1.0) <= 1e-15);
        CHECK(w.minCoeff() > 0.0);
        CHECK(w.maxCoeff() < 1.0);
    }

    const int n = 100000;
    ArrayX3d w(n, 3);
    for (int i = 0; i < n; ++i) w.row(i) = sample_dirichlet3(rng, 1.0, 1.0, 1.0);
    const Eigen::ArrayXd w1 = w.col(0);
    CHECK(ks_one_sample(
              "dir-w1", w1, [](double t) { return reg_inc_beta(t, 1.0, 2.0); },
              kAlpha, 108)
              .pass);

    // (W1, W2/(1-W1)) splits into independent beta coordinates
    RngStream rng2(109);
    const double p = 2.0, r = 1.0, q = 1.5;
    ArrayX3d v(n, 3);
    for (int i = 0; i < n; ++i) v.row(i) = sample_dirichlet3(rng2, p, r, q);
    const Eigen::ArrayXd first = v.col(0);
    const Eigen::ArrayXd second = v.col(1) / (1.0 - v.col(0));
    CHECK(ks_one_sample(
              "dir-first", first,
              [&](double t) { return reg_inc_beta(t, p, q + r); }, kAlpha, 109)
              .pass);
    CHECK(ks_one_sample(
              "dir-second", second,
              [&](double t) { return reg_inc_beta(t, r, q); }, kAlpha, 109)
              .pass);
}

TEST_CASE("trivariate_h_logpdf worked constants") {
    const TriShapeParams flat{1.0, 1.0, 1.0};
    for (const auto& pt : {HPoint{0.5, 0.5, 0.1}, HPoint{0.3, 0.6, 0.05}}) {
        CHECK(trivariate_h_logpdf(pt, flat) ==
              doctest::Approx(std::log(12.0)).epsilon(1e-13));
    }
    CHECK(trivariate_h_logpdf({0.5, 0.5, 0.1}, {2.0, 1.0, 1.0}) ==
          doctest::Approx(std::log(10.8)).epsilon(1e-13));
    CHECK_THROWS_AS(trivariate_h_logpdf({0.5, 0.5, 0.25}, flat), std::domain_error);
    CHECK_THROWS_AS(trivariate_h_logpdf({0.5, 0.5, 0.3}, flat), std::domain_error);
    // both complement factors negative is not membership
    CHECK_THROWS_AS(trivariate_h_logpdf({2.0, 3.0, 1.0}, flat), std::domain_error);
}

TEST_CASE("sample_trivariate_h invariants and first marginal") {
    RngStream rng(110);
    const TriShapeParams shapes{2.0, 1.5, 1.0};
    const int n = 100000;
    const ArrayX3d x = sample_trivariate_h_batch(rng, shapes, n);
    for (int i = 0; i < n; ++i) {
        const HPoint pt{x(i, 0), x(i, 1), x(i, 2)};
        REQUIRE(pt.in_region(0.0));
    }
    const Eigen::ArrayXd x1 = x.col(0);
    CHECK(ks_one_sample(
              "h-x1", x1,
              [&](double t) { return reg_inc_beta(t, shapes.p + shapes.r,
                                                  shapes.q + shapes.r); },
              kAlpha, 110)
              .pass);
}

TEST_CASE("matrix beta draws live in D2 with the stated marginals") {
    RngStream rng(111);
    const MatrixBetaParams mb{2.0, 1.5};
    const int n = 100000;
    const ArrayX3d x = sample_matrix_beta2_batch(rng, mb, n);
    Eigen::ArrayXd v_sq(n);
    for (int i = 0; i < n; ++i) {
        const Sym2 s{x(i, 0), x(i, 1), x(i, 2)};
        REQUIRE(s.in_d2(0.0));
        const TanTriple t = tan_triple(1, s);
        v_sq[i] = t.v * t.v;
    }
    const Eigen::ArrayXd x11 = x.col(0);
    CHECK(ks_one_sample(
              "mb-x11", x11, [&](double t) { return reg_inc_beta(t, mb.p, mb.q); },
              kAlpha, 111)
              .pass);
    CHECK(ks_one_sample(
              "mb-vsq", v_sq,
              [&](double t) { return reg_inc_beta(t, 0.5, mb.q - 0.5); }, kAlpha, 111)
              .pass);

    RngStream bad(112);
    CHECK_THROWS_AS(sample_matrix_beta2(bad, {0.4, 1.0}), std::domain_error);
}

TEST_CASE("matrix_beta2_logpdf worked value and error path") {
    CHECK(matrix_beta2_logpdf({0.5, 0.0, 0.5}, {1.5, 1.5}) ==
          doctest::Approx(std::log(6.0 / std::numbers::pi)).epsilon(1e-13));
    CHECK_THROWS_AS(matrix_beta2_logpdf({0.9, 0.4, 0.2}, {1.5, 1.5}),
                    std::domain_error);
}

TEST_CASE("gen_matrix_logpdf collapse, singular ray, and matrix-beta identity") {
    RngStream rng(113);
    for (int i = 0; i < 1000; ++i) {
        const Sym2 x = random_d2(rng, 1e-6);
        const double lhs = gen_matrix_logpdf(x, {1.2, 2.1, 0.5});
        const double rhs = matrix_beta2_logpdf(x, {1.7, 2.6});
        CHECK(std::fabs(lhs - rhs) <= 1e-12);
    }
    CHECK(gen_matrix_logpdf({0.5, 0.0, 0.5}, {1.0, 1.0, 1.0}) ==
          -std::numeric_limits<double>::infinity());
    CHECK(gen_matrix_logpdf({0.5, 0.0, 0.5}, {1.0, 1.0, 0.3}) ==
          std::numeric_limits<double>::infinity());
    CHECK(std::isfinite(gen_matrix_logpdf({0.5, 0.0, 0.5}, {1.0, 1.0, 0.5})));
}

TEST_CASE("sample_gen_matrix membership, marginal and collapse cross-check") {
    RngStream rng(114);
    const GenMatrixParams gen{1.5, 2.0, 0.8};
    const int n = 100000;
    const ArrayX3d x = sample_gen_matrix_batch(rng, gen, n);
    for (int i = 0; i < n; ++i)
        REQUIRE(Sym2{x(i, 0), x(i, 1), x(i, 2)}.in_d2(0.0));
    const Eigen::ArrayXd x11 = x.col(0);
    CHECK(ks_one_sample(
              "gm-x11", x11,
              [&](double t) { return reg_inc_beta(t, gen.a + gen.c, gen.b + gen.c); },
              kAlpha, 114)
              .pass);

    // c = 1/2 lines up with the matrix beta sampler coordinatewise
    RngStream rng2(115);
    const ArrayX3d g = sample_gen_matrix_batch(rng2, {1.5, 2.0, 0.5}, n);
    const ArrayX3d m = sample_matrix_beta2_batch(rng2, {2.0, 2.5}, n);
    for (int k = 0; k < 3; ++k) {
        const Eigen::ArrayXd gc = g.col(k);
        const Eigen::ArrayXd mc = m.col(k);
        CHECK(ks_two_sample("gm-cross", gc, mc, kAlpha, 115).pass);
    }
}

TEST_CASE("off-diagonal sign is a fair coin independent of magnitude") {
    const auto sign_magnitude_pvalue = [](const ArrayX3d& x) {
        const int n = static_cast<int>(x.rows());
        Eigen::ArrayXd mag = x.col(1).abs();
        std::vector<double> sorted(mag.data(), mag.data() + n);
        std::sort(sorted.begin(), sorted.end());
        const double q1 = sorted[n / 4], q2 = sorted[n / 2], q3 = sorted[3 * n / 4];
        double table[2][4] = {{0, 0, 0, 0}, {0, 0, 0, 0}};
        for (int i = 0; i < n; ++i) {
            const int row = x(i, 1) > 0.0 ? 1 : 0;
            const double a = mag[i];
            const int col = a <= q1 ? 0 : a <= q2 ? 1 : a <= q3 ? 2 : 3;
            table[row][col] += 1.0;
        }
        double stat = 0.0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 4; ++c) {
                double row_sum =
                    table[r][0] + table[r][1] + table[r][2] + table[r][3];
                double col_sum = table[0][c] + table[1][c];
                const double expected = row_sum * col_sum / n;
                stat += (table[r][c] - expected) * (table[r][c] - expected) / expected;
            }
        return chi2_sf(stat, 3.0);
    };

    RngStream rng(116);
    const int n = 100000;
    CHECK(sign_magnitude_pvalue(sample_gen_matrix_batch(rng, {1.5, 2.0, 0.8}, n)) >=
          kAlpha);
    CHECK(sign_magnitude_pvalue(sample_matrix_beta2_batch(rng, {2.0, 1.5}, n)) >=
          kAlpha);
}

TEST_CASE("normalizer of the off-diagonal factor matches the beta integral") {
    const double cases[][2] = {{0.5, 1.0}, {1.0, 2.0}, {0.8, 1.5}};
    for (const auto& cb : cases) {
        const double c = cb[0], b = cb[1];
        // int_{-1}^{1} |v|^(2c-1) (1-v^2)^(b-1) dv through v = sin(theta)
        const double quad = oracles::integrate(
            [&](double th) {
                const double sv = std::sin(th);
                const double cv = std::cos(th);
                return 2.0 * std::pow(sv, 2.0 * c - 1.0) *
                       std::pow(cv, 2.0 * b - 1.0);
            },
            0.0, 0.5 * std::numbers::pi, 256);
        CHECK(std::fabs(quad - std::exp(log_beta(c, b))) <= 1e-8);
    }
}

TEST_CASE("samplers are bitwise deterministic under the stream key") {
    const TriShapeParams tri{2.0, 1.5, 1.0};
    RngStream a(7, 3), b(7, 3);
    for (int i = 0; i < 200; ++i) {
        const HPoint xa = sample_trivariate_h(a, tri);
        const HPoint xb = sample_trivariate_h(b, tri);
        CHECK(xa.x1 == xb.x1);
        CHECK(xa.x2 == xb.x2);
        CHECK(xa.x3 == xb.x3);
    }
    RngStream c(7, 3), d(7, 3);
    for (int i = 0; i < 200; ++i) {
        const Sym2 xc = sample_gen_matrix(c, {1.5, 2.0, 0.8});
        const Sym2 xd = sample_gen_matrix(d, {1.5, 2.0, 0.8});
        CHECK(xc.x11 == xd.x11);
        CHECK(xc.x12 == xd.x12);
        CHECK(xc.x22 == xd.x22);
    }
}

TEST_CASE("pullback consistency: H draws map to independent beta coordinates") {
    RngStream rng(117);
    const TriShapeParams shapes{2.0, 1.5, 1.0};
    const int n = 100000;
    ArrayX3d y(n, 3);
    for (int i = 0; i < n; ++i) {
        const UnitCube3 im = psi(1, sample_trivariate_h(rng, shapes));
        y(i, 0) = im.y1;
        y(i, 1) = im.y2;
        y(i, 2) = im.y3;
    }
    const Eigen::ArrayXd y1 = y.col(0), y2 = y.col(1), y3 = y.col(2);
    CHECK(ks_one_sample("pb-1", y1,
                        [&](double t) {
                            return reg_inc_beta(t, shapes.p + shapes.r,
                                                shapes.q + shapes.r);
                        },
                        kAlpha, 117)
              .pass);
    CHECK(ks_one_sample("pb-2", y2,
                        [&](double t) {
                            return reg_inc_beta(t, shapes.p, shapes.q + shapes.r);
                        },
                        kAlpha, 117)
              .pass);
    CHECK(ks_one_sample("pb-3", y3,
                        [&](double t) { return reg_inc_beta(t, shapes.r, shapes.q); },
                        kAlpha, 117)
              .pass);
}
