#include "betaflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string_view>

#include "betaflow/distributions.hpp"
#include "betaflow/funceq.hpp"
#include "betaflow/parallel.hpp"
#include "betaflow/perpetuity.hpp"
#include "betaflow/special_math.hpp"
#include "betaflow/transforms.hpp"

namespace betaflow {

namespace {

using Eigen::ArrayXd;
using Eigen::Index;

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (const char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    return h;
}

/// Stream keyed by (base seed, scenario tag, replicate index); every
/// report is reproducible from the base seed alone.
RngStream test_stream(const VerifyOptions& o, std::string_view tag, std::uint64_t idx) {
    return RngStream(o.seed, mix64(fnv1a64(tag) + idx));
}

/// Product-beta batch with the invariance-law shapes:
/// columns ~ B_I(p+r,q+r), B_I(p,q+r), B_I(r,q).
ArrayX3d product_beta_batch(RngStream& rng, const TriShapeParams& t, Index n) {
    ArrayX3d y(n, 3);
    for (Index i = 0; i < n; ++i) {
        y(i, 0) = sample_beta(rng, t.p + t.r, t.q + t.r);
        y(i, 1) = sample_beta(rng, t.p, t.q + t.r);
        y(i, 2) = sample_beta(rng, t.r, t.q);
    }
    return y;
}

ArrayX3d big_psi_rows(const ArrayX3d& y) {
    ArrayX3d z(y.rows(), 3);
    for (Index i = 0; i < y.rows(); ++i) {
        const UnitCube3 w = detail::big_psi_raw({y(i, 0), y(i, 1), y(i, 2)});
        z(i, 0) = w.y1;
        z(i, 1) = w.y2;
        z(i, 2) = w.y3;
    }
    return z;
}

UnitCube3 uniform_cube(RngStream& rng, double margin) {
    const double span = 1.0 - 2.0 * margin;
    return {margin + span * rng.uniform(), margin + span * rng.uniform(),
            margin + span * rng.uniform()};
}

// Interior D2 point with a conditioning margin away from the boundary
// (the triple coordinates degrade near it).
Sym2 random_d2(RngStream& rng, double margin) {
    const double span = 1.0 - 2.0 * margin;
    for (;;) {
        const TanTriple t{margin + span * rng.uniform(), margin + span * rng.uniform(),
                          (2.0 * rng.uniform() - 1.0) * (1.0 - margin)};
        const Sym2 x = detail::tan_triple_inv_raw(1, t);
        if (x.in_d2(1e-3)) return x;
    }
}

/// Run the per-seed check bundle over the seed list (in parallel) and
/// collect one pass-bit vector per seed.
std::vector<std::vector<bool>> seed_matrix(
    const VerifyOptions& o, std::string_view tag,
    const std::function<std::vector<bool>(RngStream&)>& per_seed) {
    std::vector<std::vector<bool>> out(static_cast<std::size_t>(o.seed_count));
    parallel_for(static_cast<std::size_t>(o.seed_count), [&](std::size_t i) {
        RngStream rng = test_stream(o, tag, i + 1);
        out[i] = per_seed(rng);
    });
    return out;
}

TestReport majority_column(const std::string& name,
                           const std::vector<std::vector<bool>>& m, std::size_t col,
                           const VerifyOptions& o, std::int64_t per_seed_n) {
    std::vector<bool> passes;
    passes.reserve(m.size());
    for (const auto& row : m) passes.push_back(row.at(col));
    return majority_report(name, passes, o.min_pass, per_seed_n, o.seed);
}

std::function<double(double)> beta_cdf_fn(double a, double b) {
    return [a, b](double x) { return beta_cdf(x, a, b); };
}

// ------------------------------------------------------------------ theorem1

std::vector<TestReport> scenario_theorem1(const ShapeBundle& sh, const VerifyOptions& o) {
    const TriShapeParams tri{sh.p, sh.q, sh.r};
    tri.validate();
    const auto m = seed_matrix(o, "theorem1", [&](RngStream& rng) {
        const ArrayX3d y = product_beta_batch(rng, tri, o.n);
        const ArrayX3d fresh = product_beta_batch(rng, tri, o.n);
        const ArrayX3d z = big_psi_rows(y);
        std::vector<bool> ok(7);
        for (int k = 0; k < 3; ++k) {
            const ArrayXd zc = z.col(k);
            const ArrayXd yc = fresh.col(k);
            ok[static_cast<std::size_t>(k)] =
                ks_two_sample("", zc, yc, o.alpha, rng.seed()).pass;
        }
        const ArrayXd z1 = z.col(0), z2 = z.col(1), z3 = z.col(2);
        ok[3] = dcov_perm_test("", z1, z2, o.dcov_perms, rng, o.alpha, o.dcov_points).pass;
        ok[4] = dcov_perm_test("", z1, z3, o.dcov_perms, rng, o.alpha, o.dcov_points).pass;
        ok[5] = dcov_perm_test("", z2, z3, o.dcov_perms, rng, o.alpha, o.dcov_points).pass;
        ok[6] = chi2_indep_grid("", z, o.bins, o.alpha, rng.seed()).pass;
        return ok;
    });
    return {majority_column("theorem1/ks-coord1", m, 0, o, o.n),
            majority_column("theorem1/ks-coord2", m, 1, o, o.n),
            majority_column("theorem1/ks-coord3", m, 2, o, o.n),
            majority_column("theorem1/dcov-12", m, 3, o, o.dcov_points),
            majority_column("theorem1/dcov-13", m, 4, o, o.dcov_points),
            majority_column("theorem1/dcov-23", m, 5, o, o.dcov_points),
            majority_column("theorem1/chi2-joint", m, 6, o, o.n)};
}

std::vector<TestReport> scenario_theorem1_independence(const ShapeBundle& sh,
                                                       const VerifyOptions& o) {
    const TriShapeParams tri{sh.p, sh.q, sh.r};
    tri.validate();
    const auto m = seed_matrix(o, "theorem1-independence", [&](RngStream& rng) {
        const ArrayX3d y = product_beta_batch(rng, tri, o.n);
        const ArrayX3d z = big_psi_rows(y);
        const ArrayXd z1 = z.col(0), z2 = z.col(1), z3 = z.col(2);
        std::vector<bool> ok(4);
        ok[0] = dcov_perm_test("", z1, z2, o.dcov_perms, rng, o.alpha, o.dcov_points).pass;
        ok[1] = dcov_perm_test("", z1, z3, o.dcov_perms, rng, o.alpha, o.dcov_points).pass;
        ok[2] = dcov_perm_test("", z2, z3, o.dcov_perms, rng, o.alpha, o.dcov_points).pass;
        ok[3] = chi2_indep_grid("", z, o.bins, o.alpha, rng.seed()).pass;
        return ok;
    });
    return {majority_column("theorem1-independence/dcov-12", m, 0, o, o.dcov_points),
            majority_column("theorem1-independence/dcov-13", m, 1, o, o.dcov_points),
            majority_column("theorem1-independence/dcov-23", m, 2, o, o.dcov_points),
            majority_column("theorem1-independence/chi2-joint", m, 3, o, o.n)};
}

// --------------------------------------------------------------- matrix beta

std::vector<TestReport> scenario_matrix_beta(const ShapeBundle& sh,
                                             const VerifyOptions& o) {
    const MatrixBetaParams mb{sh.p, sh.q};
    mb.validate();
    const auto m = seed_matrix(o, "matrix-beta", [&](RngStream& rng) {
        const ArrayX3d x = sample_matrix_beta2_batch(rng, mb, o.n);
        const ArrayXd x11 = x.col(0), x12 = x.col(1), x22 = x.col(2);
        ArrayXd schur(o.n), v(o.n), t22_sq(o.n);
        for (Index i = 0; i < o.n; ++i) {
            const Sym2 s{x11[i], x12[i], x22[i]};
            const TanTriple t = detail::tan_triple_raw(1, s);
            schur[i] = t.schur;
            v[i] = t.v;
            const TriFactor f = kshirsagar_decompose(s);
            t22_sq[i] = f.t22 * f.t22;
        }
        const ArrayXd v_sq = v.square();
        std::vector<bool> ok(7);
        ok[0] = ks_one_sample("", x11, beta_cdf_fn(mb.p, mb.q), o.alpha, rng.seed()).pass;
        ok[1] = ks_one_sample("", schur, beta_cdf_fn(mb.p - 0.5, mb.q), o.alpha,
                              rng.seed()).pass;
        ok[2] = ks_one_sample("", v_sq, beta_cdf_fn(0.5, mb.q - 0.5), o.alpha,
                              rng.seed()).pass;
        ok[3] = ks_one_sample("", t22_sq, beta_cdf_fn(mb.p - 0.5, mb.q), o.alpha,
                              rng.seed()).pass;
        ok[4] = dcov_perm_test("", x11, schur, o.dcov_perms, rng, o.alpha,
                               o.dcov_points).pass;
        ok[5] = dcov_perm_test("", x11, v, o.dcov_perms, rng, o.alpha,
                               o.dcov_points).pass;
        ok[6] = dcov_perm_test("", schur, v, o.dcov_perms, rng, o.alpha,
                               o.dcov_points).pass;
        return ok;
    });
    return {majority_column("matrix-beta/ks-x11", m, 0, o, o.n),
            majority_column("matrix-beta/ks-schur", m, 1, o, o.n),
            majority_column("matrix-beta/ks-v-squared", m, 2, o, o.n),
            majority_column("matrix-beta/ks-t22-squared", m, 3, o, o.n),
            majority_column("matrix-beta/dcov-x11-schur", m, 4, o, o.dcov_points),
            majority_column("matrix-beta/dcov-x11-v", m, 5, o, o.dcov_points),
            majority_column("matrix-beta/dcov-schur-v", m, 6, o, o.dcov_points)};
}

// ------------------------------------------------------- generalized matrices

std::vector<TestReport> scenario_gen_matrix(const ShapeBundle& sh,
                                            const VerifyOptions& o) {
    const GenMatrixParams gen{sh.a, sh.b, sh.c};
    gen.validate();
    std::vector<TestReport> reports;

    {
        // collapse point: c = 1/2 reproduces the matrix beta density exactly
        const GenMatrixParams half{sh.a, sh.b, 0.5};
        const MatrixBetaParams mb{sh.a + 0.5, sh.b + 0.5};
        RngStream rng = test_stream(o, "gen-matrix/identity", 0);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const Sym2 x = random_d2(rng, 1e-6);
            worst = std::max(worst, std::fabs(gen_matrix_logpdf(x, half) -
                                              matrix_beta2_logpdf(x, mb)));
        }
        reports.push_back(threshold_report("gen-matrix/c-half-density-identity", worst,
                                           1e-12, {1000}, o.seed));
    }

    {
        // Monte Carlo normalization over the bounding box (0,1)^2 x (-1,1)
        RngStream rng = test_stream(o, "gen-matrix/normalization", 0);
        const double log_norm = log_beta(gen.a, gen.b) +
                                log_beta(gen.a + gen.b, gen.c) +
                                log_beta(gen.a + gen.c, gen.b + gen.c);
        double sum = 0.0;
        for (std::int64_t i = 0; i < o.n_mc; ++i) {
            const Sym2 x{rng.uniform(), 2.0 * rng.uniform() - 1.0, rng.uniform()};
            if (!x.in_d2(0.0)) continue;
            const double logpdf = (gen.a - 1.0) * std::log(x.det()) +
                                  (gen.b - 1.0) * std::log(x.det_complement()) +
                                  (2.0 * gen.c - 1.0) * std::log(std::fabs(x.x12)) -
                                  log_norm;
            sum += std::exp(logpdf);
        }
        const double estimate = 2.0 * sum / static_cast<double>(o.n_mc);
        reports.push_back(threshold_report("gen-matrix/mc-normalization",
                                           std::fabs(estimate - 1.0), 0.01, {o.n_mc},
                                           o.seed));
    }

    const auto marg = seed_matrix(o, "gen-matrix/marginal", [&](RngStream& rng) {
        const ArrayX3d x = sample_gen_matrix_batch(rng, gen, o.n);
        const ArrayXd x11 = x.col(0);
        std::vector<bool> ok(1);
        ok[0] = ks_one_sample("", x11, beta_cdf_fn(gen.a + gen.c, gen.b + gen.c),
                              o.alpha, rng.seed()).pass;
        return ok;
    });
    reports.push_back(majority_column("gen-matrix/ks-x11-marginal", marg, 0, o, o.n));

    const auto cross = seed_matrix(o, "gen-matrix/cross", [&](RngStream& rng) {
        const GenMatrixParams half{sh.a, sh.b, 0.5};
        const MatrixBetaParams mb{sh.a + 0.5, sh.b + 0.5};
        const ArrayX3d g = sample_gen_matrix_batch(rng, half, o.n);
        const ArrayX3d mbx = sample_matrix_beta2_batch(rng, mb, o.n);
        std::vector<bool> ok(3);
        for (int k = 0; k < 3; ++k) {
            const ArrayXd gc = g.col(k);
            const ArrayXd mc = mbx.col(k);
            ok[static_cast<std::size_t>(k)] =
                ks_two_sample("", gc, mc, o.alpha, rng.seed()).pass;
        }
        return ok;
    });
    reports.push_back(majority_column("gen-matrix/cross-ks-x11", cross, 0, o, o.n));
    reports.push_back(majority_column("gen-matrix/cross-ks-x12", cross, 1, o, o.n));
    reports.push_back(majority_column("gen-matrix/cross-ks-x22", cross, 2, o, o.n));
    return reports;
}

// ----------------------------------------------------- triangular factorization

std::vector<TestReport> scenario_kshirsagar(const ShapeBundle& sh,
                                            const VerifyOptions& o) {
    const MatrixBetaParams mb{sh.p, sh.q};
    mb.validate();
    std::vector<TestReport> reports;

    {
        RngStream rng = test_stream(o, "kshirsagar/roundtrip", 0);
        double worst = 0.0;
        for (std::int64_t i = 0; i < o.n_points; ++i) {
            const Sym2 x = random_d2(rng, 1e-6);
            const Sym2 back = kshirsagar_decompose(x).reconstruct();
            worst = std::max({worst, std::fabs(back.x11 - x.x11),
                              std::fabs(back.x12 - x.x12), std::fabs(back.x22 - x.x22)});
        }
        reports.push_back(threshold_report("kshirsagar/reconstruction", worst, 1e-14,
                                           {o.n_points}, o.seed));
    }

    const auto m = seed_matrix(o, "kshirsagar", [&](RngStream& rng) {
        const ArrayX3d x = sample_matrix_beta2_batch(rng, mb, o.n);
        ArrayXd t11_sq(o.n), t22_sq(o.n), v(o.n);
        for (Index i = 0; i < o.n; ++i) {
            const Sym2 s{x(i, 0), x(i, 1), x(i, 2)};
            const TriFactor f = kshirsagar_decompose(s);
            t11_sq[i] = f.t11 * f.t11;
            t22_sq[i] = f.t22 * f.t22;
            v[i] = f.t12 / std::sqrt((1.0 - t11_sq[i]) * (1.0 - t22_sq[i]));
        }
        std::vector<bool> ok(5);
        ok[0] = ks_one_sample("", t11_sq, beta_cdf_fn(mb.p, mb.q), o.alpha,
                              rng.seed()).pass;
        ok[1] = ks_one_sample("", t22_sq, beta_cdf_fn(mb.p - 0.5, mb.q), o.alpha,
                              rng.seed()).pass;
        ok[2] = dcov_perm_test("", t11_sq, t22_sq, o.dcov_perms, rng, o.alpha,
                               o.dcov_points).pass;
        ok[3] = dcov_perm_test("", t11_sq, v, o.dcov_perms, rng, o.alpha,
                               o.dcov_points).pass;
        ok[4] = dcov_perm_test("", t22_sq, v, o.dcov_perms, rng, o.alpha,
                               o.dcov_points).pass;
        return ok;
    });
    reports.push_back(majority_column("kshirsagar/ks-t11-squared", m, 0, o, o.n));
    reports.push_back(majority_column("kshirsagar/ks-t22-squared", m, 1, o, o.n));
    reports.push_back(majority_column("kshirsagar/dcov-t11-t22", m, 2, o, o.dcov_points));
    reports.push_back(majority_column("kshirsagar/dcov-t11-v", m, 3, o, o.dcov_points));
    reports.push_back(majority_column("kshirsagar/dcov-t22-v", m, 4, o, o.dcov_points));
    return reports;
}

// ----------------------------------------------------------------- neutrality

std::vector<TestReport> scenario_neutrality(const ShapeBundle& sh,
                                            const VerifyOptions& o) {
    const QuadShapeParams quad{sh.p, sh.q, sh.r, sh.s};
    quad.validate();
    const auto m = seed_matrix(o, "neutrality", [&](RngStream& rng) {
        ArrayX3d z(o.n, 3);
        for (Index i = 0; i < o.n; ++i) {
            const UnitCube3 y{
                sample_beta(rng, quad.p, quad.q + quad.r + quad.s),
                sample_beta(rng, quad.q, quad.r + quad.s),
                sample_beta(rng, quad.r, quad.s)};
            const UnitCube3 w = detail::neutrality_raw(y);
            z(i, 0) = w.y1;
            z(i, 1) = w.y2;
            z(i, 2) = w.y3;
        }
        const ArrayXd z1 = z.col(0), z2 = z.col(1), z3 = z.col(2);
        std::vector<bool> ok(6);
        ok[0] = ks_one_sample("", z1, beta_cdf_fn(quad.p, quad.s), o.alpha,
                              rng.seed()).pass;
        ok[1] = ks_one_sample("", z2, beta_cdf_fn(quad.q, quad.p + quad.s), o.alpha,
                              rng.seed()).pass;
        ok[2] = ks_one_sample("", z3, beta_cdf_fn(quad.r, quad.p + quad.q + quad.s),
                              o.alpha, rng.seed()).pass;
        ok[3] = dcov_perm_test("", z1, z2, o.dcov_perms, rng, o.alpha, o.dcov_points).pass;
        ok[4] = dcov_perm_test("", z1, z3, o.dcov_perms, rng, o.alpha, o.dcov_points).pass;
        ok[5] = dcov_perm_test("", z2, z3, o.dcov_perms, rng, o.alpha, o.dcov_points).pass;
        return ok;
    });
    return {majority_column("neutrality/ks-z1", m, 0, o, o.n),
            majority_column("neutrality/ks-z2", m, 1, o, o.n),
            majority_column("neutrality/ks-z3", m, 2, o, o.n),
            majority_column("neutrality/dcov-12", m, 3, o, o.dcov_points),
            majority_column("neutrality/dcov-13", m, 4, o, o.dcov_points),
            majority_column("neutrality/dcov-23", m, 5, o, o.dcov_points)};
}

// --------------------------------------------------- Dirichlet representation

std::vector<TestReport> scenario_dirichlet_rep(const ShapeBundle& sh,
                                               const VerifyOptions& o) {
    const TriShapeParams tri{sh.p, sh.q, sh.r};
    tri.validate();
    std::vector<TestReport> reports;

    {
        // exact pointwise identity between the representation triple and the
        // involution image; the margin keeps the 1/(1 - U*V1) factor
        // conditioned within the 1e-12 budget
        RngStream rng = test_stream(o, "dirichlet-rep/identity", 0);
        double worst = 0.0;
        for (std::int64_t i = 0; i < o.n_points; ++i) {
            const UnitCube3 y = uniform_cube(rng, 1e-3);
            const DirichletRep rep = dirichlet_rep(y);
            const UnitCube3 z = detail::big_psi_raw(y);
            const double lhs1 = (rep.v1 + rep.v2) / (1.0 + rep.v2);
            const double lhs2 = rep.u * rep.v1;
            const double lhs3 = rep.u * rep.v2 / (1.0 - rep.u * rep.v1);
            worst = std::max({worst, std::fabs(lhs1 - z.y1), std::fabs(lhs2 - z.y2),
                              std::fabs(lhs3 - z.y3)});
        }
        reports.push_back(threshold_report("dirichlet-rep/involution-identity", worst,
                                           1e-12, {o.n_points}, o.seed));
    }

    const auto m = seed_matrix(o, "dirichlet-rep", [&](RngStream& rng) {
        ArrayXd scaled_sum(o.n), w1(o.n), w2_cond(o.n), v2(o.n);
        for (Index i = 0; i < o.n; ++i) {
            const UnitCube3 y{sample_beta(rng, tri.p + tri.r, tri.q + tri.r),
                              sample_beta(rng, tri.p, tri.q + tri.r),
                              sample_beta(rng, tri.r, tri.q)};
            const DirichletRep rep = dirichlet_rep(y);
            scaled_sum[i] = (rep.v1 + rep.v2) * rep.u;
            v2[i] = rep.v2;
            w1[i] = rep.u * rep.v1;
            w2_cond[i] = rep.u * rep.v2 / (1.0 - w1[i]);
        }
        std::vector<bool> ok(4);
        ok[0] = ks_one_sample("", scaled_sum, beta_cdf_fn(tri.p + tri.r, tri.q),
                              o.alpha, rng.seed()).pass;
        ok[1] = ks_one_sample(
            "", v2,
            [&](double x) { return beta2_cdf(x, tri.r, tri.p + tri.q + tri.r); },
            o.alpha, rng.seed()).pass;
        ok[2] = ks_one_sample("", w1, beta_cdf_fn(tri.p, tri.q + tri.r), o.alpha,
                              rng.seed()).pass;
        ok[3] = ks_one_sample("", w2_cond, beta_cdf_fn(tri.r, tri.q), o.alpha,
                              rng.seed()).pass;
        return ok;
    });
    reports.push_back(majority_column("dirichlet-rep/ks-scaled-sum", m, 0, o, o.n));
    reports.push_back(majority_column("dirichlet-rep/ks-v2-beta2", m, 1, o, o.n));
    reports.push_back(majority_column("dirichlet-rep/ks-w1", m, 2, o, o.n));
    reports.push_back(majority_column("dirichlet-rep/ks-w2-renorm", m, 3, o, o.n));
    return reports;
}

// ----------------------------------------------------------- functional family

std::vector<TestReport> scenario_funceq(const ShapeBundle&, const VerifyOptions& o) {
    std::vector<TestReport> reports;
    {
        RngStream rng = test_stream(o, "funceq-family/random", 0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            SolutionParams p;
            p.alpha = -2.0 + 5.0 * rng.uniform();
            p.beta = -2.0 + 5.0 * rng.uniform();
            p.gamma = -2.0 + 5.0 * rng.uniform();
            for (int j = 0; j < 5; ++j)
                p.A[static_cast<std::size_t>(j)] = -2.0 + 4.0 * rng.uniform();
            p.A[5] = p.A[0] + p.A[1] + p.A[2] - p.A[3] - p.A[4];
            worst = std::max(worst, max_grid_residual(p, o.grid_k));
        }
        reports.push_back(threshold_report("funceq-family/random-members", worst, 1e-9,
                                           {100, o.grid_k}, o.seed));
    }
    {
        double worst = 0.0;
        std::int64_t members = 0;
        if (o.funceq_shapes) {
            const auto& s = *o.funceq_shapes;
            worst = max_grid_residual(params_from_shapes(s[0], s[1], s[2]), o.grid_k);
            members = 1;
        } else {
            const double grid[] = {0.5, 1.0, 2.0, 3.0};
            for (const double p : grid)
                for (const double q : grid)
                    for (const double r : grid) {
                        worst = std::max(
                            worst, max_grid_residual(params_from_shapes(p, q, r),
                                                     o.grid_k));
                        ++members;
                    }
        }
        reports.push_back(threshold_report("funceq-family/shape-members", worst, 1e-9,
                                           {members, o.grid_k}, o.seed));
    }
    return reports;
}

// ---------------------------------------------------------------- perpetuities

struct PerpetuityConfig {
    EqKind eq;
    const char* tag;
    double init;
    double two_start_a, two_start_b;
    double stationary_threshold;  // 1.0 means recorded-only
    bool two_start_uses_gap;
    double two_start_threshold;
};

std::vector<TestReport> scenario_perpetuity(const PerpetuityConfig& cfg,
                                            const ShapeBundle& sh,
                                            const VerifyOptions& o) {
    const TriShapeParams tri{sh.p, sh.q, sh.r};
    tri.validate();
    std::vector<TestReport> reports;
    const std::string base(cfg.tag);

    {
        RngStream rng = test_stream(o, base + "/identity", 0);
        double worst = 0.0;
        for (std::int64_t i = 0; i < o.n_identity; ++i) {
            const TracedCoeffDraw t = sample_coeffs_traced(cfg.eq, rng, tri);
            double err = 0.0;
            switch (cfg.eq) {
                case EqKind::affine_r:
                    err = std::fabs(t.draw.c0 + t.draw.c1 - t.u1);
                    break;
                case EqKind::affine_s:
                    // relative to the target 1/Y1
                    err = std::fabs((t.draw.c0 + t.draw.c1) * t.u1 - 1.0);
                    break;
                case EqKind::mobius_t:
                    err = std::fabs(t.draw.c0 + t.draw.c1 + t.draw.c2 - 1.0) /
                          std::max({1.0, std::fabs(t.draw.c0), std::fabs(t.draw.c1),
                                    std::fabs(t.draw.c2)});
                    break;
            }
            worst = std::max(worst, err);
        }
        reports.push_back(threshold_report(base + "/coefficient-identity", worst, 1e-13,
                                           {o.n_identity}, o.seed));
    }

    {
        RngStream rng = test_stream(o, base + "/stationary", 0);
        const Eigen::ArrayXd chain =
            run_chain(cfg.eq, rng, tri, o.burn, static_cast<int>(o.n), cfg.init);
        Eigen::ArrayXd target(o.n);
        for (Index i = 0; i < o.n; ++i)
            target[i] = stationary_target_draw(cfg.eq, rng, tri);
        const double ks = ks_statistic_two(chain, target);
        reports.push_back(threshold_report(base + "/stationary-ks", ks,
                                           cfg.stationary_threshold, {o.n, o.n},
                                           o.seed));
    }

    {
        RngStream rng = test_stream(o, base + "/two-start", 0);
        const TwoStartDiagnostic diag =
            two_start_diagnostic(cfg.eq, rng, tri, cfg.two_start_a, cfg.two_start_b,
                                 o.burn, static_cast<int>(o.n));
        const double stat = cfg.two_start_uses_gap ? diag.max_gap : diag.ks_distance;
        const char* suffix = cfg.two_start_uses_gap ? "/two-start-gap" : "/two-start-ks";
        reports.push_back(threshold_report(base + suffix, stat,
                                           cfg.two_start_threshold, {o.n}, o.seed));
    }
    return reports;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "theorem1",     "theorem1-independence",
        "matrix-beta",  "gen-matrix",
        "kshirsagar",   "neutrality",
        "dirichlet-rep", "funceq-family",
        "perpetuity-r", "perpetuity-s",
        "perpetuity-t"};
    return names;
}

bool is_scenario(const std::string& name) {
    const auto& names = scenario_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

std::vector<TestReport> run_scenario(const std::string& name, const ShapeBundle& shapes,
                                     const VerifyOptions& opts) {
    if (name == "theorem1") return scenario_theorem1(shapes, opts);
    if (name == "theorem1-independence")
        return scenario_theorem1_independence(shapes, opts);
    if (name == "matrix-beta") return scenario_matrix_beta(shapes, opts);
    if (name == "gen-matrix") return scenario_gen_matrix(shapes, opts);
    if (name == "kshirsagar") return scenario_kshirsagar(shapes, opts);
    if (name == "neutrality") return scenario_neutrality(shapes, opts);
    if (name == "dirichlet-rep") return scenario_dirichlet_rep(shapes, opts);
    if (name == "funceq-family") return scenario_funceq(shapes, opts);
    if (name == "perpetuity-r")
        return scenario_perpetuity({EqKind::affine_r, "perpetuity-r", 0.5, 0.1, 0.9,
                                    0.02, true, 1e-10},
                                   shapes, opts);
    if (name == "perpetuity-s")
        return scenario_perpetuity({EqKind::affine_s, "perpetuity-s", 2.0, 1.5, 50.0,
                                    0.02, false, 0.02},
                                   shapes, opts);
    if (name == "perpetuity-t")
        return scenario_perpetuity({EqKind::mobius_t, "perpetuity-t", 2.0, 1.01, 100.0,
                                    1.0, false, 1.0},
                                   shapes, opts);
    throw std::invalid_argument("unknown scenario: " + name);
}

// ------------------------------------------------------ H-normalizer checks

TestReport h_volume_report(const VerifyOptions& opts) {
    RngStream rng = test_stream(opts, "trivariate-h/volume", 0);
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < opts.n_mc; ++i) {
        const HPoint x{rng.uniform(), rng.uniform(), rng.uniform()};
        if (x.in_region(0.0)) ++hits;
    }
    const double estimate = static_cast<double>(hits) / static_cast<double>(opts.n_mc);
    return threshold_report("trivariate-h/volume-mc",
                            std::fabs(estimate - 1.0 / 12.0), 0.002, {opts.n_mc},
                            opts.seed);
}

namespace {

constexpr int kHBins = 8;
constexpr double kHX3Max = 0.25;  // x3 < min(x1x2,(1-x1)(1-x2)) <= 1/4 on H

/// Cell masses of the density over an 8x8x8 grid covering the bounding box
/// (0,1)^2 x (0,1/4), integrated by stratified jittered Monte Carlo.
std::vector<double> h_cell_masses(const TriShapeParams& t, std::uint64_t seed) {
    const double log_norm = log_beta(t.p + t.r, t.q + t.r) +
                            log_beta(t.p, t.q + t.r) + log_beta(t.r, t.q);
    constexpr int kSub = 44;  // jitter lattice per axis inside each cell
    const double wx = 1.0 / kHBins;
    const double wz = kHX3Max / kHBins;
    std::vector<double> mass(kHBins * kHBins * kHBins, 0.0);
    parallel_for(mass.size(), [&](std::size_t cell) {
        const int ci = static_cast<int>(cell) / (kHBins * kHBins);
        const int cj = (static_cast<int>(cell) / kHBins) % kHBins;
        const int ck = static_cast<int>(cell) % kHBins;
        RngStream rng(seed, mix64(cell + 7919));
        double sum = 0.0;
        for (int si = 0; si < kSub; ++si)
            for (int sj = 0; sj < kSub; ++sj)
                for (int sk = 0; sk < kSub; ++sk) {
                    const double x1 = (ci + (si + rng.uniform()) / kSub) * wx;
                    const double x2 = (cj + (sj + rng.uniform()) / kSub) * wx;
                    const double x3 = (ck + (sk + rng.uniform()) / kSub) * wz;
                    const HPoint x{x1, x2, x3};
                    if (!x.in_region(0.0)) continue;
                    sum += std::exp((t.p - 1.0) * std::log(x.slack_lower()) +
                                    (t.q - 1.0) * std::log(x.slack_upper()) +
                                    (t.r - 1.0) * std::log(x.x3) - log_norm);
                }
        const double cell_volume = wx * wx * wz;
        mass[cell] = sum / (static_cast<double>(kSub) * kSub * kSub) * cell_volume;
    });
    return mass;
}

}  // namespace

std::vector<TestReport> h_normalizer_reports(const ShapeBundle& shapes,
                                             const VerifyOptions& opts) {
    const TriShapeParams tri{shapes.p, shapes.q, shapes.r};
    tri.validate();
    std::vector<TestReport> reports;
    reports.push_back(h_volume_report(opts));

    const std::vector<double> mass = h_cell_masses(tri, opts.seed);
    const double total_mass = std::accumulate(mass.begin(), mass.end(), 0.0);
    // the integrated masses must recover the normalizer
    reports.push_back(threshold_report("trivariate-h/density-mass-sum",
                                       std::fabs(total_mass - 1.0), 0.005,
                                       {static_cast<std::int64_t>(mass.size())},
                                       opts.seed));

    const auto m = seed_matrix(opts, "trivariate-h/chi2", [&](RngStream& rng) {
        std::vector<double> observed(mass.size(), 0.0);
        const double wx = 1.0 / kHBins;
        const double wz = kHX3Max / kHBins;
        for (std::int64_t i = 0; i < opts.n_mc; ++i) {
            const HPoint x = sample_trivariate_h(rng, tri);
            const int ci = std::min(static_cast<int>(x.x1 / wx), kHBins - 1);
            const int cj = std::min(static_cast<int>(x.x2 / wx), kHBins - 1);
            const int ck = std::min(static_cast<int>(x.x3 / wz), kHBins - 1);
            observed[static_cast<std::size_t>((ci * kHBins + cj) * kHBins + ck)] += 1.0;
        }
        // pool low-expectation cells, then Pearson chi-square
        const double n = static_cast<double>(opts.n_mc);
        double stat = 0.0;
        double pooled_obs = 0.0, pooled_exp = 0.0;
        int used = 0;
        for (std::size_t cidx = 0; cidx < mass.size(); ++cidx) {
            const double expected = mass[cidx] / total_mass * n;
            if (expected < 5.0) {
                pooled_obs += observed[cidx];
                pooled_exp += expected;
                continue;
            }
            stat += (observed[cidx] - expected) * (observed[cidx] - expected) / expected;
            ++used;
        }
        if (pooled_exp >= 5.0) {
            stat += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
            ++used;
        }
        const double p = chi2_sf(stat, static_cast<double>(used - 1));
        return std::vector<bool>{p >= opts.alpha};
    });
    reports.push_back(
        majority_column("trivariate-h/sampler-density-chi2", m, 0, opts, opts.n_mc));
    return reports;
}

}  // namespace betaflow
