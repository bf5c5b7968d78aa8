#include "betaflow/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "betaflow/special_math.hpp"
#include "betaflow/transforms.hpp"

namespace betaflow {

namespace {

void check_shape(double v, const char* what) {
    if (!(std::isfinite(v) && v > 0.0)) throw std::domain_error(what);
}

}  // namespace

double sample_gamma(RngStream& rng, double shape) {
    check_shape(shape, "sample_gamma: shape must be positive and finite");
    if (shape < 1.0) {
        // boost identity: G(a) = G(a+1) * U^(1/a)
        const double u = rng.uniform();
        return sample_gamma(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta(RngStream& rng, double a, double b) {
    check_shape(a, "sample_beta: a must be positive and finite");
    check_shape(b, "sample_beta: b must be positive and finite");
    for (;;) {
        const double x = sample_gamma(rng, a);
        const double y = sample_gamma(rng, b);
        const double s = x + y;
        if (!(s > 0.0)) continue;
        const double t = x / s;
        if (t > 0.0 && t < 1.0) return t;  // resample boundary hits
    }
}

double beta_logpdf(double x, double a, double b) {
    check_shape(a, "beta_logpdf: a must be positive and finite");
    check_shape(b, "beta_logpdf: b must be positive and finite");
    if (!(std::isfinite(x) && x > 0.0 && x < 1.0))
        throw std::domain_error("beta_logpdf: x must lie in (0,1)");
    return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b);
}

double beta_cdf(double x, double a, double b) { return reg_inc_beta(x, a, b); }

double beta2_logpdf(double x, double alpha, double beta) {
    check_shape(alpha, "beta2_logpdf: alpha must be positive and finite");
    check_shape(beta, "beta2_logpdf: beta must be positive and finite");
    if (!(std::isfinite(x) && x > 0.0))
        throw std::domain_error("beta2_logpdf: x must be positive");
    return (alpha - 1.0) * std::log(x) - (alpha + beta) * std::log1p(x) -
           log_beta(alpha, beta);
}

double beta2_cdf(double x, double alpha, double beta) {
    if (!(std::isfinite(x))) throw std::domain_error("beta2_cdf: x must be finite");
    if (x <= 0.0) return 0.0;
    return reg_inc_beta(x / (1.0 + x), alpha, beta);
}

double sample_beta2(RngStream& rng, double alpha, double beta) {
    const double u = sample_beta(rng, alpha, beta);
    return u / (1.0 - u);
}

Eigen::Vector3d sample_dirichlet3(RngStream& rng, double p, double r, double q) {
    check_shape(p, "sample_dirichlet3: p must be positive and finite");
    check_shape(r, "sample_dirichlet3: r must be positive and finite");
    check_shape(q, "sample_dirichlet3: q must be positive and finite");
    for (;;) {
        const double g1 = sample_gamma(rng, p);
        const double g2 = sample_gamma(rng, r);
        const double g3 = sample_gamma(rng, q);
        const double s = g1 + g2 + g3;
        if (!(s > 0.0)) continue;
        const Eigen::Vector3d w(g1 / s, g2 / s, g3 / s);
        if (w.minCoeff() > 0.0 && w.maxCoeff() < 1.0) return w;
    }
}

double trivariate_h_logpdf(const HPoint& x, const TriShapeParams& params) {
    params.validate();
    x.validate(0.0);
    const double log_norm = log_beta(params.p + params.r, params.q + params.r) +
                            log_beta(params.p, params.q + params.r) +
                            log_beta(params.r, params.q);
    return (params.p - 1.0) * std::log(x.slack_lower()) +
           (params.q - 1.0) * std::log(x.slack_upper()) +
           (params.r - 1.0) * std::log(x.x3) - log_norm;
}

HPoint sample_trivariate_h(RngStream& rng, const TriShapeParams& params) {
    params.validate();
    for (;;) {
        const UnitCube3 y{sample_beta(rng, params.p + params.r, params.q + params.r),
                          sample_beta(rng, params.p, params.q + params.r),
                          sample_beta(rng, params.r, params.q)};
        const HPoint x = detail::psi_inv_raw(1, y);
        // the region membership is algebraic; reject the rare draw whose
        // floating-point image lands on a boundary
        if (x.in_region(0.0)) return x;
    }
}

Sym2 sample_matrix_beta2(RngStream& rng, const MatrixBetaParams& params) {
    params.validate();
    for (;;) {
        const double t11_sq = sample_beta(rng, params.p, params.q);
        const double t22_sq = sample_beta(rng, params.p - 0.5, params.q);
        const double u = sample_beta(rng, 0.5, params.q - 0.5);
        const double v = (rng.coin() ? 1.0 : -1.0) * std::sqrt(u);
        const double t11 = std::sqrt(t11_sq);
        const double t22 = std::sqrt(t22_sq);
        const double t12 = std::sqrt(1.0 - t11_sq) * std::sqrt(1.0 - t22_sq) * v;
        const Sym2 x = TriFactor{t11, t12, t22}.reconstruct();
        if (x.in_d2(0.0)) return x;
    }
}

double matrix_beta2_logpdf(const Sym2& x, const MatrixBetaParams& params) {
    params.validate();
    x.validate(0.0);
    return (params.p - 1.5) * std::log(x.det()) +
           (params.q - 1.5) * std::log(x.det_complement()) -
           log_matrix_beta_const(2, params.p, params.q);
}

double gen_matrix_logpdf(const Sym2& x, const GenMatrixParams& params) {
    params.validate();
    x.validate(0.0);
    const double two_c_minus_1 = 2.0 * params.c - 1.0;
    const double log_norm = log_beta(params.a, params.b) +
                            log_beta(params.a + params.b, params.c) +
                            log_beta(params.a + params.c, params.b + params.c);
    if (x.x12 == 0.0 && two_c_minus_1 != 0.0) {
        // measure-zero singular ray: density is 0 for c > 1/2 and blows up
        // (integrably) for c < 1/2
        return two_c_minus_1 > 0.0 ? -std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::infinity();
    }
    double log_off = 0.0;
    if (two_c_minus_1 != 0.0) log_off = two_c_minus_1 * std::log(std::fabs(x.x12));
    return (params.a - 1.0) * std::log(x.det()) +
           (params.b - 1.0) * std::log(x.det_complement()) + log_off - log_norm;
}

Sym2 sample_gen_matrix(RngStream& rng, const GenMatrixParams& params) {
    params.validate();
    for (;;) {
        const double diag = sample_beta(rng, params.a + params.c, params.b + params.c);
        const double schur = sample_beta(rng, params.a, params.b + params.c);
        const double u = sample_beta(rng, params.c, params.b);
        const double v = (rng.coin() ? 1.0 : -1.0) * std::sqrt(u);
        const Sym2 x = detail::tan_triple_inv_raw(1, TanTriple{diag, schur, v});
        if (x.in_d2(0.0)) return x;
    }
}

Eigen::ArrayXd sample_beta_batch(RngStream& rng, double a, double b, Eigen::Index n) {
    Eigen::ArrayXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = sample_beta(rng, a, b);
    return out;
}

Eigen::ArrayXd sample_beta2_batch(RngStream& rng, double alpha, double beta,
                                  Eigen::Index n) {
    Eigen::ArrayXd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out[i] = sample_beta2(rng, alpha, beta);
    return out;
}

ArrayX3d sample_dirichlet3_batch(RngStream& rng, double p, double r, double q,
                                 Eigen::Index n) {
    ArrayX3d out(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) out.row(i) = sample_dirichlet3(rng, p, r, q);
    return out;
}

ArrayX3d sample_trivariate_h_batch(RngStream& rng, const TriShapeParams& params,
                                   Eigen::Index n) {
    ArrayX3d out(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        const HPoint x = sample_trivariate_h(rng, params);
        out(i, 0) = x.x1;
        out(i, 1) = x.x2;
        out(i, 2) = x.x3;
    }
    return out;
}

ArrayX3d sample_matrix_beta2_batch(RngStream& rng, const MatrixBetaParams& params,
                                   Eigen::Index n) {
    ArrayX3d out(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Sym2 x = sample_matrix_beta2(rng, params);
        out(i, 0) = x.x11;
        out(i, 1) = x.x12;
        out(i, 2) = x.x22;
    }
    return out;
}

ArrayX3d sample_gen_matrix_batch(RngStream& rng, const GenMatrixParams& params,
                                 Eigen::Index n) {
    ArrayX3d out(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Sym2 x = sample_gen_matrix(rng, params);
        out(i, 0) = x.x11;
        out(i, 1) = x.x12;
        out(i, 2) = x.x22;
    }
    return out;
}

}  // namespace betaflow
