#include "betaflow/perpetuity.hpp"

#include <cmath>
#include <stdexcept>

#include "betaflow/distributions.hpp"
#include "betaflow/stat_tests.hpp"

namespace betaflow {

TracedCoeffDraw sample_coeffs_traced(EqKind eq, RngStream& rng,
                                     const TriShapeParams& shapes) {
    shapes.validate();
    switch (eq) {
        case EqKind::affine_r: {
            const double y2 = sample_beta(rng, shapes.p, shapes.q + shapes.r);
            const double y3 = sample_beta(rng, shapes.r, shapes.q);
            const double t = (1.0 - y2) * y3;
            return {{eq, -t, y2 + t, 0.0}, y2, y3};
        }
        case EqKind::affine_s: {
            const double y1 =
                sample_beta(rng, shapes.p + shapes.r, shapes.q + shapes.r);
            const double y3 = sample_beta(rng, shapes.r, shapes.q);
            const double t = (1.0 - y1) * y3;
            return {{eq, t / y1, (1.0 - t) / y1, 0.0}, y1, y3};
        }
        case EqKind::mobius_t: {
            const double y1 =
                sample_beta(rng, shapes.p + shapes.r, shapes.q + shapes.r);
            const double y2 = sample_beta(rng, shapes.p, shapes.q + shapes.r);
            return {{eq, y2 / y1, (1.0 - 2.0 * y2 + y1 * y2) / y1,
                     -(1.0 - y1) * (1.0 - y2) / y1},
                    y1, y2};
        }
    }
    throw std::logic_error("sample_coeffs: unreachable");
}

CoeffDraw sample_coeffs(EqKind eq, RngStream& rng, const TriShapeParams& shapes) {
    return sample_coeffs_traced(eq, rng, shapes).draw;
}

bool in_state_space(EqKind eq, double state) {
    if (!std::isfinite(state)) return false;
    // the closure point 1 is admitted for the (1,inf) recursions; the
    // affine map sends it straight into the interior (image C + D = 1/Y1)
    return eq == EqKind::affine_r ? (state > 0.0 && state < 1.0) : state >= 1.0;
}

double step(EqKind eq, double state, const CoeffDraw& coeffs) {
    if (coeffs.kind != eq)
        throw std::invalid_argument("step: coefficient draw is for another equation");
    if (!in_state_space(eq, state))
        throw std::domain_error("step: state outside the equation's state space");
    switch (eq) {
        case EqKind::affine_r:
        case EqKind::affine_s:
            return coeffs.c0 * state + coeffs.c1;
        case EqKind::mobius_t:
            return coeffs.c0 * state + coeffs.c1 + coeffs.c2 / state;
    }
    throw std::logic_error("step: unreachable");
}

Eigen::ArrayXd run_chain(EqKind eq, RngStream& rng, const TriShapeParams& shapes,
                         int n_burn, int n_keep, double init) {
    if (n_burn < 0 || n_keep <= 0)
        throw std::invalid_argument("run_chain: invalid burn/keep counts");
    if (!in_state_space(eq, init))
        throw std::domain_error("run_chain: initial state outside the state space");
    double state = init;
    for (int i = 0; i < n_burn; ++i) state = step(eq, state, sample_coeffs(eq, rng, shapes));
    Eigen::ArrayXd kept(n_keep);
    for (int i = 0; i < n_keep; ++i) {
        state = step(eq, state, sample_coeffs(eq, rng, shapes));
        kept[i] = state;
    }
    return kept;
}

double stationary_target_draw(EqKind eq, RngStream& rng, const TriShapeParams& shapes) {
    shapes.validate();
    switch (eq) {
        case EqKind::affine_r:
            return sample_beta(rng, shapes.p + shapes.r, shapes.q + shapes.r);
        case EqKind::affine_s:
            return 1.0 / sample_beta(rng, shapes.p, shapes.q + shapes.r);
        case EqKind::mobius_t:
            return 1.0 / sample_beta(rng, shapes.r, shapes.q);
    }
    throw std::logic_error("stationary_target_draw: unreachable");
}

TwoStartDiagnostic two_start_diagnostic(EqKind eq, RngStream& rng,
                                        const TriShapeParams& shapes, double init_a,
                                        double init_b, int n_burn, int n_keep) {
    if (n_burn < 0 || n_keep <= 0)
        throw std::invalid_argument("two_start_diagnostic: invalid burn/keep counts");
    if (!in_state_space(eq, init_a) || !in_state_space(eq, init_b))
        throw std::domain_error("two_start_diagnostic: initial state outside the space");
    double sa = init_a;
    double sb = init_b;
    for (int i = 0; i < n_burn; ++i) {
        const CoeffDraw cd = sample_coeffs(eq, rng, shapes);  // common random numbers
        sa = step(eq, sa, cd);
        sb = step(eq, sb, cd);
    }
    Eigen::ArrayXd kept_a(n_keep), kept_b(n_keep);
    double max_gap = 0.0;
    for (int i = 0; i < n_keep; ++i) {
        const CoeffDraw cd = sample_coeffs(eq, rng, shapes);
        sa = step(eq, sa, cd);
        sb = step(eq, sb, cd);
        kept_a[i] = sa;
        kept_b[i] = sb;
        max_gap = std::max(max_gap, std::fabs(sa - sb));
    }
    return {ks_statistic_two(kept_a, kept_b), max_gap};
}

}  // namespace betaflow
