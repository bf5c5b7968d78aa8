#pragma once

#include <Eigen/Core>

#include "betaflow/rng.hpp"
#include "betaflow/types.hpp"

namespace betaflow {

/// The three stochastic fixed-point recursions driven by product-beta
/// coefficient draws:
///   affine_r:  R <- A R + B          on (0,1),  (A,B) from (Y2, Y3)
///   affine_s:  S <- C S + D          on (1,inf), (C,D) from (Y1, Y3)
///   mobius_t:  T <- a T + b + c/T    on (1,inf), (a,b,c) from (Y1, Y2)
enum class EqKind { affine_r, affine_s, mobius_t };

/// One coefficient draw. Slot meaning by kind:
///   affine_r: (c0, c1) = (A, B), A in (-1,0), A + B = Y2
///   affine_s: (c0, c1) = (C, D), C > 0,       C + D = 1/Y1
///   mobius_t: (c0, c1, c2) = (a, b, c), a > 0, c < 0, a + b + c = 1
struct CoeffDraw {
    EqKind kind = EqKind::affine_r;
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
};

/// Draw coefficients from the product-beta inputs with shapes (p, q, r):
///   Y1 ~ B_I(p+r, q+r), Y2 ~ B_I(p, q+r), Y3 ~ B_I(r, q).
CoeffDraw sample_coeffs(EqKind eq, RngStream& rng, const TriShapeParams& shapes);

/// Coefficient draw together with its two beta inputs (in draw order:
/// (Y2,Y3) for affine_r, (Y1,Y3) for affine_s, (Y1,Y2) for mobius_t);
/// the exact coefficient identities are checked against these.
struct TracedCoeffDraw {
    CoeffDraw draw;
    double u1 = 0.0, u2 = 0.0;
};

TracedCoeffDraw sample_coeffs_traced(EqKind eq, RngStream& rng,
                                     const TriShapeParams& shapes);

/// State-space membership. The closure point 1 is admitted for the two
/// (1,inf) recursions; the affine map sends it straight into the interior.
bool in_state_space(EqKind eq, double state);

/// One recursion step; the state space is invariant under every admissible
/// coefficient draw.
double step(EqKind eq, double state, const CoeffDraw& coeffs);

/// Iterate the chain from `init`, discard `n_burn` steps, keep `n_keep`.
Eigen::ArrayXd run_chain(EqKind eq, RngStream& rng, const TriShapeParams& shapes,
                         int n_burn, int n_keep, double init);

/// One draw from the known stationary law: Y1 for affine_r, 1/Y2 for
/// affine_s, 1/Y3 for mobius_t (for mobius_t uniqueness is open and the
/// library never asserts it).
double stationary_target_draw(EqKind eq, RngStream& rng, const TriShapeParams& shapes);

/// Two chains driven by the identical coefficient stream from different
/// starting points; isolates initial-condition dependence from Monte Carlo
/// noise.
struct TwoStartDiagnostic {
    double ks_distance = 0.0;  // two-sample KS between the kept samples
    double max_gap = 0.0;      // max |gap| over the kept portion
};

TwoStartDiagnostic two_start_diagnostic(EqKind eq, RngStream& rng,
                                        const TriShapeParams& shapes, double init_a,
                                        double init_b, int n_burn, int n_keep);

}  // namespace betaflow
