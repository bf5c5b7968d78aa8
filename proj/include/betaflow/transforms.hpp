#pragma once

#include <cmath>
#include <stdexcept>

#include "betaflow/types.hpp"

// The deterministic maps of the library: the two bijections H -> (0,1)^3
// and their inverses, the unit-cube involution obtained by composing them,
// the block triples of a D2 matrix with their closed-form inverse, the
// triangular factorization X = T'T, the complete-neutrality map, and the
// Dirichlet representation triple.
//
// Checked entry points reject inputs within kBoundaryMargin of the domain
// boundary; the raw kernels in `detail` skip validation and are used by
// the samplers, which guarantee interior inputs by construction.

namespace betaflow {

namespace detail {

inline void require_axis(int i) {
    if (i != 1 && i != 2) throw std::domain_error("axis index must be 1 or 2");
}

inline UnitCube3 psi_raw(int i, const HPoint& x) {
    const double xi = (i == 1) ? x.x1 : x.x2;
    const double other = (i == 1) ? x.x2 : x.x1;
    const double lower = x.x1 * x.x2 - x.x3;
    // x_i - x1x2 + x3 as a sum of positive terms
    const double inner = xi * (1.0 - other) + x.x3;
    return {xi, lower / xi, x.x3 / ((1.0 - xi) * inner)};
}

inline HPoint psi_inv_raw(int i, const UnitCube3& y) {
    const double cross = (1.0 - y.y1) * (1.0 - y.y2) * y.y3;
    const double other = y.y2 + cross;
    const double x3 = y.y1 * cross;
    return (i == 1) ? HPoint{y.y1, other, x3} : HPoint{other, y.y1, x3};
}

inline UnitCube3 big_psi_raw(const UnitCube3& y) {
    const double z1 = y.y2 + (1.0 - y.y1) * (1.0 - y.y2) * y.y3;
    const double z2 = y.y1 * y.y2 / z1;
    const double z3 = y.y1 * y.y3 /
                      ((1.0 - (1.0 - y.y1) * y.y3) * (y.y2 + y.y3 * (1.0 - y.y2)));
    return {z1, z2, z3};
}

inline TanTriple tan_triple_raw(int i, const Sym2& x) {
    const double diag = (i == 1) ? x.x11 : x.x22;
    const double other = (i == 1) ? x.x22 : x.x11;
    const double schur = x.schur(i);
    // diag - x11*x22 + x12^2 rewritten as a sum of positive terms
    const double inner = diag * (1.0 - other) + x.x12 * x.x12;
    const double v = x.x12 / std::sqrt((1.0 - diag) * inner);
    return {diag, schur, v};
}

inline Sym2 tan_triple_inv_raw(int i, const TanTriple& t) {
    const double u = t.v * t.v * t.diag * (1.0 - t.diag) * (1.0 - t.schur);
    const double x12 = (t.v < 0.0 ? -1.0 : 1.0) * std::sqrt(u);
    const double other = t.schur + u / t.diag;
    return (i == 1) ? Sym2{t.diag, x12, other} : Sym2{other, x12, t.diag};
}

inline UnitCube3 neutrality_raw(const UnitCube3& y) {
    const double z1 =
        y.y1 / (1.0 - (1.0 - y.y1) * (y.y2 + (1.0 - y.y2) * y.y3));
    const double z2 = (1.0 - y.y1) * y.y2 / (1.0 - (1.0 - y.y1) * (1.0 - y.y2) * y.y3);
    const double z3 = (1.0 - y.y1) * (1.0 - y.y2) * y.y3;
    return {z1, z2, z3};
}

}  // namespace detail

/// psi_i(x) = (x_i, (x1x2-x3)/x_i, x3/((1-x_i)(x_i - x1x2 + x3))), i = 1, 2;
/// a bijection of H onto (0,1)^3.
inline UnitCube3 psi(int i, const HPoint& x) {
    detail::require_axis(i);
    x.validate();
    return detail::psi_raw(i, x);
}

/// Closed-form inverse of psi_i. For i = 1:
///   x1 = y1, x2 = y2 + (1-y1)(1-y2)y3, x3 = y1(1-y1)(1-y2)y3;
/// i = 2 swaps the roles of x1 and x2. The image satisfies
///   x1x2 - x3 = y1y2 and (1-x1)(1-x2) - x3 = (1-y1)(1-y2)(1-y3),
/// which forces membership in H.
inline HPoint psi_inv(int i, const UnitCube3& y) {
    detail::require_axis(i);
    y.validate();
    return detail::psi_inv_raw(i, y);
}

/// The involution of (0,1)^3 equal to psi_2 after psi_1^{-1}.
inline UnitCube3 big_psi(const UnitCube3& y) {
    y.validate();
    return detail::big_psi_raw(y);
}

/// |J_i| = 1/((1-x_i)(x_i - x1x2 + x3)), the Jacobian modulus of psi_i.
inline double psi_jacobian(int i, const HPoint& x) {
    detail::require_axis(i);
    x.validate();
    const double xi = (i == 1) ? x.x1 : x.x2;
    const double other = (i == 1) ? x.x2 : x.x1;
    return 1.0 / ((1.0 - xi) * (xi * (1.0 - other) + x.x3));
}

/// Block triple of x in D2: (X_ii, Schur complement, normalized
/// off-diagonal V_i with V_i^2 < 1).
inline TanTriple tan_triple(int i, const Sym2& x) {
    detail::require_axis(i);
    x.validate();
    return detail::tan_triple_raw(i, x);
}

/// Closed-form inverse of tan_triple. Membership of the result in D2 is
/// algebraic: det x = diag*schur and det(e-x) = (1-diag)(1-schur)(1-v^2).
inline Sym2 tan_triple_inv(int i, const TanTriple& t) {
    detail::require_axis(i);
    t.validate();
    return detail::tan_triple_inv_raw(i, t);
}

/// Triangular factor T (upper) with T'T = x:
///   t11 = sqrt(x11), t12 = x12/sqrt(x11), t22 = sqrt(x22 - x12^2/x11).
inline TriFactor kshirsagar_decompose(const Sym2& x) {
    x.validate();
    const double t11 = std::sqrt(x.x11);
    const double t12 = x.x12 / t11;
    const double t22 = std::sqrt(x.schur(1));
    return {t11, t12, t22};
}

/// Complete-neutrality map of the unit cube:
///   z1 = y1 / (1 - (1-y1)[y2 + (1-y2)y3]),
///   z2 = (1-y1)y2 / (1 - (1-y1)(1-y2)y3),
///   z3 = (1-y1)(1-y2)y3.
inline UnitCube3 neutrality_map(const UnitCube3& y) {
    y.validate();
    return detail::neutrality_raw(y);
}

/// Dirichlet representation triple: U scales (V1, V2) into a Dirichlet
/// vector, and ((V1+V2)/(1+V2), U*V1, U*V2/(1-U*V1)) reproduces the
/// involution image of y exactly.
struct DirichletRep {
    double u = 0.0;   // scale, > 0
    double v1 = 0.0;  // in (0,1)
    double v2 = 0.0;  // > 0
};

inline DirichletRep dirichlet_rep(const UnitCube3& y) {
    y.validate();
    const double denom = y.y2 + (1.0 - y.y1) * (1.0 - y.y2) * y.y3;
    const double t = (1.0 - y.y1) * y.y3;
    return {y.y1 / denom, y.y2, t / (1.0 - t)};
}

}  // namespace betaflow
