#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace betaflow {

/// Inputs closer than this to a domain boundary are rejected by the
/// checked transform entry points; the maps amplify roundoff there.
inline constexpr double kBoundaryMargin = 1e-12;

namespace detail {

inline void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

inline bool finite_positive(double x) {
    return std::isfinite(x) && x > 0.0;
}

}  // namespace detail

/// A point of the open unit cube (0,1)^3.
struct UnitCube3 {
    double y1 = 0.0, y2 = 0.0, y3 = 0.0;

    Eigen::Vector3d vec() const { return {y1, y2, y3}; }

    bool inside(double margin = 0.0) const {
        return std::isfinite(y1) && std::isfinite(y2) && std::isfinite(y3) &&
               y1 > margin && y1 < 1.0 - margin && y2 > margin && y2 < 1.0 - margin &&
               y3 > margin && y3 < 1.0 - margin;
    }

    void validate(double margin = kBoundaryMargin) const {
        detail::require(inside(margin), "UnitCube3: point not interior to (0,1)^3");
    }
};

/// A point of the open region H = {x in (0,inf)^3 : min(x1*x2, (1-x1)(1-x2)) > x3}.
/// The two slacks below are the defining constraints; both are strictly
/// positive on H, which forces x1, x2 into (0,1).
struct HPoint {
    double x1 = 0.0, x2 = 0.0, x3 = 0.0;

    Eigen::Vector3d vec() const { return {x1, x2, x3}; }

    double slack_lower() const { return x1 * x2 - x3; }
    double slack_upper() const { return (1.0 - x1) * (1.0 - x2) - x3; }

    bool in_region(double margin = 0.0) const {
        // the explicit x1, x2 bounds exclude the spurious branch with both
        // complement factors negative (e.g. x1, x2 > 1)
        return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3) &&
               x1 > 0.0 && x1 < 1.0 && x2 > 0.0 && x2 < 1.0 && x3 > margin &&
               slack_lower() > margin && slack_upper() > margin;
    }

    void validate(double margin = kBoundaryMargin) const {
        detail::require(in_region(margin), "HPoint: point not interior to H");
    }
};

/// A 2x2 symmetric matrix [[x11, x12], [x12, x22]].
struct Sym2 {
    double x11 = 0.0, x12 = 0.0, x22 = 0.0;

    Eigen::Matrix2d mat() const {
        Eigen::Matrix2d m;
        m << x11, x12, x12, x22;
        return m;
    }

    double det() const { return x11 * x22 - x12 * x12; }
    double det_complement() const { return (1.0 - x11) * (1.0 - x22) - x12 * x12; }

    /// Schur complement of the (1,1) entry (i = 1) or the (2,2) entry (i = 2).
    double schur(int i) const {
        return i == 1 ? x22 - x12 * x12 / x11 : x11 - x12 * x12 / x22;
    }

    /// Membership in D2 = {x : x and e - x positive definite}.
    bool in_d2(double margin = 0.0) const {
        return std::isfinite(x11) && std::isfinite(x12) && std::isfinite(x22) &&
               x11 > margin && x11 < 1.0 - margin && x22 > margin && x22 < 1.0 - margin &&
               det() > margin && det_complement() > margin;
    }

    void validate(double margin = kBoundaryMargin) const {
        detail::require(in_d2(margin), "Sym2: matrix not interior to D2");
    }
};

/// Block triple (X_ii, Schur complement, normalized off-diagonal V_i).
struct TanTriple {
    double diag = 0.0, schur = 0.0, v = 0.0;

    bool valid(double margin = 0.0) const {
        return std::isfinite(diag) && std::isfinite(schur) && std::isfinite(v) &&
               diag > margin && diag < 1.0 - margin && schur > margin &&
               schur < 1.0 - margin && v > -1.0 + margin && v < 1.0 - margin;
    }

    void validate(double margin = kBoundaryMargin) const {
        detail::require(valid(margin), "TanTriple: triple outside (0,1)^2 x (-1,1)");
    }
};

/// Upper-triangular factor T = [[t11, t12], [0, t22]] with X = T'T.
struct TriFactor {
    double t11 = 0.0, t12 = 0.0, t22 = 0.0;

    Sym2 reconstruct() const {
        return {t11 * t11, t11 * t12, t12 * t12 + t22 * t22};
    }
};

struct TriShapeParams {
    double p = 1.0, q = 1.0, r = 1.0;

    void validate() const {
        detail::require(detail::finite_positive(p) && detail::finite_positive(q) &&
                            detail::finite_positive(r),
                        "TriShapeParams: p, q, r must be positive and finite");
    }
};

struct QuadShapeParams {
    double p = 1.0, q = 1.0, r = 1.0, s = 1.0;

    void validate() const {
        detail::require(detail::finite_positive(p) && detail::finite_positive(q) &&
                            detail::finite_positive(r) && detail::finite_positive(s),
                        "QuadShapeParams: p, q, r, s must be positive and finite");
    }
};

/// Shapes of the 2x2 matrix beta; the n = 2 bound is p, q > 1/2.
struct MatrixBetaParams {
    double p = 1.0, q = 1.0;

    void validate() const {
        detail::require(std::isfinite(p) && std::isfinite(q) && p > 0.5 && q > 0.5,
                        "MatrixBetaParams: requires p > 1/2 and q > 1/2");
    }
};

struct GenMatrixParams {
    double a = 1.0, b = 1.0, c = 1.0;

    void validate() const {
        detail::require(detail::finite_positive(a) && detail::finite_positive(b) &&
                            detail::finite_positive(c),
                        "GenMatrixParams: a, b, c must be positive and finite");
    }
};

}  // namespace betaflow
