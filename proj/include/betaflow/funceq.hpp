#pragma once

#include <array>
#include <cmath>

#include "betaflow/types.hpp"

namespace betaflow {

/// Parameters of the closed solution family of the log-additive functional
/// equation tied to the cube involution:
///   g_i(x) = (alpha+gamma) ln x + (beta+gamma) ln(1-x) + A_i   (i = 1, 4)
///   g_i(x) = alpha ln x + (beta+gamma) ln(1-x) + A_i           (i = 2, 5)
///   g_i(x) = gamma ln x + beta ln(1-x) + A_i                   (i = 3, 6)
/// A member is valid iff A1 + A2 + A3 = A4 + A5 + A6.
struct SolutionParams {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    std::array<double, 6> A{};  // A[0] is A_1

    double constraint_gap() const {
        return (A[0] + A[1] + A[2]) - (A[3] + A[4] + A[5]);
    }

    bool is_valid(double tol = 1e-12) const {
        return std::fabs(constraint_gap()) <= tol;
    }
};

/// Evaluate g_i at x in (0,1), i in 1..6.
double g_eval(int i, double x, const SolutionParams& params);

/// Signed residual of the functional equation at y:
///   g1(y1) + g2(y2) + g3(y3) - g4(z1) - g5(z2) - g6(z3),
/// where (z1,z2,z3) is the involution image of y evaluated in its direct
/// closed form. Identically the constraint gap for family members.
double residual(const UnitCube3& y, const SolutionParams& params);

/// Sup-norm of the residual over the interior lattice {1/(k+1),...,k/(k+1)}^3.
double max_grid_residual(const SolutionParams& params, int k);

/// Family member whose g1, g2 are the log densities of B_I(p+r,q+r) and
/// B_I(p,q+r), and whose g3 is ln(x * density of B_I(r,q)):
///   (alpha, beta, gamma) = (p-1, q-1, r), A_i the log normalizers.
SolutionParams params_from_shapes(double p, double q, double r);

}  // namespace betaflow
