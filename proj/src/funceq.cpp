#include "betaflow/funceq.hpp"

#include <cmath>
#include <stdexcept>

#include "betaflow/special_math.hpp"
#include "betaflow/transforms.hpp"

namespace betaflow {

double g_eval(int i, double x, const SolutionParams& params) {
    if (i < 1 || i > 6) throw std::domain_error("g_eval: index must lie in 1..6");
    if (!(std::isfinite(x) && x > 0.0 && x < 1.0))
        throw std::domain_error("g_eval: x must lie in (0,1)");
    const double lx = std::log(x);
    const double l1mx = std::log1p(-x);
    const double add = params.A[static_cast<std::size_t>(i - 1)];
    switch (i) {
        case 1:
        case 4:
            return (params.alpha + params.gamma) * lx +
                   (params.beta + params.gamma) * l1mx + add;
        case 2:
        case 5:
            return params.alpha * lx + (params.beta + params.gamma) * l1mx + add;
        default:  // 3, 6
            return params.gamma * lx + params.beta * l1mx + add;
    }
}

double residual(const UnitCube3& y, const SolutionParams& params) {
    y.validate(0.0);
    const UnitCube3 z = detail::big_psi_raw(y);
    return g_eval(1, y.y1, params) + g_eval(2, y.y2, params) +
           g_eval(3, y.y3, params) - g_eval(4, z.y1, params) -
           g_eval(5, z.y2, params) - g_eval(6, z.y3, params);
}

double max_grid_residual(const SolutionParams& params, int k) {
    if (k < 2) throw std::domain_error("max_grid_residual: grid size must be >= 2");
    const double step = 1.0 / (k + 1);
    double worst = 0.0;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= k; ++j)
            for (int l = 1; l <= k; ++l) {
                const double res =
                    residual({i * step, j * step, l * step}, params);
                worst = std::max(worst, std::fabs(res));
            }
    return worst;
}

SolutionParams params_from_shapes(double p, double q, double r) {
    if (!(std::isfinite(p) && p > 0.0 && std::isfinite(q) && q > 0.0 &&
          std::isfinite(r) && r > 0.0))
        throw std::domain_error("params_from_shapes: p, q, r must be positive");
    SolutionParams out;
    out.alpha = p - 1.0;
    out.beta = q - 1.0;
    out.gamma = r;
    const double a1 = -log_beta(p + r, q + r);
    const double a2 = -log_beta(p, q + r);
    const double a3 = -log_beta(r, q);
    out.A = {a1, a2, a3, a1, a2, a3};
    return out;
}

}  // namespace betaflow
