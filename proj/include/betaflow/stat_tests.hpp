#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "betaflow/rng.hpp"

namespace betaflow {

/// Outcome of one named check. `pass` is p_value >= threshold when a
/// p-value is present (threshold then holds the level alpha), and
/// statistic <= threshold otherwise.
struct TestReport {
    std::string name;
    double statistic = 0.0;
    std::optional<double> p_value;
    double threshold = 0.0;
    std::vector<std::int64_t> n;  // sample size(s)
    std::uint64_t seed = 0;
    bool pass = false;
};

/// Aggregate report with pass iff statistic <= threshold.
TestReport threshold_report(std::string name, double statistic, double threshold,
                            std::vector<std::int64_t> n, std::uint64_t seed);

/// Seed-majority aggregate: statistic = number of failing seeds,
/// threshold = largest admissible failure count.
TestReport majority_report(std::string name, const std::vector<bool>& seed_passed,
                           int min_pass, std::int64_t per_seed_n,
                           std::uint64_t base_seed);

/// Survival function of the Kolmogorov distribution,
/// Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2), 100 terms.
double kolmogorov_sf(double lambda);

/// Sup-distance between the empirical CDF of `sample` and `cdf`.
double ks_statistic_one(const Eigen::ArrayXd& sample,
                        const std::function<double(double)>& cdf);

/// Sup-distance between two empirical CDFs (tie-aware; symmetric).
double ks_statistic_two(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b);

/// One-sample Kolmogorov-Smirnov test against a non-decreasing CDF, with
/// the asymptotic p-value at lambda = sqrt(n) * D.
TestReport ks_one_sample(std::string name, const Eigen::ArrayXd& sample,
                         const std::function<double(double)>& cdf, double alpha,
                         std::uint64_t seed);

/// Two-sample Kolmogorov-Smirnov test with effective size nm/(n+m).
TestReport ks_two_sample(std::string name, const Eigen::ArrayXd& a,
                         const Eigen::ArrayXd& b, double alpha, std::uint64_t seed);

/// Distance-covariance permutation test of independence (biased V-statistic
/// on double-centered distance matrices). Inputs longer than `max_points`
/// are subsampled without replacement using `rng`; the permutation p-value
/// is (1 + #{perm stat >= observed}) / (n_perm + 1).
TestReport dcov_perm_test(std::string name, const Eigen::ArrayXd& x,
                          const Eigen::ArrayXd& y, int n_perm, RngStream& rng,
                          double alpha, int max_points = 2000);

/// Binned three-way independence test: per-axis empirical quantile bins,
/// expected counts from the product of observed marginals,
/// df = bins^3 - 3(bins-1) - 1, p-value from the chi-square tail.
TestReport chi2_indep_grid(std::string name,
                           const Eigen::Array<double, Eigen::Dynamic, 3>& points,
                           int bins, double alpha, std::uint64_t seed);

}  // namespace betaflow
