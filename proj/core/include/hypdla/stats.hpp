#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hypdla::stats {

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // unbiased

/// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

/// Upper tail of the chi-square distribution with dof degrees of freedom.
double chi_square_sf(double stat, int dof);

/// Pearson chi-square p-value for observed counts against uniform expectation.
double chi_square_uniform_pvalue(std::span<const long> counts);

/// Kolmogorov distribution tail Q_KS(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_sf(double lambda);

struct KsResult {
    double d = 0.0;
    double pvalue = 1.0;
};

/// One-sample KS against a cdf; data need not be sorted.
KsResult ks_test(std::vector<double> xs, const std::function<double(double)>& cdf);

/// Two-sample KS.
KsResult ks_test_2sample(std::vector<double> xs, std::vector<double> ys);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double t_slope = 0.0;
};

LineFit ols_fit(std::span<const double> xs, std::span<const double> ys);

/// Standard error of a binomial proportion p_hat over n trials.
double binomial_stderr(double p_hat, long n);

}  // namespace hypdla::stats
