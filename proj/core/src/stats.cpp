#include "hypdla/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hypdla::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("variance: need at least two values");
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

namespace {

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a, x), valid for x > a + 1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("gamma_q: requires a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_sf(double stat, int dof) {
    if (dof <= 0) throw std::invalid_argument("chi_square_sf: dof must be positive");
    return gamma_q(0.5 * dof, 0.5 * stat);
}

double chi_square_uniform_pvalue(std::span<const long> counts) {
    if (counts.size() < 2) throw std::invalid_argument("chi_square_uniform_pvalue: need >= 2 bins");
    double total = 0.0;
    for (long c : counts) total += static_cast<double>(c);
    if (total <= 0.0) return 1.0;
    const double expected = total / static_cast<double>(counts.size());
    double stat = 0.0;
    for (long c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return chi_square_sf(stat, static_cast<int>(counts.size()) - 1);
}

double kolmogorov_sf(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> xs, const std::function<double(double)>& cdf) {
    if (xs.empty()) throw std::invalid_argument("ks_test: empty sample");
    std::sort(xs.begin(), xs.end());
    const auto n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    const double sn = std::sqrt(n);
    return {d, kolmogorov_sf((sn + 0.12 + 0.11 / sn) * d)};
}

KsResult ks_test_2sample(std::vector<double> xs, std::vector<double> ys) {
    if (xs.empty() || ys.empty()) throw std::invalid_argument("ks_test_2sample: empty sample");
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    const auto n = static_cast<double>(xs.size());
    const auto m = static_cast<double>(ys.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < xs.size() && j < ys.size()) {
        const double v = std::min(xs[i], ys[j]);
        while (i < xs.size() && xs[i] <= v) ++i;
        while (j < ys.size() && ys[j] <= v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    const double ne = std::sqrt(n * m / (n + m));
    return {d, kolmogorov_sf((ne + 0.12 + 0.11 / ne) * d)};
}

LineFit ols_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 3)
        throw std::invalid_argument("ols_fit: need matched samples of size >= 3");
    const auto n = static_cast<double>(xs.size());
    const double mx = mean(xs), my = mean(ys);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("ols_fit: degenerate regressor");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - fit.intercept - fit.slope * xs[i];
        sse += r * r;
    }
    fit.slope_stderr = std::sqrt(sse / (n - 2.0) / sxx);
    fit.t_slope = fit.slope_stderr > 0.0
                      ? fit.slope / fit.slope_stderr
                      : std::numeric_limits<double>::infinity() * (fit.slope >= 0 ? 1.0 : -1.0);
    return fit;
}

double binomial_stderr(double p_hat, long n) {
    if (n <= 0) throw std::invalid_argument("binomial_stderr: n must be positive");
    return std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / static_cast<double>(n));
}

}  // namespace hypdla::stats
