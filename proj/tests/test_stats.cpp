#include <doctest.h>

#include <cmath>
#include <vector>

#include "hypdla/rng.hpp"
#include "hypdla/stats.hpp"

using namespace hypdla;

TEST_CASE("gamma_q against table values") {
    // chi-square critical points: sf(x, k) = 0.05
    CHECK(stats::chi_square_sf(3.841458821, 1) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(stats::chi_square_sf(18.30703805, 10) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(stats::chi_square_sf(24.99579014, 15) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(stats::chi_square_sf(0.0, 5) == 1.0);
    // monotone decreasing in the statistic
    double prev = 1.0;
    for (double x = 0.5; x < 40.0; x += 0.5) {
        const double v = stats::chi_square_sf(x, 8);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("kolmogorov tail against table values") {
    CHECK(stats::kolmogorov_sf(1.22385) == doctest::Approx(0.10).epsilon(1e-3));
    CHECK(stats::kolmogorov_sf(1.35810) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(stats::kolmogorov_sf(1.62762) == doctest::Approx(0.01).epsilon(1e-3));
    CHECK(stats::kolmogorov_sf(0.0) == 1.0);
}

TEST_CASE("chi-square flags a skewed histogram and accepts a uniform one") {
    RandomStream rng(3, 0);
    std::vector<long> uniform(16, 0), skewed(16, 0);
    for (int i = 0; i < 32000; ++i) {
        ++uniform[rng.index(16)];
        ++skewed[rng.u01() < 0.3 ? 0 : rng.index(16)];
    }
    CHECK(stats::chi_square_uniform_pvalue(uniform) > 1e-3);
    CHECK(stats::chi_square_uniform_pvalue(skewed) < 1e-6);
}

TEST_CASE("one-sample ks accepts its own distribution and rejects a wrong one") {
    RandomStream rng(4, 0);
    std::vector<double> exp1;
    for (int i = 0; i < 20000; ++i) exp1.push_back(rng.exponential(1.0));
    const auto cdf_exp1 = [](double x) { return 1.0 - std::exp(-x); };
    const auto cdf_exp2 = [](double x) { return 1.0 - std::exp(-0.5 * x); };
    CHECK(stats::ks_test(exp1, cdf_exp1).pvalue > 1e-3);
    CHECK(stats::ks_test(exp1, cdf_exp2).pvalue < 1e-9);
}

TEST_CASE("two-sample ks") {
    RandomStream rng(6, 0);
    std::vector<double> a, b, c;
    for (int i = 0; i < 10000; ++i) {
        a.push_back(rng.u01());
        b.push_back(rng.u01());
        c.push_back(rng.u01() * 1.08);
    }
    CHECK(stats::ks_test_2sample(a, b).pvalue > 1e-3);
    CHECK(stats::ks_test_2sample(a, c).pvalue < 1e-6);
}

TEST_CASE("ols slope recovers a line") {
    RandomStream rng(8, 0);
    std::vector<double> xs, ys;
    for (int i = 0; i < 4000; ++i) {
        const double x = rng.uniform(0.0, 10.0);
        xs.push_back(x);
        ys.push_back(3.0 + 2.0 * x + rng.uniform(-1.0, 1.0));
    }
    const auto fit = stats::ols_fit(xs, ys);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.02));
    CHECK(fit.intercept == doctest::Approx(3.0).epsilon(0.05));
    CHECK(fit.t_slope > 50.0);
}

TEST_CASE("binomial stderr") {
    CHECK(stats::binomial_stderr(0.5, 100) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(stats::binomial_stderr(0.0, 10) == 0.0);
}
