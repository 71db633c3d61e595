#include <doctest.h>

#include <cmath>
#include <random>

#include "heatpoll/stats.hpp"

using namespace heatpoll::stats;

namespace {

Matrix column(const std::vector<double>& v) {
    Matrix m(v.size(), 1, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

} // namespace

TEST_CASE("exact linear data is recovered exactly") {
    std::vector<double> x(10), y(10);
    for (int i = 0; i < 10; ++i) {
        x[i] = i;
        y[i] = 3.0 + 2.0 * i;
    }
    const RegressionResult r = ols_fit(column(x), y, {"x"}, true);
    CHECK(std::abs(r.estimates[0] - 3.0) < 1e-9);
    CHECK(std::abs(r.estimates[1] - 2.0) < 1e-9);
    CHECK(r.std_errors[0] < 1e-9);
    CHECK(r.std_errors[1] < 1e-9);
    CHECK(std::abs(r.r_squared - 1.0) < 1e-9);
}

TEST_CASE("intercept-only fit returns the mean with zero R^2") {
    const std::vector<double> y = {4.0, 4.0, 4.0, 4.0};
    const RegressionResult r = ols_fit(Matrix(4, 0, 0.0), y, {}, true);
    CHECK(r.estimates[0] == doctest::Approx(4.0));
    CHECK(r.r_squared == 0.0);
}

TEST_CASE("a duplicated column is rank deficient and names the culprit") {
    std::vector<double> y = {1, 2, 3, 4, 5};
    Matrix X(5, 2, 0.0);
    for (int i = 0; i < 5; ++i) {
        X(i, 0) = i;
        X(i, 1) = i;
    }
    try {
        ols_fit(X, y, {"a", "b"}, true);
        FAIL("expected RankDeficient");
    } catch (const RankDeficient& e) {
        CHECK((e.column == "a" || e.column == "b"));
    }
}

TEST_CASE("more columns than rows is rejected") {
    Matrix X(2, 3, 1.0);
    CHECK_THROWS_AS(ols_fit(X, {1.0, 2.0}, {"a", "b", "c"}, false), TooFewRows);
}

TEST_CASE("residuals are orthogonal to the design") {
    std::mt19937 gen(11);
    std::normal_distribution<double> noise(0.0, 1.0);
    const std::size_t n = 200;
    Matrix X(n, 3, 0.0);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        X(i, 0) = noise(gen);
        X(i, 1) = noise(gen) * 10.0;
        X(i, 2) = noise(gen) + 5.0;
        y[i] = 1.0 + 0.5 * X(i, 0) - 2.0 * X(i, 1) + 0.1 * X(i, 2) + noise(gen);
    }
    const RegressionResult r = ols_fit(X, y, {"a", "b", "c"}, true);

    // recompute residuals and the cross products against every column
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(y[i]));
    for (std::size_t j = 0; j < 3; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double fitted = r.estimates[0];
            for (std::size_t c = 0; c < 3; ++c) fitted += r.estimates[c + 1] * X(i, c);
            dot += (y[i] - fitted) * X(i, j);
        }
        CHECK(std::abs(dot) <= 1e-8 * scale * n);
    }
}

TEST_CASE("column rescaling scales coefficients inversely and keeps fit") {
    std::mt19937 gen(13);
    std::normal_distribution<double> noise(0.0, 1.0);
    const std::size_t n = 60;
    Matrix X(n, 2, 0.0);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        X(i, 0) = noise(gen);
        X(i, 1) = noise(gen);
        y[i] = 2.0 - X(i, 0) + 3.0 * X(i, 1) + 0.5 * noise(gen);
    }
    const RegressionResult base = ols_fit(X, y, {"a", "b"}, true);

    Matrix scaled = X;
    for (std::size_t i = 0; i < n; ++i) scaled(i, 0) *= 100.0;
    const RegressionResult re = ols_fit(scaled, y, {"a", "b"}, true);

    CHECK(re.estimates[1] == doctest::Approx(base.estimates[1] / 100.0).epsilon(1e-9));
    CHECK(re.estimates[2] == doctest::Approx(base.estimates[2]).epsilon(1e-9));
    CHECK(re.r_squared == doctest::Approx(base.r_squared).epsilon(1e-12));
    // t statistics are scale-invariant
    CHECK(re.statistics[1] == doctest::Approx(base.statistics[1]).epsilon(1e-9));
}

TEST_CASE("standard errors match the closed form for simple regression") {
    // y on x with known sums lets the classical SE be written directly
    std::vector<double> x = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<double> y = {1.1, 2.9, 5.2, 6.8, 9.1, 10.8, 13.2, 14.9, 17.1, 18.8};
    const RegressionResult r = ols_fit(column(x), y, {"x"}, true);

    const std::size_t n = x.size();
    double xbar = 0.0, ybar = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xbar += x[i];
        ybar += y[i];
    }
    xbar /= n;
    ybar /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - xbar) * (x[i] - xbar);
        sxy += (x[i] - xbar) * (y[i] - ybar);
    }
    const double slope = sxy / sxx;
    const double intercept = ybar - slope * xbar;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - intercept - slope * x[i];
        ssr += e * e;
    }
    const double sigma2 = ssr / (n - 2);
    CHECK(r.estimates[1] == doctest::Approx(slope).epsilon(1e-12));
    CHECK(r.std_errors[1] == doctest::Approx(std::sqrt(sigma2 / sxx)).epsilon(1e-10));
}

TEST_CASE("trend slope on a clean ramp") {
    std::vector<std::pair<double, double>> series;
    for (int t = 0; t < 4; ++t) series.emplace_back(t, 1.0 + t);
    const TrendFit fit = trend_slope(series);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.p_value < 0.001);

    std::vector<std::pair<double, double>> flat;
    for (int t = 0; t < 5; ++t) flat.emplace_back(t, 2.5);
    CHECK(trend_slope(flat).slope == doctest::Approx(0.0));

    CHECK_THROWS_AS(trend_slope({{0.0, 1.0}, {1.0, 2.0}}), TooFewRows);
}

TEST_CASE("trend slope equals the closed-form deviation formula") {
    std::vector<std::pair<double, double>> series = {
        {0, 3.4}, {1, 3.1}, {2, 3.6}, {3, 3.3}, {4, 3.9}, {5, 3.7}, {6, 4.2}};
    double tbar = 0.0, vbar = 0.0;
    for (const auto& [t, v] : series) {
        tbar += t;
        vbar += v;
    }
    tbar /= series.size();
    vbar /= series.size();
    double num = 0.0, den = 0.0;
    for (const auto& [t, v] : series) {
        num += (t - tbar) * (v - vbar);
        den += (t - tbar) * (t - tbar);
    }
    const TrendFit fit = trend_slope(series);
    CHECK(fit.slope == doctest::Approx(num / den).epsilon(1e-12));
}
