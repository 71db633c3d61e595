#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "heatpoll/stats.hpp"

using namespace heatpoll::stats;

namespace {

// Balanced synthetic panel with controllable entity effects. The
// regressors: one time-varying x (correlated with the entity effect when
// asked), one time-invariant dummy d.
PanelDataset make_panel(std::size_t n_entities, std::size_t periods, double sigma_u,
                        double beta_x, double beta_d, std::uint32_t seed,
                        bool correlate_effect_with_x, bool demean_noise_within = false) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> std_normal(0.0, 1.0);

    PanelDataset panel;
    const std::size_t n = n_entities * periods;
    panel.regressors = Matrix(n, 2, 0.0);
    panel.names = {"x", "d"};

    std::vector<double> noise(n);
    std::size_t row = 0;
    for (std::size_t e = 0; e < n_entities; ++e) {
        const double dummy = e % 2 == 0 ? 1.0 : 0.0;
        const double base_x = std_normal(gen);
        const double effect =
            sigma_u * (correlate_effect_with_x ? 0.8 * base_x + 0.6 * std_normal(gen)
                                               : std_normal(gen));
        const std::size_t first = row;
        for (std::size_t t = 0; t < periods; ++t) {
            panel.entity.push_back(static_cast<std::int64_t>(e));
            panel.time.push_back(static_cast<double>(t));
            const double x = base_x + std_normal(gen);
            panel.regressors(row, 0) = x;
            panel.regressors(row, 1) = dummy;
            noise[row] = std_normal(gen);
            panel.response.push_back(1.5 + beta_x * x + beta_d * dummy + effect);
            ++row;
        }
        if (demean_noise_within) {
            double mean = 0.0;
            for (std::size_t i = first; i < row; ++i) mean += noise[i];
            mean /= static_cast<double>(periods);
            for (std::size_t i = first; i < row; ++i) noise[i] -= mean;
        }
    }
    for (std::size_t i = 0; i < n; ++i) panel.response[i] += noise[i];
    return panel;
}

} // namespace

TEST_CASE("panel validation catches duplicates and size mismatches") {
    PanelDataset p;
    p.entity = {1, 1};
    p.time = {0.0, 0.0};
    p.response = {1.0, 2.0};
    p.regressors = Matrix(2, 1, 1.0);
    p.names = {"x"};
    CHECK_THROWS(p.validate());
    p.time = {0.0, 1.0};
    CHECK_NOTHROW(p.validate());
    p.response.pop_back();
    CHECK_THROWS(p.validate());
}

TEST_CASE("fixed effects recovers the within slope and drops invariants") {
    const PanelDataset panel = make_panel(40, 6, 2.0, 1.7, 5.0, 101, true);
    const RegressionResult fe = fe_fit(panel);
    REQUIRE(fe.names.size() == 1);
    CHECK(fe.names[0] == "x");
    CHECK(std::abs(fe.estimates[0] - 1.7) < 5.0 * fe.std_errors[0]);
    CHECK(fe.model == "FE");
}

TEST_CASE("zero entity variance collapses CRE to pooled OLS") {
    // noise demeaned within entities: the between regression fits the
    // entity means exactly, so the variance component clamps at zero
    const PanelDataset panel = make_panel(25, 5, 0.0, 1.2, 3.0, 202, false, true);
    const RegressionResult cre = cre_fit(panel);
    CHECK(cre.variance_clamped);

    // pooled OLS on the same augmented design
    const std::size_t n = panel.entity.size();
    Matrix X(n, 3, 0.0);
    std::map<std::int64_t, std::pair<double, std::size_t>> sums;
    for (std::size_t i = 0; i < n; ++i) {
        sums[panel.entity[i]].first += panel.regressors(i, 0);
        sums[panel.entity[i]].second += 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        X(i, 0) = panel.regressors(i, 0);
        X(i, 1) = panel.regressors(i, 1);
        const auto& [sum, count] = sums[panel.entity[i]];
        X(i, 2) = sum / static_cast<double>(count);
    }
    const RegressionResult pooled = ols_fit(X, panel.response, {"x", "d", "x_mean"}, true);

    REQUIRE(cre.names.size() == pooled.names.size());
    for (std::size_t i = 0; i < cre.names.size(); ++i) {
        CHECK(cre.names[i] == pooled.names[i]);
        CHECK(std::abs(cre.estimates[i] - pooled.estimates[i]) < 1e-6);
    }
}

TEST_CASE("Mundlak augmentation reproduces the within estimator") {
    // entity effects correlated with x-bar make plain RE inconsistent; the
    // CRE coefficient on x must agree with the within estimate
    const PanelDataset panel = make_panel(30, 5, 3.0, 2.2, 4.0, 303, true);
    const RegressionResult fe = fe_fit(panel);
    const RegressionResult cre = cre_fit(panel);
    const auto cre_x = cre.index_of("x");
    const auto fe_x = fe.index_of("x");
    REQUIRE(cre_x);
    REQUIRE(fe_x);
    CHECK(std::abs(cre.estimates[*cre_x] - fe.estimates[*fe_x]) < 1e-6);
}

TEST_CASE("theta overrides span pooled OLS and the within estimator") {
    const PanelDataset panel = make_panel(20, 4, 1.0, 0.8, 2.0, 404, true);

    PanelOptions pooled_opts;
    pooled_opts.theta_override = 0.0;
    const RegressionResult re0 = re_fit(panel, pooled_opts);
    const std::size_t n = panel.entity.size();
    Matrix X(n, 2, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        X(i, 0) = panel.regressors(i, 0);
        X(i, 1) = panel.regressors(i, 1);
    }
    const RegressionResult pooled = ols_fit(X, panel.response, {"x", "d"}, true);
    for (std::size_t i = 0; i < re0.names.size(); ++i) {
        CHECK(std::abs(re0.estimates[i] - pooled.estimates[i]) < 1e-10);
    }

    PanelOptions within_opts;
    within_opts.theta_override = 1.0;
    const RegressionResult re1 = re_fit(panel, within_opts);
    const RegressionResult fe = fe_fit(panel);
    const auto re1_x = re1.index_of("x");
    REQUIRE(re1_x);
    CHECK(std::abs(re1.estimates[*re1_x] - fe.estimates[0]) < 1e-10);
    // the intercept and the invariant dummy are gone at theta = 1
    CHECK_FALSE(re1.index_of("(intercept)").has_value());
    CHECK_FALSE(re1.index_of("d").has_value());
}

TEST_CASE("CRE recovers a known time-invariant effect across replications") {
    int within_3se = 0;
    for (std::uint32_t seed = 1; seed <= 100; ++seed) {
        const PanelDataset panel = make_panel(30, 5, 1.0, 1.0, 5.0, seed, false);
        const RegressionResult cre = cre_fit(panel);
        const auto d = cre.index_of("d");
        REQUIRE(d);
        if (std::abs(cre.estimates[*d] - 5.0) <= 3.0 * cre.std_errors[*d]) ++within_3se;
    }
    CHECK(within_3se >= 95);
}

TEST_CASE("hausman test degenerates correctly") {
    const PanelDataset panel = make_panel(25, 5, 2.0, 1.5, 3.0, 505, true);
    const RegressionResult fe = fe_fit(panel);

    // identical results: H = 0, p = 1
    const HausmanResult same = hausman_test(fe, fe, {"x"});
    CHECK(same.statistic == 0.0);
    CHECK(same.p_value == 1.0);

    CHECK_THROWS(hausman_test(fe, fe, {"nope"}));
    CHECK_THROWS(hausman_test(fe, fe, {}));
}

TEST_CASE("one-dimensional hausman case with known chi-square tail") {
    RegressionResult fe;
    fe.names = {"x"};
    fe.estimates = {3.0};
    fe.std_errors = {std::sqrt(2.0)};
    fe.covariance = Matrix(1, 1, 0.0);
    fe.covariance(0, 0) = 2.0;

    RegressionResult re;
    re.names = {"x"};
    re.estimates = {1.0};
    re.std_errors = {1.0};
    re.covariance = Matrix(1, 1, 0.0);
    re.covariance(0, 0) = 1.0;

    // diff 2, var diff 1: H = 4, df 1, p = chi2_sf(4, 1)
    const HausmanResult h = hausman_test(fe, re, {"x"});
    CHECK(h.statistic == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(h.df == 1);
    CHECK(std::abs(h.p_value - 0.045500263896358414) < 1e-10);
    CHECK_FALSE(h.pseudo_inverse_used);
}

TEST_CASE("non positive definite covariance difference flags the pseudo-inverse") {
    RegressionResult fe;
    fe.names = {"x"};
    fe.estimates = {1.0};
    fe.std_errors = {1.0};
    fe.covariance = Matrix(1, 1, 0.0);
    fe.covariance(0, 0) = 1.0;

    RegressionResult re;
    re.names = {"x"};
    re.estimates = {0.5};
    re.std_errors = {2.0};
    re.covariance = Matrix(1, 1, 0.0);
    re.covariance(0, 0) = 4.0; // larger than the FE variance

    const HausmanResult h = hausman_test(fe, re, {"x"});
    CHECK(h.pseudo_inverse_used);
    CHECK(h.p_value == 1.0); // difference matrix has no positive direction
}

TEST_CASE("hausman rejects RE when effects correlate with x") {
    const PanelDataset panel = make_panel(60, 8, 1.0, 2.0, 1.0, 606, true);
    const RegressionResult fe = fe_fit(panel);
    const RegressionResult re = re_fit(panel);
    const HausmanResult h = hausman_test(fe, re, {"x"});
    CHECK(h.p_value < 0.05);
}
