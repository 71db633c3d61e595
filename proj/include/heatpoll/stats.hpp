#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "heatpoll/linalg.hpp"

namespace heatpoll::stats {

struct RankDeficient : std::runtime_error {
    explicit RankDeficient(const std::string& column)
        : std::runtime_error("design matrix is rank deficient; first collinear column: " + column),
          column(column) {}
    std::string column;
};
struct TooFewRows : std::runtime_error {
    TooFewRows(std::size_t rows, std::size_t cols)
        : std::runtime_error("need more rows (" + std::to_string(rows) + ") than columns (" +
                             std::to_string(cols) + ")") {}
};
struct InvalidDf : std::runtime_error {
    explicit InvalidDf(double df) : std::runtime_error("invalid degrees of freedom: " +
                                                       std::to_string(df)) {}
};

struct RegressionResult {
    std::vector<std::string> names;
    std::vector<double> estimates;
    std::vector<double> std_errors;
    std::vector<double> statistics; // t or z, depending on use_z
    std::vector<double> p_values;
    Matrix covariance;
    double r_squared = 0.0;
    std::size_t n_obs = 0;
    double df_resid = 0.0;
    bool use_z = false;
    std::string model; // "OLS", "FE", "RE-GLS", "CRE"
    bool variance_clamped = false; // sigma_u^2 estimate was negative, clamped to 0

    std::optional<std::size_t> index_of(const std::string& name) const;
};

// Upper-tail probabilities, absolute error <= 1e-10 for the df used here.
double student_t_sf(double t, double df);
double chi2_sf(double x, double df);
// Regularized incomplete beta / upper gamma, exposed for the tests.
double reg_inc_beta(double a, double b, double x);
double reg_upper_gamma(double a, double x);

// Classical OLS: beta through Householder QR, sigma^2 (X'X)^-1 covariance,
// two-sided t-based p-values with n - k residual df.
RegressionResult ols_fit(const Matrix& X, const std::vector<double>& y,
                         const std::vector<std::string>& names, bool add_intercept);

struct TrendFit {
    double slope = 0.0;
    double std_error = 0.0;
    double p_value = 0.0;
};
// Slope of value ~ intercept + t.
TrendFit trend_slope(const std::vector<std::pair<double, double>>& series);

struct PanelDataset {
    std::vector<std::int64_t> entity; // entity id per row
    std::vector<double> time;
    std::vector<double> response;
    Matrix regressors; // n x k, no intercept column
    std::vector<std::string> names;

    void validate() const; // sizes, (entity, time) uniqueness
    bool balanced() const;
};

struct PanelOptions {
    // Test hook: forces the quasi-demeaning factor for every entity.
    std::optional<double> theta_override;
};

// Within (fixed effects) estimator over the time-varying regressors.
RegressionResult fe_fit(const PanelDataset& panel);

// Random-effects GLS with Swamy-Arora variance components and per-entity
// quasi-demeaning theta_i = 1 - sqrt(s2_e / (s2_e + T_i s2_u)).
RegressionResult re_fit(const PanelDataset& panel, const PanelOptions& options = {});

// Correlated random effects: the panel augmented with per-entity means of
// every time-varying regressor (suffix "_mean"), then RE-GLS.
RegressionResult cre_fit(const PanelDataset& panel, const PanelOptions& options = {});

struct HausmanResult {
    double statistic = 0.0;
    std::size_t df = 0;
    double p_value = 1.0;
    bool pseudo_inverse_used = false; // V_fe - V_re was not positive definite
};

// H = d' (V_fe - V_re)^+ d over the named common coefficients.
HausmanResult hausman_test(const RegressionResult& fe, const RegressionResult& re,
                           const std::vector<std::string>& common_coefs);

// Significance stars at the thresholds used in the result tables.
std::string significance_stars(double p);

// Fixed-width human-readable coefficient table.
std::string format_result_table(const RegressionResult& result, const std::string& title);

} // namespace heatpoll::stats
