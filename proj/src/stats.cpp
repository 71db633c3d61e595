#include "heatpoll/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace heatpoll::stats {

std::optional<std::size_t> RegressionResult::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return i;
    }
    return std::nullopt;
}

namespace {

// Two-sided p-value for an estimate/SE pair. Exact fits produce SE = 0;
// the p-value then degenerates to 0 (nonzero estimate) or 1.
void fill_inference(RegressionResult& r) {
    const std::size_t k = r.estimates.size();
    r.statistics.resize(k);
    r.p_values.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double se = r.std_errors[i];
        if (se > 0.0) {
            r.statistics[i] = r.estimates[i] / se;
        } else {
            r.statistics[i] = r.estimates[i] == 0.0
                                  ? 0.0
                                  : std::numeric_limits<double>::infinity() *
                                        (r.estimates[i] > 0 ? 1.0 : -1.0);
        }
        const double abs_stat = std::abs(r.statistics[i]);
        if (r.use_z) {
            r.p_values[i] = std::erfc(abs_stat / std::sqrt(2.0));
        } else {
            r.p_values[i] = 2.0 * student_t_sf(abs_stat, r.df_resid);
        }
    }
}

RegressionResult finish_ols(const Matrix& X, const std::vector<double>& y,
                            const std::vector<std::string>& names, const LeastSquares& ls,
                            bool centered_r2) {
    const std::size_t n = X.rows();
    const std::size_t k = X.cols();
    RegressionResult r;
    r.names = names;
    r.estimates = ls.beta;
    r.n_obs = n;
    r.df_resid = static_cast<double>(n) - static_cast<double>(k);
    r.model = "OLS";

    const double sigma2 = r.df_resid > 0 ? ls.ssr / r.df_resid : 0.0;
    r.covariance = Matrix(k, k, 0.0);
    r.std_errors.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            r.covariance(i, j) = sigma2 * ls.xtx_inverse(i, j);
        }
        r.std_errors[i] = std::sqrt(std::max(0.0, r.covariance(i, i)));
    }

    double sst = 0.0;
    if (centered_r2) {
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= static_cast<double>(n);
        for (double v : y) sst += (v - mean) * (v - mean);
    } else {
        for (double v : y) sst += v * v;
    }
    r.r_squared = sst > 0.0 ? 1.0 - ls.ssr / sst : 0.0;
    fill_inference(r);
    return r;
}

} // namespace

RegressionResult ols_fit(const Matrix& X, const std::vector<double>& y,
                         const std::vector<std::string>& names, bool add_intercept) {
    if (names.size() != X.cols()) throw std::invalid_argument("names do not match X columns");

    Matrix design = X;
    std::vector<std::string> design_names = names;
    if (add_intercept) {
        Matrix with_icpt(X.rows(), X.cols() + 1, 0.0);
        for (std::size_t i = 0; i < X.rows(); ++i) {
            with_icpt(i, 0) = 1.0;
            for (std::size_t j = 0; j < X.cols(); ++j) with_icpt(i, j + 1) = X(i, j);
        }
        design = std::move(with_icpt);
        design_names.insert(design_names.begin(), "(intercept)");
    }
    if (design.rows() <= design.cols()) throw TooFewRows(design.rows(), design.cols());

    const LeastSquares ls = qr_least_squares(design, y);
    if (!ls.dropped.empty()) throw RankDeficient(design_names[ls.dropped.front()]);
    return finish_ols(design, y, design_names, ls, add_intercept);
}

TrendFit trend_slope(const std::vector<std::pair<double, double>>& series) {
    if (series.size() < 3) throw TooFewRows(series.size(), 2);
    Matrix X(series.size(), 1, 0.0);
    std::vector<double> y(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        X(i, 0) = series[i].first;
        y[i] = series[i].second;
    }
    const RegressionResult fit = ols_fit(X, y, {"t"}, true);
    return TrendFit{fit.estimates[1], fit.std_errors[1], fit.p_values[1]};
}

void PanelDataset::validate() const {
    const std::size_t n = entity.size();
    if (time.size() != n || response.size() != n || regressors.rows() != n) {
        throw std::invalid_argument("panel columns have mismatched lengths");
    }
    if (names.size() != regressors.cols()) {
        throw std::invalid_argument("panel regressor names do not match columns");
    }
    std::set<std::pair<std::int64_t, double>> keys;
    for (std::size_t i = 0; i < n; ++i) {
        if (!keys.emplace(entity[i], time[i]).second) {
            throw std::invalid_argument("duplicate (entity, time) pair in panel");
        }
    }
}

bool PanelDataset::balanced() const {
    std::map<std::int64_t, std::size_t> counts;
    for (std::int64_t e : entity) ++counts[e];
    std::size_t t0 = counts.empty() ? 0 : counts.begin()->second;
    for (const auto& [_, c] : counts) {
        if (c != t0) return false;
    }
    return true;
}

namespace {

struct PanelGroups {
    std::map<std::int64_t, std::vector<std::size_t>> rows;
    std::size_t n_entities() const { return rows.size(); }
};

PanelGroups group_rows(const PanelDataset& panel) {
    PanelGroups g;
    for (std::size_t i = 0; i < panel.entity.size(); ++i) g.rows[panel.entity[i]].push_back(i);
    for (const auto& [e, rows] : g.rows) {
        if (rows.size() < 1) throw std::invalid_argument("empty entity group");
    }
    if (g.rows.size() < 2) throw std::invalid_argument("panel needs at least 2 entities");
    bool any_multi = false;
    for (const auto& [_, rows] : g.rows) any_multi = any_multi || rows.size() >= 2;
    if (!any_multi) throw std::invalid_argument("panel needs >= 2 periods for some entity");
    return g;
}

struct EntityMeans {
    std::map<std::int64_t, double> y_mean;
    std::map<std::int64_t, std::vector<double>> x_mean;
};

EntityMeans entity_means(const PanelDataset& panel, const PanelGroups& groups) {
    EntityMeans m;
    const std::size_t k = panel.regressors.cols();
    for (const auto& [e, rows] : groups.rows) {
        double ysum = 0.0;
        std::vector<double> xsum(k, 0.0);
        for (std::size_t i : rows) {
            ysum += panel.response[i];
            for (std::size_t j = 0; j < k; ++j) xsum[j] += panel.regressors(i, j);
        }
        const double t = static_cast<double>(rows.size());
        m.y_mean[e] = ysum / t;
        for (double& v : xsum) v /= t;
        m.x_mean[e] = std::move(xsum);
    }
    return m;
}

std::vector<bool> time_varying_flags(const PanelDataset& panel, const PanelGroups& groups,
                                     const EntityMeans& means) {
    const std::size_t k = panel.regressors.cols();
    std::vector<bool> varying(k, false);
    for (const auto& [e, rows] : groups.rows) {
        const std::vector<double>& xm = means.x_mean.at(e);
        for (std::size_t i : rows) {
            for (std::size_t j = 0; j < k; ++j) {
                if (std::abs(panel.regressors(i, j) - xm[j]) > 1e-9 * (1.0 + std::abs(xm[j]))) {
                    varying[j] = true;
                }
            }
        }
    }
    return varying;
}

struct WithinFit {
    LeastSquares ls;
    std::vector<std::size_t> varying_cols; // original column indices
    double sigma2_e = 0.0;
    double df = 0.0;
    double sst_within = 0.0;
};

WithinFit within_fit(const PanelDataset& panel, const PanelGroups& groups,
                     const EntityMeans& means, const std::vector<bool>& varying,
                     bool allow_no_varying = false) {
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < varying.size(); ++j) {
        if (varying[j]) cols.push_back(j);
    }
    if (cols.empty() && !allow_no_varying) {
        throw std::invalid_argument("panel has no time-varying regressors");
    }

    const std::size_t n = panel.entity.size();
    Matrix Xw(n, cols.size(), 0.0);
    std::vector<double> yw(n, 0.0);
    for (const auto& [e, rows] : groups.rows) {
        const std::vector<double>& xm = means.x_mean.at(e);
        const double ym = means.y_mean.at(e);
        for (std::size_t i : rows) {
            yw[i] = panel.response[i] - ym;
            for (std::size_t c = 0; c < cols.size(); ++c) {
                Xw(i, c) = panel.regressors(i, cols[c]) - xm[cols[c]];
            }
        }
    }

    WithinFit fit;
    fit.ls = qr_least_squares(Xw, yw);
    if (!fit.ls.dropped.empty()) {
        throw RankDeficient(panel.names[cols[fit.ls.dropped.front()]]);
    }
    fit.varying_cols = std::move(cols);
    fit.df = static_cast<double>(n) - static_cast<double>(groups.n_entities()) -
             static_cast<double>(fit.varying_cols.size());
    if (fit.df <= 0) throw TooFewRows(n, groups.n_entities() + fit.varying_cols.size());
    fit.sigma2_e = fit.ls.ssr / fit.df;
    for (double v : yw) fit.sst_within += v * v;
    return fit;
}

} // namespace

RegressionResult fe_fit(const PanelDataset& panel) {
    panel.validate();
    const PanelGroups groups = group_rows(panel);
    const EntityMeans means = entity_means(panel, groups);
    const std::vector<bool> varying = time_varying_flags(panel, groups, means);
    const WithinFit fit = within_fit(panel, groups, means, varying);

    RegressionResult r;
    for (std::size_t c : fit.varying_cols) r.names.push_back(panel.names[c]);
    const std::size_t k = fit.varying_cols.size();
    r.estimates.resize(k);
    for (std::size_t c = 0; c < k; ++c) r.estimates[c] = fit.ls.beta[c];
    r.covariance = Matrix(k, k, 0.0);
    r.std_errors.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            r.covariance(i, j) = fit.sigma2_e * fit.ls.xtx_inverse(i, j);
        }
        r.std_errors[i] = std::sqrt(std::max(0.0, r.covariance(i, i)));
    }
    r.n_obs = panel.entity.size();
    r.df_resid = fit.df;
    r.model = "FE";
    r.r_squared = fit.sst_within > 0.0 ? 1.0 - fit.ls.ssr / fit.sst_within : 0.0;
    fill_inference(r);
    return r;
}

RegressionResult re_fit(const PanelDataset& panel, const PanelOptions& options) {
    panel.validate();
    const PanelGroups groups = group_rows(panel);
    const EntityMeans means = entity_means(panel, groups);
    const std::vector<bool> varying = time_varying_flags(panel, groups, means);
    const std::size_t n = panel.entity.size();
    const std::size_t k = panel.regressors.cols();
    const std::size_t n_ent = groups.n_entities();

    // Swamy-Arora components: sigma2_e from the within regression,
    // sigma2_u from the between regression on entity means. A panel whose
    // regressors are all time-invariant still has a within residual for y.
    const WithinFit within = within_fit(panel, groups, means, varying, true);

    bool clamped = false;
    double sigma2_u = 0.0;
    {
        Matrix Xb(n_ent, k + 1, 0.0);
        std::vector<double> yb(n_ent, 0.0);
        std::size_t row = 0;
        for (const auto& [e, _] : groups.rows) {
            Xb(row, 0) = 1.0;
            const std::vector<double>& xm = means.x_mean.at(e);
            for (std::size_t j = 0; j < k; ++j) Xb(row, j + 1) = xm[j];
            yb[row] = means.y_mean.at(e);
            ++row;
        }
        // Collinear columns (e.g. Mundlak means duplicating their source
        // column at the entity level) are tolerated here; only the SSR and
        // effective rank matter.
        const LeastSquares between = qr_least_squares(Xb, yb);
        const double df_between = static_cast<double>(n_ent) - static_cast<double>(between.rank);
        double harmonic_t = 0.0;
        for (const auto& [_, rows] : groups.rows) {
            harmonic_t += 1.0 / static_cast<double>(rows.size());
        }
        harmonic_t = static_cast<double>(n_ent) / harmonic_t;
        if (df_between > 0) {
            const double s2_between = between.ssr / df_between;
            sigma2_u = s2_between - within.sigma2_e / harmonic_t;
        }
        if (sigma2_u < 0.0) {
            sigma2_u = 0.0;
            clamped = true;
        }
    }

    // Quasi-demeaning factor per entity.
    std::map<std::int64_t, double> theta;
    for (const auto& [e, rows] : groups.rows) {
        if (options.theta_override) {
            theta[e] = *options.theta_override;
        } else {
            const double denom = within.sigma2_e + static_cast<double>(rows.size()) * sigma2_u;
            theta[e] = denom > 0.0 ? 1.0 - std::sqrt(within.sigma2_e / denom) : 0.0;
        }
    }

    Matrix Xt(n, k + 1, 0.0);
    std::vector<double> yt(n, 0.0);
    for (const auto& [e, rows] : groups.rows) {
        const double th = theta.at(e);
        const std::vector<double>& xm = means.x_mean.at(e);
        const double ym = means.y_mean.at(e);
        for (std::size_t i : rows) {
            Xt(i, 0) = 1.0 - th;
            for (std::size_t j = 0; j < k; ++j) {
                // for a time-invariant column x == x_mean, so the quasi-
                // demeaned value is (1 - theta) x exactly; recomputing the
                // mean would leave rounding residue that matters at theta 1
                Xt(i, j + 1) = varying[j] ? panel.regressors(i, j) - th * xm[j]
                                          : (1.0 - th) * panel.regressors(i, j);
            }
            yt[i] = panel.response[i] - th * ym;
        }
    }
    std::vector<std::string> names{"(intercept)"};
    names.insert(names.end(), panel.names.begin(), panel.names.end());

    // theta == 1 zeroes the intercept and every time-invariant column
    // (the within transform); those columns are dropped, not an error.
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < k + 1; ++j) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm2 += Xt(i, j) * Xt(i, j);
        if (norm2 > 0.0) kept.push_back(j);
    }
    Matrix Xk(n, kept.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < kept.size(); ++c) Xk(i, c) = Xt(i, kept[c]);
    }
    std::vector<std::string> kept_names;
    for (std::size_t c : kept) kept_names.push_back(names[c]);

    if (Xk.rows() <= Xk.cols()) throw TooFewRows(Xk.rows(), Xk.cols());
    const LeastSquares ls = qr_least_squares(Xk, yt);
    if (!ls.dropped.empty()) throw RankDeficient(kept_names[ls.dropped.front()]);

    RegressionResult r;
    r.names = std::move(kept_names);
    r.estimates = ls.beta;
    r.n_obs = n;
    r.df_resid = static_cast<double>(n) - static_cast<double>(Xk.cols());
    const double s2 = ls.ssr / r.df_resid;
    const std::size_t kk = Xk.cols();
    r.covariance = Matrix(kk, kk, 0.0);
    r.std_errors.resize(kk);
    for (std::size_t i = 0; i < kk; ++i) {
        for (std::size_t j = 0; j < kk; ++j) r.covariance(i, j) = s2 * ls.xtx_inverse(i, j);
        r.std_errors[i] = std::sqrt(std::max(0.0, r.covariance(i, i)));
    }
    double mean = 0.0;
    for (double v : yt) mean += v;
    mean /= static_cast<double>(n);
    double sst = 0.0;
    for (double v : yt) sst += (v - mean) * (v - mean);
    r.r_squared = sst > 0.0 ? 1.0 - ls.ssr / sst : 0.0;
    r.use_z = true;
    r.model = "RE-GLS";
    r.variance_clamped = clamped;
    fill_inference(r);
    return r;
}

RegressionResult cre_fit(const PanelDataset& panel, const PanelOptions& options) {
    panel.validate();
    const PanelGroups groups = group_rows(panel);
    const EntityMeans means = entity_means(panel, groups);
    const std::vector<bool> varying = time_varying_flags(panel, groups, means);

    const std::size_t n = panel.entity.size();
    const std::size_t k = panel.regressors.cols();
    std::vector<std::size_t> mundlak_cols;
    for (std::size_t j = 0; j < k; ++j) {
        if (varying[j]) mundlak_cols.push_back(j);
    }

    PanelDataset augmented;
    augmented.entity = panel.entity;
    augmented.time = panel.time;
    augmented.response = panel.response;
    augmented.names = panel.names;
    augmented.regressors = Matrix(n, k + mundlak_cols.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double>& xm = means.x_mean.at(panel.entity[i]);
        for (std::size_t j = 0; j < k; ++j) augmented.regressors(i, j) = panel.regressors(i, j);
        for (std::size_t c = 0; c < mundlak_cols.size(); ++c) {
            augmented.regressors(i, k + c) = xm[mundlak_cols[c]];
        }
    }
    for (std::size_t c : mundlak_cols) augmented.names.push_back(panel.names[c] + "_mean");

    RegressionResult r = re_fit(augmented, options);
    r.model = "CRE";
    return r;
}

HausmanResult hausman_test(const RegressionResult& fe, const RegressionResult& re,
                           const std::vector<std::string>& common_coefs) {
    if (common_coefs.empty()) throw std::invalid_argument("hausman_test needs coefficient names");
    const std::size_t k = common_coefs.size();
    std::vector<std::size_t> fe_idx(k), re_idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto fi = fe.index_of(common_coefs[i]);
        const auto ri = re.index_of(common_coefs[i]);
        if (!fi || !ri) {
            throw std::invalid_argument("coefficient '" + common_coefs[i] +
                                        "' missing from one of the results");
        }
        fe_idx[i] = *fi;
        re_idx[i] = *ri;
    }

    std::vector<double> diff(k);
    Matrix vdiff(k, k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        diff[i] = fe.estimates[fe_idx[i]] - re.estimates[re_idx[i]];
        for (std::size_t j = 0; j < k; ++j) {
            vdiff(i, j) = fe.covariance(fe_idx[i], fe_idx[j]) - re.covariance(re_idx[i], re_idx[j]);
        }
    }

    HausmanResult out;
    bool pd = false;
    const Matrix inv = symmetric_pinv(vdiff, pd);
    out.pseudo_inverse_used = !pd;
    double h = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) h += diff[i] * inv(i, j) * diff[j];
    }
    out.statistic = std::max(0.0, h);
    out.df = k;
    out.p_value = chi2_sf(out.statistic, static_cast<double>(out.df));
    return out;
}

std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    if (p < 0.1) return "†";
    return "";
}

std::string format_result_table(const RegressionResult& result, const std::string& title) {
    std::ostringstream os;
    os << title << "\n";
    os << "model: " << result.model << "   n = " << result.n_obs
       << "   R^2 = " << result.r_squared;
    if (result.variance_clamped) os << "   [sigma_u^2 clamped to 0]";
    os << "\n";
    char line[256];
    std::snprintf(line, sizeof(line), "%-28s %14s %14s %10s %12s\n", "coefficient", "estimate",
                  "std.error", result.use_z ? "z" : "t", "p-value");
    os << line;
    for (std::size_t i = 0; i < result.names.size(); ++i) {
        std::snprintf(line, sizeof(line), "%-28s %14.6g %14.6g %10.4g %12.4g %s\n",
                      result.names[i].c_str(), result.estimates[i], result.std_errors[i],
                      result.statistics[i], result.p_values[i],
                      significance_stars(result.p_values[i]).c_str());
        os << line;
    }
    os << "significance: † p<0.1, * p<0.05, ** p<0.01, *** p<0.001\n";
    return os.str();
}

} // namespace heatpoll::stats
