#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heatpoll/analysis.hpp"
#include "heatpoll/config.hpp"
#include "heatpoll/engine.hpp"
#include "heatpoll/metrics_store.hpp"
#include "heatpoll/mock_provider.hpp"
#include "heatpoll/network_builder.hpp"
#include "heatpoll/response_parse.hpp"
#include "heatpoll/stats.hpp"

namespace py = pybind11;
using namespace heatpoll;

namespace {

BuildConfig make_build_config(std::uint64_t seed, double positive_trait_pct,
                              int max_family_members, const std::string& closeness_mode,
                              int constant_closeness) {
    BuildConfig cfg;
    cfg.seed = seed;
    cfg.positive_trait_pct = positive_trait_pct;
    cfg.max_family_members = max_family_members;
    if (closeness_mode == "constant") {
        cfg.closeness_mode = InitialClosenessMode::Constant;
    } else if (closeness_mode == "from_base_weights") {
        cfg.closeness_mode = InitialClosenessMode::FromBaseWeightsClamped;
    } else {
        throw std::invalid_argument("closeness_mode must be 'from_base_weights' or 'constant'");
    }
    cfg.constant_closeness = constant_closeness;
    return cfg;
}

stats::Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    const std::size_t k = n == 0 ? 0 : rows.front().size();
    stats::Matrix m(n, k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != k) throw std::invalid_argument("ragged design matrix");
        for (std::size_t j = 0; j < k; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

py::dict result_to_dict(const stats::RegressionResult& r) {
    py::dict out;
    out["names"] = r.names;
    out["estimates"] = r.estimates;
    out["std_errors"] = r.std_errors;
    out["statistics"] = r.statistics;
    out["p_values"] = r.p_values;
    out["r_squared"] = r.r_squared;
    out["n_obs"] = r.n_obs;
    out["model"] = r.model;
    out["variance_clamped"] = r.variance_clamped;
    return out;
}

stats::PanelDataset make_panel(const std::vector<std::int64_t>& entity,
                               const std::vector<double>& time,
                               const std::vector<double>& response,
                               const std::vector<std::vector<double>>& regressors,
                               const std::vector<std::string>& names) {
    stats::PanelDataset panel;
    panel.entity = entity;
    panel.time = time;
    panel.response = response;
    panel.regressors = matrix_from_rows(regressors);
    panel.names = names;
    return panel;
}

} // namespace

PYBIND11_MODULE(_heatpoll, m) {
    m.doc() = "simulation core: network building, the two-phase daily poll, and the "
              "regression toolkit";

    py::class_<SocialGraph>(m, "SocialGraph")
        .def("node_count", &SocialGraph::node_count)
        .def("edge_count", &SocialGraph::edge_count)
        .def("node_ids", &SocialGraph::node_ids)
        .def("degree", &SocialGraph::degree)
        .def("friends_of", &SocialGraph::friends_of)
        .def("average_friend_weight", [](const SocialGraph& g) { return average_friend_weight(g); })
        .def("strong_friendship_count",
             [](const SocialGraph& g) { return strong_friendship_count(g); })
        .def("degree_centrality",
             [](const SocialGraph& g, int node) { return degree_centrality(g, node); })
        .def("average_happiness", [](const SocialGraph& g) { return average_happiness(g); })
        .def("to_json", &graph_to_json)
        .def_static("from_json", &graph_from_json);

    m.def("load_base_network",
          [](const std::string& closeness_mode, int constant_closeness) {
              return load_base_network(
                  make_build_config(0, 0.5, 4, closeness_mode, constant_closeness));
          },
          py::arg("closeness_mode") = "from_base_weights", py::arg("constant_closeness") = 3);

    m.def("build_network",
          [](std::uint64_t seed, double positive_trait_pct, int max_family_members,
             const std::string& closeness_mode, int constant_closeness) {
              return build_network(make_build_config(seed, positive_trait_pct,
                                                     max_family_members, closeness_mode,
                                                     constant_closeness));
          },
          py::arg("seed"), py::arg("positive_trait_pct") = 0.5,
          py::arg("max_family_members") = 4, py::arg("closeness_mode") = "from_base_weights",
          py::arg("constant_closeness") = 3);

    m.def("run_simulation_from_config",
          [](const std::string& config_text, const std::string& run_id,
             const std::string& runs_dir, bool force) {
              ConfigTable table = ConfigTable::parse(config_text);
              if (!runs_dir.empty()) table.set("sim.runs_dir", runs_dir);
              const RunConfig cfg = load_run_config(table);
              SocialGraph graph = build_network(cfg.network);
              const auto hourly = load_tmy_csv(cfg.weather_path, cfg.weather_columns);
              const auto weather = daily_means(hourly, cfg.weather_start, cfg.sim.days);
              std::unique_ptr<DecisionProvider> provider;
              if (cfg.provider_kind == "mock") {
                  provider = std::make_unique<MockProvider>(
                      MockProvider::Options{cfg.sim.viable, cfg.mock_trait_bias});
              } else {
                  provider = std::make_unique<LlmProvider>(cfg.llm);
              }
              RunStore store(cfg.runs_dir, run_id, force);
              const RunSummary s =
                  run_simulation(graph, weather, *provider, cfg.sim, store, cfg.snapshot_json);
              py::dict out;
              out["run_id"] = run_id;
              out["days"] = s.days;
              out["agents"] = s.agents;
              out["phase1_fallbacks"] = s.phase1_fallbacks;
              out["phase2_fallbacks"] = s.phase2_fallbacks;
              out["run_dir"] = store.dir().string();
              return out;
          },
          py::arg("config_text"), py::arg("run_id"), py::arg("runs_dir") = "",
          py::arg("force") = false);

    m.def("daily_means_from_csv",
          [](const std::string& path, const std::string& start_date, int n_days) {
              const auto hourly = load_tmy_csv(path);
              const auto days = daily_means(hourly, date_from_string(start_date), n_days);
              std::vector<std::pair<std::string, double>> out;
              for (const DailyWeather& d : days) {
                  out.emplace_back(date_to_string(d.date), d.temp_out);
              }
              return out;
          },
          py::arg("path"), py::arg("start_date"), py::arg("n_days"));

    m.def("parse_phase1_response",
          [](const std::string& text, int viable_min, int viable_max) -> py::object {
              const auto parsed = parse_phase1(text, ParseLimits{viable_min, viable_max});
              if (!parsed.ok()) {
                  throw std::invalid_argument(parsed.error.message);
              }
              py::dict out;
              out["degree"] = parsed.value->degree_choice;
              out["happiness"] = parsed.value->happiness;
              out["reasoning"] = parsed.value->reasoning;
              return out;
          },
          py::arg("text"), py::arg("viable_min") = 10, py::arg("viable_max") = 32);

    m.def("parse_phase2_response",
          [](const std::string& text, int viable_min, int viable_max) -> py::object {
              const auto parsed = parse_phase2(text, ParseLimits{viable_min, viable_max});
              if (!parsed.ok()) {
                  throw std::invalid_argument(parsed.error.message);
              }
              py::dict out;
              out["final_degree"] = parsed.value->final_degree;
              out["closeness_updates"] = parsed.value->closeness_updates;
              out["reasoning"] = parsed.value->reasoning;
              return out;
          },
          py::arg("text"), py::arg("viable_min") = 10, py::arg("viable_max") = 32);

    m.def("extract_first_json", [](const std::string& text) -> py::object {
        const auto found = extract_first_json(text);
        if (!found) return py::none();
        return py::str(*found);
    });

    m.def("compute_cost", &compute_cost, py::arg("setpoint"), py::arg("temp_out"),
          py::arg("cost_constant") = 1.0);

    m.def("ols_fit",
          [](const std::vector<std::vector<double>>& X, const std::vector<double>& y,
             const std::vector<std::string>& names, bool add_intercept) {
              return result_to_dict(stats::ols_fit(matrix_from_rows(X), y, names, add_intercept));
          },
          py::arg("X"), py::arg("y"), py::arg("names"), py::arg("add_intercept") = true);

    m.def("trend_slope", [](const std::vector<std::pair<double, double>>& series) {
        const stats::TrendFit fit = stats::trend_slope(series);
        return py::make_tuple(fit.slope, fit.std_error, fit.p_value);
    });

    m.def("fe_fit",
          [](const std::vector<std::int64_t>& entity, const std::vector<double>& time,
             const std::vector<double>& response,
             const std::vector<std::vector<double>>& regressors,
             const std::vector<std::string>& names) {
              return result_to_dict(
                  stats::fe_fit(make_panel(entity, time, response, regressors, names)));
          });
    m.def("re_fit",
          [](const std::vector<std::int64_t>& entity, const std::vector<double>& time,
             const std::vector<double>& response,
             const std::vector<std::vector<double>>& regressors,
             const std::vector<std::string>& names) {
              return result_to_dict(
                  stats::re_fit(make_panel(entity, time, response, regressors, names)));
          });
    m.def("cre_fit",
          [](const std::vector<std::int64_t>& entity, const std::vector<double>& time,
             const std::vector<double>& response,
             const std::vector<std::vector<double>>& regressors,
             const std::vector<std::string>& names) {
              return result_to_dict(
                  stats::cre_fit(make_panel(entity, time, response, regressors, names)));
          });

    m.def("hausman_from_panel",
          [](const std::vector<std::int64_t>& entity, const std::vector<double>& time,
             const std::vector<double>& response,
             const std::vector<std::vector<double>>& regressors,
             const std::vector<std::string>& names) {
              const auto panel = make_panel(entity, time, response, regressors, names);
              const auto fe = stats::fe_fit(panel);
              const auto re = stats::re_fit(panel);
              std::vector<std::string> common;
              for (const std::string& n : fe.names) {
                  if (re.index_of(n)) common.push_back(n);
              }
              const auto h = stats::hausman_test(fe, re, common);
              py::dict out;
              out["statistic"] = h.statistic;
              out["df"] = h.df;
              out["p_value"] = h.p_value;
              out["pseudo_inverse_used"] = h.pseudo_inverse_used;
              return out;
          });

    m.def("student_t_sf", &stats::student_t_sf, py::arg("t"), py::arg("df"));
    m.def("chi2_sf", &stats::chi2_sf, py::arg("x"), py::arg("df"));

    m.attr("__version__") = "0.1.0";
}
