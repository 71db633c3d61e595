// Acceptance suite: one criterion per section, one [PASS]/[FAIL] line
// each, nonzero exit if anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "heatpoll/analysis.hpp"
#include "heatpoll/config.hpp"
#include "heatpoll/engine.hpp"
#include "heatpoll/karate_club.hpp"
#include "heatpoll/llm_provider.hpp"
#include "heatpoll/metrics_store.hpp"
#include "heatpoll/mock_provider.hpp"
#include "heatpoll/network_builder.hpp"
#include "heatpoll/response_parse.hpp"
#include "heatpoll/rounding.hpp"
#include "heatpoll/stats.hpp"

using namespace heatpoll;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

void report_skip(int criterion, const std::string& name, const std::string& why) {
    std::printf("[SKIP] criterion %d: %s -- %s\n", criterion, name.c_str(), why.c_str());
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("heatpoll_accept_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const std::string kWeatherFixture =
    std::string(HEATPOLL_SOURCE_DIR) + "/data/weather_ankara_30d.csv";

std::vector<DailyWeather> fixture_weather(int days) {
    return daily_means(load_tmy_csv(kWeatherFixture), date_from_string("2019-02-15"), days);
}

struct MockRun {
    RunSummary summary;
    fs::path dir;
};

MockRun run_mock(const fs::path& runs_dir, const std::string& run_id, std::uint64_t seed,
                 double pct, int days, bool trait_bias,
                 const std::function<void(SocialGraph&)>& tweak = nullptr) {
    BuildConfig cfg;
    cfg.seed = seed;
    cfg.positive_trait_pct = pct;
    SocialGraph graph = build_network(cfg);
    if (tweak) tweak(graph);

    MockProvider mock(MockProvider::Options{ParseLimits{}, trait_bias});
    SimParams params;
    params.days = days;
    params.seed = seed;
    params.positive_trait_pct = pct;
    RunStore store(runs_dir, run_id);
    MockRun out;
    out.summary =
        run_simulation(graph, fixture_weather(days), mock, params, store, "{\"mock\":true}");
    out.dir = store.dir();
    return out;
}

// ---- criterion 1 ---------------------------------------------------------

void criterion_structural() {
    const auto start = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;

    const SocialGraph base = load_base_network();
    if (base.node_count() != 34 || base.edge_count() != 78) {
        pass = false;
        detail = "base network is not 34/78";
    }

    for (std::uint64_t seed = 0; seed < 1000 && pass; ++seed) {
        BuildConfig cfg;
        cfg.seed = seed;
        SocialGraph g = load_base_network(cfg);
        Rng rng(seed);
        expand_families(g, cfg, rng);
        std::map<int, int> members;
        for (const auto& [id, p] : g.nodes()) {
            if (p.role == Role::FamilyMember) ++members[p.family_id];
        }
        std::size_t sum_n = 0, pairs = 0;
        for (int rep = 0; rep < kKarateNodeCount; ++rep) {
            const int n = members.count(rep) ? members[rep] : 0;
            sum_n += n;
            pairs += static_cast<std::size_t>(n) * (n + 1) / 2;
        }
        if (g.node_count() != 34 + sum_n || g.edge_count() != 78 + pairs) {
            pass = false;
            detail = "count identity failed at seed " + std::to_string(seed);
        }
    }

    // shipped fixture seed reproduces the published scale
    BuildConfig shipped;
    shipped.seed = 2624;
    const SocialGraph instance = build_network(shipped);
    if (instance.node_count() != 116) {
        pass = false;
        detail = "shipped seed does not give 116 nodes";
    }

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= 1.0) {
        pass = false;
        detail = "took " + std::to_string(elapsed) + " s";
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf), "34/78 base, 1000 seeded draws, shipped seed 2624 -> %zu nodes, %.2f s",
                  instance.node_count(), elapsed);
    report(1, "structural reproduction", pass, detail.empty() ? buf : detail);
}

// ---- criterion 2 ---------------------------------------------------------

// Daily means recomputed straight from the CSV text, summing in file order.
std::vector<double> independent_daily_means(int days) {
    std::ifstream in(kWeatherFixture);
    std::string line;
    std::getline(in, line); // header
    std::map<std::string, std::pair<double, int>> acc;
    std::vector<std::string> order;
    while (std::getline(in, line)) {
        const std::size_t comma = line.find(',');
        const std::string date = line.substr(0, 10);
        const double v = std::strtod(line.c_str() + comma + 1, nullptr);
        if (acc.find(date) == acc.end()) order.push_back(date);
        acc[date].first += v;
        acc[date].second += 1;
    }
    std::vector<double> means;
    for (int d = 0; d < days; ++d) means.push_back(acc[order[d]].first / 24.0);
    return means;
}

void criterion_cost(const std::vector<fs::path>& run_dirs) {
    bool pass = true;
    std::string detail;

    // every recorded day, in every run this suite produced
    for (const fs::path& dir : run_dirs) {
        const RunData data = load_run(dir.parent_path(), dir.filename().string());
        for (const NetworkDayRecord& r : data.network_days) {
            const double expected = std::abs(static_cast<double>(r.setpoint) - r.temp_out) * 1.0;
            if (r.cost != expected) {
                pass = false;
                detail = "cost mismatch in " + dir.filename().string() + " day " +
                         std::to_string(r.day_index);
            }
        }
    }

    // constant-setpoint-22 run: all agents neutral and assertive
    TempDir tmp;
    const MockRun run = run_mock(tmp.path, "const22", 7, 1.0, 30, false, [](SocialGraph& g) {
        for (int id : g.node_ids()) {
            Persona& p = g.persona(id);
            p.heater_preference = HeaterPreference::Neutral;
            p.traits.set_positive(TraitDim::Assertiveness, true);
        }
    });
    const RunData data = load_run(tmp.path, "const22");
    const std::vector<double> oracle = independent_daily_means(30);
    for (const NetworkDayRecord& r : data.network_days) {
        if (r.setpoint != 22) {
            pass = false;
            detail = "setpoint drifted from 22 on day " + std::to_string(r.day_index);
            break;
        }
        const double expected = std::abs(22.0 - oracle[r.day_index]);
        if (r.cost != expected) {
            pass = false;
            detail = "day " + std::to_string(r.day_index) + " cost " +
                     format_double(r.cost) + " != |22 - out| " + format_double(expected);
            break;
        }
        // rising fixture + constant setpoint: cost falls day over day
        if (r.day_index > 0 && r.cost >= data.network_days[r.day_index - 1].cost) {
            pass = false;
            detail = "cost did not fall on day " + std::to_string(r.day_index);
            break;
        }
    }
    report(2, "daily cost identity, exact", pass,
           detail.empty() ? "|setpoint - temp_out| * C on every recorded day; constant-22 series "
                            "matches the independent CSV recomputation bit for bit"
                          : detail);
}

// ---- criterion 3 ---------------------------------------------------------

void criterion_determinism() {
    const auto start = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;

    TempDir tmp;
    run_mock(tmp.path, "det_a", 2624, 0.5, 30, true);
    run_mock(tmp.path, "det_b", 2624, 0.5, 30, true);

    const auto normalize = [](std::string text, const std::string& id) {
        std::string needle = "\"run_id\":\"" + id + "\"";
        std::string out;
        std::size_t pos = 0;
        while (true) {
            const std::size_t hit = text.find(needle, pos);
            if (hit == std::string::npos) {
                out += text.substr(pos);
                return out;
            }
            out += text.substr(pos, hit - pos) + "\"run_id\":\"R\"";
            pos = hit + needle.size();
        }
    };
    const auto normalize_csv = [](std::string text, const std::string& id) {
        std::string out;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.rfind(id + ",", 0) == 0) line = "R" + line.substr(id.size());
            out += line + "\n";
        }
        return out;
    };

    if (normalize(slurp(tmp.path / "det_a" / "agent_days.jsonl"), "det_a") !=
        normalize(slurp(tmp.path / "det_b" / "agent_days.jsonl"), "det_b")) {
        pass = false;
        detail = "agent_days.jsonl differs between identical runs";
    }
    if (normalize_csv(slurp(tmp.path / "det_a" / "network_days.csv"), "det_a") !=
        normalize_csv(slurp(tmp.path / "det_b" / "network_days.csv"), "det_b")) {
        pass = false;
        detail = "network_days.csv differs between identical runs";
    }
    if (slurp(tmp.path / "det_a" / "snapshot.json") != slurp(tmp.path / "det_b" / "snapshot.json")) {
        pass = false;
        detail = "final snapshots differ";
    }
    for (int d = 0; d < 30 && pass; ++d) {
        char name[32];
        std::snprintf(name, sizeof(name), "day_%04d.json", d);
        if (slurp(tmp.path / "det_a" / "days" / name) != slurp(tmp.path / "det_b" / "days" / name)) {
            pass = false;
            detail = std::string("day snapshot differs: ") + name;
        }
    }

    // simultaneity: permuted processing order, identical outcomes
    BuildConfig cfg;
    cfg.seed = 2624;
    cfg.positive_trait_pct = 0.5;
    SocialGraph a = build_network(cfg);
    SocialGraph b = build_network(cfg);
    MockProvider mock;
    SimParams params;
    params.days = 30;

    std::vector<int> reps;
    for (const auto& [id, p] : a.nodes()) {
        if (p.role == Role::FamilyRepresentative) reps.push_back(id);
    }
    DayOrdering shuffled;
    shuffled.family_order = reps;
    shuffled.rep_order = reps;
    std::mt19937 gen(1234);
    std::shuffle(shuffled.family_order.begin(), shuffled.family_order.end(), gen);
    std::shuffle(shuffled.rep_order.begin(), shuffled.rep_order.end(), gen);

    const std::vector<DailyWeather> weather = fixture_weather(30);
    std::optional<DayOutcome> pa, pb;
    for (int d = 0; d < 30 && pass; ++d) {
        pa = run_day(a, weather[d], mock, pa, params);
        pb = run_day(b, weather[d], mock, pb, params, &shuffled);
        if (!(*pa == *pb)) {
            pass = false;
            detail = "permuted processing order changed day " + std::to_string(d);
        }
    }
    if (pass && !(a == b)) {
        pass = false;
        detail = "permuted processing order changed the final graph";
    }

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= 10.0) {
        pass = false;
        detail = "took " + std::to_string(elapsed) + " s";
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "byte-identical reruns (record files; manifest carries wall-clock times) and "
                  "order-invariant outcomes, 116 agents x 30 days, %.2f s",
                  elapsed);
    report(3, "determinism and simultaneity", pass, detail.empty() ? buf : detail);
}

// ---- criterion 4 ---------------------------------------------------------

void criterion_range_safety() {
    bool pass = true;
    std::string detail;

    TemperatureReference ref;
    ParseLimits limits;
    MockProvider mock;

    Phase1Context ctx1;
    ctx1.persona.name = "Ada";
    ctx1.persona.heater_preference = HeaterPreference::Warm;
    ctx1.weather = DailyWeather{1, date_from_string("2019-02-16"), -6.0};
    ctx1.previous_final_temp = 21;
    ctx1.reference = ref;

    Phase2Context ctx2;
    ctx2.persona = ctx1.persona;
    ctx2.family_average = 23.0;
    ctx2.friends = {{"Kim", 3, 22.0, {22, 23}}, {"Raul", 5, 24.0, {24}}};
    ctx2.weather = ctx1.weather;
    ctx2.reference = ref;

    std::mt19937_64 gen(20260809);
    const auto random_text = [&](int kind) -> std::string {
        switch (kind % 5) {
            case 0: { // arbitrary bytes
                std::string s;
                const int n = static_cast<int>(gen() % 120);
                for (int i = 0; i < n; ++i) s.push_back(static_cast<char>(gen() % 256));
                return s;
            }
            case 1: { // plausible phase-1 JSON, values wild
                const long long deg = static_cast<long long>(gen() % 200) - 50;
                const long long hap = static_cast<long long>(gen() % 200) - 50;
                return "{\"degree\": " + std::to_string(deg) + ", \"happiness\": " +
                       std::to_string(hap) + ", \"reasoning\": \"r\"}";
            }
            case 2: { // phase-2 JSON, closeness wild
                const long long deg = static_cast<long long>(gen() % 60);
                const long long clo = static_cast<long long>(gen() % 20) - 5;
                return "{\"final_degree\": " + std::to_string(deg) +
                       ", \"closeness_updates\": {\"Kim\": " + std::to_string(clo) +
                       "}, \"reasoning\": \"r\"}";
            }
            case 3: { // prose wrapping valid-ish JSON
                return "I think...\n{\"degree\": 22.7, \"happiness\": 90.2, "
                       "\"reasoning\": \"prose\"}\nbye";
            }
            default: { // truncated JSON
                return "{\"degree\": 22, \"happiness\": 90";
            }
        }
    };

    // The provider policy with the HTTP layer replaced by the fuzzed text:
    // parse, validate, fall back to the mock on any failure.
    int parsed_ok = 0, fell_back = 0;
    for (int i = 0; i < 100000 && pass; ++i) {
        const std::string text = random_text(i);
        if (i % 2 == 0) {
            const auto parsed = parse_phase1(text, limits);
            const Phase1Decision d = parsed.ok() ? *parsed.value : mock.phase1(ctx1).decision;
            parsed.ok() ? ++parsed_ok : ++fell_back;
            if (d.happiness < 1 || d.happiness > 100 || d.degree_choice < limits.viable_min ||
                d.degree_choice > limits.viable_max) {
                pass = false;
                detail = "phase-1 post-policy range violation on input " + std::to_string(i);
            }
        } else {
            const auto parsed = parse_phase2(text, limits);
            bool usable = parsed.ok() && !validate_friend_names(*parsed.value, ctx2);
            const Phase2Decision d = usable ? *parsed.value : mock.phase2(ctx2).decision;
            usable ? ++parsed_ok : ++fell_back;
            if (d.final_degree < limits.viable_min || d.final_degree > limits.viable_max) {
                pass = false;
                detail = "phase-2 post-policy degree violation";
            }
            for (const auto& [name, v] : d.closeness_updates) {
                if (v < 1 || v > 5) {
                    pass = false;
                    detail = "phase-2 post-policy closeness violation";
                }
            }
        }
    }

    // the published failure mode: nonviable degrees 1 and 100
    const auto low = parse_phase1(R"({"degree": 1, "happiness": 90, "reasoning": "x"})", limits);
    const auto high = parse_phase1(R"({"degree": 100, "happiness": 90, "reasoning": "x"})", limits);
    if (low.ok() || low.error.kind != ParseErrorKind::OutOfRange || high.ok() ||
        high.error.kind != ParseErrorKind::OutOfRange) {
        pass = false;
        detail = "nonviable degree was not rejected with OutOfRange";
    }

    char buf[128];
    std::snprintf(buf, sizeof(buf), "100000 fuzzed outputs, %d parsed, %d fell back, 0 violations",
                  parsed_ok, fell_back);
    report(4, "range safety under fuzzing", pass, detail.empty() ? buf : detail);
}

// ---- criterion 5 ---------------------------------------------------------

struct TCase {
    double t;
    double df;
    double expected;
};

// Independent high-precision incomplete-beta evaluations (50 digits),
// computed before the estimator was built.
constexpr TCase kTTable[] = {
    {0, 1, 0.5},
    {0.5, 1, 0.35241638234956673},
    {1, 1, 0.25},
    {2, 1, 0.14758361765043327},
    {12.706, 1, 0.025000401179066594},
    {0.5, 2, 0.33333333333333333},
    {1.5, 3, 0.11529193262241153},
    {2, 4, 0.058058261758407797},
    {2.571, 5, 0.024987317341925696},
    {3, 7, 0.009971063065996269},
    {1, 10, 0.17044656615102994},
    {1.812, 10, 0.050037631032923609},
    {2.228, 10, 0.025005885908555683},
    {0.7, 15, 0.2473207912750545},
    {2.086, 20, 0.024998177228720112},
    {1.96, 30, 0.029671156448025238},
    {2.75, 40, 0.0044524012185696032},
    {1.645, 100, 0.05155488258752319},
    {1.96, 1000, 0.025136592477874359},
    {4, 1000, 3.4004959604390789e-5},
};

void criterion_ols() {
    bool pass = true;
    std::string detail;

    // exact-fit recovery
    stats::Matrix X(10, 1, 0.0);
    std::vector<double> y(10);
    for (int i = 0; i < 10; ++i) {
        X(i, 0) = i;
        y[i] = 3.0 + 2.0 * i;
    }
    const stats::RegressionResult exact = stats::ols_fit(X, y, {"x"}, true);
    if (std::abs(exact.estimates[1] - 2.0) > 1e-9 || std::abs(exact.estimates[0] - 3.0) > 1e-9 ||
        std::abs(exact.r_squared - 1.0) > 1e-9) {
        pass = false;
        detail = "exact fit not recovered";
    }

    // residual orthogonality on a noisy fit
    std::mt19937 gen(5);
    std::normal_distribution<double> noise(0.0, 1.0);
    const std::size_t n = 500;
    stats::Matrix Xn(n, 2, 0.0);
    std::vector<double> yn(n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Xn(i, 0) = noise(gen) * 3.0;
        Xn(i, 1) = noise(gen) + 2.0;
        yn[i] = 0.7 - 1.2 * Xn(i, 0) + 0.4 * Xn(i, 1) + noise(gen);
        scale = std::max(scale, std::abs(yn[i]));
    }
    const stats::RegressionResult fit = stats::ols_fit(Xn, yn, {"a", "b"}, true);
    for (std::size_t j = 0; j < 2 && pass; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double fitted = fit.estimates[0];
            for (std::size_t c = 0; c < 2; ++c) fitted += fit.estimates[c + 1] * Xn(i, c);
            dot += (yn[i] - fitted) * Xn(i, j);
        }
        if (std::abs(dot) > 1e-8 * scale * n) {
            pass = false;
            detail = "residuals not orthogonal to column " + std::to_string(j);
        }
    }

    // frozen 20-case reference table at 1e-6 (we hold 1e-10 internally)
    double worst = 0.0;
    for (const TCase& c : kTTable) {
        worst = std::max(worst, std::abs(stats::student_t_sf(c.t, c.df) - c.expected));
    }
    if (worst > 1e-6) {
        pass = false;
        detail = "t tail off the reference table by " + format_double(worst);
    }

    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "exact fit, orthogonality, 20-case t-table max err %.2e", worst);
    report(5, "OLS correctness", pass, detail.empty() ? buf : detail);
}

// ---- criterion 6 ---------------------------------------------------------

stats::PanelDataset synth_panel(std::size_t entities, std::size_t periods, double sigma_u,
                                double beta_x, double beta_d, std::uint32_t seed,
                                bool correlated, bool demean_noise) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> std_normal(0.0, 1.0);
    stats::PanelDataset panel;
    const std::size_t n = entities * periods;
    panel.regressors = stats::Matrix(n, 2, 0.0);
    panel.names = {"x", "d"};
    std::vector<double> noise(n);
    std::size_t row = 0;
    for (std::size_t e = 0; e < entities; ++e) {
        const double dummy = e % 2 == 0 ? 1.0 : 0.0;
        const double base_x = std_normal(gen);
        const double effect =
            sigma_u * (correlated ? 0.8 * base_x + 0.6 * std_normal(gen) : std_normal(gen));
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
        if (demean_noise) {
            double mean = 0.0;
            for (std::size_t i = first; i < row; ++i) mean += noise[i];
            mean /= static_cast<double>(periods);
            for (std::size_t i = first; i < row; ++i) noise[i] -= mean;
        }
    }
    for (std::size_t i = 0; i < n; ++i) panel.response[i] += noise[i];
    return panel;
}

void criterion_cre() {
    const auto start = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;

    // Mundlak equivalence: CRE time-varying coefficient == within estimate
    for (std::uint32_t seed : {11u, 22u, 33u}) {
        const stats::PanelDataset panel = synth_panel(30, 5, 3.0, 2.2, 4.0, seed, true, false);
        const stats::RegressionResult fe = stats::fe_fit(panel);
        const stats::RegressionResult cre = stats::cre_fit(panel);
        const double diff =
            std::abs(cre.estimates[*cre.index_of("x")] - fe.estimates[*fe.index_of("x")]);
        if (diff > 1e-6) {
            pass = false;
            detail = "CRE vs FE differ by " + format_double(diff);
        }
    }

    // zero entity variance: CRE == pooled OLS on the augmented design
    {
        const stats::PanelDataset panel = synth_panel(25, 5, 0.0, 1.2, 3.0, 44, false, true);
        const stats::RegressionResult cre = stats::cre_fit(panel);
        const std::size_t n = panel.entity.size();
        std::map<std::int64_t, std::pair<double, std::size_t>> sums;
        for (std::size_t i = 0; i < n; ++i) {
            sums[panel.entity[i]].first += panel.regressors(i, 0);
            sums[panel.entity[i]].second += 1;
        }
        stats::Matrix X(n, 3, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            X(i, 0) = panel.regressors(i, 0);
            X(i, 1) = panel.regressors(i, 1);
            const auto& [sum, count] = sums[panel.entity[i]];
            X(i, 2) = sum / static_cast<double>(count);
        }
        const stats::RegressionResult pooled =
            stats::ols_fit(X, panel.response, {"x", "d", "x_mean"}, true);
        for (std::size_t i = 0; i < cre.names.size() && pass; ++i) {
            if (std::abs(cre.estimates[i] - pooled.estimates[i]) > 1e-6) {
                pass = false;
                detail = "zero-variance CRE differs from pooled OLS at " + cre.names[i];
            }
        }
        if (!cre.variance_clamped) {
            pass = false;
            detail = "variance clamp flag not set on degenerate panel";
        }
    }

    // Monte Carlo recovery of the time-invariant effect 5.0
    int covered = 0;
    for (std::uint32_t seed = 1; seed <= 100; ++seed) {
        const stats::PanelDataset panel = synth_panel(30, 5, 1.0, 1.0, 5.0, seed, false, false);
        const stats::RegressionResult cre = stats::cre_fit(panel);
        const auto d = cre.index_of("d");
        if (d && std::abs(cre.estimates[*d] - 5.0) <= 3.0 * cre.std_errors[*d]) ++covered;
    }
    if (covered < 95) {
        pass = false;
        detail = "time-invariant effect covered only " + std::to_string(covered) + "/100";
    }

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed >= 30.0) {
        pass = false;
        detail = "took " + std::to_string(elapsed) + " s";
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "FE equivalence, pooled-OLS collapse, %d/100 Monte Carlo coverage, %.2f s",
                  covered, elapsed);
    report(6, "CRE correctness", pass, detail.empty() ? buf : detail);
}

// ---- criterion 7 ---------------------------------------------------------

void criterion_hausman() {
    bool pass = true;
    std::string detail;

    stats::RegressionResult fe;
    fe.names = {"x"};
    fe.estimates = {3.0};
    fe.std_errors = {std::sqrt(2.0)};
    fe.covariance = stats::Matrix(1, 1, 0.0);
    fe.covariance(0, 0) = 2.0;
    stats::RegressionResult re = fe;
    re.estimates = {3.0};

    const stats::HausmanResult zero = stats::hausman_test(fe, re, {"x"});
    if (zero.statistic != 0.0 || zero.p_value != 1.0) {
        pass = false;
        detail = "H = 0 did not give p = 1";
    }

    re.estimates = {1.0};
    re.covariance(0, 0) = 1.0;
    re.std_errors = {1.0};
    const stats::HausmanResult one = stats::hausman_test(fe, re, {"x"});
    // independent oracle for the chi-square(1) tail at 4: erfc(sqrt(2)),
    // cross-checked against the 50-digit reference 0.045500263896358414
    const double oracle = std::erfc(std::sqrt(2.0));
    if (std::abs(one.statistic - 4.0) > 1e-12 || one.df != 1 ||
        std::abs(one.p_value - oracle) > 1e-6 ||
        std::abs(one.p_value - 0.045500263896358414) > 1e-6) {
        pass = false;
        detail = "1-dim case off: H = " + format_double(one.statistic) +
                 ", p = " + format_double(one.p_value);
    }

    report(7, "Hausman correctness", pass,
           detail.empty() ? "H = 0 -> p = 1; H = 4, df 1 -> p within 1e-6 of erfc(sqrt 2)"
                          : detail);
}

// ---- criterion 8 ---------------------------------------------------------

void criterion_trends(std::vector<fs::path>& run_dirs, TempDir& tmp) {
    bool pass = true;
    std::string detail;

    const MockRun pos = run_mock(tmp.path, "all_positive", 2624, 1.0, 15, true);
    const MockRun neg = run_mock(tmp.path, "all_negative", 2624, 0.0, 15, true);
    run_dirs.push_back(pos.dir);
    run_dirs.push_back(neg.dir);

    const auto slope_of = [&](const std::string& id) {
        const RunData data = load_run(tmp.path, id);
        std::vector<std::pair<double, double>> series;
        for (const NetworkDayRecord& r : data.network_days) {
            series.emplace_back(r.day_index, r.avg_friend_weight);
        }
        return stats::trend_slope(series).slope;
    };
    const double slope_pos = slope_of("all_positive");
    const double slope_neg = slope_of("all_negative");
    if (!(slope_pos > 0.0)) {
        pass = false;
        detail = "all-positive avg-friendship slope " + format_double(slope_pos) + " not > 0";
    }
    if (!(slope_neg < 0.0)) {
        pass = false;
        detail = "all-negative avg-friendship slope " + format_double(slope_neg) + " not < 0";
    }

    // uniform preferences keep the building inside the neutral band
    for (const std::string& id : {std::string("all_positive"), std::string("all_negative")}) {
        const RunData data = load_run(tmp.path, id);
        for (const NetworkDayRecord& r : data.network_days) {
            if (r.setpoint < 20 || r.setpoint > 24) {
                pass = false;
                detail = id + " setpoint " + std::to_string(r.setpoint) + " left [20,24]";
            }
        }
    }

    char buf[128];
    std::snprintf(buf, sizeof(buf), "slopes %+0.4f (positive run) vs %+0.4f (negative run), setpoints in [20,24]",
                  slope_pos, slope_neg);
    report(8, "qualitative trend signs", pass, detail.empty() ? buf : detail);
}

// ---- criterion 9 ---------------------------------------------------------

void criterion_cardinality(std::vector<fs::path>& run_dirs, TempDir& tmp) {
    bool pass = true;
    std::string detail;

    const MockRun mixed = run_mock(tmp.path, "mixed_30", 2624, 0.5, 30, true);
    run_dirs.push_back(mixed.dir);
    if (mixed.summary.agents != 116) {
        pass = false;
        detail = "expected 116 agents, got " + std::to_string(mixed.summary.agents);
    }

    const std::vector<RunData> panel_runs = load_runs(tmp.path, {"mixed_30"});
    const std::string panel = export_panel_csv(panel_runs);
    const std::size_t panel_rows = std::count(panel.begin(), panel.end(), '\n') - 1;
    if (panel_rows != 3480) {
        pass = false;
        detail = "panel rows " + std::to_string(panel_rows) + " != 3480";
    }

    const std::vector<RunData> all =
        load_runs(tmp.path, {"all_positive", "mixed_30", "all_negative"});
    const std::string network = export_network_csv(all);
    const std::size_t network_rows = std::count(network.begin(), network.end(), '\n') - 1;
    if (network_rows != 60) {
        pass = false;
        detail = "network rows " + std::to_string(network_rows) + " != 60";
    }

    char buf[128];
    std::snprintf(buf, sizeof(buf), "116 agents x 30 days -> %zu panel rows; 15+30+15 -> %zu network rows",
                  panel_rows, network_rows);
    report(9, "pipeline cardinality", pass, detail.empty() ? buf : detail);
}

// ---- criterion 10 --------------------------------------------------------

void criterion_llm_smoke() {
    const char* url = std::getenv("HEATPOLL_LLM_URL");
    if (!url || !*url) {
        report_skip(10, "live-LLM smoke (non-gating)",
                    "set HEATPOLL_LLM_URL to an OpenAI-compatible /v1 endpoint to enable");
        return;
    }
    try {
        LlmConfig cfg;
        cfg.base_url = url;
        if (const char* model = std::getenv("HEATPOLL_LLM_MODEL")) cfg.model = model;
        cfg.max_retries = 2;
        LlmProvider provider(cfg);

        // three single-person families in a line
        SocialGraph small;
        for (int id : {0, 1, 2}) {
            Persona p;
            p.id = id;
            p.family_id = id;
            p.role = Role::FamilyRepresentative;
            small.add_node(std::move(p));
        }
        small.add_edge(0, 1, EdgeKind::Friend, 3);
        small.add_edge(1, 2, EdgeKind::Friend, 3);
        BuildConfig attrs;
        attrs.seed = 1;
        Rng rng(attrs.seed);
        assign_attributes(small, attrs, rng);

        TempDir tmp;
        SimParams params;
        params.days = 2;
        RunStore store(tmp.path, "llm_smoke");
        const RunSummary s =
            run_simulation(small, fixture_weather(2), provider, params, store, "{}");
        std::printf("       llm endpoint: %d requests, %d phase-1 fallbacks, %d phase-2 fallbacks\n",
                    provider.requests_sent(), s.phase1_fallbacks, s.phase2_fallbacks);
        report(10, "live-LLM smoke (non-gating)", true,
               "completed 3 agents x 2 days with fallback rate reported");
    } catch (const std::exception& e) {
        // non-gating: report but do not fail the suite
        std::printf("[SKIP] criterion 10: live-LLM smoke raised: %s\n", e.what());
    }
}

} // namespace

int main() {
    std::printf("acceptance suite\n----------------\n");
    TempDir shared;
    std::vector<fs::path> run_dirs;

    criterion_structural();
    criterion_trends(run_dirs, shared);      // produces the 15-day runs
    criterion_cardinality(run_dirs, shared); // produces the 30-day run
    criterion_cost(run_dirs);
    criterion_determinism();
    criterion_range_safety();
    criterion_ols();
    criterion_cre();
    criterion_hausman();
    criterion_llm_smoke();

    std::printf("----------------\n%s (%d failure%s)\n", g_failures == 0 ? "ALL PASS" : "FAILED",
                g_failures, g_failures == 1 ? "" : "s");
    return g_failures == 0 ? 0 : 1;
}
