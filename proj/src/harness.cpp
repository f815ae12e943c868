#include "dynmo/harness.hpp"

#include "dynmo/detection.hpp"
#include "dynmo/dualdomain.hpp"
#include "dynmo/moead.hpp"
#include "dynmo/predictor.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

namespace dynmo {

namespace {

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto end = comma == std::string_view::npos ? s.size() : comma;
        auto item = trim(s.substr(start, end - start));
        if (!item.empty()) {
            out.push_back(std::move(item));
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value)
{
    const auto text = trim(value);
    T out{};
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw ConfigError("invalid value '" + text + "' for " + std::string(key));
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view value)
{
    const auto v = lower(trim(value));
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError("invalid boolean '" + v + "' for " + std::string(key));
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_sci(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4e", v);
    return buf;
}

std::uint64_t fnv1a(std::string_view s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& fmt)
{
    std::string out;
    for (const auto& item : items) {
        out += (out.empty() ? "" : ",") + fmt(item);
    }
    return out;
}

} // namespace

std::string to_string(Strategy s)
{
    switch (s) {
    case Strategy::adps:
        return "adps";
    case Strategy::adps_i:
        return "adps-i";
    case Strategy::adps_ii:
        return "adps-ii";
    case Strategy::random:
        return "random";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name)
{
    const auto v = lower(trim(name));
    for (auto s : {Strategy::adps, Strategy::adps_i, Strategy::adps_ii, Strategy::random}) {
        if (to_string(s) == v) {
            return s;
        }
    }
    throw ConfigError("unknown strategy '" + std::string(name) + "' (expected adps, adps-i, adps-ii, random)");
}

std::string to_string(ChangeConfig c)
{
    return "C" + std::to_string(static_cast<int>(c) + 1);
}

ChangeConfig parse_change_config(std::string_view name)
{
    const auto v = lower(trim(name));
    for (auto c : {ChangeConfig::c1, ChangeConfig::c2, ChangeConfig::c3, ChangeConfig::c4}) {
        if (lower(to_string(c)) == v) {
            return c;
        }
    }
    throw ConfigError("unknown change configuration '" + std::string(name) + "' (expected c1..c4)");
}

int change_tau(ChangeConfig c)
{
    return c == ChangeConfig::c1 || c == ChangeConfig::c2 ? 5 : 10;
}

int change_severity(ChangeConfig c)
{
    return c == ChangeConfig::c1 || c == ChangeConfig::c3 ? 5 : 10;
}

Scale parse_scale(std::string_view name)
{
    const auto v = lower(trim(name));
    if (v == "desk") {
        return Scale::desk;
    }
    if (v == "paper") {
        return Scale::paper;
    }
    throw ConfigError("unknown scale '" + std::string(name) + "' (expected desk or paper)");
}

ExperimentConfig ExperimentConfig::for_scale(Scale scale)
{
    ExperimentConfig cfg;
    if (scale == Scale::paper) {
        cfg.runs = 20;
        cfg.population_bi = 100;
        cfg.population_tri = 150;
        cfg.environments = 30;
    }
    return cfg;
}

void ExperimentConfig::validate() const
{
    if (problems.empty()) {
        throw ConfigError("problems: at least one problem is required");
    }
    if (configs.empty()) {
        throw ConfigError("configs: at least one change configuration is required");
    }
    if (strategies.empty()) {
        throw ConfigError("strategies: at least one strategy is required");
    }
    if (runs < 1) {
        throw ConfigError("runs: must be >= 1");
    }
    if (neighborhood < 2) {
        throw ConfigError("neighborhood: must be >= 2");
    }
    if (population_bi < neighborhood || population_tri < neighborhood) {
        throw ConfigError("population: must be >= neighborhood");
    }
    if (warmup < 0) {
        throw ConfigError("warmup: must be >= 0");
    }
    if (environments < 1) {
        throw ConfigError("environments: must be >= 1");
    }
    if (decision_dim < 4) {
        throw ConfigError("decision_dim: must be >= 4");
    }
    if (front_points_bi < 2 || front_points_tri < 2) {
        throw ConfigError("front_points: must be >= 2");
    }
    if (mapping_budget < 1) {
        throw ConfigError("mapping_budget: must be >= 1");
    }
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw ConfigError("lambda: must lie in [0, 1)");
    }
}

std::size_t ExperimentConfig::population_for(ProblemId id) const
{
    return DfProblem(id, decision_dim).objective_count() == 2 ? population_bi : population_tri;
}

std::size_t ExperimentConfig::front_points_for(ProblemId id) const
{
    return DfProblem(id, decision_dim).objective_count() == 2 ? front_points_bi : front_points_tri;
}

std::string ExperimentConfig::canonical() const
{
    std::ostringstream os;
    os << "problems=" << join(problems, [](ProblemId p) { return to_string(p); }) << '\n'
       << "configs=" << join(configs, [](ChangeConfig c) { return to_string(c); }) << '\n'
       << "strategies=" << join(strategies, [](Strategy s) { return to_string(s); }) << '\n'
       << "runs=" << runs << '\n'
       << "seed=" << seed << '\n'
       << "population_bi=" << population_bi << '\n'
       << "population_tri=" << population_tri << '\n'
       << "warmup=" << warmup << '\n'
       << "environments=" << environments << '\n'
       << "decision_dim=" << decision_dim << '\n'
       << "front_points_bi=" << front_points_bi << '\n'
       << "front_points_tri=" << front_points_tri << '\n'
       << "neighborhood=" << neighborhood << '\n'
       << "mapping_budget=" << mapping_budget << '\n'
       << "lambda=" << format_double(lambda) << '\n'
       << "timing=" << (timing ? "true" : "false") << '\n'
       << "threads=" << threads << '\n';
    return os.str();
}

std::string ExperimentConfig::hash() const
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical())));
    return buf;
}

void apply_setting(ExperimentConfig& cfg, std::string_view raw_key, std::string_view value)
{
    const auto key = lower(trim(raw_key));
    if (key == "scale") {
        const auto keep = cfg;
        cfg = ExperimentConfig::for_scale(parse_scale(value));
        cfg.problems = keep.problems;
        cfg.configs = keep.configs;
        cfg.strategies = keep.strategies;
        cfg.seed = keep.seed;
    } else if (key == "problems") {
        cfg.problems.clear();
        for (const auto& p : split_list(value)) {
            cfg.problems.push_back(parse_problem_id(p));
        }
    } else if (key == "configs") {
        cfg.configs.clear();
        for (const auto& c : split_list(value)) {
            cfg.configs.push_back(parse_change_config(c));
        }
    } else if (key == "strategies") {
        cfg.strategies.clear();
        for (const auto& s : split_list(value)) {
            cfg.strategies.push_back(parse_strategy(s));
        }
    } else if (key == "runs") {
        cfg.runs = parse_number<int>(key, value);
    } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "population_bi") {
        cfg.population_bi = parse_number<std::size_t>(key, value);
    } else if (key == "population_tri") {
        cfg.population_tri = parse_number<std::size_t>(key, value);
    } else if (key == "warmup") {
        cfg.warmup = parse_number<int>(key, value);
    } else if (key == "environments") {
        cfg.environments = parse_number<int>(key, value);
    } else if (key == "decision_dim") {
        cfg.decision_dim = parse_number<std::size_t>(key, value);
    } else if (key == "front_points_bi") {
        cfg.front_points_bi = parse_number<std::size_t>(key, value);
    } else if (key == "front_points_tri") {
        cfg.front_points_tri = parse_number<std::size_t>(key, value);
    } else if (key == "neighborhood") {
        cfg.neighborhood = parse_number<std::size_t>(key, value);
    } else if (key == "mapping_budget") {
        cfg.mapping_budget = parse_number<std::size_t>(key, value);
    } else if (key == "lambda") {
        cfg.lambda = parse_number<double>(key, value);
    } else if (key == "timing") {
        cfg.timing = parse_bool(key, value);
    } else if (key == "threads") {
        cfg.threads = parse_number<std::size_t>(key, value);
    } else {
        throw ConfigError("unknown configuration key '" + std::string(raw_key) + "'");
    }
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(number) + ": expected key = value");
        }
        out.emplace_back(trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)));
    }
    return out;
}

std::shared_ptr<const TrueFrontSample> FrontCache::get(const DfProblem& problem, double t, std::size_t count)
{
    const auto key = std::make_tuple(static_cast<int>(problem.id()), t, count);
    {
        std::lock_guard lock(mutex_);
        if (auto it = fronts_.find(key); it != fronts_.end()) {
            return it->second;
        }
    }
    auto front = std::make_shared<const TrueFrontSample>(problem.sample_true_front(t, count));
    std::lock_guard lock(mutex_);
    return fronts_.emplace(key, std::move(front)).first->second;
}

namespace {

DecisionVector uniform_point(const Bounds& bounds, RngStream& rng)
{
    DecisionVector x(bounds.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.uniform(bounds.lower[i], bounds.upper[i]);
    }
    return x;
}

struct RunContext {
    const ExperimentConfig& cfg;
    Strategy strategy;
    Evaluator& evaluator;
    MoeadState& state;
    HistoryBuffer& decision_history;
    HistoryBuffer& objective_history;
    DualDomainState& dual;
    RngStream& predict_rng;
    RngStream& response_rng;
};

// Records the final non-dominated set of the environment that just ended and
// replaces the population with the strategy's reinitialisation at t.
void respond(RunContext& ctx, long finished_environment, double t)
{
    const auto& bounds = ctx.evaluator.problem().bounds();
    const Population previous = ctx.state.population;
    const auto n = previous.size();

    Population fresh;
    if (ctx.strategy == Strategy::random) {
        for (std::size_t i = 0; i < n; ++i) {
            fresh.push_back(ctx.evaluator.make(uniform_point(bounds, ctx.response_rng), t));
        }
        assign_population(ctx.state, std::move(fresh));
        return;
    }

    std::vector<std::vector<double>> ps;
    std::vector<ObjectiveVector> pf;
    for (auto i : nondominated_filter(objectives_of(previous))) {
        ps.push_back(previous[i].x);
        pf.push_back(previous[i].f);
    }
    ctx.decision_history.record(ps, pf, finished_environment);
    ctx.objective_history.record(pf, pf, finished_environment);

    const ResponseParams params{ctx.cfg.mapping_budget};
    Prediction decision_pred{Domain::decision, false, {}};
    Prediction objective_pred{Domain::objective, false, {}};
    if (ctx.strategy != Strategy::adps_ii) {
        decision_pred = predict_population(ctx.decision_history, previous, bounds, ctx.predict_rng);
    }
    if (ctx.strategy != Strategy::adps_i) {
        objective_pred = predict_population(ctx.objective_history, previous, bounds, ctx.predict_rng);
    }

    ResponseReport report;
    switch (ctx.strategy) {
    case Strategy::adps:
        report = respond_to_change(decision_pred, objective_pred, ctx.dual, previous, ctx.evaluator, t, n,
                                   ctx.response_rng, params);
        break;
    case Strategy::adps_i:
        report = respond_with_shares(decision_pred, objective_pred, n, 0, previous, ctx.evaluator, t, n,
                                     ctx.response_rng, params);
        break;
    case Strategy::adps_ii:
        report = respond_with_shares(decision_pred, objective_pred, 0, n, previous, ctx.evaluator, t, n,
                                     ctx.response_rng, params);
        break;
    case Strategy::random:
        break;
    }
    assign_population(ctx.state, std::move(report.population));
}

std::uint64_t stream_key(ProblemId problem, ChangeConfig change)
{
    return fnv1a(to_string(problem) + "/" + to_string(change));
}

} // namespace

ResultRow run_single(const ExperimentConfig& cfg, ProblemId problem_id, ChangeConfig change, Strategy strategy,
                     std::uint64_t seed, FrontCache* cache)
{
    ResultRow row;
    row.problem = to_string(problem_id);
    row.config = to_string(change);
    row.strategy = to_string(strategy);
    row.seed = seed;
    const auto started = std::chrono::steady_clock::now();

    try {
        cfg.validate();
        const DfProblem problem(problem_id, cfg.decision_dim);
        Evaluator evaluator(problem);

        DynamicConfig dynamic;
        dynamic.n_t = change_severity(change);
        dynamic.tau_t = change_tau(change);
        dynamic.environments = cfg.environments;
        dynamic.first_change_after = cfg.warmup;
        dynamic.validate();

        auto weights = init_weights(cfg.population_for(problem_id), problem.objective_count(), cfg.neighborhood);
        const auto n = weights.size();
        row.population = n;

        // Streams depend on (problem, config, seed) only, so strategies
        // share their initial populations.
        const RngStream base(seed, stream_key(problem_id, change));
        auto init_rng = base.split(1);
        auto evolve_rng = base.split(2);
        auto detect_rng = base.split(3);
        auto predict_rng = base.split(4);
        auto response_rng = base.split(5);

        Population initial;
        initial.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            initial.push_back(evaluator.make(uniform_point(problem.bounds(), init_rng), 0.0));
        }
        row.budget.initialization = evaluator.count();

        auto state = make_state(std::move(weights), std::move(initial));
        auto detectors = select_detectors(state.population, detect_rng);

        HistoryBuffer decision_history(Domain::decision);
        HistoryBuffer objective_history(Domain::objective);
        DualDomainState dual;
        dual.lambda = cfg.lambda;
        RunContext ctx{cfg, strategy, evaluator, state, decision_history, objective_history, dual, predict_rng,
                       response_rng};

        FrontCache local_cache;
        FrontCache& fronts = cache != nullptr ? *cache : local_cache;
        RunRecord record;
        record.problem = row.problem;
        record.config = row.config;
        record.strategy = row.strategy;
        record.seed = seed;
        record.expected_environments = cfg.environments;

        const long total = dynamic.total_generations();
        const long tau = dynamic.tau_t;
        double previous_t = 0.0;
        for (long g = 0; g < total; ++g) {
            const long after_warmup = g - cfg.warmup;
            const double t = time_of_generation(after_warmup, dynamic);
            if (t != previous_t) {
                row.changes.push_back(g);
                previous_t = t;
            }

            const auto detection = detect_change(detectors, evaluator, t);
            row.budget.detection += detection.evaluations;
            if (detection.changed) {
                row.detections.push_back(g);
                const auto before = evaluator.count();
                respond(ctx, after_warmup / tau - 1, t);
                const auto spent = evaluator.count() - before;
                row.budget.response += spent;
                row.responses.push_back(spent);
                detectors = select_detectors(state.population, detect_rng);
            }

            const auto before = evaluator.count();
            generation_step(state, evaluator, t, evolve_rng);
            (g < cfg.warmup ? row.budget.warmup : row.budget.generations) += evaluator.count() - before;

            if (after_warmup >= 0 && (after_warmup + 1) % tau == 0) {
                std::vector<ObjectiveVector> approx;
                for (auto i : nondominated_filter(objectives_of(state.population))) {
                    approx.push_back(state.population[i].f);
                }
                const auto front = fronts.get(problem, t, cfg.front_points_for(problem_id));
                EnvironmentSample sample;
                sample.environment = after_warmup / tau;
                sample.igd = igd(front->points, approx);
                sample.hv = hv(approx, hv_reference_point(front->points));
                record.flagged = record.flagged || std::isinf(sample.igd);
                record.samples.push_back(sample);
            }
        }

        row.series = record.samples;
        row.migd = migd(record);
        row.mhv = mhv(record);
        row.evals = evaluator.count();
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
        row.migd = std::numeric_limits<double>::quiet_NaN();
        row.mhv = std::numeric_limits<double>::quiet_NaN();
    }

    if (cfg.timing) {
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }
    return row;
}

std::vector<CellSummary> summarize(const ExperimentConfig& cfg, const std::vector<ResultRow>& rows)
{
    struct Samples {
        std::vector<double> migd;
        std::vector<double> mhv;
        std::size_t failures = 0;
    };
    std::map<std::tuple<std::string, std::string, std::string>, Samples> groups;
    for (const auto& row : rows) {
        auto& g = groups[{row.problem, row.config, row.strategy}];
        if (row.ok) {
            g.migd.push_back(row.migd);
            g.mhv.push_back(row.mhv);
        } else {
            ++g.failures;
        }
    }

    const auto mean_std = [](const std::vector<double>& v) {
        if (v.empty()) {
            return std::pair{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
        }
        double mean = 0.0;
        for (auto x : v) {
            mean += x;
        }
        mean /= static_cast<double>(v.size());
        double ss = 0.0;
        for (auto x : v) {
            ss += (x - mean) * (x - mean);
        }
        const double sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
        return std::pair{mean, sd};
    };
    const auto negate = [](std::vector<double> v) {
        for (auto& x : v) {
            x = -x;
        }
        return v;
    };

    std::vector<CellSummary> out;
    for (auto p : cfg.problems) {
        for (auto c : cfg.configs) {
            const auto adps_key = std::make_tuple(to_string(p), to_string(c), to_string(Strategy::adps));
            const auto adps_it = groups.find(adps_key);
            for (auto s : cfg.strategies) {
                const auto key = std::make_tuple(to_string(p), to_string(c), to_string(s));
                const auto it = groups.find(key);
                if (it == groups.end()) {
                    continue;
                }
                const auto& g = it->second;
                CellSummary cell;
                cell.problem = to_string(p);
                cell.config = to_string(c);
                cell.strategy = to_string(s);
                cell.runs = g.migd.size();
                cell.failures = g.failures;
                std::tie(cell.migd_mean, cell.migd_std) = mean_std(g.migd);
                std::tie(cell.mhv_mean, cell.mhv_std) = mean_std(g.mhv);
                if (s != Strategy::adps && adps_it != groups.end() && adps_it->second.migd.size() >= 5 &&
                    g.migd.size() >= 5) {
                    const auto& a = adps_it->second;
                    cell.migd_mark = comparison_mark(rank_sum_test(a.migd, g.migd, 0.05));
                    cell.mhv_mark = comparison_mark(rank_sum_test(negate(a.mhv), negate(g.mhv), 0.05));
                }
                out.push_back(cell);
            }
        }
    }
    return out;
}

MatrixResult run_matrix(const ExperimentConfig& cfg)
{
    cfg.validate();
    struct Cell {
        ProblemId problem;
        ChangeConfig change;
        Strategy strategy;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (auto p : cfg.problems) {
        for (auto c : cfg.configs) {
            for (auto s : cfg.strategies) {
                for (int r = 0; r < cfg.runs; ++r) {
                    cells.push_back(Cell{p, c, s, cfg.seed + static_cast<std::uint64_t>(r)});
                }
            }
        }
    }

    MatrixResult result;
    result.rows.resize(cells.size());
    FrontCache cache;
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (auto i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
            const auto& cell = cells[i];
            result.rows[i] = run_single(cfg, cell.problem, cell.change, cell.strategy, cell.seed, &cache);
        }
    };

    std::size_t threads = cfg.threads != 0 ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, cells.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }

    for (const auto& row : result.rows) {
        result.failures += row.ok ? 0 : 1;
    }
    result.cells = summarize(cfg, result.rows);
    return result;
}

std::string results_csv_header()
{
    return "problem,config,strategy,seed,migd,mhv,seconds,evals";
}

std::string results_csv_line(const ResultRow& row)
{
    return row.problem + "," + row.config + "," + row.strategy + "," + std::to_string(row.seed) + "," +
           format_double(row.migd) + "," + format_double(row.mhv) + "," + format_double(row.seconds) + "," +
           std::to_string(row.evals);
}

std::string series_csv(const ResultRow& row)
{
    std::string out = "environment,igd,hv\n";
    for (const auto& s : row.series) {
        out += std::to_string(s.environment) + "," + format_double(s.igd) + "," + format_double(s.hv) + "\n";
    }
    return out;
}

std::string series_file_name(const ResultRow& row)
{
    return row.problem + "_" + row.config + "_" + row.strategy + "_s" + std::to_string(row.seed) + ".csv";
}

std::string summary_markdown(const ExperimentConfig& cfg, const MatrixResult& result)
{
    std::ostringstream os;
    os << "# Results\n\n"
       << "config hash `" << cfg.hash() << "`, schema v" << results_schema_version << ", " << cfg.runs
       << " runs per cell, " << cfg.environments << " environments\n\n"
       << "Marks compare ADPS with each strategy by rank-sum test at 0.05: "
       << "+ ADPS significantly better, - significantly worse, = no significant difference.\n";

    const auto table = [&](const char* title, bool is_migd) {
        os << "\n## " << title << " mean (std)\n\n| problem | config |";
        for (auto s : cfg.strategies) {
            os << ' ' << to_string(s) << " |";
        }
        os << "\n|---|---|";
        for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
            os << "---|";
        }
        os << '\n';
        for (auto p : cfg.problems) {
            for (auto c : cfg.configs) {
                os << "| " << to_string(p) << " | " << to_string(c) << " |";
                for (auto s : cfg.strategies) {
                    const auto it = std::find_if(result.cells.begin(), result.cells.end(), [&](const CellSummary& x) {
                        return x.problem == to_string(p) && x.config == to_string(c) && x.strategy == to_string(s);
                    });
                    if (it == result.cells.end() || it->runs == 0) {
                        os << " failed |";
                        continue;
                    }
                    const double mean = is_migd ? it->migd_mean : it->mhv_mean;
                    const double sd = is_migd ? it->migd_std : it->mhv_std;
                    const char mark = is_migd ? it->migd_mark : it->mhv_mark;
                    os << ' ' << format_sci(mean) << " (" << format_sci(sd) << ")";
                    if (mark != ' ') {
                        os << ' ' << mark;
                    }
                    os << " |";
                }
                os << '\n';
            }
        }
    };
    table("MIGD", true);
    table("MHV", false);

    os << "\n## ADPS versus each strategy (+/-/=)\n\n| comparison | MIGD | MHV |\n|---|---|---|\n";
    for (auto s : cfg.strategies) {
        if (s == Strategy::adps) {
            continue;
        }
        int migd_counts[3] = {0, 0, 0};
        int mhv_counts[3] = {0, 0, 0};
        bool any = false;
        const auto bump = [](int* counts, char mark) {
            if (mark == '+') {
                ++counts[0];
            } else if (mark == '-') {
                ++counts[1];
            } else if (mark == '=') {
                ++counts[2];
            }
        };
        for (const auto& cell : result.cells) {
            if (cell.strategy != to_string(s) || cell.migd_mark == ' ') {
                continue;
            }
            any = true;
            bump(migd_counts, cell.migd_mark);
            bump(mhv_counts, cell.mhv_mark);
        }
        if (!any) {
            os << "| ADPS vs " << to_string(s) << " | n/a | n/a |\n";
            continue;
        }
        os << "| ADPS vs " << to_string(s) << " | " << migd_counts[0] << '/' << migd_counts[1] << '/'
           << migd_counts[2] << " | " << mhv_counts[0] << '/' << mhv_counts[1] << '/' << mhv_counts[2] << " |\n";
    }

    if (result.failures > 0) {
        os << "\n## Failed runs\n\n";
        for (const auto& row : result.rows) {
            if (!row.ok) {
                os << "- " << row.problem << ' ' << row.config << ' ' << row.strategy << " seed " << row.seed << ": "
                   << row.error << '\n';
            }
        }
    }
    return os.str();
}

void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg, const MatrixResult& result)
{
    std::filesystem::create_directories(dir / "series");
    const auto write = [](const std::filesystem::path& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write " + path.string());
        }
        out << text;
    };

    std::string csv = results_csv_header() + "\n";
    for (const auto& row : result.rows) {
        csv += results_csv_line(row) + "\n";
        if (row.ok) {
            write(dir / "series" / series_file_name(row), series_csv(row));
        }
    }
    write(dir / "results.csv", csv);
    write(dir / "summary.md", summary_markdown(cfg, result));
    write(dir / "manifest.txt", "schema_version=" + std::to_string(results_schema_version) +
                                    "\nconfig_hash=" + cfg.hash() + "\n" + cfg.canonical());
}

} // namespace dynmo
