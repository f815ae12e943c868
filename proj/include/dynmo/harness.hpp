#ifndef DYNMO_HARNESS_HPP
#define DYNMO_HARNESS_HPP

#include "dynmo/metrics.hpp"
#include "dynmo/problems.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace dynmo {

inline constexpr int results_schema_version = 1;

enum class Strategy { adps, adps_i, adps_ii, random };

[[nodiscard]] std::string to_string(Strategy s);
[[nodiscard]] Strategy parse_strategy(std::string_view name);

// C1..C4 as (tau_t, n_t): (5,5), (5,10), (10,5), (10,10).
enum class ChangeConfig { c1, c2, c3, c4 };

[[nodiscard]] std::string to_string(ChangeConfig c);
[[nodiscard]] ChangeConfig parse_change_config(std::string_view name);
[[nodiscard]] int change_tau(ChangeConfig c);
[[nodiscard]] int change_severity(ChangeConfig c);

enum class Scale { desk, paper };

[[nodiscard]] Scale parse_scale(std::string_view name);

struct ExperimentConfig {
    std::vector<ProblemId> problems{ProblemId::DF1, ProblemId::DF2};
    std::vector<ChangeConfig> configs{ChangeConfig::c3};
    std::vector<Strategy> strategies{Strategy::adps, Strategy::random};
    int runs = 5;
    std::uint64_t seed = 1;
    std::size_t population_bi = 50;
    std::size_t population_tri = 75;
    int warmup = 50;
    int environments = 15;
    std::size_t decision_dim = 10;
    std::size_t front_points_bi = 1000;
    std::size_t front_points_tri = 1500;
    std::size_t neighborhood = 20;
    std::size_t mapping_budget = 20;
    double lambda = 0.02;
    bool timing = true;      // false writes 0 seconds so rows are reproducible bytewise
    std::size_t threads = 0; // 0: hardware concurrency

    [[nodiscard]] static ExperimentConfig for_scale(Scale scale);

    // Throws ConfigError naming the offending field.
    void validate() const;

    // Requested population size (the realised size is the nearest weight lattice).
    [[nodiscard]] std::size_t population_for(ProblemId id) const;
    [[nodiscard]] std::size_t front_points_for(ProblemId id) const;

    // One "key=value" line per field in a fixed order.
    [[nodiscard]] std::string canonical() const;
    // 16 hex digits of FNV-1a over canonical().
    [[nodiscard]] std::string hash() const;
};

// Applies one key=value setting (the keys of canonical(), plus "scale").
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Reads "key = value" lines; '#' starts a comment. Returns the settings in
// file order so callers can apply "scale" first.
[[nodiscard]] std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

// Evaluations spent per stage of one run.
struct BudgetBreakdown {
    std::uint64_t initialization = 0;
    std::uint64_t warmup = 0;
    std::uint64_t generations = 0;
    std::uint64_t detection = 0;
    std::uint64_t response = 0;

    [[nodiscard]] std::uint64_t total() const noexcept
    {
        return initialization + warmup + generations + detection + response;
    }
};

struct ResultRow {
    std::string problem;
    std::string config;
    std::string strategy;
    std::uint64_t seed = 0;
    double migd = 0.0;
    double mhv = 0.0;
    std::vector<EnvironmentSample> series;
    double seconds = 0.0;
    std::uint64_t evals = 0;

    BudgetBreakdown budget;
    std::size_t population = 0;
    std::vector<long> detections;         // generations at which a change was detected
    std::vector<long> changes;            // generations at which t actually changed
    std::vector<std::uint64_t> responses; // evaluations per change response
    bool ok = true;
    std::string error;
};

// True fronts per (problem, t), shared by concurrent runs.
class FrontCache {
public:
    [[nodiscard]] std::shared_ptr<const TrueFrontSample> get(const DfProblem& problem, double t, std::size_t count);

private:
    std::mutex mutex_;
    std::map<std::tuple<int, double, std::size_t>, std::shared_ptr<const TrueFrontSample>> fronts_;
};

[[nodiscard]] ResultRow run_single(const ExperimentConfig& cfg, ProblemId problem, ChangeConfig change,
                                   Strategy strategy, std::uint64_t seed, FrontCache* cache = nullptr);

struct CellSummary {
    std::string problem;
    std::string config;
    std::string strategy;
    std::size_t runs = 0;
    std::size_t failures = 0;
    double migd_mean = 0.0;
    double migd_std = 0.0;
    double mhv_mean = 0.0;
    double mhv_std = 0.0;
    char migd_mark = ' '; // ADPS versus this strategy; ' ' for ADPS itself or when not tested
    char mhv_mark = ' ';
};

struct MatrixResult {
    std::vector<ResultRow> rows;
    std::vector<CellSummary> cells;
    std::size_t failures = 0;
};

// Runs every (problem, config, strategy, seed) cell; rows come back in that
// nesting order regardless of thread scheduling.
[[nodiscard]] MatrixResult run_matrix(const ExperimentConfig& cfg);

// Mean, sample standard deviation and significance marks per cell.
[[nodiscard]] std::vector<CellSummary> summarize(const ExperimentConfig& cfg, const std::vector<ResultRow>& rows);

[[nodiscard]] std::string results_csv_header();
[[nodiscard]] std::string results_csv_line(const ResultRow& row);
[[nodiscard]] std::string series_csv(const ResultRow& row);
[[nodiscard]] std::string series_file_name(const ResultRow& row);
[[nodiscard]] std::string summary_markdown(const ExperimentConfig& cfg, const MatrixResult& result);

// results.csv, series/, summary.md and manifest.txt under `dir`.
void write_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg, const MatrixResult& result);

} // namespace dynmo

#endif
