#include "dynmo/harness.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct RunOptions {
    std::optional<std::string> config_file;
    std::optional<std::string> scale;
    std::optional<std::string> problems;
    std::optional<std::string> configs;
    std::optional<std::string> strategies;
    std::optional<std::string> runs;
    std::optional<std::string> seed;
    std::optional<std::string> environments;
    std::optional<std::string> threads;
    bool no_timing = false;
    std::string out = "results";
};

dynmo::ExperimentConfig build_config(const RunOptions& opt)
{
    std::vector<std::pair<std::string, std::string>> file;
    if (opt.config_file) {
        file = dynmo::read_config_file(*opt.config_file);
    }

    dynmo::ExperimentConfig cfg;
    if (opt.scale) {
        dynmo::apply_setting(cfg, "scale", *opt.scale);
    } else {
        for (const auto& [key, value] : file) {
            if (key == "scale") {
                dynmo::apply_setting(cfg, key, value);
            }
        }
    }
    for (const auto& [key, value] : file) {
        if (key != "scale") {
            dynmo::apply_setting(cfg, key, value);
        }
    }

    const auto flag = [&cfg](const char* key, const std::optional<std::string>& value) {
        if (value) {
            dynmo::apply_setting(cfg, key, *value);
        }
    };
    if (opt.problems && *opt.problems == "all") {
        cfg.problems = dynmo::all_problems();
    } else {
        flag("problems", opt.problems);
    }
    flag("configs", opt.configs);
    flag("strategies", opt.strategies);
    flag("runs", opt.runs);
    flag("seed", opt.seed);
    flag("environments", opt.environments);
    flag("threads", opt.threads);
    if (opt.no_timing) {
        cfg.timing = false;
    }
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dynamic multi-objective benchmark runner"};
    app.require_subcommand(1);

    RunOptions opt;
    auto* run = app.add_subcommand("run", "Run a problem x config x strategy x seed matrix");
    run->add_option("--config", opt.config_file, "key = value file; flags override it");
    run->add_option("--scale", opt.scale, "desk or paper defaults");
    run->add_option("--problems", opt.problems, "comma list of DF1..DF14, or all");
    run->add_option("--configs", opt.configs, "comma list of c1..c4");
    run->add_option("--strategies", opt.strategies, "comma list of adps, adps-i, adps-ii, random");
    run->add_option("--runs", opt.runs, "independent runs per cell");
    run->add_option("--seed", opt.seed, "base seed; run r uses seed + r");
    run->add_option("--environments", opt.environments, "environments per run");
    run->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
    run->add_flag("--no-timing", opt.no_timing, "write 0 seconds so reruns are byte-identical");
    run->add_option("--out", opt.out, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    dynmo::ExperimentConfig cfg;
    try {
        cfg = build_config(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    std::cerr << "config hash " << cfg.hash() << '\n';
    const auto result = dynmo::run_matrix(cfg);
    try {
        dynmo::write_outputs(opt.out, cfg, result);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cout << dynmo::summary_markdown(cfg, result);
    if (result.failures > 0) {
        std::cerr << result.failures << " run(s) failed, see summary.md\n";
        return 2;
    }
    return 0;
}
