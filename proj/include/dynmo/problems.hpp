#ifndef DYNMO_PROBLEMS_HPP
#define DYNMO_PROBLEMS_HPP

#include "dynmo/core.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dynmo {

enum class ProblemId : int {
    DF1 = 1, DF2, DF3, DF4, DF5, DF6, DF7, DF8, DF9, DF10, DF11, DF12, DF13, DF14
};

[[nodiscard]] std::string to_string(ProblemId id);
// Accepts "DF1".."DF14", case-insensitive. Throws ConfigError otherwise.
[[nodiscard]] ProblemId parse_problem_id(std::string_view name);
[[nodiscard]] std::vector<ProblemId> all_problems();

// Change frequency / severity of a dynamic run.
struct DynamicConfig {
    int n_t = 10;               // severity: t advances by 1/n_t per environment
    int tau_t = 10;             // generations per environment
    int environments = 30;
    int first_change_after = 50; // static warm-up generations at t = 0

    void validate() const;
    [[nodiscard]] long total_generations() const noexcept
    {
        return static_cast<long>(first_change_after) + static_cast<long>(environments) * tau_t;
    }
};

// t = floor(tau_effective / tau_t) / n_t, where tau_effective counts
// generations after the warm-up. Negative counts (warm-up) map to t = 0.
[[nodiscard]] double time_of_generation(long tau_effective, const DynamicConfig& cfg);

struct TrueFrontSample {
    std::vector<ObjectiveVector> points;
    double time = 0.0;
};

// One instance of the DF benchmark suite. Stateless: evaluate() is a pure
// function of (x, t) and safe to call from several threads.
class DfProblem {
public:
    explicit DfProblem(ProblemId id, std::size_t decision_dim = 10);

    [[nodiscard]] ProblemId id() const noexcept { return id_; }
    [[nodiscard]] std::string name() const { return to_string(id_); }
    [[nodiscard]] std::size_t decision_dim() const noexcept { return n_; }
    [[nodiscard]] std::size_t objective_count() const noexcept { return m_; }
    [[nodiscard]] const Bounds& bounds() const noexcept { return bounds_; }

    [[nodiscard]] ObjectiveVector evaluate(std::span<const double> x, double t) const;

    // Near-uniform sample of the analytic Pareto front at time t. Exactly
    // `count` mutually non-dominated points (count >= 2).
    [[nodiscard]] TrueFrontSample sample_true_front(double t, std::size_t count) const;

    // Pareto-set points matching sample_true_front (same order).
    [[nodiscard]] std::vector<DecisionVector> sample_true_set(double t, std::size_t count) const;

    // Analytic Pareto-set point for position parameters u, v in [0, 1]
    // (v is ignored for bi-objective problems).
    [[nodiscard]] DecisionVector pareto_set_point(double u, double v, double t) const;

private:
    struct FrontSample {
        std::vector<DecisionVector> xs;
        std::vector<ObjectiveVector> fs;
    };
    [[nodiscard]] FrontSample sample_front(double t, std::size_t count) const;

    ProblemId id_;
    std::size_t n_;
    std::size_t m_;
    Bounds bounds_;
};

// Problem plus a global evaluation counter. Every objective evaluation in a
// run goes through one Evaluator so the budget can be reconciled.
class Evaluator {
public:
    explicit Evaluator(const DfProblem& problem) : problem_(&problem) {}

    ObjectiveVector operator()(std::span<const double> x, double t)
    {
        ++count_;
        return problem_->evaluate(x, t);
    }

    Individual make(DecisionVector x, double t)
    {
        auto f = (*this)(x, t);
        return Individual{std::move(x), std::move(f), t};
    }

    [[nodiscard]] const DfProblem& problem() const noexcept { return *problem_; }
    [[nodiscard]] std::uint64_t count() const noexcept { return count_; }

private:
    const DfProblem* problem_;
    std::uint64_t count_ = 0;
};

} // namespace dynmo

#endif
