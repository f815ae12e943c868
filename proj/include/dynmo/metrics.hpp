#ifndef DYNMO_METRICS_HPP
#define DYNMO_METRICS_HPP

#include "dynmo/core.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dynmo {

// Mean over reference points of the distance to the nearest approximation
// point. +infinity when `approx` is empty.
[[nodiscard]] double igd(std::span<const ObjectiveVector> reference, std::span<const ObjectiveVector> approx);

// Hypervolume dominated by `front` and bounded by `ref` (m = 2 or 3).
// Points not strictly better than `ref` in every objective add nothing.
[[nodiscard]] double hv(std::span<const ObjectiveVector> front, std::span<const double> ref);

// Per-objective maximum of the sample plus `offset`.
[[nodiscard]] ObjectiveVector hv_reference_point(std::span<const ObjectiveVector> true_front, double offset = 0.5);

struct EnvironmentSample {
    long environment = 0;
    double igd = 0.0;
    double hv = 0.0;
};

struct RunRecord {
    std::string problem;
    std::string config;
    std::string strategy;
    std::uint64_t seed = 0;
    long expected_environments = 0;
    std::vector<EnvironmentSample> samples;
    bool flagged = false; // some environment had an empty approximation
};

// Means over the recorded samples (divisor = number of samples). Throw
// ContractError naming the missing environments when the record has fewer
// samples than expected_environments.
[[nodiscard]] double migd(const RunRecord& record);
[[nodiscard]] double mhv(const RunRecord& record);

struct MannWhitney {
    double u = 0.0; // U statistic of the first sample
    double z = 0.0;
    double p = 1.0; // two-sided, normal approximation with tie and continuity correction
};

[[nodiscard]] MannWhitney mann_whitney_u(std::span<const double> a, std::span<const double> b);

enum class Comparison { better, worse, equivalent };

// Minimisation sense: better means a is significantly smaller than b.
// Requires |a|, |b| >= 5 and alpha in (0, 1) (ConfigError otherwise).
[[nodiscard]] Comparison rank_sum_test(std::span<const double> a, std::span<const double> b, double alpha = 0.05);

// '+', '-' or '='.
[[nodiscard]] char comparison_mark(Comparison c);

[[nodiscard]] double median(std::vector<double> values);

} // namespace dynmo

#endif
