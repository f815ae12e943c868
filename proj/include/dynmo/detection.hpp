#ifndef DYNMO_DETECTION_HPP
#define DYNMO_DETECTION_HPP

#include "dynmo/core.hpp"
#include "dynmo/problems.hpp"
#include "dynmo/rng.hpp"

#include <cstddef>
#include <vector>

namespace dynmo {

inline constexpr double detector_fraction = 0.10;
inline constexpr double detection_tolerance = 1e-12;

// Detectors keep their own copy of the decision vector so that later
// replacements in the population do not disturb the comparison.
struct DetectorSet {
    std::vector<std::size_t> indices;
    std::vector<DecisionVector> x;
    std::vector<ObjectiveVector> f;

    [[nodiscard]] std::size_t size() const noexcept { return indices.size(); }
};

// max(1, round(0.1 * n))
[[nodiscard]] std::size_t detector_count(std::size_t population_size);

// Throws ContractError on an empty population.
[[nodiscard]] DetectorSet select_detectors(const Population& pop, RngStream& rng);

struct DetectionResult {
    bool changed = false;
    std::size_t evaluations = 0;
};

// Re-evaluates every detector at t; a change is any objective component that
// moved by more than detection_tolerance.
DetectionResult detect_change(const DetectorSet& detectors, Evaluator& evaluator, double t);

} // namespace dynmo

#endif
