#include "dynmo/detection.hpp"

#include <algorithm>
#include <cmath>

namespace dynmo {

std::size_t detector_count(std::size_t population_size)
{
    const auto k = static_cast<std::size_t>(std::lround(detector_fraction * static_cast<double>(population_size)));
    return std::max<std::size_t>(1, k);
}

DetectorSet select_detectors(const Population& pop, RngStream& rng)
{
    if (pop.empty()) {
        throw ContractError("select_detectors: empty population");
    }
    DetectorSet set;
    set.indices = rng.sample_without_replacement(pop.size(), detector_count(pop.size()));
    for (auto i : set.indices) {
        set.x.push_back(pop[i].x);
        set.f.push_back(pop[i].f);
    }
    return set;
}

DetectionResult detect_change(const DetectorSet& detectors, Evaluator& evaluator, double t)
{
    if (detectors.x.size() != detectors.f.size() || detectors.x.empty()) {
        throw ContractError("detect_change: detector set has no stored values");
    }
    DetectionResult result;
    // every detector is re-evaluated even after the first hit, so the cost
    // per generation is always |detectors|
    for (std::size_t k = 0; k < detectors.x.size(); ++k) {
        const auto fresh = evaluator(detectors.x[k], t);
        ++result.evaluations;
        for (std::size_t j = 0; j < fresh.size(); ++j) {
            if (!(std::abs(fresh[j] - detectors.f[k][j]) <= detection_tolerance)) {
                result.changed = true;
            }
        }
    }
    return result;
}

} // namespace dynmo
