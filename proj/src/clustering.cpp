#include "dynmo/clustering.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

namespace dynmo {

ClusterModel seed_centers(std::span<const std::vector<double>> points, std::span<const ObjectiveVector> objectives,
                          Domain domain, std::size_t k)
{
    if (points.empty()) {
        throw ContractError("seed_centers: no points");
    }
    if (objectives.size() != points.size()) {
        throw ContractError("seed_centers: objectives not aligned with points");
    }
    const auto m = objectives.front().size();
    if (k == 0) {
        k = m + 1;
    }
    if (k > m + 1) {
        throw ContractError("seed_centers: at most m + 1 seeds are defined");
    }
    const auto dim = points.front().size();
    for (const auto& p : points) {
        if (p.size() != dim) {
            throw ContractError("seed_centers: points differ in dimension");
        }
    }

    ClusterModel model;
    model.domain = domain;
    std::vector<double> mean(dim, 0.0);
    for (const auto& p : points) {
        for (std::size_t d = 0; d < dim; ++d) {
            mean[d] += p[d];
        }
    }
    for (auto& v : mean) {
        v /= static_cast<double>(points.size());
    }
    model.centers.push_back(std::move(mean));

    for (std::size_t j = 0; j + 1 < k; ++j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (objectives[i][j] < objectives[best][j]) {
                best = i;
            }
        }
        model.centers.push_back(points[best]);
    }
    model.counts.assign(model.centers.size(), 0);

    for (std::size_t a = 0; a < model.centers.size() && !model.duplicate_seeds; ++a) {
        for (std::size_t b = a + 1; b < model.centers.size(); ++b) {
            if (model.centers[a] == model.centers[b]) {
                model.duplicate_seeds = true;
                break;
            }
        }
    }
    return model;
}

std::size_t nearest_center(std::span<const std::vector<double>> centers, std::span<const double> x)
{
    if (centers.empty()) {
        throw ContractError("nearest_center: no centers");
    }
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = squared_distance(centers[c], x);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

std::size_t nearest_center(const ClusterModel& model, std::span<const double> x)
{
    return nearest_center(model.centers, x);
}

void online_kmeans_step(ClusterModel& model, std::span<const double> x)
{
    const auto c = nearest_center(model, x);
    auto& center = model.centers[c];
    const double rate = 1.0 / static_cast<double>(model.counts[c] + 1);
    for (std::size_t d = 0; d < center.size(); ++d) {
        center[d] += rate * (x[d] - center[d]);
    }
    ++model.counts[c];
}

ClusterModel cluster_population(std::span<const std::vector<double>> points,
                                std::span<const ObjectiveVector> objectives, Domain domain, std::size_t passes,
                                std::size_t k)
{
    if (passes < 1) {
        throw ContractError("cluster_population: passes must be >= 1");
    }
    auto model = seed_centers(points, objectives, domain, k);
    for (std::size_t pass = 0; pass < passes; ++pass) {
        for (const auto& p : points) {
            online_kmeans_step(model, p);
        }
    }
    return model;
}

std::vector<std::size_t> align_centers(std::span<const std::vector<double>> previous,
                                       std::span<const std::vector<double>> current)
{
    if (previous.size() != current.size()) {
        throw ContractError("align_centers: center sets differ in size");
    }
    const auto k = previous.size();
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    pairs.reserve(k * k);
    for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t c = 0; c < k; ++c) {
            pairs.emplace_back(squared_distance(previous[p], current[c]), p, c);
        }
    }
    std::sort(pairs.begin(), pairs.end());

    std::vector<std::size_t> perm(k, k);
    std::vector<bool> used(k, false);
    for (const auto& [d, p, c] : pairs) {
        if (perm[p] == k && !used[c]) {
            perm[p] = c;
            used[c] = true;
        }
    }
    return perm;
}

} // namespace dynmo
