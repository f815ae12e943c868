#ifndef DYNMO_CLUSTERING_HPP
#define DYNMO_CLUSTERING_HPP

#include "dynmo/core.hpp"

#include <cstddef>
#include <vector>

namespace dynmo {

enum class Domain { decision, objective };

inline constexpr std::size_t default_kmeans_passes = 3;

// K centres in one domain. Center 0 is seeded at the mean of the points,
// centers 1..K-1 at the minimisers of objectives 1..K-1.
struct ClusterModel {
    Domain domain = Domain::decision;
    std::vector<std::vector<double>> centers;
    std::vector<std::size_t> counts;
    bool duplicate_seeds = false;

    [[nodiscard]] std::size_t k() const noexcept { return centers.size(); }
};

// k = 0 means K = m + 1 with m the objective count. k must not exceed m + 1.
// Ties between equal objective minima go to the lowest index.
[[nodiscard]] ClusterModel seed_centers(std::span<const std::vector<double>> points,
                                        std::span<const ObjectiveVector> objectives, Domain domain,
                                        std::size_t k = 0);

// Index of the nearest center; equidistant points go to the lowest index.
[[nodiscard]] std::size_t nearest_center(const ClusterModel& model, std::span<const double> x);
[[nodiscard]] std::size_t nearest_center(std::span<const std::vector<double>> centers, std::span<const double> x);

// Moves the nearest center towards x by 1/(count+1) and increments its count.
void online_kmeans_step(ClusterModel& model, std::span<const double> x);

// seed_centers followed by `passes` sweeps over the points in order.
[[nodiscard]] ClusterModel cluster_population(std::span<const std::vector<double>> points,
                                              std::span<const ObjectiveVector> objectives, Domain domain,
                                              std::size_t passes = default_kmeans_passes, std::size_t k = 0);

// Greedy nearest-pair matching of `current` onto `previous` (same size).
// Returns perm such that current[perm[i]] corresponds to previous[i].
[[nodiscard]] std::vector<std::size_t> align_centers(std::span<const std::vector<double>> previous,
                                                     std::span<const std::vector<double>> current);

} // namespace dynmo

#endif
