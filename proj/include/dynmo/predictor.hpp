#ifndef DYNMO_PREDICTOR_HPP
#define DYNMO_PREDICTOR_HPP

#include "dynmo/clustering.hpp"
#include "dynmo/core.hpp"
#include "dynmo/rng.hpp"

#include <array>
#include <cstddef>
#include <deque>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dynmo {

inline constexpr std::size_t history_depth = 3;

class InsufficientHistory : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Final Pareto set (decision domain) or front (objective domain) of one
// environment plus its cluster centres, re-ordered so that centers[k] tracks
// the same cluster as centers[k] of the previous snapshot.
struct Snapshot {
    long environment = 0;
    std::vector<std::vector<double>> points;
    std::vector<ObjectiveVector> objectives;
    std::vector<std::vector<double>> centers;
};

// The last three snapshots of one domain, and the accelerations computed
// whenever three consecutive snapshots were available (newest first, at most
// three: a^t, a^{t-1}, a^{t-2}).
class HistoryBuffer {
public:
    // k = 0: K = m + 1 clusters.
    explicit HistoryBuffer(Domain domain, std::size_t k = 0, std::size_t passes = default_kmeans_passes);

    // Clusters the points, aligns the centers with the newest snapshot and
    // appends. `objectives` are the objective vectors of `points`.
    void record(std::vector<std::vector<double>> points, std::vector<ObjectiveVector> objectives, long environment);

    // As record(), with caller-provided centers (still aligned).
    void record_with_centers(std::vector<std::vector<double>> points, std::vector<ObjectiveVector> objectives,
                             std::vector<std::vector<double>> centers, long environment);

    [[nodiscard]] Domain domain() const noexcept { return domain_; }
    [[nodiscard]] std::size_t size() const noexcept { return snapshots_.size(); }
    [[nodiscard]] bool empty() const noexcept { return snapshots_.empty(); }

    // age 0 is the newest snapshot (t), 1 is t-1, 2 is t-2.
    [[nodiscard]] const Snapshot& at(std::size_t age) const;

    [[nodiscard]] const std::deque<std::vector<std::vector<double>>>& accelerations() const noexcept
    {
        return accelerations_;
    }

    void clear();

private:
    Domain domain_;
    std::size_t k_;
    std::size_t passes_;
    std::deque<Snapshot> snapshots_; // newest first
    std::deque<std::vector<std::vector<double>>> accelerations_;
};

struct ClusterKinematics {
    std::vector<std::vector<double>> velocity;     // C_k^t - C_k^{t-1}
    std::vector<std::vector<double>> acceleration; // C_k^t - 2 C_k^{t-1} + C_k^{t-2}
    // older[h][k]: acceleration of cluster k at t-1-h, when it was computed
    std::vector<std::vector<std::vector<double>>> older;

    [[nodiscard]] std::size_t k() const noexcept { return velocity.size(); }
};

// Throws InsufficientHistory with fewer than three snapshots.
[[nodiscard]] ClusterKinematics compute_kinematics(const HistoryBuffer& history);

enum class Severity { mild, severe };

// Sign of <a_k^t, a_k^{t-1}>: >= 0 is mild. Mild when a^{t-1} is unknown.
[[nodiscard]] Severity severity_test(const ClusterKinematics& kin, std::size_t cluster);

struct PredictorParams {
    std::array<double, 3> smoothing{0.5, 0.3, 0.2};
    bool noise = true;
    double retain_fraction = 0.9;
};

// x + dR_k + a_k (mild) or x + dR_k + sum_h w_h a_k^{t-h} (severe, missing
// terms dropped and weights renormalised), plus truncated Gaussian noise
// with standard deviation `sigma` (|eps| <= 3 sigma). No clamping.
[[nodiscard]] std::vector<double> predict_individual(std::span<const double> x, std::size_t cluster,
                                                     const ClusterKinematics& kin, Severity severity, double sigma,
                                                     RngStream& rng, const PredictorParams& params = {});

// mean over x in N^t of min over y in N^{t-1} of |x - y|, divided by the
// dimension of the domain.
[[nodiscard]] double noise_scale(const HistoryBuffer& history);

struct PredictedMember {
    // Coordinates in the prediction domain. Empty for objective-domain
    // cold-start members, which carry an unevaluated random decision vector.
    std::vector<double> point;
    std::optional<DecisionVector> decision;
};

struct Prediction {
    Domain domain = Domain::decision;
    bool cold_start = false;
    std::vector<PredictedMember> members;
};

// Predicts the next-environment counterpart of every member of `current`.
// With fewer than three snapshots: keeps floor(retain_fraction * N) members
// ranked by Pareto rank (random tie-break) and fills the rest randomly.
// Decision-domain predictions are clamped to `bounds`.
[[nodiscard]] Prediction predict_population(const HistoryBuffer& history, const Population& current,
                                            const Bounds& bounds, RngStream& rng,
                                            const PredictorParams& params = {});

// Indices of `pop` ordered by Pareto rank, ties broken randomly.
[[nodiscard]] std::vector<std::size_t> rank_then_random_order(const Population& pop, RngStream& rng);

} // namespace dynmo

#endif
