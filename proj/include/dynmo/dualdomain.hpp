#ifndef DYNMO_DUALDOMAIN_HPP
#define DYNMO_DUALDOMAIN_HPP

#include "dynmo/core.hpp"
#include "dynmo/predictor.hpp"
#include "dynmo/problems.hpp"
#include "dynmo/rng.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dynmo {

inline constexpr double default_weight_step = 0.02;
inline constexpr double weight_floor = 0.1;
inline constexpr double weight_ceiling = 0.9;
inline constexpr std::size_t default_mapping_budget = 20;

// Members of each origin that are non-dominated in the merged response set.
struct SurvivalCounts {
    std::size_t decision = 0;  // N_DSPS
    std::size_t objective = 0; // N_DSPF
};

struct DualDomainState {
    double w_d = 0.5;
    double w_o = 0.5;
    double lambda = default_weight_step;
    std::optional<SurvivalCounts> last;

    void validate() const;
};

// Rewards the domain whose members survived more often (ties reward the
// decision domain), renormalises to w_d + w_o = 1 and clamps to [0.1, 0.9].
// Requires state.last.
[[nodiscard]] DualDomainState update_weights(DualDomainState state);

struct MappingResult {
    DecisionVector x;
    ObjectiveVector f;
    double distance = 0.0;
    double initial_distance = 0.0;
    std::size_t evaluations = 0;
};

// Searches for x with F(x, t) close to `target`. Starts at the archive member
// whose stored objective vector is nearest to the target (uniform random
// point when the archive is empty), then spends the rest of `budget` on
// Gaussian perturbations with step 0.05 of each variable's range, halved
// after 5 consecutive failures. The starting evaluation is part of the
// budget.
[[nodiscard]] MappingResult inverse_map(std::span<const double> target, const Population& archive,
                                        Evaluator& evaluator, double t, std::size_t budget, RngStream& rng);

enum class Origin { decision, objective, fill };

struct ResponseParams {
    std::size_t mapping_budget = default_mapping_budget;
};

struct ResponseReport {
    Population population; // exactly N members, evaluated at t
    std::vector<Origin> origins;
    SurvivalCounts survival;
    std::size_t decision_share = 0;
    std::size_t objective_share = 0;
    std::size_t evaluations = 0;
};

// Takes `decision_share` random members of the decision prediction and
// `objective_share` random targets of the objective prediction, maps the
// targets to decision space and merges everything into N individuals
// evaluated at t. Mapping seeds come from the decision-origin members, or
// from `previous` when there are none.
[[nodiscard]] ResponseReport respond_with_shares(const Prediction& decision_pred, const Prediction& objective_pred,
                                                 std::size_t decision_share, std::size_t objective_share,
                                                 const Population& previous, Evaluator& evaluator, double t,
                                                 std::size_t n, RngStream& rng, const ResponseParams& params = {});

// Full adaptive response: updates the weights from the previous response's
// survival counts (if any), splits N by round(w_d N) / round(w_o N) and
// stores the new survival counts in `state`.
[[nodiscard]] ResponseReport respond_to_change(const Prediction& decision_pred, const Prediction& objective_pred,
                                               DualDomainState& state, const Population& previous,
                                               Evaluator& evaluator, double t, std::size_t n, RngStream& rng,
                                               const ResponseParams& params = {});

// Keeps `n` members ordered by Pareto rank, then crowding distance
// (descending), then a random key. Returns the kept indices.
[[nodiscard]] std::vector<std::size_t> trim_by_rank_and_crowding(const Population& pop, std::size_t n,
                                                                 RngStream& rng);

} // namespace dynmo

#endif
