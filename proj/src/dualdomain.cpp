#include "dynmo/dualdomain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dynmo {

void DualDomainState::validate() const
{
    if (!(w_d > 0.0 && w_d < 1.0 && w_o > 0.0 && w_o < 1.0)) {
        throw ConfigError("DualDomainState: weights must lie in (0, 1)");
    }
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw ConfigError("DualDomainState: lambda must lie in [0, 1)");
    }
}

DualDomainState update_weights(DualDomainState state)
{
    if (!state.last) {
        throw ContractError("update_weights: no survival counts recorded");
    }
    if (state.last->objective > state.last->decision) {
        state.w_o += state.lambda;
    } else {
        state.w_d += state.lambda;
    }
    state.w_d = std::clamp(state.w_d / (state.w_d + state.w_o), weight_floor, weight_ceiling);
    state.w_o = std::clamp(1.0 - state.w_d, weight_floor, weight_ceiling);
    return state;
}

namespace {

DecisionVector random_point(const Bounds& bounds, RngStream& rng)
{
    DecisionVector x(bounds.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.uniform(bounds.lower[i], bounds.upper[i]);
    }
    return x;
}

} // namespace

MappingResult inverse_map(std::span<const double> target, const Population& archive, Evaluator& evaluator, double t,
                          std::size_t budget, RngStream& rng)
{
    if (budget < 1) {
        throw ContractError("inverse_map: budget must be >= 1");
    }
    const auto& bounds = evaluator.problem().bounds();

    MappingResult best;
    if (archive.empty()) {
        best.x = random_point(bounds, rng);
    } else {
        std::size_t seed = 0;
        double seed_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < archive.size(); ++i) {
            const double d = squared_distance(archive[i].f, target);
            if (d < seed_d) {
                seed_d = d;
                seed = i;
            }
        }
        best.x = archive[seed].x;
    }
    best.f = evaluator(best.x, t);
    best.evaluations = 1;
    best.distance = euclidean_distance(best.f, target);
    best.initial_distance = best.distance;

    double step = 0.05;
    int failures = 0;
    while (best.evaluations < budget) {
        DecisionVector y(best.x.size());
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double range = bounds.upper[i] - bounds.lower[i];
            y[i] = std::clamp(best.x[i] + step * range * rng.normal(), bounds.lower[i], bounds.upper[i]);
        }
        auto fy = evaluator(y, t);
        ++best.evaluations;
        const double d = euclidean_distance(fy, target);
        if (d < best.distance) {
            best.x = std::move(y);
            best.f = std::move(fy);
            best.distance = d;
            failures = 0;
        } else if (++failures == 5) {
            step *= 0.5;
            failures = 0;
        }
    }
    return best;
}

std::vector<std::size_t> trim_by_rank_and_crowding(const Population& pop, std::size_t n, RngStream& rng)
{
    if (n >= pop.size()) {
        std::vector<std::size_t> all(pop.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        return all;
    }
    const auto objs = objectives_of(pop);
    const auto ranks = nondominated_ranks(objs);
    const auto max_rank = *std::max_element(ranks.begin(), ranks.end());

    std::vector<double> crowding(pop.size(), 0.0);
    for (std::size_t r = 0; r <= max_rank; ++r) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < pop.size(); ++i) {
            if (ranks[i] == r) {
                front.push_back(i);
            }
        }
        const auto cd = crowding_distance(objs, front);
        for (std::size_t j = 0; j < front.size(); ++j) {
            crowding[front[j]] = cd[j];
        }
    }

    std::vector<std::uint64_t> key(pop.size());
    for (auto& k : key) {
        k = rng.next_u64();
    }
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (ranks[a] != ranks[b]) {
            return ranks[a] < ranks[b];
        }
        if (crowding[a] != crowding[b]) {
            return crowding[a] > crowding[b];
        }
        if (key[a] != key[b]) {
            return key[a] < key[b];
        }
        return a < b;
    });
    order.resize(n);
    std::sort(order.begin(), order.end());
    return order;
}

ResponseReport respond_with_shares(const Prediction& decision_pred, const Prediction& objective_pred,
                                   std::size_t decision_share, std::size_t objective_share,
                                   const Population& previous, Evaluator& evaluator, double t, std::size_t n,
                                   RngStream& rng, const ResponseParams& params)
{
    if (n == 0) {
        throw ContractError("respond_with_shares: population size must be positive");
    }
    if (decision_pred.domain != Domain::decision || objective_pred.domain != Domain::objective) {
        throw ContractError("respond_with_shares: predictions passed in the wrong domains");
    }
    const auto& bounds = evaluator.problem().bounds();
    const auto start = evaluator.count();

    ResponseReport report;
    report.decision_share = std::min(decision_share, decision_pred.members.size());
    report.objective_share = std::min(objective_share, objective_pred.members.size());

    Population merged;
    std::vector<Origin> origins;
    for (auto i : rng.sample_without_replacement(decision_pred.members.size(), report.decision_share)) {
        merged.push_back(evaluator.make(clamp_to_bounds(decision_pred.members[i].point, bounds), t));
        origins.push_back(Origin::decision);
    }

    const Population& archive = merged.empty() ? previous : merged;
    Population mapped;
    for (auto i : rng.sample_without_replacement(objective_pred.members.size(), report.objective_share)) {
        const auto& member = objective_pred.members[i];
        if (member.decision) {
            mapped.push_back(evaluator.make(clamp_to_bounds(*member.decision, bounds), t));
        } else {
            auto result = inverse_map(member.point, archive, evaluator, t, params.mapping_budget, rng);
            mapped.push_back(Individual{std::move(result.x), std::move(result.f), t});
        }
    }
    for (auto& ind : mapped) {
        merged.push_back(std::move(ind));
        origins.push_back(Origin::objective);
    }

    if (!merged.empty()) {
        for (auto i : nondominated_filter(objectives_of(merged))) {
            if (origins[i] == Origin::decision) {
                ++report.survival.decision;
            } else {
                ++report.survival.objective;
            }
        }
    }

    for (auto i : trim_by_rank_and_crowding(merged, n, rng)) {
        report.population.push_back(std::move(merged[i]));
        report.origins.push_back(origins[i]);
    }
    while (report.population.size() < n) {
        report.population.push_back(evaluator.make(random_point(bounds, rng), t));
        report.origins.push_back(Origin::fill);
    }
    report.evaluations = static_cast<std::size_t>(evaluator.count() - start);
    return report;
}

ResponseReport respond_to_change(const Prediction& decision_pred, const Prediction& objective_pred,
                                 DualDomainState& state, const Population& previous, Evaluator& evaluator, double t,
                                 std::size_t n, RngStream& rng, const ResponseParams& params)
{
    if (state.last) {
        state = update_weights(state);
    }
    const auto nd = static_cast<std::size_t>(std::lround(state.w_d * static_cast<double>(n)));
    const auto no = static_cast<std::size_t>(std::lround(state.w_o * static_cast<double>(n)));
    auto report = respond_with_shares(decision_pred, objective_pred, nd, no, previous, evaluator, t, n, rng, params);
    state.last = report.survival;
    return report;
}

} // namespace dynmo
