#include "dynmo/moead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dynmo {

namespace {

void enumerate_lattice(std::size_t remaining, std::size_t slots, std::size_t h, std::vector<std::size_t>& prefix,
                       std::vector<std::vector<double>>& out)
{
    if (slots == 1) {
        prefix.push_back(remaining);
        std::vector<double> w;
        w.reserve(prefix.size());
        for (auto p : prefix) {
            w.push_back(static_cast<double>(p) / static_cast<double>(h));
        }
        out.push_back(std::move(w));
        prefix.pop_back();
        return;
    }
    for (std::size_t k = 0; k <= remaining; ++k) {
        prefix.push_back(k);
        enumerate_lattice(remaining - k, slots - 1, h, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::size_t lattice_size(std::size_t h, std::size_t m)
{
    // C(h+m-1, m-1) computed incrementally; exact for the sizes used here
    std::size_t result = 1;
    for (std::size_t k = 1; k < m; ++k) {
        result = result * (h + k) / k;
    }
    return result;
}

WeightVectorSet init_weights(std::size_t requested, std::size_t m, std::size_t neighborhood)
{
    if (m < 2) {
        throw ConfigError("init_weights: need at least two objectives");
    }
    if (neighborhood < 2 || requested < neighborhood) {
        throw ContractError("init_weights: require N >= T >= 2");
    }
    std::size_t h = 1;
    while (lattice_size(h, m) < requested) {
        ++h;
    }
    if (h > 1) {
        const auto above = lattice_size(h, m) - requested;
        const auto below = requested - lattice_size(h - 1, m);
        if (below < above) {
            --h;
        }
    }

    WeightVectorSet set;
    std::vector<std::size_t> prefix;
    enumerate_lattice(h, m, h, prefix, set.vectors);
    if (set.size() < neighborhood) {
        throw ConfigError("init_weights: lattice of " + std::to_string(set.size()) +
                          " vectors is smaller than the neighbourhood size");
    }

    const auto n = set.size();
    set.neighborhood = neighborhood;
    set.neighbors.resize(n);
    std::vector<std::size_t> order(n);
    std::vector<double> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            dist[j] = squared_distance(set.vectors[i], set.vectors[j]);
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (dist[a] != dist[b]) {
                return dist[a] < dist[b];
            }
            // self first among exact ties
            return (a == i) > (b == i);
        });
        set.neighbors[i].assign(order.begin(), order.begin() + static_cast<long>(neighborhood));
    }
    return set;
}

double tchebycheff(std::span<const double> f, std::span<const double> w, std::span<const double> ideal)
{
    if (f.size() != w.size() || f.size() != ideal.size()) {
        throw ContractError("tchebycheff: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
        worst = std::max(worst, std::max(w[j], 1e-6) * std::abs(f[j] - ideal[j]));
    }
    return worst;
}

MoeadState make_state(WeightVectorSet weights, Population population)
{
    if (population.size() != weights.size()) {
        throw ContractError("make_state: population size must equal the number of weight vectors");
    }
    MoeadState state{std::move(weights), std::move(population), {}, 0};
    reset_ideal(state);
    return state;
}

void reset_ideal(MoeadState& state)
{
    if (state.population.empty()) {
        throw ContractError("reset_ideal: empty population");
    }
    state.ideal.assign(state.population.front().f.size(), std::numeric_limits<double>::infinity());
    for (const auto& ind : state.population) {
        for (std::size_t j = 0; j < ind.f.size(); ++j) {
            state.ideal[j] = std::min(state.ideal[j], ind.f[j]);
        }
    }
}

void assign_population(MoeadState& state, Population fresh)
{
    if (fresh.size() != state.weights.size()) {
        throw ContractError("assign_population: population size must equal the number of weight vectors");
    }
    state.population = std::move(fresh);
    reset_ideal(state);

    const auto n = state.population.size();
    std::vector<bool> taken(n, false);
    Population ordered;
    ordered.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = n;
        double best_g = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (taken[j]) {
                continue;
            }
            const double g = tchebycheff(state.population[j].f, state.weights.vectors[i], state.ideal);
            if (best == n || g < best_g) {
                best = j;
                best_g = g;
            }
        }
        taken[best] = true;
        ordered.push_back(state.population[best]);
    }
    state.population = std::move(ordered);
}

std::pair<DecisionVector, DecisionVector> sbx_crossover(std::span<const double> p1, std::span<const double> p2,
                                                        const Bounds& bounds, double prob, double eta,
                                                        RngStream& rng)
{
    DecisionVector c1(p1.begin(), p1.end());
    DecisionVector c2(p2.begin(), p2.end());
    if (rng.uniform() > prob) {
        return {c1, c2};
    }
    constexpr double eps = 1.0e-14;
    const double exponent = 1.0 / (eta + 1.0);
    for (std::size_t i = 0; i < c1.size(); ++i) {
        if (rng.uniform() > 0.5 || std::abs(p1[i] - p2[i]) <= eps) {
            continue;
        }
        const double y1 = std::min(p1[i], p2[i]);
        const double y2 = std::max(p1[i], p2[i]);
        const double lo = bounds.lower[i];
        const double hi = bounds.upper[i];
        const double u = rng.uniform();

        auto spread = [&](double beta) {
            const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
            return u <= 1.0 / alpha ? std::pow(u * alpha, exponent) : std::pow(1.0 / (2.0 - u * alpha), exponent);
        };
        const double bq1 = spread(1.0 + 2.0 * (y1 - lo) / (y2 - y1));
        const double bq2 = spread(1.0 + 2.0 * (hi - y2) / (y2 - y1));
        const double a = std::clamp(0.5 * ((y1 + y2) - bq1 * (y2 - y1)), lo, hi);
        const double b = std::clamp(0.5 * ((y1 + y2) + bq2 * (y2 - y1)), lo, hi);
        if (rng.uniform() <= 0.5) {
            c1[i] = b;
            c2[i] = a;
        } else {
            c1[i] = a;
            c2[i] = b;
        }
    }
    return {c1, c2};
}

void polynomial_mutation(DecisionVector& x, const Bounds& bounds, double prob, double eta, RngStream& rng)
{
    const double exponent = 1.0 / (eta + 1.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (rng.uniform() > prob) {
            continue;
        }
        const double lo = bounds.lower[i];
        const double hi = bounds.upper[i];
        if (hi <= lo) {
            continue;
        }
        const double delta1 = (x[i] - lo) / (hi - lo);
        const double delta2 = (hi - x[i]) / (hi - lo);
        const double u = rng.uniform();
        double deltaq = 0.0;
        if (u <= 0.5) {
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - delta1, eta + 1.0);
            deltaq = std::pow(val, exponent) - 1.0;
        } else {
            const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - delta2, eta + 1.0);
            deltaq = 1.0 - std::pow(val, exponent);
        }
        x[i] = std::clamp(x[i] + deltaq * (hi - lo), lo, hi);
    }
}

StepReport generation_step(MoeadState& state, Evaluator& evaluator, double t, RngStream& rng,
                           const MoeadParams& params)
{
    auto& pop = state.population;
    const auto n = pop.size();
    if (n < 2 || n != state.weights.size()) {
        throw ContractError("generation_step: state not initialised");
    }
    const auto& bounds = evaluator.problem().bounds();
    const double pm = params.mutation_prob < 0.0 ? 1.0 / static_cast<double>(bounds.size()) : params.mutation_prob;

    std::vector<std::size_t> everyone(n);
    std::iota(everyone.begin(), everyone.end(), std::size_t{0});

    StepReport report;
    for (std::size_t i = 0; i < n; ++i) {
        const bool local = rng.uniform() < params.neighborhood_prob;
        std::vector<std::size_t> pool = local ? state.weights.neighbors[i] : everyone;

        const auto a = pool[rng.index(pool.size())];
        auto b = pool[rng.index(pool.size())];
        while (b == a) {
            b = pool[rng.index(pool.size())];
        }
        auto child_x = sbx_crossover(pop[a].x, pop[b].x, bounds, params.crossover_prob, params.sbx_eta, rng).first;
        polynomial_mutation(child_x, bounds, pm, params.mutation_eta, rng);
        child_x = clamp_to_bounds(child_x, bounds);
        auto child = evaluator.make(std::move(child_x), t);
        ++report.evaluations;

        for (std::size_t j = 0; j < child.f.size(); ++j) {
            state.ideal[j] = std::min(state.ideal[j], child.f[j]);
        }

        rng.shuffle(pool);
        std::size_t replaced = 0;
        for (auto k : pool) {
            if (replaced >= params.replacement_cap) {
                break;
            }
            const auto& w = state.weights.vectors[k];
            if (tchebycheff(child.f, w, state.ideal) <= tchebycheff(pop[k].f, w, state.ideal)) {
                pop[k] = child;
                ++replaced;
            }
        }
        report.max_replacements = std::max(report.max_replacements, replaced);
    }
    ++state.generation;
    return report;
}

} // namespace dynmo
