#ifndef DYNMO_MOEAD_HPP
#define DYNMO_MOEAD_HPP

#include "dynmo/core.hpp"
#include "dynmo/problems.hpp"
#include "dynmo/rng.hpp"

#include <cstddef>
#include <vector>

namespace dynmo {

// Simplex-lattice weight vectors and their Euclidean neighbourhoods.
struct WeightVectorSet {
    std::vector<std::vector<double>> vectors;
    std::size_t neighborhood = 0;
    // neighbors[i] lists the `neighborhood` closest weight vectors to i,
    // nearest first (i itself comes first).
    std::vector<std::vector<std::size_t>> neighbors;

    [[nodiscard]] std::size_t size() const noexcept { return vectors.size(); }
};

// Builds the lattice whose size C(H+m-1, m-1) is closest to `requested`
// (ties go to the larger lattice). The realised size is vectors.size().
[[nodiscard]] WeightVectorSet init_weights(std::size_t requested, std::size_t m, std::size_t neighborhood);

// Lattice size C(h+m-1, m-1) for divisions h.
[[nodiscard]] std::size_t lattice_size(std::size_t h, std::size_t m);

// max_j max(w_j, 1e-6) * |f_j - z_j|
[[nodiscard]] double tchebycheff(std::span<const double> f, std::span<const double> w, std::span<const double> ideal);

struct MoeadParams {
    double crossover_prob = 1.0;
    double sbx_eta = 20.0;
    double mutation_eta = 20.0;
    double mutation_prob = -1.0; // negative: 1/n
    double neighborhood_prob = 0.9;
    std::size_t replacement_cap = 2;
};

struct MoeadState {
    WeightVectorSet weights;
    Population population; // population[i] solves subproblem i
    ObjectiveVector ideal;
    long generation = 0;
};

// Wraps an evaluated population (one member per weight vector) and computes
// the ideal point from it.
[[nodiscard]] MoeadState make_state(WeightVectorSet weights, Population population);

// Recomputes the ideal point from scratch (after an environment change).
void reset_ideal(MoeadState& state);

// Replaces the population with `fresh` (same size), giving each subproblem
// in index order the unassigned member with the lowest Tchebycheff value
// under the ideal point of `fresh`.
void assign_population(MoeadState& state, Population fresh);

struct StepReport {
    std::size_t evaluations = 0;
    std::size_t max_replacements = 0; // largest number of members replaced by one child
};

// One MOEA/D generation at time t: for every subproblem in index order, mate,
// evaluate one child and update the ideal point and up to replacement_cap
// neighbours.
StepReport generation_step(MoeadState& state, Evaluator& evaluator, double t, RngStream& rng,
                           const MoeadParams& params = {});

// Bounded SBX on two parents; returns both children.
[[nodiscard]] std::pair<DecisionVector, DecisionVector> sbx_crossover(std::span<const double> p1,
                                                                      std::span<const double> p2,
                                                                      const Bounds& bounds, double prob,
                                                                      double eta, RngStream& rng);

// Bounded polynomial mutation applied in place.
void polynomial_mutation(DecisionVector& x, const Bounds& bounds, double prob, double eta, RngStream& rng);

} // namespace dynmo

#endif
