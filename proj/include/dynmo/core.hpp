#ifndef DYNMO_CORE_HPP
#define DYNMO_CORE_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynmo {

using DecisionVector = std::vector<double>;
using ObjectiveVector = std::vector<double>;

// Caller broke a documented precondition (dimension mismatch, empty input...).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configuration value is out of its admissible range.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedProblem : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Box constraints [lower_i, upper_i] of the decision space.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    [[nodiscard]] std::size_t size() const noexcept { return lower.size(); }
    [[nodiscard]] bool contains(std::span<const double> x) const noexcept;

    // Throws ConfigError when lower_i > upper_i or the sizes differ.
    void validate() const;
};

// An evaluated solution. `f` was computed at time `eval_time`.
struct Individual {
    DecisionVector x;
    ObjectiveVector f;
    double eval_time = 0.0;
};

using Population = std::vector<Individual>;

// All objectives are minimized. Equal vectors never dominate each other.
[[nodiscard]] bool dominates(std::span<const double> a, std::span<const double> b);

// Indices of the members not dominated by any other member, ascending.
// Duplicates of a non-dominated point are all kept.
[[nodiscard]] std::vector<std::size_t> nondominated_filter(std::span<const ObjectiveVector> points);

// Pareto rank per point (0 = first front), fast non-dominated sorting.
[[nodiscard]] std::vector<std::size_t> nondominated_ranks(std::span<const ObjectiveVector> points);

// Crowding distance of every point within the subset `front` (indices into points).
// Boundary points of each objective get +infinity.
[[nodiscard]] std::vector<double> crowding_distance(std::span<const ObjectiveVector> points,
                                                    std::span<const std::size_t> front);

[[nodiscard]] DecisionVector clamp_to_bounds(std::span<const double> x, const Bounds& bounds);

[[nodiscard]] std::vector<ObjectiveVector> objectives_of(const Population& pop);
[[nodiscard]] std::vector<DecisionVector> decisions_of(const Population& pop);

[[nodiscard]] double euclidean_distance(std::span<const double> a, std::span<const double> b);
[[nodiscard]] double squared_distance(std::span<const double> a, std::span<const double> b);

} // namespace dynmo

#endif
