#include "dynmo/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dynmo {

bool Bounds::contains(std::span<const double> x) const noexcept
{
    if (x.size() != size()) {
        return false;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= lower[i] && x[i] <= upper[i])) {
            return false;
        }
    }
    return true;
}

void Bounds::validate() const
{
    if (lower.size() != upper.size()) {
        throw ConfigError("bounds: lower and upper have different lengths");
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (lower[i] > upper[i]) {
            throw ConfigError("bounds: lower > upper at coordinate " + std::to_string(i));
        }
    }
}

bool dominates(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw ContractError("dominates: objective vectors differ in length");
    }
    bool strictly_better = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j] > b[j]) {
            return false;
        }
        strictly_better = strictly_better || a[j] < b[j];
    }
    return strictly_better;
}

namespace {

void check_same_length(std::span<const ObjectiveVector> points)
{
    if (points.empty()) {
        return;
    }
    const auto m = points.front().size();
    for (const auto& p : points) {
        if (p.size() != m) {
            throw ContractError("nondominated_filter: objective vectors differ in length");
        }
    }
}

// Sort-and-sweep for two objectives, O(n log n).
std::vector<std::size_t> filter_2d(std::span<const ObjectiveVector> points)
{
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a][0] != points[b][0]) {
            return points[a][0] < points[b][0];
        }
        if (points[a][1] != points[b][1]) {
            return points[a][1] < points[b][1];
        }
        return a < b;
    });

    std::vector<std::size_t> keep;
    double best_f2_before = std::numeric_limits<double>::infinity();
    std::size_t i = 0;
    while (i < order.size()) {
        // group of equal f1, sorted by f2
        std::size_t j = i;
        while (j < order.size() && points[order[j]][0] == points[order[i]][0]) {
            ++j;
        }
        const double group_min = points[order[i]][1];
        for (std::size_t k = i; k < j; ++k) {
            const double f2 = points[order[k]][1];
            if (best_f2_before <= f2 || group_min < f2) {
                continue;
            }
            keep.push_back(order[k]);
        }
        best_f2_before = std::min(best_f2_before, group_min);
        i = j;
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

} // namespace

std::vector<std::size_t> nondominated_filter(std::span<const ObjectiveVector> points)
{
    check_same_length(points);
    if (points.empty()) {
        return {};
    }
    if (points.front().size() == 2) {
        return filter_2d(points);
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
            dominated = j != i && dominates(points[j], points[i]);
        }
        if (!dominated) {
            keep.push_back(i);
        }
    }
    return keep;
}

std::vector<std::size_t> nondominated_ranks(std::span<const ObjectiveVector> points)
{
    check_same_length(points);
    const auto n = points.size();
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> domination_count(n, 0);
    std::vector<std::size_t> rank(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(points[i], points[j])) {
                dominated_by[i].push_back(j);
                ++domination_count[j];
            } else if (dominates(points[j], points[i])) {
                dominated_by[j].push_back(i);
                ++domination_count[i];
            }
        }
    }

    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i) {
        if (domination_count[i] == 0) {
            current.push_back(i);
        }
    }
    std::size_t level = 0;
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (auto i : current) {
            rank[i] = level;
            for (auto j : dominated_by[i]) {
                if (--domination_count[j] == 0) {
                    next.push_back(j);
                }
            }
        }
        current = std::move(next);
        ++level;
    }
    return rank;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> points, std::span<const std::size_t> front)
{
    std::vector<double> distance(front.size(), 0.0);
    if (front.empty()) {
        return distance;
    }
    const auto m = points[front[0]].size();
    std::vector<std::size_t> order(front.size());
    for (std::size_t j = 0; j < m; ++j) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return points[front[a]][j] < points[front[b]][j]; });
        const double lo = points[front[order.front()]][j];
        const double hi = points[front[order.back()]][j];
        distance[order.front()] = std::numeric_limits<double>::infinity();
        distance[order.back()] = std::numeric_limits<double>::infinity();
        if (hi <= lo) {
            continue;
        }
        for (std::size_t k = 1; k + 1 < order.size(); ++k) {
            distance[order[k]] += (points[front[order[k + 1]]][j] - points[front[order[k - 1]]][j]) / (hi - lo);
        }
    }
    return distance;
}

DecisionVector clamp_to_bounds(std::span<const double> x, const Bounds& bounds)
{
    bounds.validate();
    if (x.size() != bounds.size()) {
        throw ContractError("clamp_to_bounds: dimension mismatch");
    }
    DecisionVector out(x.begin(), x.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::clamp(out[i], bounds.lower[i], bounds.upper[i]);
    }
    return out;
}

std::vector<ObjectiveVector> objectives_of(const Population& pop)
{
    std::vector<ObjectiveVector> out;
    out.reserve(pop.size());
    for (const auto& ind : pop) {
        out.push_back(ind.f);
    }
    return out;
}

std::vector<DecisionVector> decisions_of(const Population& pop)
{
    std::vector<DecisionVector> out;
    out.reserve(pop.size());
    for (const auto& ind : pop) {
        out.push_back(ind.x);
    }
    return out;
}

double squared_distance(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw ContractError("distance: dimension mismatch");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double euclidean_distance(std::span<const double> a, std::span<const double> b)
{
    return std::sqrt(squared_distance(a, b));
}

} // namespace dynmo
