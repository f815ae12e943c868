#include "dynmo/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dynmo {

HistoryBuffer::HistoryBuffer(Domain domain, std::size_t k, std::size_t passes)
    : domain_(domain)
    , k_(k)
    , passes_(passes)
{
    if (passes_ < 1) {
        throw ContractError("HistoryBuffer: passes must be >= 1");
    }
}

void HistoryBuffer::record(std::vector<std::vector<double>> points, std::vector<ObjectiveVector> objectives,
                           long environment)
{
    auto model = cluster_population(points, objectives, domain_, passes_, k_);
    record_with_centers(std::move(points), std::move(objectives), std::move(model.centers), environment);
}

void HistoryBuffer::record_with_centers(std::vector<std::vector<double>> points,
                                        std::vector<ObjectiveVector> objectives,
                                        std::vector<std::vector<double>> centers, long environment)
{
    if (points.empty() || centers.empty()) {
        throw ContractError("HistoryBuffer::record: empty snapshot");
    }
    if (!snapshots_.empty()) {
        const auto& previous = snapshots_.front().centers;
        if (previous.size() != centers.size()) {
            throw ContractError("HistoryBuffer::record: cluster count changed between snapshots");
        }
        const auto perm = align_centers(previous, centers);
        std::vector<std::vector<double>> aligned;
        aligned.reserve(centers.size());
        for (auto c : perm) {
            aligned.push_back(centers[c]);
        }
        centers = std::move(aligned);
    }
    snapshots_.push_front(Snapshot{environment, std::move(points), std::move(objectives), std::move(centers)});
    if (snapshots_.size() > history_depth) {
        snapshots_.pop_back();
    }

    if (snapshots_.size() == history_depth) {
        const auto& c0 = snapshots_[0].centers;
        const auto& c1 = snapshots_[1].centers;
        const auto& c2 = snapshots_[2].centers;
        std::vector<std::vector<double>> accel(c0.size());
        for (std::size_t k = 0; k < c0.size(); ++k) {
            accel[k].resize(c0[k].size());
            for (std::size_t d = 0; d < c0[k].size(); ++d) {
                accel[k][d] = c0[k][d] - 2.0 * c1[k][d] + c2[k][d];
            }
        }
        accelerations_.push_front(std::move(accel));
        if (accelerations_.size() > history_depth) {
            accelerations_.pop_back();
        }
    }
}

const Snapshot& HistoryBuffer::at(std::size_t age) const
{
    if (age >= snapshots_.size()) {
        throw InsufficientHistory("HistoryBuffer: no snapshot of age " + std::to_string(age));
    }
    return snapshots_[age];
}

void HistoryBuffer::clear()
{
    snapshots_.clear();
    accelerations_.clear();
}

ClusterKinematics compute_kinematics(const HistoryBuffer& history)
{
    if (history.size() < history_depth || history.accelerations().empty()) {
        throw InsufficientHistory("compute_kinematics: need three snapshots, have " + std::to_string(history.size()));
    }
    const auto& now = history.at(0).centers;
    const auto& before = history.at(1).centers;

    ClusterKinematics kin;
    kin.velocity.resize(now.size());
    for (std::size_t k = 0; k < now.size(); ++k) {
        kin.velocity[k].resize(now[k].size());
        for (std::size_t d = 0; d < now[k].size(); ++d) {
            kin.velocity[k][d] = now[k][d] - before[k][d];
        }
    }
    const auto& accs = history.accelerations();
    kin.acceleration = accs.front();
    for (std::size_t h = 1; h < accs.size(); ++h) {
        kin.older.push_back(accs[h]);
    }
    return kin;
}

Severity severity_test(const ClusterKinematics& kin, std::size_t cluster)
{
    if (cluster >= kin.k()) {
        throw ContractError("severity_test: cluster index out of range");
    }
    if (kin.older.empty()) {
        return Severity::mild;
    }
    const auto& a = kin.acceleration[cluster];
    const auto& prev = kin.older.front()[cluster];
    double dot = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        dot += a[d] * prev[d];
    }
    return dot >= 0.0 ? Severity::mild : Severity::severe;
}

std::vector<double> predict_individual(std::span<const double> x, std::size_t cluster, const ClusterKinematics& kin,
                                       Severity severity, double sigma, RngStream& rng,
                                       const PredictorParams& params)
{
    if (cluster >= kin.k()) {
        throw ContractError("predict_individual: cluster index out of range");
    }
    const auto& v = kin.velocity[cluster];
    if (x.size() != v.size()) {
        throw ContractError("predict_individual: dimension mismatch");
    }

    std::vector<double> step = kin.acceleration[cluster];
    if (severity == Severity::severe) {
        double weight_sum = params.smoothing[0];
        for (auto& s : step) {
            s *= params.smoothing[0];
        }
        for (std::size_t h = 0; h < kin.older.size() && h + 1 < params.smoothing.size(); ++h) {
            const double w = params.smoothing[h + 1];
            weight_sum += w;
            for (std::size_t d = 0; d < step.size(); ++d) {
                step[d] += w * kin.older[h][cluster][d];
            }
        }
        for (auto& s : step) {
            s /= weight_sum;
        }
    }

    std::vector<double> out(x.begin(), x.end());
    for (std::size_t d = 0; d < out.size(); ++d) {
        out[d] += v[d] + step[d];
        if (sigma > 0.0) {
            double z = rng.normal();
            while (std::abs(z) > 3.0) {
                z = rng.normal();
            }
            out[d] += sigma * z;
        }
    }
    return out;
}

double noise_scale(const HistoryBuffer& history)
{
    const auto& now = history.at(0).points;
    const auto& before = history.at(1).points;
    double total = 0.0;
    for (const auto& x : now) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& y : before) {
            best = std::min(best, squared_distance(x, y));
        }
        total += std::sqrt(best);
    }
    const auto dim = static_cast<double>(now.front().size());
    return total / static_cast<double>(now.size()) / dim;
}

std::vector<std::size_t> rank_then_random_order(const Population& pop, RngStream& rng)
{
    const auto ranks = nondominated_ranks(objectives_of(pop));
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
        if (key[a] != key[b]) {
            return key[a] < key[b];
        }
        return a < b;
    });
    return order;
}

namespace {

DecisionVector random_decision(const Bounds& bounds, RngStream& rng)
{
    DecisionVector x(bounds.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.uniform(bounds.lower[i], bounds.upper[i]);
    }
    return x;
}

Prediction cold_start(Domain domain, const Population& current, const Bounds& bounds, RngStream& rng,
                      const PredictorParams& params)
{
    Prediction out;
    out.domain = domain;
    out.cold_start = true;
    const auto n = current.size();
    const auto keep = static_cast<std::size_t>(std::floor(params.retain_fraction * static_cast<double>(n)));
    const auto order = rank_then_random_order(current, rng);
    for (std::size_t i = 0; i < keep; ++i) {
        const auto& ind = current[order[i]];
        out.members.push_back(PredictedMember{domain == Domain::decision ? ind.x : ind.f, std::nullopt});
    }
    for (std::size_t i = keep; i < n; ++i) {
        auto x = random_decision(bounds, rng);
        if (domain == Domain::decision) {
            out.members.push_back(PredictedMember{std::move(x), std::nullopt});
        } else {
            out.members.push_back(PredictedMember{{}, std::move(x)});
        }
    }
    return out;
}

} // namespace

Prediction predict_population(const HistoryBuffer& history, const Population& current, const Bounds& bounds,
                              RngStream& rng, const PredictorParams& params)
{
    const auto domain = history.domain();
    if (history.size() < history_depth || history.accelerations().empty()) {
        return cold_start(domain, current, bounds, rng, params);
    }

    const auto kin = compute_kinematics(history);
    const double sigma = params.noise ? noise_scale(history) : 0.0;
    const auto& centers = history.at(0).centers;

    std::vector<Severity> severity(kin.k());
    for (std::size_t k = 0; k < kin.k(); ++k) {
        severity[k] = severity_test(kin, k);
    }

    Prediction out;
    out.domain = domain;
    out.members.reserve(current.size());
    for (const auto& ind : current) {
        const auto& point = domain == Domain::decision ? ind.x : ind.f;
        const auto k = nearest_center(centers, point);
        auto predicted = predict_individual(point, k, kin, severity[k], sigma, rng, params);
        if (domain == Domain::decision) {
            predicted = clamp_to_bounds(predicted, bounds);
        }
        out.members.push_back(PredictedMember{std::move(predicted), std::nullopt});
    }
    return out;
}

} // namespace dynmo
