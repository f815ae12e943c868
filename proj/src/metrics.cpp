#include "dynmo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dynmo {

double igd(std::span<const ObjectiveVector> reference, std::span<const ObjectiveVector> approx)
{
    if (reference.empty()) {
        throw ContractError("igd: empty reference set");
    }
    if (approx.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    const auto m = reference.front().size();
    for (const auto& a : approx) {
        if (a.size() != m) {
            throw ContractError("igd: dimension mismatch");
        }
    }
    double total = 0.0;
    for (const auto& r : reference) {
        if (r.size() != m) {
            throw ContractError("igd: dimension mismatch");
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto& a : approx) {
            best = std::min(best, squared_distance(r, a));
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(reference.size());
}

namespace {

// Points sorted by the first objective; all strictly inside the box.
double hv2_sorted(std::vector<std::pair<double, double>>& pts, double r0, double r1)
{
    std::sort(pts.begin(), pts.end());
    double area = 0.0;
    double floor_y = r1;
    for (const auto& [x, y] : pts) {
        if (y < floor_y) {
            area += (r0 - x) * (floor_y - y);
            floor_y = y;
        }
    }
    return area;
}

} // namespace

double hv(std::span<const ObjectiveVector> front, std::span<const double> ref)
{
    const auto m = ref.size();
    if (m != 2 && m != 3) {
        throw ContractError("hv: only 2 or 3 objectives are supported");
    }
    std::vector<ObjectiveVector> inside;
    for (const auto& p : front) {
        if (p.size() != m) {
            throw ContractError("hv: dimension mismatch");
        }
        bool ok = true;
        for (std::size_t j = 0; j < m; ++j) {
            ok = ok && p[j] < ref[j];
        }
        if (ok) {
            inside.push_back(p);
        }
    }
    if (inside.empty()) {
        return 0.0;
    }

    if (m == 2) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(inside.size());
        for (const auto& p : inside) {
            pts.emplace_back(p[0], p[1]);
        }
        return hv2_sorted(pts, ref[0], ref[1]);
    }

    // Slice along the third objective: between consecutive z levels the
    // cross-section is the 2-D hypervolume of all points at or below.
    std::sort(inside.begin(), inside.end(),
              [](const ObjectiveVector& a, const ObjectiveVector& b) { return a[2] < b[2]; });
    double volume = 0.0;
    std::vector<std::pair<double, double>> active;
    for (std::size_t i = 0; i < inside.size(); ++i) {
        active.emplace_back(inside[i][0], inside[i][1]);
        const double z_next = i + 1 < inside.size() ? inside[i + 1][2] : ref[2];
        const double height = z_next - inside[i][2];
        if (height > 0.0) {
            auto copy = active;
            volume += hv2_sorted(copy, ref[0], ref[1]) * height;
        }
    }
    return volume;
}

ObjectiveVector hv_reference_point(std::span<const ObjectiveVector> true_front, double offset)
{
    if (true_front.empty()) {
        throw ContractError("hv_reference_point: empty front");
    }
    ObjectiveVector r = true_front.front();
    for (const auto& p : true_front) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            r[j] = std::max(r[j], p[j]);
        }
    }
    for (auto& v : r) {
        v += offset;
    }
    return r;
}

namespace {

void require_complete(const RunRecord& record)
{
    if (record.samples.empty()) {
        throw ContractError("run record has no samples");
    }
    if (static_cast<long>(record.samples.size()) >= record.expected_environments) {
        return;
    }
    std::vector<bool> seen(static_cast<std::size_t>(record.expected_environments), false);
    for (const auto& s : record.samples) {
        if (s.environment >= 0 && s.environment < record.expected_environments) {
            seen[static_cast<std::size_t>(s.environment)] = true;
        }
    }
    std::string missing;
    for (std::size_t e = 0; e < seen.size(); ++e) {
        if (!seen[e]) {
            missing += (missing.empty() ? "" : ",") + std::to_string(e);
        }
    }
    throw ContractError("run record incomplete, missing environments: " + missing);
}

// Summed in environment order so the result does not depend on sample order.
double mean_by_environment(const RunRecord& record, double EnvironmentSample::*field)
{
    require_complete(record);
    auto samples = record.samples;
    std::sort(samples.begin(), samples.end(), [field](const EnvironmentSample& a, const EnvironmentSample& b) {
        return a.environment != b.environment ? a.environment < b.environment : a.*field < b.*field;
    });
    double total = 0.0;
    for (const auto& s : samples) {
        total += s.*field;
    }
    return total / static_cast<double>(samples.size());
}

} // namespace

double migd(const RunRecord& record)
{
    return mean_by_environment(record, &EnvironmentSample::igd);
}

double mhv(const RunRecord& record)
{
    return mean_by_environment(record, &EnvironmentSample::hv);
}

MannWhitney mann_whitney_u(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty()) {
        throw ContractError("mann_whitney_u: empty sample");
    }
    const auto n1 = static_cast<double>(a.size());
    const auto n2 = static_cast<double>(b.size());
    const double n = n1 + n2;

    std::vector<std::pair<double, int>> all;
    all.reserve(a.size() + b.size());
    for (auto v : a) {
        all.emplace_back(v, 0);
    }
    for (auto v : b) {
        all.emplace_back(v, 1);
    }
    std::sort(all.begin(), all.end());

    double rank_sum_a = 0.0;
    double tie_term = 0.0;
    for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j].first == all[i].first) {
            ++j;
        }
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (all[k].second == 0) {
                rank_sum_a += avg_rank;
            }
        }
        const auto t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }

    MannWhitney out;
    out.u = rank_sum_a - n1 * (n1 + 1.0) / 2.0;
    const double u_big = std::max(out.u, n1 * n2 - out.u);
    const double mu = n1 * n2 / 2.0;
    const double var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var <= 0.0) {
        out.z = 0.0;
        out.p = 1.0;
        return out;
    }
    out.z = (u_big - mu - 0.5) / std::sqrt(var);
    out.p = std::min(1.0, std::erfc(out.z / std::sqrt(2.0)));
    return out;
}

double median(std::vector<double> values)
{
    if (values.empty()) {
        throw ContractError("median: empty sample");
    }
    std::sort(values.begin(), values.end());
    const auto mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

Comparison rank_sum_test(std::span<const double> a, std::span<const double> b, double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ConfigError("rank_sum_test: alpha must lie in (0, 1)");
    }
    if (a.size() < 5 || b.size() < 5) {
        throw ConfigError("rank_sum_test: both samples need at least 5 values");
    }
    const auto r = mann_whitney_u(a, b);
    if (!(r.p < alpha)) {
        return Comparison::equivalent;
    }
    const double ma = median({a.begin(), a.end()});
    const double mb = median({b.begin(), b.end()});
    if (ma < mb) {
        return Comparison::better;
    }
    if (ma > mb) {
        return Comparison::worse;
    }
    return Comparison::equivalent;
}

char comparison_mark(Comparison c)
{
    switch (c) {
    case Comparison::better:
        return '+';
    case Comparison::worse:
        return '-';
    case Comparison::equivalent:
        return '=';
    }
    return '=';
}

} // namespace dynmo
