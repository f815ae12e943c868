#include "dynmo/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace dynmo {

namespace {

constexpr double pi = std::numbers::pi;

Bounds make_bounds(ProblemId id, std::size_t n)
{
    Bounds b{std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)};
    auto set_tail = [&](std::size_t from, double lo, double hi) {
        for (std::size_t i = from; i < n; ++i) {
            b.lower[i] = lo;
            b.upper[i] = hi;
        }
    };
    switch (id) {
    case ProblemId::DF3: set_tail(1, -1.0, 2.0); break;
    case ProblemId::DF4: set_tail(0, -2.0, 2.0); break;
    case ProblemId::DF5:
    case ProblemId::DF6:
    case ProblemId::DF8:
    case ProblemId::DF9: set_tail(1, -1.0, 1.0); break;
    case ProblemId::DF7:
        b.lower[0] = 1.0;
        b.upper[0] = 4.0;
        break;
    case ProblemId::DF10:
    case ProblemId::DF12:
    case ProblemId::DF13:
    case ProblemId::DF14: set_tail(2, -1.0, 1.0); break;
    default: break;
    }
    return b;
}

// MATLAB-style modulus, result in [0, m).
double positive_mod(double a, double m) { return a - m * std::floor(a / m); }

double sum_sq_from(std::span<const double> x, std::size_t from, auto&& target)
{
    double s = 0.0;
    for (std::size_t i = from; i < x.size(); ++i) {
        const double d = x[i] - target(i);
        s += d * d;
    }
    return s;
}

} // namespace

std::string to_string(ProblemId id)
{
    const int v = static_cast<int>(id);
    if (v < 1 || v > 14) {
        throw UnsupportedProblem("unknown problem id " + std::to_string(v));
    }
    return "DF" + std::to_string(v);
}

ProblemId parse_problem_id(std::string_view name)
{
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
    for (auto id : all_problems()) {
        if (to_string(id) == upper) {
            return id;
        }
    }
    throw ConfigError("unknown problem '" + std::string(name) + "' (expected DF1..DF14)");
}

std::vector<ProblemId> all_problems()
{
    std::vector<ProblemId> ids;
    for (int i = 1; i <= 14; ++i) {
        ids.push_back(static_cast<ProblemId>(i));
    }
    return ids;
}

void DynamicConfig::validate() const
{
    if (n_t < 1) {
        throw ConfigError("n_t must be >= 1");
    }
    if (tau_t < 1) {
        throw ConfigError("tau_t must be >= 1");
    }
    if (environments < 1) {
        throw ConfigError("environments must be >= 1");
    }
    if (first_change_after < 0) {
        throw ConfigError("first_change_after must be >= 0");
    }
}

double time_of_generation(long tau_effective, const DynamicConfig& cfg)
{
    cfg.validate();
    if (tau_effective <= 0) {
        return 0.0;
    }
    return static_cast<double>(tau_effective / cfg.tau_t) / static_cast<double>(cfg.n_t);
}

DfProblem::DfProblem(ProblemId id, std::size_t decision_dim)
    : id_(id)
    , n_(decision_dim)
    , m_(static_cast<int>(id) >= 10 ? 3 : 2)
{
    const int v = static_cast<int>(id);
    if (v < 1 || v > 14) {
        throw UnsupportedProblem("unknown problem id " + std::to_string(v));
    }
    if (n_ < m_ + 1) {
        throw ConfigError(to_string(id) + ": decision dimension too small");
    }
    bounds_ = make_bounds(id, n_);
}

ObjectiveVector DfProblem::evaluate(std::span<const double> x, double t) const
{
    if (x.size() != n_) {
        throw ContractError(name() + ": decision vector has wrong length");
    }
    const double x0 = x[0];
    const double n = static_cast<double>(n_);

    switch (id_) {
    case ProblemId::DF1: {
        const double v = std::sin(0.5 * pi * t);
        const double G = std::abs(v);
        const double H = 0.75 * v + 1.25;
        const double g = 1.0 + sum_sq_from(x, 1, [&](std::size_t) { return G; });
        return {x0, g * (1.0 - std::pow(x0 / g, H))};
    }
    case ProblemId::DF2: {
        const double G = std::abs(std::sin(0.5 * pi * t));
        const auto r = static_cast<std::size_t>(std::floor((n - 1.0) * G));
        double g = 1.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (i != r) {
                g += (x[i] - G) * (x[i] - G);
            }
        }
        const double f1 = x[r];
        return {f1, g * (1.0 - std::sqrt(f1 / g))};
    }
    case ProblemId::DF3: {
        const double G = std::sin(0.5 * pi * t);
        const double H = G + 1.5;
        const double shift = G + std::pow(x0, H);
        const double g = 1.0 + sum_sq_from(x, 1, [&](std::size_t) { return shift; });
        return {x0, g * (1.0 - std::pow(x0 / g, H))};
    }
    case ProblemId::DF4: {
        const double a = std::sin(0.5 * pi * t);
        const double b = 1.0 + std::abs(std::cos(0.5 * pi * t));
        const double c = std::max(std::abs(a), a + b);
        const double H = 1.5 + a;
        const double g = 1.0 + sum_sq_from(x, 1, [&](std::size_t i) {
            return a * x0 * x0 / (static_cast<double>(i + 1) * c * c);
        });
        return {g * std::pow(std::abs(x0 - a), H), g * std::pow(std::abs(x0 - a - b), H)};
    }
    case ProblemId::DF5: {
        const double G = std::sin(0.5 * pi * t);
        const double w = std::floor(10.0 * G);
        const double g = 1.0 + sum_sq_from(x, 1, [&](std::size_t) { return G; });
        const double s = 0.02 * std::sin(w * pi * x0);
        return {g * (x0 + s), g * (1.0 - x0 + s)};
    }
    case ProblemId::DF6: {
        const double G = std::sin(0.5 * pi * t);
        const double a = 0.2 + 2.8 * std::abs(G);
        double g = 1.0;
        for (std::size_t i = 1; i < n_; ++i) {
            const double y = x[i] - G;
            g += std::abs(G) * y * y - 10.0 * std::cos(2.0 * pi * y) + 10.0;
        }
        const double s = 0.1 * std::sin(3.0 * pi * x0);
        return {g * std::pow(x0 + s, a), g * std::pow(1.0 - x0 + s, a)};
    }
    case ProblemId::DF7: {
        const double a = 5.0 * std::cos(0.5 * pi * t);
        const double target = 1.0 / (1.0 + std::exp(a * (x0 - 2.5)));
        const double g = 1.0 + sum_sq_from(x, 1, [&](std::size_t) { return target; });
        return {g * (1.0 + t) / x0, g * x0 / (1.0 + t)};
    }
    case ProblemId::DF8: {
        const double G = std::sin(0.5 * pi * t);
        const double a = 2.25 + 2.0 * std::cos(2.0 * pi * t);
        const double b = 100.0 * G * G;
        const double target = G * std::sin(4.0 * pi * std::pow(x0, b)) / (1.0 + std::abs(G));
        const double g = 1.0 + sum_sq_from(x, 1, [&](std::size_t) { return target; });
        const double s = 0.1 * std::sin(3.0 * pi * x0);
        return {g * (x0 + s), g * std::pow(1.0 - x0 + s, a)};
    }
    case ProblemId::DF9: {
        const double N = 1.0 + std::floor(10.0 * std::abs(std::sin(0.5 * pi * t)));
        const double g = 1.0 + sum_sq_from(x, 1, [&](std::size_t i) { return std::cos(4.0 * t + x0 + x[i - 1]); });
        const double s = std::max(0.0, (0.1 + 0.5 / N) * std::sin(2.0 * N * pi * x0));
        return {g * (x0 + s), g * (1.0 - x0 + s)};
    }
    case ProblemId::DF10: {
        const double G = std::sin(0.5 * pi * t);
        const double H = 2.25 + 2.0 * std::cos(0.5 * pi * t);
        const double target = std::sin(2.0 * pi * (x0 + x[1])) / (1.0 + std::abs(G));
        const double g = 1.0 + sum_sq_from(x, 2, [&](std::size_t) { return target; });
        const double c0 = std::cos(0.5 * pi * x0);
        const double s0 = std::sin(0.5 * pi * x0);
        const double c1 = std::cos(0.5 * pi * x[1]);
        const double s1 = std::sin(0.5 * pi * x[1]);
        return {g * std::pow(s0, H), g * std::pow(s1 * c0, H), g * std::pow(c1 * c0, H)};
    }
    case ProblemId::DF11: {
        const double G = std::abs(std::sin(0.5 * pi * t));
        const double g = 1.0 + G + sum_sq_from(x, 2, [&](std::size_t) { return 0.5 * G * x0; });
        const double y0 = pi * G / 6.0 + (pi / 2.0 - pi * G / 3.0) * x0;
        const double y1 = pi * G / 6.0 + (pi / 2.0 - pi * G / 3.0) * x[1];
        return {g * std::sin(y0), g * std::sin(y1) * std::cos(y0), g * std::cos(y1) * std::cos(y0)};
    }
    case ProblemId::DF12: {
        const double k = 10.0 * std::sin(pi * t);
        const double r = 1.0 - positive_mod(k, 2.0);
        double prod = 1.0;
        for (std::size_t j = 0; j < 2; ++j) {
            prod *= std::sin(std::floor(k * (2.0 * x[j] - r)) * pi / 2.0);
        }
        const double target = std::sin(t * x0);
        const double g = 1.0 + sum_sq_from(x, 2, [&](std::size_t) { return target; }) + std::abs(prod);
        const double c0 = std::cos(0.5 * pi * x0);
        const double s0 = std::sin(0.5 * pi * x0);
        const double c1 = std::cos(0.5 * pi * x[1]);
        const double s1 = std::sin(0.5 * pi * x[1]);
        return {g * c1 * c0, g * s1 * c0, g * s0};
    }
    case ProblemId::DF13: {
        const double G = std::sin(0.5 * pi * t);
        const double p = std::floor(6.0 * G);
        const double g = 1.0 + sum_sq_from(x, 2, [&](std::size_t) { return G; });
        const double s0 = std::sin(0.5 * pi * x0);
        const double s1 = std::sin(0.5 * pi * x[1]);
        const double cp0 = std::cos(p * pi * x0);
        const double cp1 = std::cos(p * pi * x[1]);
        const double c0 = std::cos(0.5 * pi * x0);
        const double c1 = std::cos(0.5 * pi * x[1]);
        return {g * c0 * c0, g * c1 * c1, g * (s0 * s0 + s0 * cp0 * cp0 + s1 * s1 + s1 * cp1 * cp1)};
    }
    case ProblemId::DF14: {
        const double G = std::sin(0.5 * pi * t);
        const double g = 1.0 + sum_sq_from(x, 2, [&](std::size_t) { return G; });
        const double y = 0.5 + G * (x0 - 0.5);
        const double sy = y + 0.05 * std::sin(6.0 * pi * y);
        return {g * (1.0 - y + 0.05 * std::sin(6.0 * pi * y)),
                g * (1.0 - x[1] + 0.05 * std::sin(6.0 * pi * x[1])) * sy,
                g * (x[1] + 0.05 * std::sin(6.0 * pi * x[1])) * sy};
    }
    }
    throw UnsupportedProblem("problem not implemented: " + std::to_string(static_cast<int>(id_)));
}

DecisionVector DfProblem::pareto_set_point(double u, double v, double t) const
{
    DecisionVector x(n_, 0.0);
    const double n = static_cast<double>(n_);
    auto fill_from = [&](std::size_t from, double value) { std::fill(x.begin() + static_cast<long>(from), x.end(), value); };

    switch (id_) {
    case ProblemId::DF1:
        fill_from(1, std::abs(std::sin(0.5 * pi * t)));
        x[0] = u;
        break;
    case ProblemId::DF2: {
        const double G = std::abs(std::sin(0.5 * pi * t));
        fill_from(0, G);
        x[static_cast<std::size_t>(std::floor((n - 1.0) * G))] = u;
        break;
    }
    case ProblemId::DF3: {
        const double G = std::sin(0.5 * pi * t);
        x[0] = u;
        fill_from(1, G + std::pow(u, G + 1.5));
        break;
    }
    case ProblemId::DF4: {
        const double a = std::sin(0.5 * pi * t);
        const double b = 1.0 + std::abs(std::cos(0.5 * pi * t));
        const double c = std::max(std::abs(a), a + b);
        x[0] = a + u * b;
        for (std::size_t i = 1; i < n_; ++i) {
            x[i] = a * x[0] * x[0] / (static_cast<double>(i + 1) * c * c);
        }
        break;
    }
    case ProblemId::DF5:
    case ProblemId::DF6:
        x[0] = u;
        fill_from(1, std::sin(0.5 * pi * t));
        break;
    case ProblemId::DF7:
        x[0] = 1.0 + 3.0 * u;
        fill_from(1, 1.0 / (1.0 + std::exp(5.0 * std::cos(0.5 * pi * t) * (x[0] - 2.5))));
        break;
    case ProblemId::DF8: {
        const double G = std::sin(0.5 * pi * t);
        x[0] = u;
        fill_from(1, G * std::sin(4.0 * pi * std::pow(u, 100.0 * G * G)) / (1.0 + std::abs(G)));
        break;
    }
    case ProblemId::DF9:
        x[0] = u;
        for (std::size_t i = 1; i < n_; ++i) {
            x[i] = std::cos(4.0 * t + x[0] + x[i - 1]);
        }
        break;
    case ProblemId::DF10: {
        const double G = std::sin(0.5 * pi * t);
        x[0] = u;
        x[1] = v;
        fill_from(2, std::sin(2.0 * pi * (u + v)) / (1.0 + std::abs(G)));
        break;
    }
    case ProblemId::DF11:
        x[0] = u;
        x[1] = v;
        fill_from(2, 0.5 * std::abs(std::sin(0.5 * pi * t)) * u);
        break;
    case ProblemId::DF12:
        x[0] = u;
        x[1] = v;
        fill_from(2, std::sin(t * u));
        break;
    case ProblemId::DF13:
    case ProblemId::DF14:
        x[0] = u;
        x[1] = v;
        fill_from(2, std::sin(0.5 * pi * t));
        break;
    }
    return x;
}

DfProblem::FrontSample DfProblem::sample_front(double t, std::size_t count) const
{
    FrontSample out;
    if (count == 0) {
        return out;
    }
    // Start from a parameter grid of about `count` points; drop dominated
    // points (disconnected fronts) and refine the grid until enough remain.
    std::size_t side = m_ == 2 ? std::max<std::size_t>(count, 2)
                               : static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
    side = std::max<std::size_t>(side, 2);
    constexpr int max_refinements = 6;
    for (int attempt = 0; attempt <= max_refinements; ++attempt) {
        std::vector<DecisionVector> xs;
        std::vector<ObjectiveVector> fs;
        const double step = 1.0 / static_cast<double>(side - 1);
        if (m_ == 2) {
            for (std::size_t i = 0; i < side; ++i) {
                xs.push_back(pareto_set_point(static_cast<double>(i) * step, 0.0, t));
            }
        } else {
            for (std::size_t i = 0; i < side; ++i) {
                for (std::size_t j = 0; j < side; ++j) {
                    xs.push_back(pareto_set_point(static_cast<double>(i) * step, static_cast<double>(j) * step, t));
                }
            }
        }
        fs.reserve(xs.size());
        for (const auto& x : xs) {
            fs.push_back(evaluate(x, t));
        }
        const auto keep = nondominated_filter(fs);
        if (keep.size() >= count) {
            const auto last = static_cast<double>(keep.size() - 1);
            for (std::size_t k = 0; k < count; ++k) {
                const auto pos = count == 1 ? 0
                                            : static_cast<std::size_t>(std::llround(
                                                  static_cast<double>(k) * last / static_cast<double>(count - 1)));
                out.xs.push_back(xs[keep[pos]]);
                out.fs.push_back(fs[keep[pos]]);
            }
            return out;
        }
        side = 2 * side - 1;
    }
    throw UnsupportedProblem(name() + ": could not sample " + std::to_string(count) + " front points at t=" +
                             std::to_string(t));
}

TrueFrontSample DfProblem::sample_true_front(double t, std::size_t count) const
{
    if (count < 2) {
        throw ContractError("sample_true_front: count must be >= 2");
    }
    return TrueFrontSample{sample_front(t, count).fs, t};
}

std::vector<DecisionVector> DfProblem::sample_true_set(double t, std::size_t count) const
{
    return sample_front(t, count).xs;
}

} // namespace dynmo
