#include "dynmo/predictor.hpp"

#include <doctest.h>

#include <cmath>

using namespace dynmo;

namespace {

using Points = std::vector<std::vector<double>>;

HistoryBuffer scalar_history(double c0, double c1, double c2)
{
    HistoryBuffer h(Domain::objective, 1);
    for (double c : {c0, c1, c2}) {
        h.record_with_centers(Points{{c}}, std::vector<ObjectiveVector>{{c}}, Points{{c}}, 0);
    }
    return h;
}

ClusterKinematics scalar_kinematics(double v, double a, std::vector<double> older)
{
    ClusterKinematics kin;
    kin.velocity = {{v}};
    kin.acceleration = {{a}};
    for (double o : older) {
        kin.older.push_back({{o}});
    }
    return kin;
}

Population as_objective_population(const Points& pts)
{
    Population pop;
    for (const auto& p : pts) {
        pop.push_back(Individual{{0.0}, p, 0.0});
    }
    return pop;
}

Points shifted_cloud(const Points& cloud, const std::vector<double>& offset)
{
    Points out = cloud;
    for (auto& p : out) {
        for (std::size_t d = 0; d < p.size(); ++d) {
            p[d] += offset[d];
        }
    }
    return out;
}

} // namespace

TEST_CASE("kinematics")
{
    auto kin = compute_kinematics(scalar_history(0, 1, 4));
    CHECK(kin.velocity[0][0] == 3.0);
    CHECK(kin.acceleration[0][0] == 2.0);
    CHECK(kin.older.empty());

    kin = compute_kinematics(scalar_history(0, 1, 2));
    CHECK(kin.acceleration[0][0] == 0.0);
    kin = compute_kinematics(scalar_history(5, 5, 5));
    CHECK(kin.velocity[0][0] == 0.0);
    CHECK(kin.acceleration[0][0] == 0.0);

    HistoryBuffer short_history(Domain::decision, 1);
    CHECK_THROWS_AS((void)compute_kinematics(short_history), InsufficientHistory);
}

TEST_CASE("history keeps three snapshots and three accelerations")
{
    HistoryBuffer h(Domain::objective, 1);
    for (int e = 0; e < 6; ++e) {
        const double c = e * e;
        h.record_with_centers(Points{{c}}, std::vector<ObjectiveVector>{{c}}, Points{{c}}, e);
        CHECK(h.size() == std::min(e + 1, 3));
    }
    CHECK(h.at(0).environment == 5);
    CHECK(h.at(2).environment == 3);
    CHECK(h.accelerations().size() == 3);
    const auto kin = compute_kinematics(h);
    CHECK(kin.older.size() == 2);
    CHECK(kin.acceleration[0][0] == 2.0);
}

TEST_CASE("recorded centers are aligned with the previous snapshot")
{
    HistoryBuffer h(Domain::objective, 2);
    h.record_with_centers(Points{{0}}, std::vector<ObjectiveVector>{{0}}, Points{{0.0}, {10.0}}, 0);
    h.record_with_centers(Points{{0}}, std::vector<ObjectiveVector>{{0}}, Points{{11.0}, {1.0}}, 1);
    CHECK(h.at(0).centers == Points{{1.0}, {11.0}});
}

TEST_CASE("severity test")
{
    ClusterKinematics kin;
    kin.velocity = {{0, 0}};
    kin.acceleration = {{1, 0}};
    CHECK(severity_test(kin, 0) == Severity::mild);
    kin.older = {{{2, 0}}};
    CHECK(severity_test(kin, 0) == Severity::mild);
    kin.older = {{{-1, 0}}};
    CHECK(severity_test(kin, 0) == Severity::severe);
    kin.older = {{{0, 1}}};
    CHECK(severity_test(kin, 0) == Severity::mild);
}

TEST_CASE("predict_individual")
{
    RngStream rng(1, 1);
    const auto mild = scalar_kinematics(3, 2, {});
    CHECK(predict_individual(std::vector{4.0}, 0, mild, Severity::mild, 0.0, rng)[0] == 9.0);
    CHECK(predict_individual(std::vector{5.0}, 0, mild, Severity::mild, 0.0, rng)[0] == 10.0);

    const auto still = scalar_kinematics(0, 0, {0, 0});
    CHECK(predict_individual(std::vector{1.25}, 0, still, Severity::mild, 0.0, rng)[0] == 1.25);

    const auto severe = scalar_kinematics(1, 2, {-2, 0});
    CHECK(predict_individual(std::vector{0.0}, 0, severe, Severity::severe, 0.0, rng)[0] ==
          doctest::Approx(1.4));

    // a^{t-2} unknown: weights (0.5, 0.3) renormalised
    const auto partial = scalar_kinematics(1, 2, {-2});
    CHECK(predict_individual(std::vector{0.0}, 0, partial, Severity::severe, 0.0, rng)[0] ==
          doctest::Approx(1.0 + (1.0 - 0.6) / 0.8));
}

TEST_CASE("noise is truncated at three sigma")
{
    RngStream rng(2, 2);
    const auto kin = scalar_kinematics(0, 0, {});
    double sum_sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double e = predict_individual(std::vector{0.0}, 0, kin, Severity::mild, 0.5, rng)[0];
        CHECK(std::abs(e) <= 1.5);
        sum_sq += e * e;
    }
    CHECK(std::sqrt(sum_sq / n) == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("noise scale is the mean nearest-neighbour distance over the dimension")
{
    HistoryBuffer h(Domain::objective, 1);
    h.record_with_centers(Points{{0, 0}, {4, 0}}, std::vector<ObjectiveVector>{{0, 0}, {4, 0}}, Points{{2, 0}}, 0);
    h.record_with_centers(Points{{0, 1}, {4, 3}}, std::vector<ObjectiveVector>{{0, 1}, {4, 3}}, Points{{2, 2}}, 1);
    CHECK(noise_scale(h) == doctest::Approx((1.0 + 3.0) / 2.0 / 2.0));
}

TEST_CASE("quadratic trajectories are reproduced exactly")
{
    RngStream rng(3, 3);
    PredictorParams params;
    params.noise = false;
    for (int instance = 0; instance < 20; ++instance) {
        const std::size_t dim = 10;
        Points cloud(50, std::vector<double>(dim));
        for (auto& p : cloud) {
            for (auto& v : p) {
                v = rng.uniform(-1, 1);
            }
        }
        std::vector<double> p0(dim), v(dim), q(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            p0[d] = rng.uniform(-5, 5);
            v[d] = rng.uniform(-1, 1);
            q[d] = rng.uniform(-1, 1);
        }
        const auto position = [&](double e) {
            std::vector<double> out(dim);
            for (std::size_t d = 0; d < dim; ++d) {
                out[d] = p0[d] + v[d] * e + 0.5 * q[d] * e * e;
            }
            return out;
        };

        HistoryBuffer h(Domain::objective, 1);
        for (int e = 0; e < 3; ++e) {
            const auto pts = shifted_cloud(cloud, position(e));
            h.record(pts, pts, e);
        }
        const auto current = as_objective_population(shifted_cloud(cloud, position(2)));
        const auto truth = shifted_cloud(cloud, position(3));
        const auto pred = predict_population(h, current, Bounds{}, rng, params);
        REQUIRE(pred.members.size() == truth.size());
        CHECK_FALSE(pred.cold_start);
        double err = 0.0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            err += euclidean_distance(pred.members[i].point, truth[i]);
        }
        CHECK(err / static_cast<double>(truth.size()) < 1e-9);
    }
}

TEST_CASE("translation equivariance")
{
    RngStream gen(4, 4);
    Points base(30, std::vector<double>(3));
    for (auto& p : base) {
        for (auto& v : p) {
            v = gen.uniform(0, 1);
        }
    }
    const std::vector<double> shift{2.5, -1.0, 0.75};
    HistoryBuffer a(Domain::objective);
    HistoryBuffer b(Domain::objective);
    for (int e = 0; e < 3; ++e) {
        Points pts = base;
        for (auto& p : pts) {
            p[0] += 0.3 * e * e;
            p[1] -= 0.1 * e;
        }
        // objective values used for seeding stay the same in both buffers
        a.record(pts, pts, e);
        b.record(shifted_cloud(pts, shift), pts, e);
    }
    const auto cur_a = as_objective_population(a.at(0).points);
    const auto cur_b = as_objective_population(b.at(0).points);
    RngStream ra(5, 5);
    RngStream rb(5, 5);
    const auto pa = predict_population(a, cur_a, Bounds{}, ra);
    const auto pb = predict_population(b, cur_b, Bounds{}, rb);
    for (std::size_t i = 0; i < pa.members.size(); ++i) {
        for (std::size_t d = 0; d < 3; ++d) {
            CHECK(pb.members[i].point[d] - pa.members[i].point[d] == doctest::Approx(shift[d]).epsilon(1e-9));
        }
    }
}

TEST_CASE("decision-domain predictions are clamped")
{
    RngStream rng(6, 6);
    const Bounds b{{0, 0}, {1, 1}};
    HistoryBuffer h(Domain::decision);
    for (int e = 0; e < 3; ++e) {
        Points pts;
        std::vector<ObjectiveVector> objs;
        for (int i = 0; i < 10; ++i) {
            const double u = i / 9.0;
            pts.push_back({std::min(1.0, 0.2 * e * e + 0.1 * u), u});
            objs.push_back({u, 1 - u});
        }
        h.record(pts, objs, e);
    }
    Population cur;
    for (std::size_t i = 0; i < h.at(0).points.size(); ++i) {
        cur.push_back(Individual{h.at(0).points[i], h.at(0).objectives[i], 0.0});
    }
    const auto pred = predict_population(h, cur, b, rng);
    for (const auto& m : pred.members) {
        CHECK(b.contains(m.point));
    }
}

TEST_CASE("cold start keeps floor(0.9 N) members")
{
    RngStream rng(7, 7);
    const Bounds b{{0, 0}, {1, 1}};
    for (std::size_t n : {10u, 17u, 100u}) {
        Population pop;
        for (std::size_t i = 0; i < n; ++i) {
            const double u = rng.uniform();
            pop.push_back(Individual{{u, rng.uniform()}, {u, rng.uniform()}, 0.0});
        }
        HistoryBuffer dh(Domain::decision);
        const auto dp = predict_population(dh, pop, b, rng);
        CHECK(dp.cold_start);
        CHECK(dp.members.size() == n);
        std::size_t retained = 0;
        for (const auto& m : dp.members) {
            CHECK(b.contains(m.point));
            for (const auto& ind : pop) {
                if (ind.x == m.point) {
                    ++retained;
                    break;
                }
            }
        }
        CHECK(retained >= n * 9 / 10);

        HistoryBuffer oh(Domain::objective);
        const auto op = predict_population(oh, pop, b, rng);
        std::size_t lazy = 0;
        for (const auto& m : op.members) {
            lazy += m.decision ? 1 : 0;
        }
        CHECK(lazy == n - n * 9 / 10);
    }
}

TEST_CASE("cold start retains the first front before dominated members")
{
    RngStream rng(8, 8);
    Population pop;
    for (int i = 0; i < 10; ++i) {
        pop.push_back(Individual{{0.1 * i}, {0.1 * i, 1.0 - 0.1 * i}, 0.0});
    }
    pop.push_back(Individual{{5.0}, {9.0, 9.0}, 0.0}); // dominated
    HistoryBuffer h(Domain::decision);
    const auto pred = predict_population(h, pop, Bounds{{0}, {10}}, rng);
    for (std::size_t i = 0; i < 9; ++i) {
        CHECK(pred.members[i].point[0] != 5.0);
    }
}
