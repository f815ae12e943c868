#include "dynmo/clustering.hpp"
#include "dynmo/rng.hpp"

#include <doctest.h>

#include <algorithm>

using namespace dynmo;

TEST_CASE("seed_centers")
{
    const std::vector<std::vector<double>> pts{{0, 0}, {2, 0}, {0, 2}};
    const auto model = seed_centers(pts, pts, Domain::decision);
    REQUIRE(model.k() == 3);
    CHECK(model.centers[0][0] == doctest::Approx(2.0 / 3.0));
    CHECK(model.centers[0][1] == doctest::Approx(2.0 / 3.0));
    CHECK(model.centers[1] == std::vector<double>{0, 0});
    CHECK(model.centers[2] == std::vector<double>{0, 0});
    CHECK(model.duplicate_seeds);
    CHECK(model.counts == std::vector<std::size_t>{0, 0, 0});

    const std::vector<std::vector<double>> one{{1.5, -2.0}};
    const auto single = seed_centers(one, one, Domain::objective);
    CHECK(single.k() == 3);
    for (const auto& c : single.centers) {
        CHECK(c == one[0]);
    }

    CHECK_THROWS_AS((void)seed_centers(std::vector<std::vector<double>>{}, std::vector<ObjectiveVector>{},
                                       Domain::decision),
                    ContractError);
    CHECK_THROWS_AS((void)seed_centers(pts, pts, Domain::decision, 4), ContractError);
}

TEST_CASE("online_kmeans_step")
{
    ClusterModel model;
    model.centers = {{0.0}};
    model.counts = {0};
    online_kmeans_step(model, std::vector{4.0});
    CHECK(model.centers[0][0] == 4.0);
    CHECK(model.counts[0] == 1);
    online_kmeans_step(model, std::vector{0.0});
    CHECK(model.centers[0][0] == 2.0);
    CHECK(model.counts[0] == 2);

    ClusterModel two;
    two.centers = {{-1.0}, {1.0}};
    two.counts = {0, 0};
    CHECK(nearest_center(two, std::vector{0.0}) == 0);
    online_kmeans_step(two, std::vector{0.0});
    CHECK(two.centers[0][0] == 0.0);
    CHECK(two.centers[1][0] == 1.0);
}

TEST_CASE("tie-break determinism over random equidistant points")
{
    RngStream rng(1, 1);
    for (int i = 0; i < 500; ++i) {
        // integers and quarters keep the distances exact
        const double c = static_cast<double>(rng.index(11)) - 5.0;
        const double h = 0.25 * static_cast<double>(1 + rng.index(8));
        const std::vector<std::vector<double>> centers{{c + h, 0.0}, {c - h, 0.0}, {c, 10.0 + h}};
        CHECK(nearest_center(centers, std::vector{c, 0.0}) == 0);
    }
}

TEST_CASE("K = 1 after one pass is the running mean")
{
    RngStream rng(2, 2);
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = 1 + rng.index(60);
        std::vector<std::vector<double>> pts(n, std::vector<double>(4));
        std::vector<double> mean(4, 0.0);
        for (auto& p : pts) {
            for (std::size_t d = 0; d < 4; ++d) {
                p[d] = rng.uniform(-3, 3);
                mean[d] += p[d] / static_cast<double>(n);
            }
        }
        const auto model = cluster_population(pts, pts, Domain::decision, 1, 1);
        for (std::size_t d = 0; d < 4; ++d) {
            CHECK(model.centers[0][d] == doctest::Approx(mean[d]).epsilon(1e-12));
        }
    }
}

TEST_CASE("two blobs end up with centers inside their hulls")
{
    RngStream rng(3, 3);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 40; ++i) {
        pts.push_back({rng.uniform(0, 1), rng.uniform(0, 1)});
        pts.push_back({rng.uniform(9, 10), rng.uniform(9, 10)});
    }
    const auto model = cluster_population(pts, pts, Domain::objective);
    CHECK(model.k() == 3);
    for (std::size_t c = 0; c < model.k(); ++c) {
        if (model.counts[c] == 0) {
            continue;
        }
        const bool low = model.centers[c][0] <= 1 && model.centers[c][1] <= 1;
        const bool high = model.centers[c][0] >= 9 && model.centers[c][1] >= 9;
        CHECK((low || high));
    }
    const auto again = cluster_population(pts, pts, Domain::objective);
    CHECK(again.centers == model.centers);
    CHECK_THROWS_AS((void)cluster_population(pts, pts, Domain::objective, 0), ContractError);
}

TEST_CASE("centers stay inside the bounding box")
{
    RngStream rng(4, 4);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::vector<double>> pts(30, std::vector<double>(3));
        for (auto& p : pts) {
            for (auto& v : p) {
                v = rng.uniform(-1, 1);
            }
        }
        const auto model = cluster_population(pts, pts, Domain::decision);
        CHECK(model.k() == 4);
        for (const auto& c : model.centers) {
            for (std::size_t d = 0; d < 3; ++d) {
                const auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                                          [d](const auto& a, const auto& b) { return a[d] < b[d]; });
                CHECK(c[d] >= (*lo)[d]);
                CHECK(c[d] <= (*hi)[d]);
            }
        }
    }
}

TEST_CASE("align_centers is a bijection recovering a permutation")
{
    RngStream rng(5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::vector<double>> prev(4, std::vector<double>(2));
        for (std::size_t k = 0; k < 4; ++k) {
            prev[k] = {static_cast<double>(k) * 10.0 + rng.uniform(), rng.uniform()};
        }
        std::vector<std::size_t> perm{0, 1, 2, 3};
        rng.shuffle(perm);
        std::vector<std::vector<double>> cur(4);
        for (std::size_t k = 0; k < 4; ++k) {
            cur[perm[k]] = {prev[k][0] + 0.1, prev[k][1] - 0.1};
        }
        CHECK(align_centers(prev, cur) == perm);
    }
}
