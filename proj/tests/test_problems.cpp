#include "dynmo/core.hpp"
#include "dynmo/problems.hpp"

#include <doctest.h>

#include <cmath>

using namespace dynmo;

namespace {

struct SpotValue {
    int id;
    double t;
    std::vector<double> f;
};

// Independent scalar transcription (tests/oracles/df_reference.py), frozen.
const std::vector<SpotValue> spot_values{
    {1, 0.0, {0.11, 4.0237948560733985}}, {1, 0.2, {0.11, 2.0333327161798826}}, {1, 1.3, {0.11, 2.9395175590685936}},
    {2, 0.0, {0.11, 3.3994276537853008}}, {2, 0.2, {0.84999999999999998, 0.56772527504863068}},
    {2, 1.3, {0.06999999999999984, 2.4317503462490309}},
    {3, 0.0, {0.11, 9.4167061848915932}}, {3, 0.2, {0.11, 7.5148525221628608}}, {3, 1.3, {0.11, 8.184728878554731}},
    {4, 0.0, {23.097579732930775, 79.625940383478536}}, {4, 0.2, {36.499069096881307, 133.01678174347259}},
    {4, 1.3, {99.735604288662572, 303.73443584571038}},
    {5, 0.0, {0.40849600000000019, 3.3051040000000018}}, {5, 0.2, {0.55974199186708273, 3.991721718468042}},
    {5, 1.3, {1.2158366755547751, 9.2963792613358791}},
    {6, 0.0, {58.089171607350217, 80.076974955860592}}, {6, 0.2, {17.853142193629264, 98.686711441633207}},
    {6, 1.3, {1.0846645346750148, 81.988297334619801}},
    {7, 0.0, {2.8296493308634312, 5.0053667013643235}}, {7, 0.2, {3.3881693530452264, 4.1620366448622939}},
    {7, 1.3, {6.0493833375801769, 2.0228268782316787}},
    {8, 0.0, {0.72814115914818478, 3.3504039380972737}}, {8, 0.2, {0.7281411589196406, 3.4644279631510124}},
    {8, 1.3, {0.72814115914818478, 3.5696979247295948}},
    {9, 0.0, {4.4271270960829439, 11.439267058838624}}, {9, 0.2, {0.97977892016005119, 4.9430387226960022}},
    {9, 1.3, {0.94770618730343559, 7.6678046063641609}},
    {10, 0.0, {0.0035738189207531971, 1.1903389751784259, 1.5549592990612855}},
    {10, 0.2, {0.0035525474983813727, 1.0350905208835737, 1.3438594540015787}},
    {10, 1.3, {0.4270372358438782, 2.6730404283263463, 2.908372477303601}},
    {11, 0.0, {0.65986388687237374, 2.5881696473751412, 2.7561207388660822}},
    {11, 0.2, {1.180562907011238, 2.6399026553609675, 2.7749993951830763}},
    {11, 1.3, {2.2192355202792511, 2.6038395153120906, 2.6711238956233712}},
    {12, 0.0, {2.6656384009043519, 2.5032010763565737, 0.63820082023716851}},
    {12, 0.2, {2.6583082623419072, 2.496317618070135, 0.63644585585737223}},
    {12, 1.3, {2.7168194732335347, 2.5512633023884419, 0.65045447111870613}},
    {13, 0.0, {3.6022747071790442, 1.9725392042464069, 5.0284257660190139}},
    {13, 0.2, {4.1517003474765675, 2.2733945535470017, 2.7939158516811671}},
    {13, 1.3, {9.2122904530870464, 5.0444803788574335, 5.3894990729721934}},
    {14, 0.0, {1.856000000000001, 0.9992819584891387, 0.9250419584891385}},
    {14, 0.2, {2.8181535189645568, 0.96211815090524788, 0.89063917450983632}},
    {14, 1.3, {8.1703409327770888, 0.84686948380611915, 0.78395271647768172}},
};

DecisionVector spot_point(const DfProblem& p)
{
    const auto& b = p.bounds();
    DecisionVector x(p.decision_dim());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = b.lower[i] + (b.upper[i] - b.lower[i]) * std::fmod(0.37 * static_cast<double>(i) + 0.11, 1.0);
    }
    return x;
}

} // namespace

TEST_CASE("time_of_generation")
{
    DynamicConfig cfg;
    cfg.n_t = 10;
    cfg.tau_t = 5;
    CHECK(time_of_generation(23, cfg) == doctest::Approx(0.4));
    CHECK(time_of_generation(0, cfg) == 0.0);
    CHECK(time_of_generation(-7, cfg) == 0.0);
    cfg.n_t = 5;
    cfg.tau_t = 10;
    CHECK(time_of_generation(10, cfg) == doctest::Approx(0.2));

    double last = 0.0;
    for (long tau = 0; tau < 200; ++tau) {
        const double t = time_of_generation(tau, cfg);
        CHECK(t >= last);
        CHECK(t == time_of_generation(tau - tau % cfg.tau_t, cfg));
        last = t;
    }
}

TEST_CASE("C3 with 30 environments has 300 post-warmup generations")
{
    DynamicConfig cfg;
    cfg.n_t = 5;
    cfg.tau_t = 10;
    cfg.environments = 30;
    CHECK(cfg.total_generations() - cfg.first_change_after == 300);
}

TEST_CASE("DynamicConfig validation")
{
    DynamicConfig cfg;
    cfg.n_t = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.n_t = 1;
    cfg.tau_t = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("problem registry")
{
    CHECK(parse_problem_id("df7") == ProblemId::DF7);
    CHECK(to_string(ProblemId::DF12) == "DF12");
    CHECK(all_problems().size() == 14);
    CHECK_THROWS_AS((void)parse_problem_id("DF15"), ConfigError);
    for (auto id : all_problems()) {
        const DfProblem p(id);
        CHECK(p.decision_dim() == 10);
        CHECK(p.objective_count() == (static_cast<int>(id) >= 10 ? 3u : 2u));
    }
}

TEST_CASE("spot values match the reference transcription")
{
    for (const auto& s : spot_values) {
        const DfProblem p(static_cast<ProblemId>(s.id));
        const auto f = p.evaluate(spot_point(p), s.t);
        REQUIRE(f.size() == s.f.size());
        for (std::size_t j = 0; j < f.size(); ++j) {
            INFO(p.name() << " t=" << s.t << " j=" << j);
            CHECK(f[j] == doctest::Approx(s.f[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("DF1 at the origin")
{
    const DfProblem p(ProblemId::DF1);
    const auto f = p.evaluate(DecisionVector(10, 0.0), 0.0);
    CHECK(f[0] == 0.0);
    CHECK(f[1] == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)p.evaluate(DecisionVector(3, 0.0), 0.0), ContractError);
}

TEST_CASE("evaluation is deterministic")
{
    for (auto id : all_problems()) {
        const DfProblem p(id);
        const auto x = spot_point(p);
        CHECK(p.evaluate(x, 0.6) == p.evaluate(x, 0.6));
    }
}

TEST_CASE("true fronts are mutually non-dominated across t")
{
    for (auto id : all_problems()) {
        const DfProblem p(id);
        for (double t : {0.0, 0.3, 0.7, 1.0, 1.6, 2.2, 3.0}) {
            const std::size_t count = p.objective_count() == 2 ? 200 : 300;
            const auto front = p.sample_true_front(t, count);
            INFO(p.name() << " t=" << t);
            CHECK(front.points.size() == count);
            CHECK(nondominated_filter(front.points).size() == count);
        }
    }
}

TEST_CASE("true set evaluates onto the true front")
{
    for (auto id : all_problems()) {
        const DfProblem p(id);
        const double t = 0.4;
        const auto xs = p.sample_true_set(t, 50);
        std::vector<ObjectiveVector> fs;
        for (const auto& x : xs) {
            fs.push_back(p.evaluate(x, t));
        }
        INFO(p.name());
        CHECK(nondominated_filter(fs).size() == fs.size());
        const auto front = p.sample_true_front(t, 50);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            for (std::size_t j = 0; j < fs[i].size(); ++j) {
                CHECK(fs[i][j] == doctest::Approx(front.points[i][j]).epsilon(1e-9));
            }
        }
    }
    CHECK(DfProblem(ProblemId::DF1).sample_true_set(0.0, 0).empty());
}

TEST_CASE("DF1 front and set at t = 0")
{
    const DfProblem p(ProblemId::DF1);
    const auto front = p.sample_true_front(0.0, 1000);
    for (std::size_t i = 0; i < front.points.size(); ++i) {
        CHECK(front.points[i][0] == doctest::Approx(static_cast<double>(i) / 999.0));
    }
    const auto two = p.sample_true_front(0.0, 2);
    CHECK(two.points[0][0] == doctest::Approx(0.0));
    CHECK(two.points[1][0] == doctest::Approx(1.0));
    for (const auto& x : p.sample_true_set(0.0, 20)) {
        for (std::size_t i = 1; i < x.size(); ++i) {
            CHECK(x[i] == 0.0);
        }
    }
}
