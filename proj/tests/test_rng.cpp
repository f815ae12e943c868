#include "dynmo/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace dynmo;

TEST_CASE("same seed and stream give the same sequence")
{
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    RngStream c(42, 8);
    RngStream d(42, 7);
    CHECK(c.next_u64() != d.next_u64());
}

TEST_CASE("split does not depend on parent consumption")
{
    RngStream parent(1, 2);
    const auto child_before = parent.split(3);
    for (int i = 0; i < 10; ++i) {
        (void)parent.next_u64();
    }
    auto x = child_before;
    auto y = parent.split(3);
    CHECK(x.next_u64() == y.next_u64());
}

TEST_CASE("uniform draws stay in range")
{
    RngStream rng(9, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = rng.uniform(-2.0, 3.0);
        CHECK(v >= -2.0);
        CHECK(v < 3.0);
        CHECK(rng.index(7) < 7);
    }
}

TEST_CASE("normal draws have unit variance")
{
    RngStream rng(10, 0);
    double sum = 0.0;
    double sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sq / n - 1.0) < 0.02);
}

TEST_CASE("sample_without_replacement gives distinct valid indices")
{
    RngStream rng(12, 0);
    for (std::size_t k = 0; k <= 20; ++k) {
        const auto s = rng.sample_without_replacement(20, k);
        CHECK(s.size() == k);
        CHECK(std::set<std::size_t>(s.begin(), s.end()).size() == k);
        CHECK(std::all_of(s.begin(), s.end(), [](std::size_t i) { return i < 20; }));
    }
}
