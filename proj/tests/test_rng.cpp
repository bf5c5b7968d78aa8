#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "betaflow/rng.hpp"

using namespace betaflow;

TEST_CASE("identical keys reproduce the identical sequence") {
    RngStream a(42, 7);
    RngStream b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct stream ids decorrelate") {
    RngStream a(42, 0);
    RngStream b(42, 1);
    int same = 0;
    for (int i = 0; i < 256; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("child streams are reproducible and distinct") {
    const RngStream parent(99, 3);
    RngStream c1 = parent.child(5);
    RngStream c2 = parent.child(5);
    RngStream c3 = parent.child(6);
    for (int i = 0; i < 100; ++i) {
        const std::uint64_t v = c1.next_u64();
        CHECK(v == c2.next_u64());
        CHECK(v != c3.next_u64());
    }
    CHECK(c1.seed() == parent.seed());
}

TEST_CASE("uniform stays inside the open interval") {
    RngStream rng(1);
    double lo = 1.0, hi = 0.0, mean = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        mean += u;
    }
    mean /= n;
    // 4 sigma around 1/2 with sigma = 1/sqrt(12 n)
    CHECK(std::fabs(mean - 0.5) <= 4.0 / std::sqrt(12.0 * n));
    CHECK(lo < 1e-3);
    CHECK(hi > 1.0 - 1e-3);
}

TEST_CASE("normal moments") {
    RngStream rng(2);
    const int n = 200000;
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.normal();
        m1 += z;
        m2 += z * z;
    }
    m1 /= n;
    m2 /= n;
    CHECK(std::fabs(m1) <= 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::fabs(m2 - 1.0) <= 4.0 * std::sqrt(2.0 / n));
}

TEST_CASE("coin is fair") {
    RngStream rng(3);
    const int n = 100000;
    int heads = 0;
    for (int i = 0; i < n; ++i)
        if (rng.coin()) ++heads;
    CHECK(std::fabs(heads - 0.5 * n) <= 4.0 * std::sqrt(0.25 * n));
}
