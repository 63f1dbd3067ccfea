#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "opengossip/analytic.hpp"
#include "support/checks.hpp"

using namespace opengossip;
using ogtest::map_distance;

namespace {

// 2x2 inverse route for the inter-arrival map: p (I - (1-p) A_g)^-1
AffineMap2 inter_arrival_by_inverse(std::uint64_t n, double p) {
    const AffineMap2 g = gossip_map(n);
    const double m11 = 1.0 - (1.0 - p) * g.a11;
    const double m12 = -(1.0 - p) * g.a12;
    const double m21 = -(1.0 - p) * g.a21;
    const double m22 = 1.0 - (1.0 - p) * g.a22;
    const double det = m11 * m22 - m12 * m21;
    return {p * m22 / det, -p * m12 / det, -p * m21 / det, p * m11 / det, 0.0, 0.0};
}

// truncated geometric series sum_k p (1-p)^k A_g^k
AffineMap2 inter_arrival_by_series(std::uint64_t n, double p, int terms) {
    const AffineMap2 g = gossip_map(n);
    AffineMap2 power = AffineMap2::identity();
    double weight = p;
    AffineMap2 acc{0, 0, 0, 0, 0, 0};
    for (int k = 0; k <= terms; ++k) {
        acc.a11 += weight * power.a11;
        acc.a12 += weight * power.a12;
        acc.a21 += weight * power.a21;
        acc.a22 += weight * power.a22;
        power = compose(power, g);
        weight *= (1.0 - p);
    }
    return acc;
}

}  // namespace

TEST_CASE("inter-arrival map") {
    SECTION("p = 1 is the identity") {
        for (std::uint64_t n : {1ull, 2ull, 17ull})
            REQUIRE(inter_arrival_map(n, 1.0) == AffineMap2::identity());
    }
    SECTION("matches the truncated geometric series") {
        REQUIRE(map_distance(inter_arrival_map(3, 0.5),
                             inter_arrival_by_series(3, 0.5, 200)) < 1e-12);
        REQUIRE(map_distance(inter_arrival_map(7, 0.23),
                             inter_arrival_by_series(7, 0.23, 250)) < 1e-12);
    }
    SECTION("matches the resolvent inverse") {
        for (std::uint64_t n : {1ull, 3ull, 25ull, 400ull})
            for (double p : {0.05, 0.5, 0.99})
                REQUIRE(map_distance(inter_arrival_map(n, p),
                                     inter_arrival_by_inverse(n, p)) <= 1e-14);
    }
    SECTION("gamma is increasing in n for p < 1") {
        for (double p : {0.1, 0.5, 0.9})
            for (std::uint64_t n = 1; n < 1000; ++n)
                REQUIRE(inter_arrival_gamma(n + 1, p) > inter_arrival_gamma(n, p));
    }
    SECTION("variance multiplies by gamma") {
        RngStream rng(3);
        for (int it = 0; it < 100; ++it) {
            const std::uint64_t n = 1 + rng.below(500);
            const double p = rng.uniform(0.01, 1.0);
            const double sq = rng.uniform(0, 2);
            const MomentVector x{sq, sq + rng.uniform(0, 2)};
            const double got = inter_arrival_map(n, p).apply(x).variance();
            const double expected = inter_arrival_gamma(n, p) * x.variance();
            REQUIRE(std::abs(got - expected) <= 1e-14 * (1.0 + expected));
        }
    }
    SECTION("p = 0 rejected") {
        REQUIRE_THROWS_AS(inter_arrival_map(5, 0.0), std::invalid_argument);
    }
}

TEST_CASE("growing recursion with p = 1 reproduces the i.i.d. population") {
    GrowingRecursionState s = growing_initial(1.0);
    REQUIRE(s.n == 1);
    REQUIRE(s.w == 0.0);
    REQUIRE(s.sq_mean == 1.0);
    for (std::uint64_t n = 1; n < 10'000; ++n) {
        s = growing_step(s, 1.0, 1.0);
        const double nd = static_cast<double>(s.n);
        REQUIRE(s.variance() == (nd - 1.0) / nd);
        REQUIRE(s.sq_mean == 1.0 / nd);
    }
}

TEST_CASE("growing recursion converges to p*sigma2 for constant p") {
    GrowingRecursionState s = growing_initial(1.0);
    while (s.n < 10'000) s = growing_step(s, 0.2, 1.0);
    REQUIRE(std::abs(s.variance() - 0.2) < 0.01 * 0.2);
}

TEST_CASE("growing recursion vanishes when p_n -> 0") {
    GrowingRecursionState s = growing_initial(1.0);
    double at_100 = 0.0;
    while (s.n < 100'000) {
        s = growing_step(s, 1.0 / static_cast<double>(s.n), 1.0);
        if (s.n == 100) at_100 = s.variance();
    }
    REQUIRE(s.variance() < 0.05 * at_100);
}

TEST_CASE("growing_step rejects bad p") {
    const GrowingRecursionState s = growing_initial(1.0);
    REQUIRE_THROWS_AS(growing_step(s, 0.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(growing_step(s, 1.5, 1.0), std::invalid_argument);
}

TEST_CASE("growing limit") {
    REQUIRE(growing_limit(1.0, 1.0) == 1.0);
    REQUIRE(growing_limit(1.0 / 6.0, 1.0) == Catch::Approx(1.0 / 6.0).epsilon(1e-15));
    REQUIRE(growing_limit(0.2, 1.0 / 12.0) == Catch::Approx(1.0 / 60.0).epsilon(1e-15));
    REQUIRE_THROWS_AS(growing_limit(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("scaled variance bound dominates the exact recursion") {
    const double p = 0.3;
    const double sigma2 = 1.0;
    const double q = 1.0 / p - 1.0;
    const std::uint64_t n0 = 2;

    std::vector<GrowingRecursionState> states = growing_recursion(
        [&](std::uint64_t) { return p; }, sigma2, 1, 2000);
    const double w_n0 = states[n0 - 1].w;
    for (std::uint64_t n = n0 + 1; n <= 2000; ++n)
        REQUIRE(states[n - 1].w <= scaled_variance_bound(n0, n, q, w_n0, sigma2));
}

TEST_CASE("scaled variance bound and recursion both land on p*sigma2") {
    const double p = 0.3;
    const double sigma2 = 1.0;
    const double q = 1.0 / p - 1.0;
    GrowingRecursionState s = growing_initial(sigma2);
    s = growing_step(s, p, sigma2);  // n = 2
    const double w_n0 = s.w;
    while (s.n < 100'000) s = growing_step(s, p, sigma2);

    const double limit = growing_limit(p, sigma2);
    const double bound_per_agent =
        scaled_variance_bound(2, 100'000, q, w_n0, sigma2) / 1e5;
    REQUIRE(std::abs(bound_per_agent - limit) < 0.02 * limit);
    REQUIRE(s.variance() >= 0.98 * limit);
}

TEST_CASE("scaled variance bound rejects bad arguments") {
    REQUIRE_THROWS_AS(scaled_variance_bound(2, 10, 0.0, 1.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(scaled_variance_bound(2, 10, -1.0, 1.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(scaled_variance_bound(1, 10, 2.0, 1.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(scaled_variance_bound(5, 5, 2.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("closed system baseline") {
    SECTION("K = 0 leaves the i.i.d. variance") {
        for (std::uint64_t n : {2ull, 10ull, 500ull}) {
            const double nd = static_cast<double>(n);
            REQUIRE(closed_system_baseline(n, 0.0, 1.0) == (nd - 1.0) / nd);
        }
    }
    SECTION("limit ratio against the open-system level at K = 5") {
        const double ratio =
            closed_system_baseline_limit(5.0, 1.0) / growing_limit(1.0 / 6.0, 1.0);
        REQUIRE(std::abs(ratio - 0.0404) < 5e-5);
    }
    SECTION("n = 1000 sits within 0.5% of the limit at K = 5") {
        const double finite_n = closed_system_baseline(1000, 5.0, 1.0);
        const double limit = closed_system_baseline_limit(5.0, 1.0);
        REQUIRE(std::abs(finite_n - limit) / limit < 0.005);
    }
    SECTION("domain errors") {
        REQUIRE_THROWS_AS(closed_system_baseline(1, 1.0, 1.0), std::invalid_argument);
        REQUIRE_THROWS_AS(closed_system_baseline(10, -1.0, 1.0), std::invalid_argument);
    }
}
