#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "opengossip/analytic.hpp"
#include "opengossip/oracle.hpp"
#include "support/checks.hpp"

using namespace opengossip;
using ogtest::moment_distance;

TEST_CASE("gossip oracle on hand-checkable states") {
    // (0,1): branches (1,1),(2,2) keep the state, (1,2),(2,1) give (0.5,0.5)
    REQUIRE(gossip_oracle(std::vector<double>{0.0, 1.0}) == MomentVector{0.25, 0.375});

    for (double c : {0.0, 0.4, -2.0}) {
        const std::vector<double> x(5, c);
        REQUIRE(moment_distance(gossip_oracle(x), {c * c, c * c}) <=
                1e-15 * (1.0 + c * c));
    }

    const std::vector<double> x{1.0, -1.0, 0.0};
    const MomentVector expected = gossip_map(3).apply(empirical_summary(x).moments());
    REQUIRE(moment_distance(gossip_oracle(x), expected) < 1e-14);
}

TEST_CASE("departure oracle on hand-checkable states") {
    REQUIRE(departure_oracle(std::vector<double>{0.0, 1.0}) == MomentVector{0.5, 0.5});

    const std::vector<double> c3(3, 0.9);
    REQUIRE(moment_distance(departure_oracle(c3), {0.81, 0.81}) < 1e-15);

    const std::vector<double> x{0.0, 1.0, 2.0};
    const MomentVector out = departure_oracle(x);
    REQUIRE(out.mean_sq == Catch::Approx(5.0 / 3.0).epsilon(1e-15));
    REQUIRE(out.mean_sq ==
            Catch::Approx(empirical_summary(x).moments().mean_sq).epsilon(1e-15));
}

TEST_CASE("arrival oracle on hand-checkable states") {
    REQUIRE(arrival_oracle(std::vector<double>{1.0}, 1.0) == MomentVector{0.5, 1.0});
    REQUIRE(arrival_oracle(std::vector<double>{0.0}, 0.0) == MomentVector{0.0, 0.0});

    const std::vector<double> x{0.0, 1.0};
    const MomentVector expected =
        arrival_map(2, 1.0 / 12.0).apply(empirical_summary(x).moments());
    REQUIRE(moment_distance(arrival_oracle(x, 1.0 / 12.0), expected) < 1e-14);
}

TEST_CASE("replacement oracle on hand-checkable states") {
    // x = (0,1), deterministic zero arrival: branches (1,0) and (0,0)
    REQUIRE(replacement_oracle(std::vector<double>{0.0, 1.0}, 0.0) ==
            MomentVector{0.125, 0.25});

    const double c = 0.8;
    const MomentVector both = replacement_oracle(std::vector<double>{c, c}, 0.0);
    REQUIRE(both.sq_mean == Catch::Approx(c * c / 4.0).epsilon(1e-15));
    REQUIRE(both.mean_sq == Catch::Approx(c * c / 2.0).epsilon(1e-15));

    const std::vector<double> x{0.0, 1.0};
    const MomentVector expected =
        replacement_map(2, 1.0).apply(empirical_summary(x).moments());
    REQUIRE(moment_distance(replacement_oracle(x, 1.0), expected) < 1e-14);
}

TEST_CASE("oracles agree with the closed-form maps on exhaustive small grids") {
    const std::vector<double> alphabet{-1.0, 0.0, 1.0, 2.0};
    for (std::size_t n : {2u, 3u}) {
        ogtest::for_each_vector(alphabet, n, [&](const std::vector<double>& x) {
            const MomentVector m = empirical_summary(x).moments();
            REQUIRE(moment_distance(gossip_oracle(x), gossip_map(n).apply(m)) < 1e-12);
            REQUIRE(moment_distance(departure_oracle(x), departure_map(n).apply(m)) <
                    1e-12);
            for (double sigma2 : {0.0, 1.0 / 12.0, 1.0}) {
                REQUIRE(moment_distance(arrival_oracle(x, sigma2),
                                        arrival_map(n, sigma2).apply(m)) < 1e-12);
                REQUIRE(moment_distance(replacement_oracle(x, sigma2),
                                        replacement_map(n, sigma2).apply(m)) < 1e-12);
            }
        });
    }
}

TEST_CASE("oracles agree with the maps on random states up to the size cap") {
    RngStream rng(101);
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 2 + rng.below(oracle_max_size - 1);
        const std::vector<double> x = ogtest::random_values(rng, n, -3, 3);
        const MomentVector m = empirical_summary(x).moments();
        const double sigma2 = rng.uniform(0.0, 2.0);
        REQUIRE(moment_distance(gossip_oracle(x), gossip_map(n).apply(m)) < 1e-12);
        REQUIRE(moment_distance(departure_oracle(x), departure_map(n).apply(m)) < 1e-12);
        REQUIRE(moment_distance(arrival_oracle(x, sigma2),
                                arrival_map(n, sigma2).apply(m)) < 1e-12);
        REQUIRE(moment_distance(replacement_oracle(x, sigma2),
                                replacement_map(n, sigma2).apply(m)) < 1e-12);
    }
}

TEST_CASE("oracles reject out-of-range sizes") {
    const std::vector<double> big(9, 1.0);
    REQUIRE_THROWS_AS(gossip_oracle(big), std::invalid_argument);
    REQUIRE_THROWS_AS(departure_oracle(big), std::invalid_argument);
    REQUIRE_THROWS_AS(arrival_oracle(big, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(replacement_oracle(big, 1.0), std::invalid_argument);

    const std::vector<double> empty;
    const std::vector<double> one{1.0};
    REQUIRE_THROWS_AS(gossip_oracle(empty), std::invalid_argument);
    REQUIRE_THROWS_AS(departure_oracle(one), std::invalid_argument);
    REQUIRE_THROWS_AS(replacement_oracle(one, 1.0), std::invalid_argument);
}
