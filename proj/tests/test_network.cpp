#include <doctest.h>

#include <limits>
#include <vector>

#include "relaylab/errors.hpp"
#include "relaylab/network.hpp"

using namespace relaylab;

TEST_SUITE("network") {

TEST_CASE("powers and noise are absorbed into the gains") {
    NetworkConfig c;
    c.g = {1.0};
    c.h = {1.0};
    c.p_source = 2.0;
    c.p_relay = {1.0};
    c.n0 = 0.5;
    const auto n = normalize(c);
    CHECK(n.g[0] == doctest::Approx(4.0));
    CHECK(n.h[0] == doctest::Approx(2.0));
}

TEST_CASE("relays are sorted by g with the permutation recorded") {
    NetworkConfig c;
    c.g = {3.0, 1.0};
    c.h = {5.0, 7.0};
    const auto n = normalize(c);
    CHECK(n.g == std::vector<double>{1.0, 3.0});
    CHECK(n.h == std::vector<double>{7.0, 5.0});
    CHECK(n.order == std::vector<std::size_t>{1, 0});
    CHECK(to_user_order(n, {10.0, 30.0}) == std::vector<double>{30.0, 10.0});
}

TEST_CASE("ties keep user order") {
    const auto n = NormalizedNetwork::from_gains({2.0, 2.0, 1.0}, {1.0, 2.0, 3.0});
    CHECK(n.order == std::vector<std::size_t>{2, 0, 1});
}

TEST_CASE("invalid inputs are rejected") {
    NetworkConfig c;
    c.g = {1.0};
    c.h = {1.0};
    c.p_source = 0.0;
    CHECK_THROWS_AS(normalize(c), DomainError);
    c.p_source = 1.0;
    c.n0 = -1.0;
    CHECK_THROWS_AS(normalize(c), DomainError);
    c.n0 = 1.0;
    c.g = {std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(normalize(c), DomainError);
    c.g = {1.0, 1.0};
    CHECK_THROWS_AS(normalize(c), DomainError);
}

TEST_CASE("symmetry detection") {
    CHECK(NormalizedNetwork::from_gains({1.0, 1.0}, {2.0, 2.0}).is_symmetric());
    CHECK_FALSE(NormalizedNetwork::from_gains({1.0, 1.0}, {2.0, 3.0}).is_symmetric());
}

}
