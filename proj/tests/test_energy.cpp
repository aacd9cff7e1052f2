#include <doctest.h>

#include <cmath>
#include <numbers>

#include "relaylab/energy.hpp"
#include "relaylab/errors.hpp"
#include "relaylab/optimizer.hpp"

using namespace relaylab;
using namespace relaylab::energy;

TEST_SUITE("energy") {

constexpr double kLn2 = std::numbers::ln2;

TEST_CASE("lower bound") {
    CHECK(ebit_lower(1.0, 1.0) == doctest::Approx(std::sqrt(8.0) * kLn2).epsilon(1e-15));
    CHECK(ebit_lower(1.0, 1.0) == doctest::Approx(1.96052).epsilon(1e-5));
    CHECK(ebit_lower(1.0, 10.0) == doctest::Approx(12.0 * kLn2 / 10.0).epsilon(1e-15));
    CHECK(ebit_lower(1.0, 10.0) == doctest::Approx(0.83178).epsilon(1e-5));
    // continuity at both breakpoints
    CHECK(ebit_lower(1.0, 0.5 - 1e-12) == doctest::Approx(ebit_lower(1.0, 0.5 + 1e-12)).epsilon(1e-10));
    CHECK(ebit_lower(1.0, 2.0 - 1e-12) == doctest::Approx(ebit_lower(1.0, 2.0 + 1e-12)).epsilon(1e-10));
    CHECK_THROWS_AS(ebit_lower(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(ebit_lower(1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("decode-forward upper bound") {
    CHECK(ebit_upper_df(1.0, 1.0) == doctest::Approx(3.0 * kLn2).epsilon(1e-15));
    CHECK(ebit_upper_df(1.0, 0.3) == ebit_lower(1.0, 0.3));
    CHECK(ebit_ratio("df", 1.0) == doctest::Approx(3.0 / std::sqrt(8.0)).epsilon(1e-12));
    CHECK(ebit_ratio("df", 1e6) == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("BAF upper bound") {
    CHECK(ebit_baf_objective(1.0, 1.0, 1.0, 1.0) == doctest::Approx(6.0).epsilon(1e-14));
    const UpperBound u = ebit_upper_baf(1.0, 1.0);
    CHECK(u.value <= 6.0);
    const double r = u.value / ebit_lower(1.0, 1.0);
    CHECK(r >= 1.0);
    CHECK(r <= 2.85 + 0.05);
    CHECK(ebit_ratio("baf", 1e-4) < ebit_ratio("baf", 0.3));
    CHECK(ebit_ratio("baf", 1e4) < ebit_ratio("baf", 3.0));
}

TEST_CASE("nested BAF search agrees with a direct 2-D minimization") {
    for (const auto& [g, h] : {std::pair{1.0, 1.0}, std::pair{1.0, 0.2}, std::pair{2.0, 9.0}}) {
        opt::SearchSpec spec;
        spec.dims = {{1e-6, 1e4, opt::Scale::log}, {1e-4, 1e4, opt::Scale::log}};
        spec.starts = 32;
        const opt::OptResult r =
            opt::maximize([&](std::span<const double> v) { return -ebit_baf_objective(v[0], v[1], g, h); }, spec);
        CHECK(ebit_upper_baf(g, h).value == doctest::Approx(-r.value).epsilon(1e-7));
    }
}

TEST_CASE("BSPDF upper bound") {
    for (double x : {0.01, 0.1, 0.3, 0.5}) CHECK(ebit_ratio("bspdf", x) == doctest::Approx(1.0).epsilon(1e-9));
    for (double x : {0.7, 1.0, 5.0, 50.0}) {
        CHECK(ebit_ratio("bspdf", x) <= ebit_ratio("baf", x) + 1e-9);
        CHECK(ebit_ratio("bspdf", x) <= ebit_ratio("df", x) + 1e-9);
    }
}

TEST_CASE("bounds scale as n0 / gain") {
    const EbitResult a = ebit_all(1.0, 3.0, 1.0);
    const EbitResult b = ebit_all(10.0, 30.0, 2.0);
    CHECK(b.lower == doctest::Approx(a.lower * 0.2).epsilon(1e-12));
    CHECK(b.upper_baf == doctest::Approx(a.upper_baf * 0.2).epsilon(1e-8));
    CHECK(b.ratio_bspdf == doctest::Approx(a.ratio_bspdf).epsilon(1e-8));
    CHECK(a.ratio_df >= a.ratio_bspdf - 1e-12);
}

TEST_CASE("worst-case ratios") {
    CHECK(ebit_worst_ratio("baf").ratio == doctest::Approx(2.85).epsilon(0.05 / 2.85));
    CHECK(ebit_worst_ratio("bspdf").ratio == doctest::Approx(1.87).epsilon(0.05 / 1.87));
    CHECK_THROWS_AS(ebit_ratio("af", 1.0), DomainError);
}

}
