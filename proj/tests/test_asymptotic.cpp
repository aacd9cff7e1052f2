#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "relaylab/asymptotic.hpp"
#include "relaylab/bounds.hpp"
#include "relaylab/errors.hpp"

using namespace relaylab;
using namespace relaylab::asym;

TEST_SUITE("asymptotic") {

constexpr double kLn2 = std::numbers::ln2;

TEST_CASE("decode-forward curve") {
    CHECK(adf(0.25, 2) == doctest::Approx(1.0 / (2.0 * kLn2)).epsilon(1e-14));
    CHECK(adf(0.1, 2) == doctest::Approx(0.4 / (2.0 * kLn2)).epsilon(1e-14));
    CHECK(adf(1e6, 2) == doctest::Approx(1.0 / (2.0 * kLn2)).epsilon(1e-14));
    CHECK(adf(0.01, 4) == doctest::Approx(0.16 / (2.0 * kLn2)).epsilon(1e-14));
}

TEST_CASE("bursty amplify-forward curve") {
    const CurveValue v = abaf(1.0, 2);
    CHECK(v.y == doctest::Approx(0.506169).epsilon(2e-6));
    // a fixed feasible beta lower-bounds the supremum
    CHECK(baf_program(1.0, 2, 1.0).sum() == doctest::Approx(0.5).epsilon(1e-14));
    for (int k = 0; k <= 2000; ++k) {
        const double beta = std::pow(10.0, -4.0 + 6.0 * k / 2000.0);
        CHECK(baf_program(1.0, 2, beta).sum() <= v.y + 1e-12);
    }
    for (double x : {1e-3, 0.05, 0.3, 3.0, 50.0}) {
        const double y = abaf(x, 2).y;
        CHECK(y >= 0.0);
        CHECK(y <= acutset_sym(x, 2) + 1e-12);
    }
}

TEST_CASE("BSPDF curve: cut-set regime and anchors") {
    for (double x : {0.05, 0.1, 0.2}) {
        CHECK(abspdf_sym2(x).y == doctest::Approx(2.0 * x / kLn2).epsilon(1e-9));
        CHECK(abspdf_sym2(x).y == doctest::Approx(acutset_sym(x, 2)).epsilon(1e-9));
    }
    CHECK(abspdf_sym2(0.25).y == doctest::Approx(1.0 / (2.0 * kLn2)).epsilon(1e-9));
    const double one = abspdf_sym2(1.0).y;
    CHECK(one > 1.0 / (2.0 * kLn2));
    CHECK(one < 1.0 / kLn2);
}

TEST_CASE("BSPDF curve regression values") {
    CHECK(abspdf_sym2(0.5).y == doctest::Approx(0.721347520444).epsilon(1e-9));
    CHECK(abspdf_sym2(1.0).y == doctest::Approx(0.755602792788).epsilon(1e-9));
    CHECK(abspdf_sym2(2.0).y == doctest::Approx(0.832876197841).epsilon(1e-9));
    CHECK(abspdf_sym2(10.0).y == doctest::Approx(1.055006611613).epsilon(1e-9));
}

TEST_CASE("N-relay BSPDF program") {
    for (double x : {0.02, 0.3, 1.0, 7.0}) {
        CHECK(abspdf_symN(x, 2).y == doctest::Approx(abspdf_sym2(x).y).epsilon(1e-9));
    }
    for (int n : {4, 8}) {
        CHECK(abspdf_symN(1e-3, n).y == doctest::Approx(adf(1e-3, n)).epsilon(1e-6));
    }
    const double gap2 = abspdf_symN(1.0, 2).y / abaf(1.0, 2).y - 1.0;
    const double gap8 = abspdf_symN(1.0, 8).y / abaf(1.0, 8).y - 1.0;
    CHECK(gap8 < gap2);
    CHECK(rbspdf(1.0, 2) == doctest::Approx(abspdf_sym2(1.0).y).epsilon(1e-12));
}

TEST_CASE("TSPDF curve") {
    CHECK(atspdf_sym2(0.1).y == doctest::Approx(0.2 / kLn2).epsilon(1e-6));
    for (double x : {0.3, 1.0, 4.0}) CHECK(atspdf_sym2(x).y >= abspdf_sym2(x).y - 1e-9);
    CHECK(atspdf_sym2(1.0).y == doctest::Approx(0.777842).epsilon(1e-5));
    const TimeshareEnvelope ts([](double x) { return abspdf_sym2(x).y; }, [](double x) { return abspdf_sym2(x).y; });
    CHECK(atspdf_sym2(1.0).y >= ts(1.0).y - 1e-9);
    CHECK_THROWS_AS(tspdf_program(1.0, {0.5, 0.5, 2.0, 2.0, 0.1, 0.1}), DomainError);
}

TEST_CASE("timeshare envelope") {
    const TimeshareEnvelope same([](double x) { return abaf(x, 2).y; }, [](double x) { return abaf(x, 2).y; });
    for (double x : {0.1, 1.0, 10.0}) CHECK(same(x).y >= abaf(x, 2).y - 1e-12);

    const TimeshareEnvelope dfbaf([](double x) { return adf(x, 2); }, [](double x) { return abaf(x, 2).y; });
    for (double x : {0.3, 0.5, 1.0, 2.0}) {
        const CurveValue v = dfbaf(x);
        CHECK(v.y >= adf(x, 2) - 1e-12);
        CHECK(v.y >= abaf(x, 2).y - 1e-12);
        CHECK(v.y <= acutset_sym(x, 2));
    }
    CHECK(dfbaf(1.0).y == doctest::Approx(0.742023).epsilon(1e-5));

    const TimeshareEnvelope bb([](double x) { return abspdf_sym2(x).y; }, [](double x) { return abspdf_sym2(x).y; });
    CHECK(bb(1.0).y >= abspdf_sym2(1.0).y);
    CHECK(bb(1.0).y == doctest::Approx(0.769151).epsilon(1e-5));
}

TEST_CASE("asymmetric diamond curves") {
    CHECK(abspdf_asym11(1.0).y == doctest::Approx(abspdf_sym2(1.0).y).epsilon(1e-6));
    CHECK(abaf_asym(1.0).y == doctest::Approx(abaf(1.0, 2).y).epsilon(1e-6));
    CHECK(adf_asym(4.0) == doctest::Approx(adf_asym(0.25)).epsilon(1e-15));
    CHECK(abspdf_asym12(1.0).y >= abafdf(1.0).y - 1e-6);
    for (double x : {1.0, 4.0, 10.0, 100.0}) {
        const double cut = acutset_asym(x);
        for (double y : {adf_asym(x), abaf_asym(x).y, abafdf(x).y, abspdf_asym11(x).y, abspdf_asym12(x).y}) {
            CHECK(y >= 0.0);
            CHECK(y <= cut + 1e-9);
        }
    }
    CHECK(abafdf(4.0).y == doctest::Approx(0.62288).epsilon(1e-4));
    CHECK(abspdf_asym12(10.0).y == doctest::Approx(0.43019).epsilon(1e-4));
    CHECK(std::isfinite(abafdf(100.0).y));
}

TEST_CASE("asymmetric program slices") {
    // kappa = 0 turns off the amplifying relay; the remaining program is bounded by the sup
    const double G = 0.25, s = std::sqrt(G);
    double slice = 0.0;
    for (int k = 0; k <= 400; ++k) {
        const double beta = std::pow(10.0, -6.0 + 9.0 * k / 400.0);
        slice = std::max({slice, bafdf_program(G, beta, 0.0).sum(), bspdf12_program(G, beta, 0.0).sum()});
    }
    CHECK(slice / s <= abafdf(4.0).y + 1e-9);
    CHECK(slice / s <= abspdf_asym12(4.0).y + 1e-9);
}

}
