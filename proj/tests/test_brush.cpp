#include <doctest.h>

#include <cmath>
#include <random>

#include "expbrush/brush.hpp"
#include "oracles.hpp"

using namespace expbrush;

TEST_CASE("model step") {
    const auto x = ModelPoint::make(2.0, ExternalAddress::parse("1,0"));
    const auto y = step(x);
    CHECK(y.t.to_double() == doctest::Approx(0.10587079175106375).epsilon(1e-10));
    CHECK(y.s.str() == "0");

    const auto fixed = step(ModelPoint::make(0.0, ExternalAddress::parse("0")));
    CHECK(fixed.t.is_zero());
    CHECK(fixed.s.str() == "0");

    CHECK_THROWS_AS(step(ModelPoint::make(0.5, ExternalAddress::parse("1,0"))),
                    OrbitLeftDomain);
}

TEST_CASE("orbit lower bounds") {
    const auto zeros =
        orbit_lower_bounds(ModelPoint::make(0.0, ExternalAddress::parse("0")), 10);
    CHECK(zeros.ok());
    CHECK(zeros.potentials.size() == 11);
    for (const auto& p : zeros.potentials) CHECK(p.is_zero());

    // Orbit of (1, zero tail) is the growth staircase, bit for bit.
    const auto one = orbit_lower_bounds(
        ModelPoint::make(1.0, ExternalAddress::parse("0")), 3);
    REQUIRE(one.ok());
    for (std::size_t i = 0; i <= 3; ++i) {
        const auto expect = growth_iter(i, TowerScalar::from_double(1.0));
        CHECK(one.potentials[i].compare(expect) == std::strong_ordering::equal);
    }
    CHECK(one.potentials[1].to_double() ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));

    const auto fail = orbit_lower_bounds(
        ModelPoint::make(1.9, ExternalAddress::parse("1,1")), 2);
    CHECK_FALSE(fail.ok());
    CHECK(*fail.failed_index == 1);  // growth(1.9) - 2pi < 0
}

TEST_CASE("tips: closed forms and the bisection oracle") {
    CHECK(tip(ExternalAddress::parse("0"), 64) == 0.0);
    CHECK(tip(ExternalAddress::parse("1,0"), 32) ==
          doctest::Approx(std::log1p(kTwoPi)).epsilon(1e-14));
    CHECK(tip(ExternalAddress::parse("1,0"), 32) ==
          doctest::Approx(1.9855683087099189).epsilon(1e-12));
    CHECK(tip(ExternalAddress::parse("1,1"), 32) ==
          doctest::Approx(std::log1p(kTwoPi + std::log1p(kTwoPi))).epsilon(1e-14));
    CHECK(tip(ExternalAddress::parse("1,1"), 32) ==
          doctest::Approx(2.2266489170202266).epsilon(1e-12));

    // Monotone in depth.
    std::mt19937 rng(42);
    for (int i = 0; i < 50; ++i) {
        const auto s = oracles::random_address(rng);
        double prev = tip(s, 1);
        for (std::size_t d = 2; d <= 40; ++d) {
            const double cur = tip(s, d);
            CHECK(cur >= prev);
            prev = cur;
        }
    }

    // Monotone in entry magnitude.
    for (int i = 0; i < 50; ++i) {
        const auto s = oracles::random_address(rng);
        auto bigger = s.prefix();
        std::uniform_int_distribution<std::size_t> pick(0, bigger.size() - 1);
        const auto at = pick(rng);
        bigger[at] = bigger[at] >= 0 ? bigger[at] + 2 : bigger[at] - 2;
        CHECK(tip(ExternalAddress(bigger), 32) >= tip(s, 32));
    }

    // Backward recursion against bisection on forward simulation.
    for (int i = 0; i < 100; ++i) {
        const auto s = oracles::random_address(rng);
        const double back = tip(s, 32);
        const double bis = oracles::tip_bisection(s, 32);
        CHECK(std::abs(back - bis) <= 1e-9);
    }
}

TEST_CASE("membership routes agree away from the boundary") {
    const auto zero = ExternalAddress::parse("0");
    CHECK(in_julia(ModelPoint::make(0.0, zero), 16));
    CHECK(in_julia_via_tip(ModelPoint::make(0.0, zero), 16));

    const auto one_zero = ExternalAddress::parse("1,0");
    CHECK_FALSE(in_julia(ModelPoint::make(1.98, one_zero), 5));
    CHECK(in_julia(ModelPoint::make(2.00, one_zero), 5));

    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> off(1e-5, 2.0);
    for (int i = 0; i < 100; ++i) {
        const auto s = oracles::random_address(rng);
        const double t0 = tip(s, 24);
        const double above = t0 + off(rng);
        const double below = t0 - off(rng);
        CHECK(in_julia(ModelPoint::make(above, s), 24) ==
              in_julia_via_tip(ModelPoint::make(above, s), 24));
        if (below >= 0.0) {
            CHECK(in_julia(ModelPoint::make(below, s), 24) ==
                  in_julia_via_tip(ModelPoint::make(below, s), 24));
        }
    }
}

TEST_CASE("escape certificates") {
    // Orbit of (1, zero tail) is the pure staircase: passes every check.
    const auto cert =
        certify_escape(ModelPoint::make(1.0, ExternalAddress::parse("0")), 6);
    CHECK(cert.passed);
    CHECK(cert.checks.size() == 2);
    for (const auto& ch : cert.checks) CHECK(ch.pass);

    // The fixed point at the origin never clears any requirement.
    const auto stuck =
        certify_escape(ModelPoint::make(0.0, ExternalAddress::parse("0")), 6);
    CHECK_FALSE(stuck.passed);
    for (const auto& ch : stuck.checks) CHECK_FALSE(ch.pass);

    // One unit above the tip passes (forward stretching drives the orbit).
    const auto s = ExternalAddress::parse("1,0");
    const auto above = ModelPoint::make(tip(s, 128) + 1.0, s);
    CHECK(certify_escape(above, 6).passed);

    CHECK_THROWS_AS(certify_escape(ModelPoint::make(1.0, ExternalAddress::parse("0")), 4),
                    PreconditionError);
    CHECK_THROWS_AS(certify_escape(ModelPoint::make(1.9, ExternalAddress::parse("1,1")), 5),
                    PreconditionError);
}

TEST_CASE("forward stretching checks") {
    const auto zero = ExternalAddress::parse("0");
    CHECK(check_forward_stretch(ModelPoint::make(0.0, zero),
                                ModelPoint::make(1.0, zero), 3));

    // The exact tip is boundary-inconclusive under lower-bound rounding;
    // a hair above it both points certifiably stay in the brush.
    const auto s = ExternalAddress::parse("1,0");
    const double t0 = tip(s, 64) + 1e-9;
    CHECK(check_forward_stretch(ModelPoint::make(t0, s),
                                ModelPoint::make(t0 + 0.5, s), 4));

    CHECK_THROWS_AS(check_forward_stretch(ModelPoint::make(1.0, zero),
                                          ModelPoint::make(1.0, zero), 2),
                    PreconditionError);
    CHECK_THROWS_AS(
        check_forward_stretch(ModelPoint::make(0.0, zero),
                              ModelPoint::make(1.0, ExternalAddress::parse("1")), 2),
        PreconditionError);
}

TEST_CASE("sub-brush construction") {
    auto sb = make_sub_brush({ExternalAddress::parse("0"), ExternalAddress::parse("1,0"),
                              ExternalAddress::parse("0")},
                             32);
    CHECK(sb.size() == 2);  // duplicates removed
    CHECK(sb.depth == 32);
    REQUIRE(sb.tips.size() == 2);
    CHECK(sb.tips[0] == 0.0);  // sorted: "0" before "1,0"
    CHECK(sb.tips[1] == doctest::Approx(std::log1p(kTwoPi)).epsilon(1e-14));
}
