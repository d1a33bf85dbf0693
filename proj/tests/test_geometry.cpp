#include <doctest.h>

#include <cmath>

#include "hypdla/geometry.hpp"
#include "hypdla/rng.hpp"
#include "support/test_util.hpp"

using namespace hypdla;

TEST_CASE("point construction rejects bad coordinates") {
    CHECK_THROWS_AS(HalfPlanePoint(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(HalfPlanePoint(0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(HalfPlanePoint(std::nan(""), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(HalfPlanePoint(0.0, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}

TEST_CASE("distance basics") {
    CHECK(hyp_distance({0, 1}, {0, 1}) == 0.0);

    // vertical geodesic: direct evaluation of the arcosh formula
    const double e = std::exp(1.0);
    const double oracle = std::acosh(1.0 + ((e - 1.0) * (e - 1.0)) / (2.0 * e));
    CHECK(hyp_distance({0, 1}, {0, e}) == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(hyp_distance({0, 1}, {0, e}) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK(hyp_distance({1, 1}, {3, 1}) == doctest::Approx(std::acosh(3.0)).epsilon(1e-14));

    // symmetry
    RandomStream rng(42, 0);
    for (int i = 0; i < 200; ++i) {
        const auto p = test::random_point(rng);
        const auto q = test::random_point(rng);
        CHECK(hyp_distance(p, q) == hyp_distance(q, p));
        CHECK(hyp_distance(p, q) >= 0.0);
    }
}

TEST_CASE("distance is stable near zero") {
    const HalfPlanePoint p(0.0, 1.0);
    const HalfPlanePoint q(1e-9, 1.0);
    // ds = |dz| / y at y = 1
    CHECK(hyp_distance(p, q) == doctest::Approx(1e-9).epsilon(1e-9));
}

TEST_CASE("isometry apply and invariance") {
    const HypIsometry t(5.0, 2.0);
    const auto img = t(HalfPlanePoint(1.0, 1.0));
    CHECK(img.x == 7.0);
    CHECK(img.y == 2.0);

    const HypIsometry refl(0.0, 1.0, true);
    const auto mirrored = refl(HalfPlanePoint(2.0, 3.0));
    CHECK(mirrored.x == -2.0);
    CHECK(mirrored.y == 3.0);

    CHECK(hyp_distance({1, 1}, {3, 1}) ==
          doctest::Approx(hyp_distance(t(HalfPlanePoint(1, 1)), t(HalfPlanePoint(3, 1))))
              .epsilon(1e-14));

    RandomStream rng(7, 0);
    for (int i = 0; i < 2000; ++i) {
        const auto iso = test::random_isometry(rng);
        const auto p = test::random_point(rng);
        const auto q = test::random_point(rng);
        const double d = hyp_distance(p, q);
        CHECK(std::fabs(d - hyp_distance(iso(p), iso(q))) <= 1e-12 * (1.0 + d));
    }
}

TEST_CASE("isometry compose and inverse") {
    RandomStream rng(11, 0);
    for (int i = 0; i < 500; ++i) {
        const auto s = test::random_isometry(rng);
        const auto t = test::random_isometry(rng);
        const auto p = test::random_point(rng);
        const auto lhs = s(t(p));
        const auto rhs = s.compose(t)(p);
        CHECK(lhs.x == doctest::Approx(rhs.x).epsilon(1e-12));
        CHECK(lhs.y == doctest::Approx(rhs.y).epsilon(1e-12));
        const auto back = s.inverse()(s(p));
        CHECK(back.x == doctest::Approx(p.x).epsilon(1e-12));
        CHECK(back.y == doctest::Approx(p.y).epsilon(1e-12));
    }
}

TEST_CASE("ball to disk closed form") {
    const auto zero = hyp_ball_to_disk({0, 1}, 0.0);
    CHECK(zero.cx == 0.0);
    CHECK(zero.cy == 1.0);
    CHECK(zero.r == 0.0);

    // endpoints of the vertical geodesic: top e^rho, bottom e^-rho
    const double top = std::exp(1.0), bot = std::exp(-1.0);
    const auto unit = hyp_ball_to_disk({0, 1}, 1.0);
    CHECK(unit.cy == doctest::Approx(0.5 * (top + bot)).epsilon(1e-15));
    CHECK(unit.r == doctest::Approx(0.5 * (top - bot)).epsilon(1e-15));

    // scaled placement: previous case pushed through beta = 3 plus a shift
    const auto big = hyp_ball_to_disk({2, 3}, 2.0);
    CHECK(big.cx == 2.0);
    CHECK(big.cy == doctest::Approx(3.0 * 0.5 * (std::exp(2.0) + std::exp(-2.0))).epsilon(1e-15));
    CHECK(big.r == doctest::Approx(3.0 * 0.5 * (std::exp(2.0) - std::exp(-2.0))).epsilon(1e-15));
    CHECK(big.bottom() >= 0.0);

    CHECK_THROWS_AS(hyp_ball_to_disk({0, 1}, -1.0), std::invalid_argument);
}

TEST_CASE("disk boundary points sit at the ball radius") {
    RandomStream rng(13, 0);
    for (int i = 0; i < 500; ++i) {
        const auto c = test::random_point(rng);
        const double rho = rng.uniform(1e-3, 5.0);
        const auto d = hyp_ball_to_disk(c, rho);
        for (int k = 0; k < 8; ++k) {
            const double a = rng.u01() * kTwoPi;
            const HalfPlanePoint b(d.cx + d.r * std::cos(a), d.cy + d.r * std::sin(a));
            CHECK(hyp_distance(c, b) == doctest::Approx(rho).epsilon(1e-9));
        }
    }
}

TEST_CASE("disk to ball round trip") {
    RandomStream rng(17, 0);
    for (int i = 0; i < 300; ++i) {
        const auto c = test::random_point(rng);
        const double rho = rng.uniform(1e-3, 4.0);
        const auto [c2, rho2] = disk_to_hyp_ball(hyp_ball_to_disk(c, rho));
        CHECK(c2.x == doctest::Approx(c.x).epsilon(1e-12));
        CHECK(c2.y == doctest::Approx(c.y).epsilon(1e-12));
        CHECK(rho2 == doctest::Approx(rho).epsilon(1e-12));
    }
}

TEST_CASE("polar point conventions") {
    const HalfPlanePoint o(0.0, 1.0);
    const auto same = polar_point(o, 0.0, 2.4);
    CHECK(same.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(same.y == doctest::Approx(1.0).epsilon(1e-15));

    const auto up = polar_point(o, 1.0, 0.5 * kPi);
    CHECK(up.x == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(up.y == doctest::Approx(std::exp(1.0)).epsilon(1e-14));

    const auto down = polar_point(o, 1.0, -0.5 * kPi);
    CHECK(down.y == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

    const auto right = polar_point(o, 1.0, 0.0);
    CHECK(right.x > 0.0);

    RandomStream rng(23, 0);
    for (int i = 0; i < 100; ++i) {
        const auto origin = test::random_point(rng);
        const double r = rng.uniform(0.0, 20.0);
        const double theta = rng.uniform(0.0, kTwoPi);
        CHECK(hyp_distance(origin, polar_point(origin, r, theta)) ==
              doctest::Approx(r).epsilon(1e-10));
    }
}

TEST_CASE("disc model chart") {
    const auto [u0, v0] = to_disc_model({0, 1});
    CHECK(u0 == 0.0);
    CHECK(v0 == 0.0);
    const auto [u3, v3] = to_disc_model({0, 3});
    CHECK(u3 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(v3 == doctest::Approx(0.0).epsilon(1e-15));

    RandomStream rng(29, 0);
    for (int i = 0; i < 1000; ++i) {
        const auto p = test::random_point(rng);
        const auto [u, v] = to_disc_model(p);
        CHECK(u * u + v * v < 1.0);
        const auto back = from_disc_model(u, v);
        CHECK(back.x == doctest::Approx(p.x).epsilon(1e-12));
        CHECK(back.y == doctest::Approx(p.y).epsilon(1e-12));
    }
}

TEST_CASE("ball sandwich") {
    RandomStream rng(31, 0);
    const double s7 = 7.0;
    for (int i = 0; i < 20000; ++i) {
        const auto c = test::random_point(rng);
        for (int k = 0; k < 10; ++k) {
            // point inside the Euclidean ball of radius 0.5 y
            const double ang = rng.u01() * kTwoPi;
            const double rad = 0.5 * c.y * std::sqrt(rng.u01());
            const HalfPlanePoint inner(c.x + rad * std::cos(ang), c.y + rad * std::sin(ang));
            CHECK(hyp_distance(c, inner) <= 1.0);
            // point of the hyperbolic 2-ball
            const auto far = polar_point(c, 2.0 * rng.u01(), rng.u01() * kTwoPi);
            const double de = std::hypot(far.x - c.x, far.y - c.y);
            CHECK(de <= s7 * c.y);
        }
    }
}

TEST_CASE("triangle inequality") {
    RandomStream rng(37, 0);
    for (int i = 0; i < 10000; ++i) {
        const auto a = test::random_point(rng);
        const auto b = test::random_point(rng);
        const auto c = test::random_point(rng);
        CHECK(hyp_distance(a, c) <= hyp_distance(a, b) + hyp_distance(b, c) + 1e-12);
    }
}
