#include <doctest.h>

#include <cmath>
#include <vector>

#include "hypdla/aggregate.hpp"
#include "hypdla/boundary.hpp"
#include "hypdla/errors.hpp"
#include "hypdla/stats.hpp"
#include "support/tangent_cluster.hpp"
#include "support/test_util.hpp"

using namespace hypdla;

namespace {

Aggregate pair_at_distance(double dist) {
    RunMeta meta;
    meta.fixture = dist != kAttachRadius;  // only the tangency-locus spacing is a legal growth step
    Aggregate a(meta);
    Particle p0;
    p0.center = HalfPlanePoint(0.0, 1.0);
    p0.parent = -1;
    a.append(p0);
    Particle p1;
    p1.center = polar_point(p0.center, dist, 0.25);  // generic direction
    p1.parent = 0;
    p1.birth_time = 1.0;
    a.append(p1);
    return a;
}

bool in_some_arc(const std::vector<Arc>& arcs, int owner, double theta) {
    for (const Arc& a : arcs) {
        if (a.owner != owner) continue;
        const double lo = a.theta0, hi = a.theta1;
        for (double t = theta - kTwoPi; t <= theta + 2 * kTwoPi; t += kTwoPi)
            if (t >= lo && t <= hi) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("single particle owns one full circle") {
    const auto a = test::random_tangent_cluster(1, 5);
    const ArcSet& s = exposed_arcs(a);
    REQUIRE(s.arcs.size() == 1);
    CHECK(s.arcs[0].owner == 0);
    CHECK(s.arcs[0].theta0 == 0.0);
    CHECK(s.arcs[0].theta1 == doctest::Approx(kTwoPi));
    CHECK(s.total_hyp_len == doctest::Approx(kTwoPi * std::sinh(2.0)).epsilon(1e-10));
}

TEST_CASE("disjoint pair keeps two full circles") {
    const auto a = pair_at_distance(4.5);
    CHECK(hyp_distance(a.particle(0).center, a.particle(1).center) > 4.0);  // disjoint 2-balls
    const ArcSet& s = exposed_arcs(a);
    REQUIRE(s.arcs.size() == 2);
    for (const Arc& arc : s.arcs) CHECK(arc.theta1 - arc.theta0 == doctest::Approx(kTwoPi));
}

TEST_CASE("tangent pair exposes two partial arcs matching a membership oracle") {
    const auto a = pair_at_distance(2.0);
    const ArcSet& s = exposed_arcs(a);
    REQUIRE(s.arcs.size() == 2);
    for (const Arc& arc : s.arcs) {
        CHECK(arc.theta1 - arc.theta0 < kTwoPi - 1e-6);
        CHECK(arc.theta1 - arc.theta0 > 0.0);
    }
    // dense membership oracle on each circle
    for (int owner = 0; owner < 2; ++owner) {
        const EuclidDisk& mine = a.disk(static_cast<std::size_t>(owner));
        const EuclidDisk& other = a.disk(static_cast<std::size_t>(1 - owner));
        long disagreements = 0;
        const long n = 500000;
        for (long k = 0; k < n; ++k) {
            const double theta = kTwoPi * (static_cast<double>(k) + 0.5) / n;
            const double px = mine.cx + mine.r * std::cos(theta);
            const double py = mine.cy + mine.r * std::sin(theta);
            const bool oracle_exposed = other.surface_distance(px, py) > 0.0;
            const bool near_endpoint = [&] {
                for (const Arc& arc : s.arcs) {
                    if (arc.owner != owner) continue;
                    for (double e : {arc.theta0, arc.theta1})
                        for (double t = theta - kTwoPi; t <= theta + 2 * kTwoPi; t += kTwoPi)
                            if (std::fabs(t - e) < 1e-6) return true;
                }
                return false;
            }();
            if (!near_endpoint && oracle_exposed != in_some_arc(s.arcs, owner, theta))
                ++disagreements;
        }
        CHECK(disagreements == 0);
    }
}

TEST_CASE("arc length quadrature") {
    Arc degenerate;
    degenerate.disk = hyp_ball_to_disk({0, 1}, 2.0);
    degenerate.theta0 = degenerate.theta1 = 1.0;
    CHECK(arc_hyp_length(degenerate) == 0.0);

    RandomStream rng(77, 0);
    for (double rho : {1.0, 2.0}) {
        const double closed_form = kTwoPi * std::sinh(rho);
        for (int i = 0; i < 5; ++i) {
            Arc full;
            full.disk = hyp_ball_to_disk(test::random_point(rng), rho);
            full.theta0 = 0.0;
            full.theta1 = kTwoPi;
            CHECK(arc_hyp_length(full) == doctest::Approx(closed_form).epsilon(1e-9));
        }
    }
}

TEST_CASE("arc invariants on random clusters") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto a = test::random_tangent_cluster(40, seed);
        const ArcSet& s = exposed_arcs(a);
        const auto& builder = a.boundary_builder();

        // conservation per owner circle
        for (int i = 0; i < static_cast<int>(a.size()); ++i)
            CHECK(builder.exposed_measure(i) + builder.covered_measure(i) ==
                  doctest::Approx(kTwoPi).epsilon(1e-9));

        // cdf strictly increasing, total consistent
        double prev = 0.0, total = 0.0;
        for (std::size_t k = 0; k < s.cdf.size(); ++k) {
            CHECK(s.cdf[k] > prev);
            prev = s.cdf[k];
            total += s.arcs[k].hyp_len;
        }
        CHECK(total == doctest::Approx(s.total_hyp_len).epsilon(1e-12));

        // interior clearance: midpoint and endpoints nudged inward clear all other disks
        for (const Arc& arc : s.arcs) {
            for (double t : {0.5 * (arc.theta0 + arc.theta1), arc.theta0 + 1e-9, arc.theta1 - 1e-9}) {
                const double px = arc.disk.cx + arc.disk.r * std::cos(t);
                const double py = arc.disk.cy + arc.disk.r * std::sin(t);
                for (std::size_t j = 0; j < a.size(); ++j) {
                    if (static_cast<int>(j) == arc.owner) continue;
                    CHECK(a.disk(j).surface_distance(px, py) > -1e-7 * a.disk(j).r);
                }
            }
        }
    }
}

TEST_CASE("adding a particle never lengthens existing exposure") {
    RunMeta meta;
    Aggregate a(meta);
    Particle p0;
    p0.center = HalfPlanePoint(0.0, 1.0);
    p0.parent = -1;
    a.append(p0);
    RandomStream rng(4242, 0);
    std::vector<double> exposure;
    exposure.push_back(a.boundary_builder().exposed_hyp_length(0));
    for (int step = 1; step < 30; ++step) {
        const auto parent = rng.index(a.size());
        const auto cand = polar_point(a.particle(parent).center, kAttachRadius, rng.u01() * kTwoPi);
        bool clear = true;
        for (std::size_t j = 0; j < a.size(); ++j)
            if (j != parent && hyp_distance(cand, a.particle(j).center) < kAttachRadius + 1e-7)
                clear = false;
        if (!clear) continue;
        Particle p;
        p.center = cand;
        p.parent = static_cast<int>(parent);
        p.birth_time = static_cast<double>(a.size());
        a.append(p);
        for (std::size_t i = 0; i + 1 < a.size(); ++i)
            CHECK(a.boundary_builder().exposed_hyp_length(static_cast<int>(i)) <=
                  exposure[i] * (1.0 + 1e-12) + 1e-12);
        exposure.clear();
        for (std::size_t i = 0; i < a.size(); ++i)
            exposure.push_back(a.boundary_builder().exposed_hyp_length(static_cast<int>(i)));
    }
}

TEST_CASE("boundary sampling follows hyperbolic length") {
    // arc selection frequencies on a fixed multi-arc set
    const auto a = test::random_tangent_cluster(12, 9);
    const ArcSet& s = exposed_arcs(a);
    REQUIRE(s.arcs.size() >= 4);
    RandomStream rng(111, 0);
    std::vector<long> counts(s.arcs.size(), 0);
    const long n = 100000;
    for (long i = 0; i < n; ++i) ++counts[sample_boundary_uniform(s, rng).arc_index];
    double chi2 = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        const double expect = static_cast<double>(n) * s.arcs[k].hyp_len / s.total_hyp_len;
        if (expect < 5.0) continue;
        chi2 += (counts[k] - expect) * (counts[k] - expect) / expect;
    }
    CHECK(stats::chi_square_sf(chi2, static_cast<int>(counts.size()) - 1) > 1e-3);
}

TEST_CASE("single particle sampling is rotation uniform and at distance two") {
    const auto a = test::random_tangent_cluster(1, 15);
    const ArcSet& s = exposed_arcs(a);
    RandomStream rng(222, 0);
    std::vector<long> bins(32, 0);
    const HalfPlanePoint c = a.particle(0).center;
    const HypIsometry to_origin(-c.x / c.y, 1.0 / c.y);
    for (int i = 0; i < 100000; ++i) {
        const auto smp = sample_boundary_uniform(s, rng);
        CHECK(hyp_distance(smp.point, c) == doctest::Approx(2.0).epsilon(1e-9));
        const auto [u, v] = to_disc_model(to_origin(smp.point));
        const double ang = std::atan2(v, u);
        ++bins[static_cast<std::size_t>((ang + kPi) / kTwoPi * 31.999)];
    }
    CHECK(stats::chi_square_uniform_pvalue(bins) > 1e-3);
}

TEST_CASE("mirror pair samples symmetrically") {
    // two particles mirror-imaged across x = 0
    RunMeta meta;
    meta.fixture = true;
    Aggregate a(meta);
    Particle p0;
    p0.center = HalfPlanePoint(-1.2, 1.0);
    p0.parent = -1;
    a.append(p0);
    Particle p1;
    p1.center = HalfPlanePoint(1.2, 1.0);
    p1.parent = 0;
    p1.birth_time = 1.0;
    a.append(p1);
    const ArcSet& s = exposed_arcs(a);
    RandomStream rng(333, 0);
    std::vector<double> xs, mirrored;
    for (int i = 0; i < 100000; ++i) {
        const double x = sample_boundary_uniform(s, rng).point.x;
        xs.push_back(x);
        mirrored.push_back(-x);
    }
    CHECK(stats::ks_test_2sample(xs, mirrored).pvalue > 1e-3);
}

TEST_CASE("degenerate boundary throws") {
    ArcSet empty;
    RandomStream rng(1, 0);
    CHECK_THROWS_AS(sample_boundary_uniform(empty, rng), DegenerateBoundary);
}

TEST_CASE("corner tie break picks the lower index") {
    const auto a = pair_at_distance(2.0);
    const ArcSet& s = exposed_arcs(a);
    // find an arc of owner 1 with a cut caused by disk 0
    for (std::size_t k = 0; k < s.arcs.size(); ++k) {
        const Arc& arc = s.arcs[k];
        if (arc.owner != 1) continue;
        REQUIRE(arc.cut0 == 0);
        REQUIRE(arc.cut1 == 0);
        CHECK(resolve_owner(s, k, arc.theta0 + 1e-13) == 0);          // at the corner: lower wins
        CHECK(resolve_owner(s, k, 0.5 * (arc.theta0 + arc.theta1)) == 1);  // interior keeps owner
    }
}
