#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "hypdla/errors.hpp"
#include "hypdla/growth.hpp"
#include "hypdla/harmonic.hpp"
#include "hypdla/stats.hpp"

using namespace hypdla;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("first step attaches one tangent particle") {
    GrowthConfig cfg;
    cfg.n_particles = 2;
    cfg.seed = 404;
    Aggregate a = seed_aggregate(cfg);
    CHECK(a.size() == 1);
    const auto res = step(a, cfg);
    CHECK(a.size() == 2);
    CHECK(res.owner == 0);
    CHECK(!res.dt);
    CHECK(hyp_distance(a.particle(1).center, a.particle(0).center) ==
          doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("single particle run emits the origin only") {
    GrowthConfig cfg;
    cfg.n_particles = 1;
    cfg.seed = 7;
    const RunRecord rec = run(cfg);
    REQUIRE(rec.rows.size() == 1);
    CHECK(rec.rows[0].center.x == 0.0);
    CHECK(rec.rows[0].center.y == 1.0);
    CHECK(rec.rows[0].parent == -1);
    CHECK(rec.rows[0].birth_time == 0.0);
}

TEST_CASE("same seed gives identical bytes regardless of thread hint") {
    GrowthConfig cfg;
    cfg.n_particles = 40;
    cfg.seed = 2026;
    const std::string once = run(cfg).serialize();
    const std::string twice = run(cfg).serialize();
    CHECK(once == twice);
    cfg.threads = 8;
    const std::string threaded = run(cfg).serialize();
    CHECK(once == threaded);
}

TEST_CASE("discrete growth respects all invariants") {
    GrowthConfig cfg;
    cfg.n_particles = 120;
    cfg.seed = 3;
    const RunRecord rec = run(cfg);
    REQUIRE(rec.rows.size() == 120);
    for (std::size_t i = 1; i < rec.rows.size(); ++i) {
        const Particle& p = rec.rows[i];
        CHECK(p.parent >= 0);
        CHECK(p.parent < static_cast<int>(i));  // tree edges point backwards
        CHECK(hyp_distance(p.center, rec.rows[static_cast<std::size_t>(p.parent)].center) ==
              doctest::Approx(2.0).epsilon(1e-9));
        CHECK(p.birth_time == static_cast<double>(i));
        for (std::size_t j = 0; j < i; ++j)
            CHECK(hyp_distance(p.center, rec.rows[j].center) >= 2.0 - 1e-9);
    }
    // every particle is reachable from the root along parent edges
    for (std::size_t i = 1; i < rec.rows.size(); ++i) {
        int v = static_cast<int>(i), hops = 0;
        while (v > 0 && hops <= static_cast<int>(i)) v = rec.rows[static_cast<std::size_t>(v)].parent, ++hops;
        CHECK(v == 0);
    }
}

TEST_CASE("continuous mode draws exponential waits at the capacity rate") {
    GrowthConfig cfg;
    cfg.mode = GrowthMode::continuous;
    cfg.n_particles = 2;
    cfg.capacity_probes = 2000;

    // reference rate from a high-precision estimate
    Aggregate ref = seed_aggregate(cfg);
    ProbeParams params = cfg.probe;
    const auto cap_ref = estimate_capacity(ref, 100000, params, StreamFamily{9999, 0, 1});

    std::vector<double> waits;
    for (std::uint64_t s = 1; s <= 200; ++s) {
        cfg.seed = s;
        Aggregate a = seed_aggregate(cfg);
        const auto res = step(a, cfg);
        REQUIRE(res.dt.has_value());
        CHECK(*res.dt > 0.0);
        waits.push_back(*res.dt);
    }
    const double mean_dt = stats::mean(waits);
    const double expected = 1.0 / cap_ref.value;
    // exponential waits: sd ~ mean
    const double se = mean_dt / std::sqrt(200.0);
    CHECK(std::fabs(mean_dt - expected) <= 3.0 * se + 0.02 * expected);
}

TEST_CASE("standardized waits are exponential over a run") {
    GrowthConfig cfg;
    cfg.mode = GrowthMode::continuous;
    cfg.n_particles = 60;
    cfg.seed = 11;
    cfg.capacity_probes = 1000;
    const RunRecord rec = run(cfg);
    std::vector<double> standardized;
    for (std::size_t i = 1; i < rec.rows.size(); ++i) {
        const double dt = rec.rows[i].birth_time - rec.rows[i - 1].birth_time;
        CHECK(dt > 0.0);
        standardized.push_back(dt * rec.rows[i].cap);
    }
    const auto ks = stats::ks_test(standardized, [](double x) { return 1.0 - std::exp(-x); });
    CHECK(ks.pvalue > 1e-3);
    CHECK(rec.cap0 > 0.0);
}

TEST_CASE("record serialization round trips byte for byte") {
    GrowthConfig cfg;
    cfg.n_particles = 50;
    cfg.seed = 13;
    const RunRecord rec = run(cfg);
    const std::string bytes = rec.serialize();
    std::istringstream in(bytes);
    const RunRecord back = RunRecord::parse(in);
    CHECK(back.serialize() == bytes);
    CHECK(back.rows.size() == rec.rows.size());
    for (std::size_t i = 0; i < rec.rows.size(); ++i) {
        CHECK(back.rows[i].center.x == rec.rows[i].center.x);  // exact, 17 digits round trip
        CHECK(back.rows[i].center.y == rec.rows[i].center.y);
        CHECK(back.rows[i].birth_time == rec.rows[i].birth_time);
    }
}

TEST_CASE("checkpoint save and load preserve everything") {
    GrowthConfig cfg;
    cfg.n_particles = 80;
    cfg.seed = 17;
    cfg.mode = GrowthMode::continuous;
    cfg.capacity_probes = 1000;
    const RunRecord rec = run(cfg);
    const auto path = temp_file("hypdla_ckpt_test.run");
    rec.save(path.string());

    Aggregate loaded = checkpoint_load(path.string());
    CHECK(loaded.size() == 80);
    const auto path2 = temp_file("hypdla_ckpt_test2.run");
    checkpoint_save(loaded, path2.string());
    std::ifstream f1(path), f2(path2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    std::filesystem::remove(path);
    std::filesystem::remove(path2);
}

TEST_CASE("corrupted tangency is rejected at the right index") {
    GrowthConfig cfg;
    cfg.n_particles = 30;
    cfg.seed = 19;
    RunRecord rec = run(cfg);
    rec.rows[12].center = polar_point(rec.rows[static_cast<std::size_t>(rec.rows[12].parent)].center,
                                      2.5, 1.0);  // distance 2.5 from its parent
    try {
        aggregate_from_record(rec);
        FAIL("expected InvariantViolation");
    } catch (const InvariantViolation& e) {
        CHECK(e.index == 12);
    }
}

TEST_CASE("malformed records carry line numbers") {
    GrowthConfig cfg;
    cfg.n_particles = 5;
    cfg.seed = 23;
    std::string bytes = run(cfg).serialize();
    bytes += "{\"i\": 5, \"x\": oops}\n";
    std::istringstream in(bytes);
    try {
        RunRecord::parse(in);
        FAIL("expected MalformedRecord");
    } catch (const MalformedRecord& e) {
        CHECK(e.line == 7);  // header + rows 0..4, corrupt line is 7th
    }

    std::istringstream empty("");
    CHECK_THROWS_AS(RunRecord::parse(empty), MalformedRecord);
}

TEST_CASE("resuming from a checkpoint with the same seed continues the trajectory") {
    GrowthConfig cfg;
    cfg.n_particles = 25;
    cfg.seed = 29;
    const RunRecord full = run(cfg);

    GrowthConfig half = cfg;
    half.n_particles = 12;
    const RunRecord prefix = run(half);
    Aggregate a = aggregate_from_record(prefix);
    while (static_cast<long>(a.size()) < 25) step(a, cfg);
    const RunRecord resumed = record_from_aggregate(a);
    CHECK(resumed.rows.size() == full.rows.size());
    for (std::size_t i = 0; i < full.rows.size(); ++i) {
        CHECK(resumed.rows[i].center.x == full.rows[i].center.x);
        CHECK(resumed.rows[i].center.y == full.rows[i].center.y);
    }
}

TEST_CASE("restart statistics match in-memory continuation statistics") {
    // the next-attachment law depends on the aggregate alone
    GrowthConfig cfg;
    cfg.n_particles = 60;
    cfg.seed = 31;
    const RunRecord prefix = run(cfg);
    const auto path = temp_file("hypdla_markov_test.run");
    prefix.save(path.string());

    std::vector<double> direct, reloaded;
    for (int rep = 0; rep < 400; ++rep) {
        {
            Aggregate a = aggregate_from_record(prefix);
            GrowthConfig c2 = cfg;
            c2.seed = 100000 + static_cast<std::uint64_t>(rep);
            const auto res = step(a, c2);
            const HalfPlanePoint o = prefix.rows[static_cast<std::size_t>(res.owner)].center;
            const HypIsometry norm(-o.x / o.y, 1.0 / o.y);
            const auto [u, v] = to_disc_model(norm(res.point));
            direct.push_back(std::atan2(v, u));
        }
        {
            Aggregate a = checkpoint_load(path.string());
            GrowthConfig c2 = cfg;
            c2.seed = 200000 + static_cast<std::uint64_t>(rep);
            const auto res = step(a, c2);
            const HalfPlanePoint o = prefix.rows[static_cast<std::size_t>(res.owner)].center;
            const HypIsometry norm(-o.x / o.y, 1.0 / o.y);
            const auto [u, v] = to_disc_model(norm(res.point));
            reloaded.push_back(std::atan2(v, u));
        }
    }
    CHECK(stats::ks_test_2sample(direct, reloaded).pvalue > 1e-3);
    std::filesystem::remove(path);
}

TEST_CASE("growth errors carry the failing step index") {
    GrowthConfig cfg;
    cfg.n_particles = 3;
    cfg.seed = 37;
    cfg.max_attach_trials = 1;  // cannot succeed
    try {
        run(cfg);
        FAIL("expected a wrapped step error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("growth step 1") != std::string::npos);
    }
}
