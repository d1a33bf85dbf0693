#pragma once

#include <functional>
#include <optional>
#include <string>

#include "hypdla/aggregate.hpp"
#include "hypdla/run_record.hpp"

namespace hypdla {

struct GrowthConfig {
    long n_particles = 1000;
    std::uint64_t seed = 1;
    GrowthMode mode = GrowthMode::discrete;
    ProbeParams probe;
    long capacity_probes = 2000;
    HypIsometry embedding;  // origin particle sits at embedding((0, 1))
    int threads = 1;        // execution hint only, never affects output bytes
    long max_attach_trials = 10'000'000;

    void validate() const;
    RunMeta meta() const;
};

/// Fresh single-particle aggregate at the embedded origin.
Aggregate seed_aggregate(const GrowthConfig& cfg);

struct StepResult {
    HalfPlanePoint point;
    int owner = 0;
    long trials = 0;
    std::optional<double> dt;  // continuous mode only
};

/// One attachment. Substreams are derived from (seed, step index), so a run
/// resumed from a checkpoint with the same seed continues identically.
StepResult step(Aggregate& a, const GrowthConfig& cfg);

/// Grows to cfg.n_particles. Same seed gives byte-identical records for any
/// thread hint. progress, when set, is called after every step.
RunRecord run(const GrowthConfig& cfg, const std::function<void(long)>& progress = {});

void checkpoint_save(const Aggregate& a, const std::string& path);
Aggregate checkpoint_load(const std::string& path);

}  // namespace hypdla
