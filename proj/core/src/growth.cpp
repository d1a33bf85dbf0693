#include "hypdla/growth.hpp"

#include <stdexcept>
#include <string>

#include "hypdla/errors.hpp"
#include "hypdla/harmonic.hpp"

namespace hypdla {

void GrowthConfig::validate() const {
    if (n_particles < 1) throw std::invalid_argument("GrowthConfig: n_particles must be >= 1");
    if (capacity_probes < 1000)
        throw std::invalid_argument("GrowthConfig: capacity_probes must be >= 10^3");
    if (max_attach_trials < 1) throw std::invalid_argument("GrowthConfig: max_attach_trials must be >= 1");
    probe.validate();
}

RunMeta GrowthConfig::meta() const {
    RunMeta m;
    m.seed = seed;
    m.mode = mode;
    m.n_particles = n_particles;
    m.probe = probe;
    m.capacity_probes = capacity_probes;
    m.embedding = embedding;
    m.fixture = false;
    return m;
}

Aggregate seed_aggregate(const GrowthConfig& cfg) {
    cfg.validate();
    Aggregate a(cfg.meta());
    Particle origin;
    origin.center = cfg.embedding(HalfPlanePoint(0.0, 1.0));
    origin.birth_time = 0.0;
    origin.parent = -1;
    a.append(origin);
    return a;
}

StepResult step(Aggregate& a, const GrowthConfig& cfg) {
    if (a.size() == 0) throw EmptyAggregate();
    const auto k = static_cast<std::uint64_t>(a.size());  // index of the particle being added

    Particle p;
    std::optional<double> dt;
    if (cfg.mode == GrowthMode::continuous) {
        const CapacityEstimate cap = estimate_capacity(
            a, cfg.capacity_probes, cfg.probe, StreamFamily{cfg.seed, k, stream_phase::kCapacity},
            cfg.threads);
        RandomStream clock(cfg.seed, k, stream_phase::kClock, 0);
        dt = clock.exponential(1.0 / cap.value);
        p.cap = cap.value;
        p.cap_se = cap.stderr_;
    }

    const AttachmentSample s =
        sample_attachment(a, cfg.probe, StreamFamily{cfg.seed, k, stream_phase::kAttach},
                          cfg.threads, cfg.max_attach_trials);
    p.center = s.point;
    p.parent = s.owner;
    p.trials = s.trials;
    p.birth_time = dt ? a.particles().back().birth_time + *dt : static_cast<double>(k);
    a.append(p);
    return {s.point, s.owner, s.trials, dt};
}

RunRecord run(const GrowthConfig& cfg, const std::function<void(long)>& progress) {
    Aggregate a = seed_aggregate(cfg);
    while (static_cast<long>(a.size()) < cfg.n_particles) {
        try {
            step(a, cfg);
        } catch (const std::exception& e) {
            throw std::runtime_error("growth step " + std::to_string(a.size()) + ": " + e.what());
        }
        if (progress) progress(static_cast<long>(a.size()));
    }
    return record_from_aggregate(a);
}

void checkpoint_save(const Aggregate& a, const std::string& path) {
    record_from_aggregate(a).save(path);
}

Aggregate checkpoint_load(const std::string& path) {
    return aggregate_from_record(RunRecord::load(path));
}

}  // namespace hypdla
