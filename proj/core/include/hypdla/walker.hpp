#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hypdla/aggregate.hpp"
#include "hypdla/geometry.hpp"
#include "hypdla/rng.hpp"

namespace hypdla {

enum class ProbeKind { Escaped, HitAggregate, BudgetExhausted };

struct ProbeOutcome {
    ProbeKind kind = ProbeKind::BudgetExhausted;
    long steps = 0;
    HalfPlanePoint end;
};

/// First-order offset along the outward normal: q + eps * q.y * n.
/// Hyperbolic distance from q is eps up to O(eps^2).
HalfPlanePoint launch_point(const HalfPlanePoint& q, double nx, double ny, double eps);

/// Walk-on-spheres classification of one Brownian probe in the chart.
/// Jumps uniformly on the largest circle clear of the aggregate disks and of
/// the axis. HitAggregate when the signed surface distance drops below
/// hit_shell * y; Escaped at the floor shell or once the point leaves the
/// far_cutoff neighbourhood of the aggregate's bounding ball.
/// hint, when valid, seeds the first nearest-disk query (e.g. with the disk
/// the start point was launched from).
ProbeOutcome escape_probe(const HalfPlanePoint& start, const Aggregate& a, const ProbeParams& params,
                          RandomStream& rng, int hint = -1);

/// Probes starts[i] on substream i of master_seed. Outcomes are independent
/// of n_threads_hint; per-probe errors are rethrown for the lowest index.
std::vector<ProbeOutcome> batch_probes(std::span<const HalfPlanePoint> starts, const Aggregate& a,
                                       const ProbeParams& params, std::uint64_t master_seed,
                                       int n_threads_hint);

}  // namespace hypdla
