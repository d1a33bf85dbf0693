#pragma once

#include <cstdint>

#include "hypdla/aggregate.hpp"
#include "hypdla/rng.hpp"
#include "hypdla/walker.hpp"

namespace hypdla {

struct CapacityEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    long n_probes = 0;
    double eps_used = 0.0;
    long accepted = 0;
    long relaunches = 0;  // probes redrawn after a budget exhaustion
};

/// Monte Carlo capacity: (boundary length / eps) * escape fraction over
/// length-uniform launch points. Probe i draws from streams.stream(i);
/// the result does not depend on n_threads_hint.
CapacityEstimate estimate_capacity(const Aggregate& a, long n_probes, const ProbeParams& params,
                                   const StreamFamily& streams, int n_threads_hint = 1);

struct AttachmentSample {
    HalfPlanePoint point;
    int owner = 0;
    long trials = 0;
};

/// First escaping probe over length-uniform boundary trials; the accepted
/// point follows the escape-probability density on the exposed boundary.
/// Trials are probed speculatively in chunks but the lowest-index success is
/// kept, so the outcome is independent of n_threads_hint.
AttachmentSample sample_attachment(const Aggregate& a, const ProbeParams& params,
                                   const StreamFamily& streams, int n_threads_hint = 1,
                                   long max_trials = 10'000'000);

}  // namespace hypdla
