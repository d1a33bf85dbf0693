#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hypdla/aggregate.hpp"

namespace hypdla {

/// Serialized growth history. Line 1 is a JSON header object; every further
/// line is one particle row {"i","x","y","t","parent","trials"} plus
/// {"cap","cap_se"} in continuous mode. Floats carry 17 significant digits,
/// so serialize -> parse -> serialize is byte-identical.
struct RunRecord {
    int version = 1;
    RunMeta meta;
    std::vector<Particle> rows;
    // step-0 capacity estimate (continuous mode), the empirical single-particle rate
    double cap0 = 0.0;
    double cap0_se = 0.0;
    long total_trials = 0;

    std::string serialize() const;
    static RunRecord parse(std::istream& in);

    void save(const std::string& path) const;
    static RunRecord load(const std::string& path);
};

/// Rebuilds the aggregate, re-validating every invariant.
Aggregate aggregate_from_record(const RunRecord& rec);
RunRecord record_from_aggregate(const Aggregate& a);

}  // namespace hypdla
