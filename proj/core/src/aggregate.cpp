#include "hypdla/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hypdla/errors.hpp"

namespace hypdla {

void ProbeParams::validate() const {
    if (!(eps_offset > 0.0) || !(eps_offset <= 0.05))
        throw std::invalid_argument("ProbeParams: eps_offset must be in (0, 0.05]");
    if (!(hit_shell > 0.0) || !(hit_shell <= 0.1 * eps_offset))
        throw std::invalid_argument("ProbeParams: hit_shell must be in (0, 0.1 * eps_offset]");
    if (!(floor_shell > 0.0) || !(floor_shell < 1.0))
        throw std::invalid_argument("ProbeParams: floor_shell must be in (0, 1)");
    if (!(far_cutoff >= 10.0)) throw std::invalid_argument("ProbeParams: far_cutoff must be >= 10");
    if (max_steps < 10'000) throw std::invalid_argument("ProbeParams: max_steps must be >= 10^4");
}

Aggregate::Aggregate(const RunMeta& meta) : meta_(meta) {}

void Aggregate::append(const Particle& p) {
    const auto index = static_cast<long>(particles_.size());
    if (particles_.empty()) {
        if (p.parent != -1) throw InvariantViolation(0, "origin particle must have no parent");
        if (p.birth_time != 0.0) throw InvariantViolation(0, "origin particle must have birth time 0");
    } else if (!meta_.fixture) {
        if (p.parent < 0 || p.parent >= index)
            throw InvariantViolation(index, "parent index must precede the particle");
        const HalfPlanePoint& pc = particles_[static_cast<std::size_t>(p.parent)].center;
        const double dp = hyp_distance(p.center, pc);
        // kTangencyTol wherever doubles can hold it, the representable
        // precision where the chart coordinates cannot
        if (std::fabs(dp - kAttachRadius) > std::max(kTangencyTol, distance_precision(p.center, pc)))
            throw InvariantViolation(index, "center is not at distance 2 from its parent (got " +
                                                std::to_string(dp) + ")");
        const EuclidDisk d2 = hyp_ball_to_disk(p.center, kAttachRadius);
        for (int j : grid_.overlap_candidates(d2)) {
            const HalfPlanePoint& oc = particles_[static_cast<std::size_t>(j)].center;
            const double dj = hyp_distance(p.center, oc);
            if (dj < kAttachRadius - std::max(kTangencyTol, distance_precision(p.center, oc)))
                throw InvariantViolation(index, "center overlaps particle " + std::to_string(j) +
                                                    " (distance " + std::to_string(dj) + ")");
        }
        if (!(p.birth_time > particles_.back().birth_time))
            throw InvariantViolation(index, "birth times must be strictly increasing");
    } else {
        if (p.parent >= index) throw InvariantViolation(index, "parent index must precede the particle");
    }

    particles_.push_back(p);
    const EuclidDisk d = hyp_ball_to_disk(p.center, kAttachRadius);
    disks_.push_back(d);
    grid_.insert(d);
    builder_.add_disk(d, grid_);
    min_bottom_ = std::min(min_bottom_, d.bottom());
    bounding_radius_ =
        std::max(bounding_radius_, hyp_distance(origin(), p.center) + kAttachRadius);
    if (disks_.size() == 1) {
        bound_cx_ = d.cx;
        bound_cy_ = d.cy;
        bound_r_ = d.r;
    } else {
        const double gap = std::hypot(d.cx - bound_cx_, d.cy - bound_cy_) + d.r - bound_r_;
        if (gap > 0.0) {
            // expand the enclosing circle toward the new disk
            const double dist = std::hypot(d.cx - bound_cx_, d.cy - bound_cy_);
            const double grow = 0.5 * gap;
            bound_r_ += grow;
            if (dist > 0.0) {
                bound_cx_ += grow * (d.cx - bound_cx_) / dist;
                bound_cy_ += grow * (d.cy - bound_cy_) / dist;
            }
        }
    }
}

DiskGrid::Nearest Aggregate::nearest_surface(double x, double y, int hint) const {
    if (disks_.size() <= 16) {
        DiskGrid::Nearest best{std::numeric_limits<double>::infinity(), -1};
        for (std::size_t i = 0; i < disks_.size(); ++i) {
            const double d = disks_[i].surface_distance(x, y);
            if (d < best.dist) best = {d, static_cast<int>(i)};
        }
        return best;
    }
    return grid_.nearest_surface(x, y, hint);
}

const ArcSet& exposed_arcs(const Aggregate& a) {
    if (a.size() == 0) throw EmptyAggregate();
    return a.boundary();
}

}  // namespace hypdla
