#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "hypdla/boundary.hpp"
#include "hypdla/disk_grid.hpp"
#include "hypdla/geometry.hpp"

namespace hypdla {

inline constexpr double kParticleRadius = 1.0;
inline constexpr double kAttachRadius = 2.0;   // tangency locus distance
inline constexpr double kTangencyTol = 1e-9;

struct ProbeParams {
    double eps_offset = 1e-2;
    double hit_shell = 1e-3;
    double floor_shell = 1e-4;
    double far_cutoff = 15.0;
    long max_steps = 1'000'000;

    void validate() const;
};

struct Particle {
    HalfPlanePoint center;
    double birth_time = 0.0;
    int parent = -1;
    long trials = 0;
    // capacity estimate of the aggregate this particle attached to (continuous mode)
    double cap = std::numeric_limits<double>::quiet_NaN();
    double cap_se = std::numeric_limits<double>::quiet_NaN();
};

enum class GrowthMode { discrete, continuous };

/// Effective configuration carried by an aggregate and echoed into records.
struct RunMeta {
    std::uint64_t seed = 1;
    GrowthMode mode = GrowthMode::discrete;
    long n_particles = 1;
    ProbeParams probe;
    long capacity_probes = 2000;
    HypIsometry embedding;
    bool fixture = false;
};

/// Growing cluster: ordered particles, their radius-2 disk images, the spatial
/// index over those disks, and the incrementally maintained exposed boundary.
class Aggregate {
  public:
    explicit Aggregate(const RunMeta& meta);

    /// Appends a particle. Unless this is a fixture, enforces the tangency
    /// invariants: distance to parent within kTangencyTol of kAttachRadius,
    /// no earlier center closer than kAttachRadius - kTangencyTol, strictly
    /// increasing birth times.
    void append(const Particle& p);

    std::size_t size() const { return particles_.size(); }
    const Particle& particle(std::size_t i) const { return particles_[i]; }
    const std::vector<Particle>& particles() const { return particles_; }
    const HalfPlanePoint& origin() const { return particles_.front().center; }
    const RunMeta& meta() const { return meta_; }

    const EuclidDisk& disk(std::size_t i) const { return disks_[i]; }
    const std::vector<EuclidDisk>& disks() const { return disks_; }
    const DiskGrid& grid() const { return grid_; }

    /// Exposed boundary of the union of radius-2 disks.
    const ArcSet& boundary() const { return builder_.arcset(); }
    const BoundaryBuilder& boundary_builder() const { return builder_; }

    DiskGrid::Nearest nearest_surface(double x, double y, int hint = -1) const;

    /// Lower bound on the distance from (x, y) to every disk surface.
    /// Equals the distance to the Euclidean bounding circle of the union.
    double surface_distance_bound(double x, double y) const {
        const double d = std::hypot(x - bound_cx_, y - bound_cy_) - bound_r_;
        return d > 0.0 ? d : 0.0;
    }

    double min_disk_bottom() const { return min_bottom_; }
    /// Radius of the origin-centered hyperbolic ball containing all disks.
    double bounding_radius() const { return bounding_radius_; }

  private:
    RunMeta meta_;
    std::vector<Particle> particles_;
    std::vector<EuclidDisk> disks_;
    DiskGrid grid_;
    BoundaryBuilder builder_;
    double min_bottom_ = std::numeric_limits<double>::infinity();
    double bounding_radius_ = 0.0;
    double bound_cx_ = 0.0, bound_cy_ = 0.0, bound_r_ = 0.0;  // Euclid enclosing circle
};

/// The spec's exposed-boundary entry point.
const ArcSet& exposed_arcs(const Aggregate& a);

}  // namespace hypdla
