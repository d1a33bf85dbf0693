#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hypdla/disk_grid.hpp"
#include "hypdla/geometry.hpp"
#include "hypdla/rng.hpp"

namespace hypdla {

/// Exposed circular arc of one disk of the union. Angles are radians on the
/// owner circle; theta1 > theta0 and theta1 - theta0 <= 2 pi (arcs may wrap
/// past 2 pi so that a connected exposed piece stays a single arc).
struct Arc {
    int owner = 0;
    EuclidDisk disk;
    double theta0 = 0.0;
    double theta1 = 0.0;
    double hyp_len = 0.0;
    int cut0 = -1;  // disk whose coverage ends at theta0, -1 if none
    int cut1 = -1;  // disk whose coverage starts at theta1, -1 if none
};

struct ArcSet {
    std::vector<Arc> arcs;
    double total_hyp_len = 0.0;
    std::vector<double> cdf;  // prefix sums of hyp_len, strictly increasing
};

/// Hyperbolic length of the arc: integral of r / (cy + r sin θ) over [θ0, θ1].
double arc_hyp_length(const Arc& arc);

struct BoundarySample {
    HalfPlanePoint point;
    int owner = 0;
    double nx = 0.0, ny = 1.0;  // outward Euclidean unit normal of the owner disk
    double theta = 0.0;
    std::size_t arc_index = 0;
};

/// Point distributed proportionally to hyperbolic length on the exposed arcs.
BoundarySample sample_boundary_uniform(const ArcSet& s, RandomStream& rng);

/// owner of the sample, with the deterministic tie-break at shared corners:
/// within tol (hyperbolic) of an arc endpoint the lower disk index wins.
int resolve_owner(const ArcSet& s, std::size_t arc_index, double theta, double tol = 1e-9);

/// Incremental exposure of the union of disks. add_disk updates only the
/// circles whose coverage changed; a finished ArcSet snapshot is immutable.
class BoundaryBuilder {
  public:
    /// d must already be present in grid.
    void add_disk(const EuclidDisk& d, const DiskGrid& grid);

    const ArcSet& arcset() const;

    std::size_t disk_count() const { return disks_.size(); }
    /// Merged covered angular measure on circle i.
    double covered_measure(int i) const;
    /// Exposed angular measure on circle i.
    double exposed_measure(int i) const;
    double exposed_hyp_length(int i) const;

  private:
    struct CoverEntry {
        int cutter = -1;
        double start = 0.0;  // in [0, 2 pi)
        double len = 0.0;    // in (0, 2 pi)
    };
    struct Segment {
        double a = 0.0, b = 0.0;
        int cut_a = -1, cut_b = -1;
    };

    void sweep(int i);
    static std::optional<CoverEntry> coverage(const EuclidDisk& di, const EuclidDisk& dj,
                                              int cutter, bool& full);

    std::vector<EuclidDisk> disks_;
    std::vector<std::vector<CoverEntry>> covers_;
    std::vector<char> fully_covered_;
    std::vector<double> covered_measure_;
    std::vector<std::vector<Arc>> arcs_;
    mutable ArcSet snapshot_;
    mutable bool dirty_ = true;
};

}  // namespace hypdla
