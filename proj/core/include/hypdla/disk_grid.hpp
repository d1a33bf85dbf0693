#pragma once

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

#include "hypdla/geometry.hpp"

namespace hypdla {

/// Spatial index over disks whose radii may span hundreds of octaves (the
/// chart images of equal hyperbolic balls do). Disks are binned by radius
/// octave; each class keeps a uniform hash grid with cell size matched to the
/// class radius, so every disk occupies at most 3x3 cells of its own grid.
/// Queries combine the classes through per-class enclosing-circle bounds.
/// The structure is append-only; queries are const and thread-safe.
class DiskGrid {
  public:
    struct Nearest {
        double dist = 0.0;  // signed surface distance, negative inside
        int index = -1;
    };

    void insert(const EuclidDisk& d);

    std::size_t size() const { return disks_.size(); }
    const EuclidDisk& disk(std::size_t i) const { return disks_[i]; }

    /// Indices of disks that might overlap d. Superset of the true overlap
    /// set; sorted, unique.
    std::vector<int> overlap_candidates(const EuclidDisk& d) const;

    /// Exact minimum signed surface distance over all disks.
    /// hint, when valid, seeds the search with a candidate disk.
    Nearest nearest_surface(double x, double y, int hint = -1) const;

  private:
    struct ClassGrid {
        double cell = 1.0;
        std::unordered_map<std::uint64_t, std::vector<int>> cells;
        std::vector<int> members;
        std::int64_t lo_x = 0, hi_x = -1, lo_y = 0, hi_y = -1;
        // enclosing circle of the class's disks
        double bcx = 0.0, bcy = 0.0, br = 0.0;
        int count = 0;
    };

    static std::uint64_t cell_key(std::int64_t ix, std::int64_t iy) {
        std::uint64_t h = static_cast<std::uint64_t>(ix) * 0x9E3779B97F4A7C15ull;
        h ^= static_cast<std::uint64_t>(iy) + 0xD1B54A32D192ED03ull + (h << 6) + (h >> 2);
        return h;
    }

    static int class_of(double r);
    void scan_cell(const ClassGrid& g, std::int64_t ix, std::int64_t iy, double x, double y,
                   Nearest& best) const;
    void scan_class(const ClassGrid& g, double x, double y, Nearest& best) const;

    std::vector<EuclidDisk> disks_;
    std::map<int, ClassGrid> classes_;
};

}  // namespace hypdla
