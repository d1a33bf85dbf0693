#include "hypdla/disk_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypdla {

namespace {

std::int64_t coord(double v, double cell) { return static_cast<std::int64_t>(std::floor(v / cell)); }

}  // namespace

int DiskGrid::class_of(double r) {
    int e = 0;
    std::frexp(std::max(r, 1e-300), &e);  // r in [2^(e-1), 2^e)
    return e;
}

void DiskGrid::insert(const EuclidDisk& d) {
    const int i = static_cast<int>(disks_.size());
    disks_.push_back(d);
    ClassGrid& g = classes_[class_of(d.r)];
    if (g.count == 0) g.cell = std::ldexp(1.0, class_of(d.r));  // cell >= r, disk spans <= 3x3 cells

    const std::int64_t x0 = coord(d.cx - d.r, g.cell), x1 = coord(d.cx + d.r, g.cell);
    const std::int64_t y0 = coord(d.cy - d.r, g.cell), y1 = coord(d.cy + d.r, g.cell);
    if (g.count == 0) {
        g.lo_x = x0, g.hi_x = x1, g.lo_y = y0, g.hi_y = y1;
        g.bcx = d.cx, g.bcy = d.cy, g.br = d.r;
    } else {
        g.lo_x = std::min(g.lo_x, x0);
        g.hi_x = std::max(g.hi_x, x1);
        g.lo_y = std::min(g.lo_y, y0);
        g.hi_y = std::max(g.hi_y, y1);
        const double dist = std::hypot(d.cx - g.bcx, d.cy - g.bcy);
        const double gap = dist + d.r - g.br;
        if (gap > 0.0) {
            const double grow = 0.5 * gap;
            g.br += grow;
            if (dist > 0.0) {
                g.bcx += grow * (d.cx - g.bcx) / dist;
                g.bcy += grow * (d.cy - g.bcy) / dist;
            }
        }
    }
    ++g.count;
    g.members.push_back(i);
    for (std::int64_t ix = x0; ix <= x1; ++ix)
        for (std::int64_t iy = y0; iy <= y1; ++iy) g.cells[cell_key(ix, iy)].push_back(i);
}

std::vector<int> DiskGrid::overlap_candidates(const EuclidDisk& d) const {
    std::vector<int> out;
    for (const auto& [cls, g] : classes_) {
        // a class disk can only overlap d within d inflated by the class radius bound
        const double reach = d.r + std::ldexp(1.0, cls);
        if (std::hypot(d.cx - g.bcx, d.cy - g.bcy) - g.br > reach) continue;
        const std::int64_t x0 = std::max(coord(d.cx - reach, g.cell), g.lo_x);
        const std::int64_t x1 = std::min(coord(d.cx + reach, g.cell), g.hi_x);
        const std::int64_t y0 = std::max(coord(d.cy - reach, g.cell), g.lo_y);
        const std::int64_t y1 = std::min(coord(d.cy + reach, g.cell), g.hi_y);
        if (x0 > x1 || y0 > y1) continue;
        // when the query rectangle is larger than the class itself, checking
        // every member directly is cheaper than walking empty cells
        const double rect_cells = static_cast<double>(x1 - x0 + 1) * static_cast<double>(y1 - y0 + 1);
        if (rect_cells > static_cast<double>(g.members.size())) {
            out.insert(out.end(), g.members.begin(), g.members.end());
            continue;
        }
        for (std::int64_t ix = x0; ix <= x1; ++ix)
            for (std::int64_t iy = y0; iy <= y1; ++iy) {
                const auto it = g.cells.find(cell_key(ix, iy));
                if (it != g.cells.end()) out.insert(out.end(), it->second.begin(), it->second.end());
            }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void DiskGrid::scan_cell(const ClassGrid& g, std::int64_t ix, std::int64_t iy, double x, double y,
                         Nearest& best) const {
    const auto it = g.cells.find(cell_key(ix, iy));
    if (it == g.cells.end()) return;
    for (int i : it->second) {
        const double d = disks_[static_cast<std::size_t>(i)].surface_distance(x, y);
        if (d < best.dist) best = {d, i};
    }
}

void DiskGrid::scan_class(const ClassGrid& g, double x, double y, Nearest& best) const {
    // Small classes: checking every member beats walking cells.
    if (g.members.size() <= 256) {
        for (int i : g.members) {
            const double d = disks_[static_cast<std::size_t>(i)].surface_distance(x, y);
            if (d < best.dist) best = {d, i};
        }
        return;
    }
    const std::int64_t cx = coord(x, g.cell), cy = coord(y, g.cell);
    const std::int64_t gap_x = std::max({g.lo_x - cx, cx - g.hi_x, std::int64_t{0}});
    const std::int64_t gap_y = std::max({g.lo_y - cy, cy - g.hi_y, std::int64_t{0}});
    const std::int64_t k0 = std::max(gap_x, gap_y);
    const std::int64_t k_max =
        std::max({g.hi_x - cx, cx - g.lo_x, g.hi_y - cy, cy - g.lo_y, std::int64_t{0}});
    long budget = 4 * static_cast<long>(g.members.size());
    for (std::int64_t k = k0; k <= k_max; ++k) {
        // any disk of this class in an unscanned cell has surface distance
        // >= (k-1) * cell from (x, y)
        if (k >= 1 && static_cast<double>(k - 1) * g.cell > best.dist) break;
        if (budget <= 0) {  // sparse far-flung class: give up on cells
            for (int i : g.members) {
                const double d = disks_[static_cast<std::size_t>(i)].surface_distance(x, y);
                if (d < best.dist) best = {d, i};
            }
            return;
        }
        if (k == 0) {
            scan_cell(g, cx, cy, x, y, best);
            --budget;
            continue;
        }
        const std::int64_t x0 = std::max(cx - k, g.lo_x), x1 = std::min(cx + k, g.hi_x);
        const std::int64_t y0 = std::max(cy - k + 1, g.lo_y), y1 = std::min(cy + k - 1, g.hi_y);
        for (std::int64_t ix = x0; ix <= x1; ++ix) {
            if (cy - k >= g.lo_y && cy - k <= g.hi_y) scan_cell(g, ix, cy - k, x, y, best);
            if (cy + k <= g.hi_y && cy + k >= g.lo_y) scan_cell(g, ix, cy + k, x, y, best);
            budget -= 2;
        }
        for (std::int64_t iy = y0; iy <= y1; ++iy) {
            if (cx - k >= g.lo_x && cx - k <= g.hi_x) scan_cell(g, cx - k, iy, x, y, best);
            if (cx + k <= g.hi_x && cx + k >= g.lo_x) scan_cell(g, cx + k, iy, x, y, best);
            budget -= 2;
        }
    }
}

DiskGrid::Nearest DiskGrid::nearest_surface(double x, double y, int hint) const {
    Nearest best{std::numeric_limits<double>::infinity(), -1};
    if (disks_.empty()) return best;
    if (hint >= 0 && hint < static_cast<int>(disks_.size()))
        best = {disks_[static_cast<std::size_t>(hint)].surface_distance(x, y), hint};

    // class lower bounds, processed nearest-first (no allocation in the hot path)
    struct Entry {
        double lb;
        const ClassGrid* g;
    };
    constexpr int kMaxSorted = 256;
    Entry order[kMaxSorted];
    int n = 0;
    for (const auto& [cls, g] : classes_) {
        const double lb = std::hypot(x - g.bcx, y - g.bcy) - g.br;
        if (n < kMaxSorted) {
            order[n++] = {lb, &g};
        } else if (lb < best.dist) {
            scan_class(g, x, y, best);  // overflow fallback, still exact
        }
    }
    std::sort(order, order + n, [](const Entry& a, const Entry& b) { return a.lb < b.lb; });
    for (int i = 0; i < n; ++i) {
        if (order[i].lb >= best.dist) break;
        scan_class(*order[i].g, x, y, best);
    }
    return best;
}

}  // namespace hypdla
