#include "hypdla/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "hypdla/errors.hpp"

namespace hypdla {

namespace {

constexpr double kWidthEps = 1e-12;  // angular slivers below this are dropped

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

double adapt(const EuclidDisk& d, double a, double b, double fa, double fm, double fb, double whole,
             double rel_tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = d.r / (d.cy + d.r * std::sin(lm));
    const double frm = d.r / (d.cy + d.r * std::sin(rm));
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * rel_tol * std::fabs(left + right))
        return left + right + delta / 15.0;
    return adapt(d, a, m, fa, flm, fm, left, rel_tol, depth - 1) +
           adapt(d, m, b, fm, frm, fb, right, rel_tol, depth - 1);
}

double min_ordinate_on_arc(const EuclidDisk& d, double t0, double t1) {
    double y = std::min(d.cy + d.r * std::sin(t0), d.cy + d.r * std::sin(t1));
    // sin attains -1 at 3 pi / 2 + 2 pi k
    for (double t = -0.5 * kPi; t < t1; t += kTwoPi)
        if (t > t0) y = std::min(y, d.cy - d.r);
    return y;
}

}  // namespace

double arc_hyp_length(const Arc& arc) {
    const EuclidDisk& d = arc.disk;
    const double a = arc.theta0, b = arc.theta1;
    if (!(b > a)) return 0.0;
    const auto f = [&](double t) { return d.r / (d.cy + d.r * std::sin(t)); };
    // Two top-level panels so a full circle is refined from distinct halves.
    const double m = 0.5 * (a + b);
    double total = 0.0;
    const std::pair<double, double> panels[2] = {{a, m}, {m, b}};
    for (const auto& [lo, hi] : panels) {
        const double mid = 0.5 * (lo + hi);
        const double flo = f(lo), fmid = f(mid), fhi = f(hi);
        total += adapt(d, lo, hi, flo, fmid, fhi, simpson(flo, fmid, fhi, hi - lo), 1e-11, 48);
    }
    return total;
}

BoundarySample sample_boundary_uniform(const ArcSet& s, RandomStream& rng) {
    if (s.arcs.empty() || !(s.total_hyp_len > 1e-300)) throw DegenerateBoundary();
    const double u = rng.u01() * s.total_hyp_len;
    const auto it = std::upper_bound(s.cdf.begin(), s.cdf.end(), u);
    const auto idx = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(it - s.cdf.begin(), static_cast<std::ptrdiff_t>(s.cdf.size()) - 1));
    const Arc& arc = s.arcs[idx];
    const EuclidDisk& d = arc.disk;
    const double y_min = min_ordinate_on_arc(d, arc.theta0, arc.theta1);
    double theta = 0.0;
    for (;;) {
        theta = rng.uniform(arc.theta0, arc.theta1);
        const double y = d.cy + d.r * std::sin(theta);
        if (rng.u01() * y < y_min) break;
    }
    const double cs = std::cos(theta), sn = std::sin(theta);
    BoundarySample out;
    out.point = HalfPlanePoint(d.cx + d.r * cs, d.cy + d.r * sn);
    out.owner = arc.owner;
    out.nx = cs;
    out.ny = sn;
    out.theta = theta;
    out.arc_index = idx;
    return out;
}

int resolve_owner(const ArcSet& s, std::size_t arc_index, double theta, double tol) {
    const Arc& arc = s.arcs[arc_index];
    int owner = arc.owner;
    const EuclidDisk& d = arc.disk;
    const HalfPlanePoint p(d.cx + d.r * std::cos(theta), d.cy + d.r * std::sin(theta));
    const auto endpoint = [&](double t) {
        return HalfPlanePoint(d.cx + d.r * std::cos(t), d.cy + d.r * std::sin(t));
    };
    if (arc.cut0 >= 0 && hyp_distance(p, endpoint(arc.theta0)) < tol)
        owner = std::min(owner, arc.cut0);
    if (arc.cut1 >= 0 && hyp_distance(p, endpoint(arc.theta1)) < tol)
        owner = std::min(owner, arc.cut1);
    return owner;
}

std::optional<BoundaryBuilder::CoverEntry> BoundaryBuilder::coverage(const EuclidDisk& di,
                                                                     const EuclidDisk& dj,
                                                                     int cutter, bool& full) {
    full = false;
    const double dx = dj.cx - di.cx, dy = dj.cy - di.cy;
    const double d = std::hypot(dx, dy);
    const double tol = 1e-12 * (di.r + dj.r);
    if (d >= di.r + dj.r - tol) return std::nullopt;  // disjoint or externally tangent
    if (d + di.r <= dj.r + tol) {                     // circle i inside disk j
        full = true;
        return std::nullopt;
    }
    if (d + dj.r <= di.r + tol) return std::nullopt;  // disk j strictly inside circle i
    double c = (d * d + di.r * di.r - dj.r * dj.r) / (2.0 * d * di.r);
    c = std::clamp(c, -1.0, 1.0);
    const double half = std::acos(c);
    const double phi = std::atan2(dy, dx);
    double start = std::fmod(phi - half, kTwoPi);
    if (start < 0.0) start += kTwoPi;
    return CoverEntry{cutter, start, 2.0 * half};
}

void BoundaryBuilder::add_disk(const EuclidDisk& d, const DiskGrid& grid) {
    const int k = static_cast<int>(disks_.size());
    disks_.push_back(d);
    covers_.emplace_back();
    fully_covered_.push_back(0);
    covered_measure_.push_back(0.0);
    arcs_.emplace_back();

    for (int j : grid.overlap_candidates(d)) {
        if (j == k || j >= k) continue;
        bool full = false;
        // coverage of the new circle by disk j
        if (auto on_k = coverage(d, disks_[static_cast<std::size_t>(j)], j, full)) {
            covers_[static_cast<std::size_t>(k)].push_back(*on_k);
        } else if (full) {
            fully_covered_[static_cast<std::size_t>(k)] = 1;
        }
        // coverage of circle j by the new disk
        bool full_j = false;
        const auto on_j = coverage(disks_[static_cast<std::size_t>(j)], d, k, full_j);
        if (on_j || full_j) {
            if (on_j) covers_[static_cast<std::size_t>(j)].push_back(*on_j);
            if (full_j) fully_covered_[static_cast<std::size_t>(j)] = 1;
            sweep(j);
        }
    }
    sweep(k);
    dirty_ = true;
}

void BoundaryBuilder::sweep(int i) {
    const auto ui = static_cast<std::size_t>(i);
    arcs_[ui].clear();
    if (fully_covered_[ui]) {
        covered_measure_[ui] = kTwoPi;
        return;
    }

    std::vector<Segment> segs;
    segs.reserve(2 * covers_[ui].size());
    for (const CoverEntry& e : covers_[ui]) {
        const double end = e.start + e.len;
        if (end <= kTwoPi) {
            segs.push_back({e.start, end, e.cutter, e.cutter});
        } else {
            segs.push_back({e.start, kTwoPi, e.cutter, e.cutter});
            segs.push_back({0.0, end - kTwoPi, e.cutter, e.cutter});
        }
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.a < b.a; });

    std::vector<Segment> merged;
    for (const Segment& s : segs) {
        if (!merged.empty() && s.a <= merged.back().b) {
            if (s.b > merged.back().b) {
                merged.back().b = s.b;
                merged.back().cut_b = s.cut_b;
            }
        } else {
            merged.push_back(s);
        }
    }

    double covered = 0.0;
    for (const Segment& s : merged) covered += s.b - s.a;
    covered_measure_[ui] = covered;

    const EuclidDisk& d = disks_[ui];
    const auto push_arc = [&](double t0, double t1, int c0, int c1) {
        if (t1 - t0 < kWidthEps) return;
        Arc a;
        a.owner = i;
        a.disk = d;
        a.theta0 = t0;
        a.theta1 = t1;
        a.cut0 = c0;
        a.cut1 = c1;
        a.hyp_len = arc_hyp_length(a);
        arcs_[ui].push_back(a);
    };

    if (merged.empty()) {
        push_arc(0.0, kTwoPi, -1, -1);
        return;
    }
    for (std::size_t s = 0; s + 1 < merged.size(); ++s)
        push_arc(merged[s].b, merged[s + 1].a, merged[s].cut_b, merged[s + 1].cut_a);
    // wrap-around gap joins the piece after the last cover with the piece before the first
    const double tail = merged.back().b;
    const double head = merged.front().a;
    if (head + kTwoPi - tail >= kWidthEps && covered < kTwoPi - kWidthEps) {
        if (tail >= kTwoPi - kWidthEps && head <= kWidthEps) {
            // covers touch both ends; nothing wraps
        } else {
            push_arc(tail, head + kTwoPi, merged.back().cut_b, merged.front().cut_a);
        }
    }
}

const ArcSet& BoundaryBuilder::arcset() const {
    if (!dirty_) return snapshot_;
    snapshot_.arcs.clear();
    snapshot_.cdf.clear();
    double total = 0.0;
    for (const auto& per_disk : arcs_)
        for (const Arc& a : per_disk) {
            snapshot_.arcs.push_back(a);
            total += a.hyp_len;
            snapshot_.cdf.push_back(total);
        }
    snapshot_.total_hyp_len = total;
    dirty_ = false;
    return snapshot_;
}

double BoundaryBuilder::covered_measure(int i) const { return covered_measure_[static_cast<std::size_t>(i)]; }

double BoundaryBuilder::exposed_measure(int i) const {
    double w = 0.0;
    for (const Arc& a : arcs_[static_cast<std::size_t>(i)]) w += a.theta1 - a.theta0;
    return w;
}

double BoundaryBuilder::exposed_hyp_length(int i) const {
    double w = 0.0;
    for (const Arc& a : arcs_[static_cast<std::size_t>(i)]) w += a.hyp_len;
    return w;
}

}  // namespace hypdla
