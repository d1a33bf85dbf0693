#include "hypdla/walker.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "hypdla/errors.hpp"

namespace hypdla {

HalfPlanePoint launch_point(const HalfPlanePoint& q, double nx, double ny, double eps) {
    if (!(eps >= 0.0) || !(eps <= 0.05))
        throw std::invalid_argument("launch_point: requires 0 <= eps <= 0.05");
    return HalfPlanePoint(q.x + eps * q.y * nx, q.y + eps * q.y * ny);
}

ProbeOutcome escape_probe(const HalfPlanePoint& start, const Aggregate& a, const ProbeParams& params,
                          RandomStream& rng, int start_hint) {
    params.validate();
    if (a.size() == 0) throw EmptyAggregate();

    const double floor_abs = params.floor_shell * a.min_disk_bottom();
    const HalfPlanePoint far_center = a.origin();
    const double far_limit = a.bounding_radius() + params.far_cutoff;
    // The open strip 0 < y < slab_top contains no disk. A walker inside it
    // either reaches the axis (escape) or re-enters at the top; both the
    // Bernoulli and the horizontal displacement follow the exact strip
    // harmonic measure, so the whole excursion is resolved in one draw.
    const double slab_top = 0.999 * a.min_disk_bottom();

    double x = start.x, y = start.y;
    DiskGrid::Nearest near = a.nearest_surface(x, y, start_hint);
    if (near.dist <= 0.0) throw StartInsideAggregate();
    if (y <= floor_abs) throw StartBelowFloor();

    long steps = 0;
    int hint = near.index;
    for (;;) {
        if (near.dist < params.hit_shell * y)
            return {ProbeKind::HitAggregate, steps, HalfPlanePoint(x, y)};
        if (y < floor_abs) return {ProbeKind::Escaped, steps, HalfPlanePoint(x, y)};
        if (hyp_distance(HalfPlanePoint(x, y), far_center) > far_limit)
            return {ProbeKind::Escaped, steps, HalfPlanePoint(x, y)};
        if (steps == params.max_steps) return {ProbeKind::BudgetExhausted, steps, HalfPlanePoint(x, y)};

        if (y < slab_top) {
            if (rng.u01() * slab_top >= y) return {ProbeKind::Escaped, steps, HalfPlanePoint(x, y)};
            // conditional exit point on the slab top: inverse cdf of
            // sin(c) / (2b (cosh(pi dx / b) + cos(c))), c = pi y / b
            const double c = kPi * y / slab_top;
            const double u = rng.u01_open() - 0.5;
            const double t = std::tan(c * u) / std::tan(0.5 * c);
            x += (2.0 * slab_top / kPi) * std::atanh(std::clamp(t, -1.0 + 1e-16, 1.0 - 1e-16));
            y = slab_top;
            ++steps;
            near = a.nearest_surface(x, y, hint);
            hint = near.index;
            continue;
        }

        const double r = std::min(near.dist, y);
        const double ang = rng.u01() * kTwoPi;
        x += r * std::cos(ang);
        y += r * std::sin(ang);
        ++steps;
        // When even the bounding circle is at least y away, the step radius is
        // y regardless of the true distance and no classification can fire, so
        // the exact query is skipped; the trajectory is unchanged.
        const double bound = a.surface_distance_bound(x, y);
        if (bound >= y) {
            near = {bound, hint};
        } else {
            near = a.nearest_surface(x, y, hint);
            hint = near.index;
        }
        assert(near.dist > -1e-9 * (1.0 + std::fabs(y)) && "step entered an aggregate disk");
        assert(y > -1e-12 && "step crossed the axis");
        if (y <= 0.0) return {ProbeKind::Escaped, steps, HalfPlanePoint(x, std::nextafter(0.0, 1.0))};
    }
}

std::vector<ProbeOutcome> batch_probes(std::span<const HalfPlanePoint> starts, const Aggregate& a,
                                       const ProbeParams& params, std::uint64_t master_seed,
                                       int n_threads_hint) {
    std::vector<ProbeOutcome> out(starts.size());
    if (starts.empty()) return out;
    std::vector<std::exception_ptr> errors(starts.size());

    const auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            RandomStream rng(master_seed, stream_phase::kBatch, 0, i);
            try {
                out[i] = escape_probe(starts[i], a, params, rng);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const int threads = std::clamp(n_threads_hint, 1, 64);
    if (threads == 1 || starts.size() < 2) {
        work(0, starts.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (starts.size() + threads - 1) / static_cast<std::size_t>(threads);
        for (int t = 0; t < threads; ++t) {
            const std::size_t lo = static_cast<std::size_t>(t) * chunk;
            if (lo >= starts.size()) break;
            pool.emplace_back(work, lo, std::min(lo + chunk, starts.size()));
        }
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
    return out;
}

}  // namespace hypdla
