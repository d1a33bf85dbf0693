#include "hypdla/harmonic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <stdexcept>
#include <thread>

#include "hypdla/boundary.hpp"
#include "hypdla/errors.hpp"
#include "hypdla/stats.hpp"

namespace hypdla {

namespace {

constexpr int kMaxRelaunches = 64;

struct TrialResult {
    bool escaped = false;
    BoundarySample sample;
    int relaunches = 0;
};

/// One boundary trial: sample, launch, probe. Budget-exhausted probes are
/// redrawn from attempt-shifted substreams of the same trial id.
TrialResult run_trial(const Aggregate& a, const ArcSet& arcs, const ProbeParams& params,
                      const StreamFamily& streams, std::uint64_t trial, double floor_abs) {
    TrialResult res;
    for (int attempt = 0;; ++attempt) {
        if (attempt > kMaxRelaunches)
            throw std::runtime_error("escape probe budget exhausted " +
                                     std::to_string(kMaxRelaunches) + " times in a row");
        RandomStream rng(streams.seed, streams.a,
                         streams.b + (static_cast<std::uint64_t>(attempt) << 8), trial);
        const BoundarySample s = sample_boundary_uniform(arcs, rng);
        const HalfPlanePoint start = launch_point(s.point, s.nx, s.ny, params.eps_offset);
        // A launch point that already lies in a neighbouring disk, or under the
        // floor shell, is an immediate hit for this trial.
        if (a.nearest_surface(start.x, start.y, s.owner).dist <= 0.0 || start.y <= floor_abs) {
            res.escaped = false;
            res.sample = s;
            res.relaunches = attempt;
            return res;
        }
        const ProbeOutcome out = escape_probe(start, a, params, rng, s.owner);
        if (out.kind == ProbeKind::BudgetExhausted) continue;
        res.escaped = out.kind == ProbeKind::Escaped;
        res.sample = s;
        res.relaunches = attempt;
        return res;
    }
}

template <typename Fn>
void parallel_indices(std::size_t n, int n_threads_hint, Fn&& fn) {
    const int threads = std::clamp(n_threads_hint, 1, 64);
    if (threads == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= n) break;
                    fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

CapacityEstimate estimate_capacity(const Aggregate& a, long n_probes, const ProbeParams& params,
                                   const StreamFamily& streams, int n_threads_hint) {
    if (a.size() == 0) throw EmptyAggregate();
    if (n_probes < 1000) throw std::invalid_argument("estimate_capacity: n_probes must be >= 10^3");
    params.validate();
    const ArcSet& arcs = a.boundary();
    if (arcs.arcs.empty() || !(arcs.total_hyp_len > 1e-300)) throw DegenerateBoundary();
    const double floor_abs = params.floor_shell * a.min_disk_bottom();

    std::atomic<long> accepted{0};
    std::atomic<long> relaunches{0};
    parallel_indices(static_cast<std::size_t>(n_probes), n_threads_hint, [&](std::size_t i) {
        const TrialResult r = run_trial(a, arcs, params, streams, i, floor_abs);
        if (r.escaped) accepted.fetch_add(1, std::memory_order_relaxed);
        relaunches.fetch_add(r.relaunches, std::memory_order_relaxed);
    });

    const double p_hat = static_cast<double>(accepted.load()) / static_cast<double>(n_probes);
    const double scale = arcs.total_hyp_len / params.eps_offset;
    CapacityEstimate est;
    est.value = scale * p_hat;
    est.stderr_ = scale * stats::binomial_stderr(p_hat, n_probes);
    est.n_probes = n_probes;
    est.eps_used = params.eps_offset;
    est.accepted = accepted.load();
    est.relaunches = relaunches.load();
    return est;
}

AttachmentSample sample_attachment(const Aggregate& a, const ProbeParams& params,
                                   const StreamFamily& streams, int n_threads_hint,
                                   long max_trials) {
    if (a.size() == 0) throw EmptyAggregate();
    params.validate();
    const ArcSet& arcs = a.boundary();
    if (arcs.arcs.empty() || !(arcs.total_hyp_len > 1e-300)) throw DegenerateBoundary();
    const double floor_abs = params.floor_shell * a.min_disk_bottom();

    const auto accept = [&](const BoundarySample& s, long trial) {
        AttachmentSample out;
        out.point = s.point;
        out.owner = resolve_owner(arcs, s.arc_index, s.theta);
        out.trials = trial + 1;
        return out;
    };

    const int threads = std::clamp(n_threads_hint, 1, 64);
    if (threads == 1) {
        for (long j = 0; j < max_trials; ++j) {
            const TrialResult r =
                run_trial(a, arcs, params, streams, static_cast<std::uint64_t>(j), floor_abs);
            if (r.escaped) return accept(r.sample, j);
        }
        throw NoAcceptanceWithinBudget(max_trials);
    }

    // Ordered speculation: chunks grow geometrically, the lowest-index success
    // wins, so the accepted sample matches the serial path exactly.
    long chunk = 4L * threads;
    for (long base = 0; base < max_trials; base += chunk, chunk = std::min(2 * chunk, 4096L)) {
        const long hi = std::min(base + chunk, max_trials);
        std::vector<std::optional<BoundarySample>> wins(static_cast<std::size_t>(hi - base));
        parallel_indices(static_cast<std::size_t>(hi - base), threads, [&](std::size_t k) {
            const TrialResult r =
                run_trial(a, arcs, params, streams, static_cast<std::uint64_t>(base) + k, floor_abs);
            if (r.escaped) wins[k] = r.sample;
        });
        for (std::size_t k = 0; k < wins.size(); ++k)
            if (wins[k]) return accept(*wins[k], base + static_cast<long>(k));
    }
    throw NoAcceptanceWithinBudget(max_trials);
}

}  // namespace hypdla
