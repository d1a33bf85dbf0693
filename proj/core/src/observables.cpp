#include "hypdla/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hypdla/errors.hpp"
#include "hypdla/rng.hpp"
#include "hypdla/stats.hpp"

namespace hypdla {

namespace {
const double kSinh1 = std::sinh(1.0);
}

FrameStats frame_stats(std::span<const HalfPlanePoint> centers, double t) {
    if (centers.empty()) throw EmptyAggregate();
    FrameStats fs;
    fs.t = t;
    fs.n = static_cast<long>(centers.size());
    for (const auto& c : centers) {
        fs.X = std::max(fs.X, std::fabs(c.x));
        fs.Y = std::max(fs.Y, c.y);
    }
    for (std::size_t i = 0; i < centers.size(); ++i) {
        if (std::fabs(centers[i].x) + centers[i].y * kSinh1 >= fs.X) {
            fs.front_indices.push_back(static_cast<int>(i));
            fs.tildeY = std::max(fs.tildeY, centers[i].y);
        }
    }
    fs.R = fs.X / fs.Y;
    return fs;
}

FrameStats frame_stats(const Aggregate& a) {
    std::vector<HalfPlanePoint> centers;
    centers.reserve(a.size());
    for (const auto& p : a.particles()) centers.push_back(p.center);
    return frame_stats(centers, a.particles().back().birth_time);
}

std::vector<FrameStats> frame_series(const RunRecord& rec) {
    std::vector<FrameStats> out;
    out.reserve(rec.rows.size());
    std::vector<HalfPlanePoint> centers;
    centers.reserve(rec.rows.size());
    for (const auto& row : rec.rows) {
        centers.push_back(row.center);
        out.push_back(frame_stats(centers, row.birth_time));
    }
    return out;
}

std::optional<double> y_sup_right(std::span<const HalfPlanePoint> centers, double L) {
    std::optional<double> best;
    for (const auto& c : centers)
        if (c.x >= L && (!best || c.y > *best)) best = c.y;
    return best;
}

std::optional<double> y_sup_left(std::span<const HalfPlanePoint> centers, double L) {
    std::optional<double> best;
    for (const auto& c : centers)
        if (c.x <= L && (!best || c.y > *best)) best = c.y;
    return best;
}

std::vector<TauCrossing> tau_crossings(const RunRecord& rec, double X0) {
    if (!(X0 > 0.0)) throw std::invalid_argument("tau_crossings: X0 must be positive");
    if (rec.rows.empty()) throw EmptyAggregate();
    if (std::fabs(rec.rows.front().center.x) > X0)
        throw std::invalid_argument("tau_crossings: X0 must be >= X at record start");
    std::vector<TauCrossing> out;
    double X = 0.0, Y = 0.0;
    int level = 0;
    for (std::size_t k = 0; k < rec.rows.size(); ++k) {
        X = std::max(X, std::fabs(rec.rows[k].center.x));
        Y = std::max(Y, rec.rows[k].center.y);
        while (X >= std::ldexp(X0, level)) {
            out.push_back({level, static_cast<long>(k), X / Y});
            ++level;
        }
    }
    return out;
}

DensityProfile density_profile(std::span<const HalfPlanePoint> centers, const HalfPlanePoint& origin,
                               std::span<const double> radii) {
    for (std::size_t j = 1; j < radii.size(); ++j)
        if (!(radii[j] > radii[j - 1]))
            throw std::invalid_argument("density_profile: radii must be increasing");
    std::vector<double> dists;
    dists.reserve(centers.size());
    for (const auto& c : centers) dists.push_back(hyp_distance(c, origin));
    DensityProfile prof;
    for (double r : radii) {
        long count = 0;
        for (double d : dists)
            if (d <= r) ++count;
        const double vol = hyp_ball_area(r);
        prof.radii.push_back(r);
        prof.counts.push_back(count);
        prof.volumes.push_back(vol);
        prof.ratios.push_back(vol > 0.0 ? static_cast<double>(count) / vol
                                        : std::numeric_limits<double>::infinity());
    }
    return prof;
}

double max_density_ratio(std::span<const HalfPlanePoint> centers, const HalfPlanePoint& origin,
                         double r_lo, double r_hi, double step) {
    std::vector<double> radii;
    for (double r = r_lo; r <= r_hi + 1e-12; r += step) radii.push_back(r);
    const DensityProfile prof = density_profile(centers, origin, radii);
    double best = 0.0;
    for (std::size_t j = 0; j < prof.ratios.size(); ++j)
        if (prof.volumes[j] > 0.0) best = std::max(best, prof.ratios[j]);
    return best;
}

double cluster_extent(std::span<const HalfPlanePoint> centers, const HalfPlanePoint& origin) {
    double d = 0.0;
    for (const auto& c : centers) d = std::max(d, hyp_distance(c, origin));
    return d;
}

RunRecord spiral_fixture(double turns, const std::function<double(double)>& radius_law,
                         long subdivision_budget) {
    if (!(turns >= 0.0)) throw std::invalid_argument("spiral_fixture: turns must be >= 0");
    const auto law = radius_law ? radius_law : [](double t) { return 0.5 * t * t; };
    const HalfPlanePoint p0(0.0, 1.0);
    const double theta_end = kTwoPi * turns;

    RunRecord rec;
    rec.meta.fixture = true;
    rec.meta.seed = 0;
    rec.meta.mode = GrowthMode::discrete;

    Particle first;
    first.center = polar_point(p0, law(0.0), 0.0);
    first.parent = -1;
    first.birth_time = 0.0;
    rec.rows.push_back(first);

    long budget = subdivision_budget;  // per placed particle
    const auto place = [&](double t) { return polar_point(p0, law(t), t); };
    const auto spend = [&] {
        if (--budget < 0) throw SpacingFailure();
    };
    double theta = 0.0;
    double prev_r = law(0.0);
    const auto append_at = [&](double t) {
        const double r = law(t);
        if (!(r >= prev_r - 1e-12))
            throw std::invalid_argument("spiral_fixture: radius law must be nondecreasing");
        prev_r = r;
        Particle p;
        p.center = place(t);
        p.parent = static_cast<int>(rec.rows.size()) - 1;
        p.birth_time = static_cast<double>(rec.rows.size());
        rec.rows.push_back(p);
        theta = t;
    };
    while (theta < theta_end) {
        const HalfPlanePoint cur = rec.rows.back().center;
        budget = subdivision_budget;
        spend();
        if (hyp_distance(cur, place(theta_end)) <= 1.9) {
            append_at(theta_end);
            break;
        }
        // Bracket the largest step still within distance 1.9, then tighten.
        double lo = 0.0, hi = std::min(0.25, theta_end - theta);
        for (;;) {
            spend();
            if (hyp_distance(cur, place(theta + hi)) > 1.9) break;
            lo = hi;
            hi = std::min(2.0 * hi, theta_end - theta);
        }
        for (int it = 0; it < 60 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
            spend();
            const double mid = 0.5 * (lo + hi);
            (hyp_distance(cur, place(theta + mid)) <= 1.9 ? lo : hi) = mid;
        }
        if (!(lo > 0.0)) throw SpacingFailure();
        append_at(theta + lo);
    }
    rec.meta.n_particles = static_cast<long>(rec.rows.size());
    return rec;
}

namespace {

struct WindowPoint {
    double q = 0.0;  // Y / (X + Y) at the window start
    bool grew = false;
};

struct SuiteData {
    std::vector<double> tilde_y;  // per pooled step
    std::vector<double> dx;
    std::vector<WindowPoint> windows;
};

SuiteData collect(std::span<const RunRecord> records, const LemmaSuiteParams& params) {
    SuiteData data;
    for (const RunRecord& rec : records) {
        const auto series = frame_series(rec);
        const auto n = static_cast<long>(series.size());
        for (long k = params.burn_in; k + 1 < n; ++k) {
            data.tilde_y.push_back(series[static_cast<std::size_t>(k)].tildeY);
            data.dx.push_back(series[static_cast<std::size_t>(k + 1)].X -
                              series[static_cast<std::size_t>(k)].X);
        }
        for (long s = params.burn_in; s + params.window < n; s += params.window) {
            const FrameStats& a = series[static_cast<std::size_t>(s)];
            const FrameStats& b = series[static_cast<std::size_t>(s + params.window)];
            data.windows.push_back(
                {a.Y / (a.X + a.Y), b.Y >= (1.0 + params.c_hat) * a.Y});
        }
    }
    return data;
}

double ball_hit_freq(std::span<const RunRecord> records, const LemmaSuiteParams& params, double r) {
    long hits = 0, total = 0;
    for (const RunRecord& rec : records) {
        const HalfPlanePoint origin = rec.rows.front().center;
        for (int d = 0; d < params.n_directions; ++d) {
            const HalfPlanePoint q =
                polar_point(origin, params.ball_distance, kTwoPi * d / params.n_directions);
            bool hit = false;
            for (const auto& row : rec.rows)
                if (hyp_distance(row.center, q) <= r) {
                    hit = true;
                    break;
                }
            hits += hit;
            ++total;
        }
    }
    return total > 0 ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
}

}  // namespace

LemmaSuiteParams calibrate_lemma_params(std::span<const RunRecord> pilot) {
    if (pilot.size() < 2) throw InsufficientData("calibrate_lemma_params: need >= 2 pilot records");
    LemmaSuiteParams params;
    // c_hat: the 60th percentile of window growth factors, so that roughly 40%
    // of pilot windows clear the bar.
    std::vector<double> growth;
    for (const RunRecord& rec : pilot) {
        const auto series = frame_series(rec);
        const auto n = static_cast<long>(series.size());
        for (long s = params.burn_in; s + params.window < n; s += params.window)
            growth.push_back(series[static_cast<std::size_t>(s + params.window)].Y /
                             series[static_cast<std::size_t>(s)].Y);
    }
    if (growth.size() < 10) throw InsufficientData("calibrate_lemma_params: pilot records too short");
    std::sort(growth.begin(), growth.end());
    params.c_hat = std::max(growth[growth.size() * 6 / 10] - 1.0, 0.01);
    // r0_hat: smallest grid radius reaching 95% pilot hit frequency; the grid
    // tops out just below the ball distance.
    params.r0_hat = 7.9;
    for (double r = 1.0; r <= 7.9 + 1e-9; r += 0.5) {
        if (ball_hit_freq(pilot, params, r) >= 0.95) {
            params.r0_hat = r;
            break;
        }
    }
    return params;
}

bool LemmaReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const LemmaCheck& c) { return c.pass; });
}

std::string LemmaReport::text() const {
    std::ostringstream os;
    for (const LemmaCheck& c : checks)
        os << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << c.value
           << " threshold=" << c.threshold << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
    return os.str();
}

std::string LemmaReport::to_json() const {
    std::ostringstream os;
    os << "{\"checks\": [";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const LemmaCheck& c = checks[i];
        os << (i ? ", " : "") << "{\"name\": \"" << c.name << "\", \"pass\": "
           << (c.pass ? "true" : "false") << ", \"value\": " << c.value
           << ", \"threshold\": " << c.threshold << "}";
    }
    os << "], \"all_pass\": " << (all_pass() ? "true" : "false") << "}";
    return os.str();
}

LemmaReport lemma_suites(std::span<const RunRecord> records, const LemmaSuiteParams& params) {
    if (records.size() < 30) throw InsufficientData("lemma_suites: need >= 30 records");
    LemmaReport report;
    const SuiteData data = collect(records, params);

    // (a) X increments against front height
    {
        const auto fit = stats::ols_fit(data.tilde_y, data.dx);
        report.checks.push_back({"x_growth_slope_positive", fit.slope > 0.0 && fit.t_slope > 3.0,
                                 fit.slope, 0.0, "t=" + std::to_string(fit.t_slope)});

        const double ks[] = {0.25, 0.5, 1.0, 2.0};
        double freq[4] = {};
        for (std::size_t i = 0; i < data.dx.size(); ++i)
            for (int j = 0; j < 4; ++j)
                if (data.dx[i] > ks[j] * data.tilde_y[i]) freq[j] += 1.0;
        for (double& f : freq) f /= static_cast<double>(data.dx.size());
        const bool tail_ok = freq[0] > 0.0 && freq[3] <= 0.6 * freq[0];
        std::ostringstream detail;
        detail << "freq(K)=" << freq[0] << "," << freq[1] << "," << freq[2] << "," << freq[3];
        report.checks.push_back(
            {"x_growth_tail_decays", tail_ok, freq[3], 0.6 * freq[0], detail.str()});

        // negative control: permuted pairing should kill the slope
        std::vector<double> shuffled = data.tilde_y;
        RandomStream rng(0xC0117801u, 0);
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.index(i)]);
        const auto null_fit = stats::ols_fit(shuffled, data.dx);
        report.checks.push_back({"x_growth_shuffled_null", std::fabs(null_fit.t_slope) <= 3.0,
                                 null_fit.t_slope, 3.0, ""});
    }

    // (b) Y-growth frequency increases with q = Y / (X + Y)
    {
        std::vector<double> qs;
        qs.reserve(data.windows.size());
        for (const auto& w : data.windows) qs.push_back(w.q);
        std::vector<double> sorted = qs;
        std::sort(sorted.begin(), sorted.end());
        const double q1 = sorted[sorted.size() / 4];
        const double q2 = sorted[sorted.size() / 2];
        const double q3 = sorted[sorted.size() * 3 / 4];
        double grew[4] = {}, tot[4] = {};
        for (const auto& w : data.windows) {
            const int bin = w.q < q1 ? 0 : w.q < q2 ? 1 : w.q < q3 ? 2 : 3;
            tot[bin] += 1.0;
            grew[bin] += w.grew ? 1.0 : 0.0;
        }
        double f[4];
        for (int j = 0; j < 4; ++j) f[j] = tot[j] > 0 ? grew[j] / tot[j] : 0.0;
        int nondecreasing = 0;
        for (int j = 0; j < 3; ++j) nondecreasing += f[j + 1] >= f[j];
        const bool ok = f[3] > f[0] && nondecreasing >= 2;
        std::ostringstream detail;
        detail << "freq(Q1..Q4)=" << f[0] << "," << f[1] << "," << f[2] << "," << f[3]
               << " c_hat=" << params.c_hat;
        report.checks.push_back({"y_growth_monotone_in_q", ok, f[3] - f[0], 0.0, detail.str()});
    }

    // (c) distant balls are reached
    {
        const double f_full = ball_hit_freq(records, params, params.r0_hat);
        const double f_half = ball_hit_freq(records, params, 0.5 * params.r0_hat);
        const double f_three_quarters = ball_hit_freq(records, params, 0.75 * params.r0_hat);
        std::ostringstream detail;
        detail << "freq(r/2,3r/4,r)=" << f_half << "," << f_three_quarters << "," << f_full
               << " r0_hat=" << params.r0_hat;
        report.checks.push_back({"distant_ball_hit_freq", f_full >= params.min_hit_freq, f_full,
                                 params.min_hit_freq, detail.str()});
        report.checks.push_back({"distant_ball_monotone_in_radius",
                                 f_half <= f_three_quarters && f_three_quarters <= f_full, f_full,
                                 f_half, ""});
    }
    return report;
}

void write_stats_csv(const RunRecord& rec, std::ostream& out, const std::string& config_echo) {
    if (!config_echo.empty()) out << "# " << config_echo << "\n";
    out << "step,t,n,X,Y,tildeY,R\n";
    char buf[256];
    const auto series = frame_series(rec);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const FrameStats& fs = series[k];
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%ld,%.17g,%.17g,%.17g,%.17g\n", k, fs.t, fs.n,
                      fs.X, fs.Y, fs.tildeY, fs.R);
        out << buf;
    }
}

void write_density_csv(const DensityProfile& profile, std::ostream& out,
                       const std::string& config_echo) {
    if (!config_echo.empty()) out << "# " << config_echo << "\n";
    out << "R,count,volume,ratio\n";
    char buf[256];
    for (std::size_t j = 0; j < profile.radii.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%ld,%.17g,%.17g\n", profile.radii[j],
                      profile.counts[j], profile.volumes[j], profile.ratios[j]);
        out << buf;
    }
}

}  // namespace hypdla
