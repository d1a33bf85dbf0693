#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypdla/geometry.hpp"
#include "hypdla/run_record.hpp"

namespace hypdla {

/// Width/height observables of the cluster in the (0,1)-normalized chart.
/// All values are over particle centers; only the front criterion looks at
/// the unit ball image (a particle is in the front when |x| + y sinh 1
/// reaches the current maximal |x|).
struct FrameStats {
    double t = 0.0;
    long n = 0;
    double X = 0.0;
    double Y = 0.0;
    double tildeY = 0.0;
    double R = 0.0;  // X / Y
    std::vector<int> front_indices;
};

FrameStats frame_stats(std::span<const HalfPlanePoint> centers, double t = 0.0);
FrameStats frame_stats(const Aggregate& a);

/// Per-step frame statistics of a record.
std::vector<FrameStats> frame_series(const RunRecord& rec);

/// sup of center ordinates over {x >= L} / {x <= L}; empty when no particle qualifies.
std::optional<double> y_sup_right(std::span<const HalfPlanePoint> centers, double L);
std::optional<double> y_sup_left(std::span<const HalfPlanePoint> centers, double L);

struct TauCrossing {
    int i = 0;        // dyadic level: first step with X >= 2^i * X0
    long step = 0;
    double R = 0.0;
};

/// First crossing step of each level 2^i * X0 present in the record.
std::vector<TauCrossing> tau_crossings(const RunRecord& rec, double X0);

struct DensityProfile {
    std::vector<double> radii;
    std::vector<long> counts;
    std::vector<double> volumes;  // 2 pi (cosh R - 1)
    std::vector<double> ratios;   // counts / volumes; +inf at R = 0
};

DensityProfile density_profile(std::span<const HalfPlanePoint> centers, const HalfPlanePoint& origin,
                               std::span<const double> radii);

/// Largest count/volume ratio over the grid {r_lo, r_lo + step, ..., <= r_hi}.
double max_density_ratio(std::span<const HalfPlanePoint> centers, const HalfPlanePoint& origin,
                         double r_lo, double r_hi, double step);

double cluster_extent(std::span<const HalfPlanePoint> centers, const HalfPlanePoint& origin);

/// Connected chain of particles along theta -> polar(R(theta), theta) with
/// consecutive centers at hyperbolic distance <= 1.9. Fixture flag set; the
/// default growth law is R(theta) = 0.5 theta^2.
/// subdivision_budget caps the distance evaluations spent placing any single
/// particle of the chain.
RunRecord spiral_fixture(double turns, const std::function<double(double)>& radius_law = {},
                         long subdivision_budget = 400);

struct LemmaSuiteParams {
    long burn_in = 50;
    long window = 25;
    double c_hat = 0.05;        // Y-growth threshold: windows with Y * (1 + c_hat)
    double r0_hat = 2.5;        // distant-ball radius
    double ball_distance = 8.0;
    int n_directions = 8;
    double min_hit_freq = 0.9;
};

/// Thresholds fitted on pilot records (disjoint from the evaluation set).
LemmaSuiteParams calibrate_lemma_params(std::span<const RunRecord> pilot);

struct LemmaCheck {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct LemmaReport {
    std::vector<LemmaCheck> checks;
    bool all_pass() const;
    std::string text() const;
    std::string to_json() const;
};

/// Statistical checks of the growth-rate behaviour over >= 30 records:
/// (a) per-step X increments regress positively on the front height, with a
///     tail decaying in K for increments above K * tildeY (plus a permuted
///     negative control);
/// (b) frequency of Y multiplying by (1 + c_hat) per window increases with
///     Y / (X + Y);
/// (c) balls of radius r0_hat at the configured distance are hit with
///     frequency >= min_hit_freq, nondecreasing in the radius.
LemmaReport lemma_suites(std::span<const RunRecord> records, const LemmaSuiteParams& params);

void write_stats_csv(const RunRecord& rec, std::ostream& out, const std::string& config_echo = {});
void write_density_csv(const DensityProfile& profile, std::ostream& out,
                       const std::string& config_echo = {});

}  // namespace hypdla
