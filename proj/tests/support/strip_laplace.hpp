#pragma once

#include <cmath>
#include <vector>

#include "hypdla/boundary.hpp"
#include "hypdla/geometry.hpp"

namespace hypdla::test {

/// Independent discrete-harmonic oracle. The half-plane is mapped to the
/// strip w = log z (v = arg z in (0, pi)); the Dirichlet problem with value 1
/// on the ideal boundary (v = 0, v = pi, |u| large) and 0 on the aggregate
/// disks is relaxed with SOR on a uniform strip grid. Escape probabilities
/// are read off by bilinear interpolation.
class StripLaplace {
  public:
    StripLaplace(const std::vector<EuclidDisk>& disks, double u_lo, double u_hi, int nv = 192)
        : u_lo_(u_lo), nv_(nv) {
        dv_ = kPi / nv;
        nu_ = static_cast<int>(std::ceil((u_hi - u_lo) / dv_));
        du_ = (u_hi - u_lo) / nu_;
        value_.assign(static_cast<std::size_t>((nu_ + 1) * (nv_ + 1)), 1.0);
        fixed_.assign(value_.size(), 0);
        for (int i = 0; i <= nu_; ++i)
            for (int j = 0; j <= nv_; ++j) {
                const bool rim = i == 0 || i == nu_ || j == 0 || j == nv_;
                if (rim) {
                    fixed_[idx(i, j)] = 1;  // ideal boundary, value 1
                    continue;
                }
                const double u = u_lo_ + i * du_, v = j * dv_;
                const double x = std::exp(u) * std::cos(v), y = std::exp(u) * std::sin(v);
                for (const EuclidDisk& d : disks)
                    if (d.contains(x, y)) {
                        value_[idx(i, j)] = 0.0;
                        fixed_[idx(i, j)] = 1;
                        break;
                    }
            }
        solve();
    }

    double escape_probability(const HalfPlanePoint& z) const {
        const double u = 0.5 * std::log(z.x * z.x + z.y * z.y);
        const double v = std::atan2(z.y, z.x);
        const double fi = (u - u_lo_) / du_, fj = v / dv_;
        const int i = std::max(0, std::min(nu_ - 1, static_cast<int>(fi)));
        const int j = std::max(0, std::min(nv_ - 1, static_cast<int>(fj)));
        const double a = fi - i, b = fj - j;
        return (1 - a) * (1 - b) * value_[idx(i, j)] + a * (1 - b) * value_[idx(i + 1, j)] +
               (1 - a) * b * value_[idx(i, j + 1)] + a * b * value_[idx(i + 1, j + 1)];
    }

  private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j * (nu_ + 1) + i); }

    void solve() {
        const double wu = 1.0 / (du_ * du_), wv = 1.0 / (dv_ * dv_);
        const double denom = 2.0 * (wu + wv);
        const double omega = 1.95;
        for (int sweep = 0; sweep < 30000; ++sweep) {
            double max_delta = 0.0;
            for (int j = 1; j < nv_; ++j)
                for (int i = 1; i < nu_; ++i) {
                    const std::size_t k = idx(i, j);
                    if (fixed_[k]) continue;
                    const double gs =
                        (wu * (value_[idx(i - 1, j)] + value_[idx(i + 1, j)]) +
                         wv * (value_[idx(i, j - 1)] + value_[idx(i, j + 1)])) /
                        denom;
                    const double next = value_[k] + omega * (gs - value_[k]);
                    max_delta = std::max(max_delta, std::fabs(next - value_[k]));
                    value_[k] = next;
                }
            if (max_delta < 1e-9) break;
        }
    }

    double u_lo_;
    int nu_ = 0, nv_ = 0;
    double du_ = 0.0, dv_ = 0.0;
    std::vector<double> value_;
    std::vector<char> fixed_;
};

/// Relative attachment weight of each disk: escape probability integrated
/// over its exposed arcs against hyperbolic length.
inline std::vector<double> oracle_shares(const ArcSet& arcs, std::size_t n_disks,
                                         const StripLaplace& grid, double delta) {
    std::vector<double> shares(n_disks, 0.0);
    for (const Arc& arc : arcs.arcs) {
        const int m = 400;
        double acc = 0.0;
        for (int k = 0; k < m; ++k) {
            const double t = arc.theta0 + (arc.theta1 - arc.theta0) * (k + 0.5) / m;
            const double cs = std::cos(t), sn = std::sin(t);
            const HalfPlanePoint q(arc.disk.cx + arc.disk.r * cs, arc.disk.cy + arc.disk.r * sn);
            const HalfPlanePoint launch(q.x + delta * q.y * cs, q.y + delta * q.y * sn);
            const double ds = arc.disk.r / q.y * (arc.theta1 - arc.theta0) / m;
            acc += grid.escape_probability(launch) * ds;
        }
        shares[static_cast<std::size_t>(arc.owner)] += acc;
    }
    double total = 0.0;
    for (double s : shares) total += s;
    for (double& s : shares) s /= total;
    return shares;
}

}  // namespace hypdla::test
