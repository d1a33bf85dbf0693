#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hypdla {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Point of the half-plane chart {(x, y) : y > 0}.
struct HalfPlanePoint {
    double x = 0.0;
    double y = 1.0;

    HalfPlanePoint() = default;
    HalfPlanePoint(double px, double py) : x(px), y(py) {
        if (!(py > 0.0) || !std::isfinite(px) || !std::isfinite(py))
            throw std::invalid_argument("HalfPlanePoint: requires finite coordinates with y > 0");
    }

    friend bool operator==(const HalfPlanePoint& a, const HalfPlanePoint& b) {
        return a.x == b.x && a.y == b.y;
    }
};

/// arcosh(1 + t) for t >= 0, cancellation-free near t = 0.
inline double arcosh1p(double t) {
    return std::log1p(t + std::sqrt(t * (t + 2.0)));
}

/// Geodesic distance in the half-plane chart.
inline double hyp_distance(const HalfPlanePoint& p, const HalfPlanePoint& q) {
    const double dx = q.x - p.x;
    const double dy = q.y - p.y;
    return arcosh1p((dx * dx + dy * dy) / (2.0 * p.y * q.y));
}

/// First-order bound on how precisely hyp_distance between stored double
/// coordinates is determined. The x-differencing loses absolute precision
/// ~eps*|x| while the local length scale is y, so points far (in units of
/// |x|/y, i.e. sinh of the distance from the chart's central geodesic) carry
/// an irreducible uncertainty. Checks of exact metric relations must widen
/// their tolerance by this amount.
inline double distance_precision(const HalfPlanePoint& p, const HalfPlanePoint& q) {
    const double cond = (std::fabs(p.x) + std::fabs(q.x)) / std::min(p.y, q.y);
    return 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + cond);
}

/// Axis-preserving isometry: optional reflection x -> -x, then (x, y) -> (beta x + alpha, beta y).
struct HypIsometry {
    double alpha = 0.0;
    double beta = 1.0;
    bool reflect = false;

    HypIsometry() = default;
    HypIsometry(double a, double b, bool refl = false) : alpha(a), beta(b), reflect(refl) {
        if (!(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
            throw std::invalid_argument("HypIsometry: requires finite alpha and beta > 0");
    }

    HalfPlanePoint operator()(const HalfPlanePoint& p) const {
        const double x = reflect ? -p.x : p.x;
        return HalfPlanePoint(beta * x + alpha, beta * p.y);
    }

    /// this after other.
    HypIsometry compose(const HypIsometry& other) const {
        if (!reflect)
            return HypIsometry(beta * other.alpha + alpha, beta * other.beta, other.reflect);
        return HypIsometry(-beta * other.alpha + alpha, beta * other.beta, !other.reflect);
    }

    HypIsometry inverse() const {
        if (!reflect) return HypIsometry(-alpha / beta, 1.0 / beta, false);
        return HypIsometry(alpha / beta, 1.0 / beta, true);
    }
};

inline HalfPlanePoint isometry_apply(const HypIsometry& t, const HalfPlanePoint& p) { return t(p); }

/// Euclidean disk in the chart. Images of hyperbolic balls satisfy cy - r >= 0.
struct EuclidDisk {
    double cx = 0.0;
    double cy = 1.0;
    double r = 0.0;

    double bottom() const { return cy - r; }
    bool contains(double px, double py) const {
        const double dx = px - cx, dy = py - cy;
        return dx * dx + dy * dy <= r * r;
    }
    /// Signed Euclidean distance from (px, py) to the disk surface; negative inside.
    double surface_distance(double px, double py) const {
        const double dx = px - cx, dy = py - cy;
        return std::sqrt(dx * dx + dy * dy) - r;
    }
};

/// Chart image of the hyperbolic ball B_H(c, rho).
inline EuclidDisk hyp_ball_to_disk(const HalfPlanePoint& c, double rho) {
    if (!(rho >= 0.0)) throw std::invalid_argument("hyp_ball_to_disk: requires rho >= 0");
    return EuclidDisk{c.x, c.y * std::cosh(rho), c.y * std::sinh(rho)};
}

/// Hyperbolic center and radius of a disk lying strictly above the axis.
inline std::pair<HalfPlanePoint, double> disk_to_hyp_ball(const EuclidDisk& d) {
    if (!(d.bottom() > 0.0)) throw std::invalid_argument("disk_to_hyp_ball: disk touches the axis");
    const double y0 = std::sqrt((d.cy - d.r) * (d.cy + d.r));
    return {HalfPlanePoint(d.cx, y0), std::atanh(d.r / d.cy)};
}

/// Cayley map w = (z - i)/(z + i); sends (0,1) to the disc origin.
inline std::pair<double, double> to_disc_model(const HalfPlanePoint& p) {
    const double d = p.x * p.x + (p.y + 1.0) * (p.y + 1.0);
    return {(p.x * p.x + p.y * p.y - 1.0) / d, -2.0 * p.x / d};
}

/// Inverse Cayley map; requires u^2 + v^2 < 1.
inline HalfPlanePoint from_disc_model(double u, double v) {
    const double d = (1.0 - u) * (1.0 - u) + v * v;
    return HalfPlanePoint(-2.0 * v / d, (1.0 - u * u - v * v) / d);
}

/// Point at hyperbolic distance R from origin along direction theta.
/// theta is the counterclockwise angle in the disc chart centered at origin;
/// theta = 0 points toward +x, theta = pi/2 points chart-up.
/// Evaluated through 1 - tanh(R/2) = 2/(e^R + 1) so it stays accurate for
/// large R, where the disc-model point is exponentially close to the rim.
inline HalfPlanePoint polar_point(const HalfPlanePoint& origin, double R, double theta) {
    if (!(R >= 0.0)) throw std::invalid_argument("polar_point: requires R >= 0");
    const double om = 2.0 / (std::exp(R) + 1.0);  // 1 - tanh(R/2)
    const double t = 1.0 - om;
    const double psi = theta - 0.5 * kPi;
    const double s = std::sin(0.5 * psi);
    const double den = om * om + 4.0 * t * s * s;
    const double y = om * (2.0 - om) / den;
    const double x = -2.0 * t * std::sin(psi) / den;
    return HalfPlanePoint(x * origin.y + origin.x, y * origin.y);
}

/// Area of B_H(., R): 2 pi (cosh R - 1).
inline double hyp_ball_area(double R) { return kTwoPi * (std::cosh(R) - 1.0); }

}  // namespace hypdla
