#include "hypdla/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "hypdla/errors.hpp"
#include "hypdla/observables.hpp"

namespace hypdla {

void RenderOptions::validate() const {
    if (width_px < 64 || width_px > 8192)
        throw std::invalid_argument("RenderOptions: width_px must be in [64, 8192]");
    if (radius_shown != 1 && radius_shown != 2)
        throw std::invalid_argument("RenderOptions: radius_shown must be 1 or 2");
}

DiscCircle disc_circle_image(const HalfPlanePoint& center, double rho) {
    // Circumcircle through three mapped boundary points.
    double px[3], py[3];
    for (int k = 0; k < 3; ++k) {
        const auto [u, v] = to_disc_model(polar_point(center, rho, kTwoPi * k / 3.0));
        px[k] = u;
        py[k] = v;
    }
    const double ax = px[0], ay = py[0], bx = px[1], by = py[1], cx = px[2], cy = py[2];
    const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if (d == 0.0) return {ax, ay, 0.0};
    const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    DiscCircle out;
    out.cx = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    out.cy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    out.r = std::hypot(ax - out.cx, ay - out.cy);
    return out;
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return buf;
}

struct Circle {
    double cx, cy, r;
};

}  // namespace

std::string render_svg(const RunRecord& rec, const RenderOptions& opts,
                       const std::string& config_echo) {
    opts.validate();
    if (rec.rows.empty()) throw EmptyAggregate();
    const double rho = static_cast<double>(opts.radius_shown);
    const bool disc = opts.chart == RenderOptions::Chart::disc;

    std::vector<Circle> circles;
    circles.reserve(rec.rows.size());
    for (const auto& row : rec.rows) {
        if (disc) {
            const DiscCircle c = disc_circle_image(row.center, rho);
            circles.push_back({c.cx, c.cy, c.r});
        } else {
            const EuclidDisk d = hyp_ball_to_disk(row.center, rho);
            circles.push_back({d.cx, d.cy, d.r});
        }
    }

    // world box
    double x0, x1, y0, y1;
    if (disc) {
        x0 = -1.02, x1 = 1.02, y0 = -1.02, y1 = 1.02;
    } else {
        x0 = circles[0].cx - circles[0].r;
        x1 = circles[0].cx + circles[0].r;
        y0 = 0.0;
        y1 = circles[0].cy + circles[0].r;
        for (const Circle& c : circles) {
            x0 = std::min(x0, c.cx - c.r);
            x1 = std::max(x1, c.cx + c.r);
            y1 = std::max(y1, c.cy + c.r);
        }
        const double pad = 0.02 * std::max(x1 - x0, y1 - y0);
        x0 -= pad, x1 += pad, y1 += pad;
    }
    const double scale = opts.width_px / (x1 - x0);
    const int height_px = std::max(64, static_cast<int>(std::lround((y1 - y0) * scale)));
    // svg y axis points down
    const auto tx = [&](double x) { return (x - x0) * scale; };
    const auto ty = [&](double y) { return (y1 - y) * scale; };

    std::vector<int> front;
    if (opts.highlight == RenderOptions::Highlight::front) {
        std::vector<HalfPlanePoint> centers;
        centers.reserve(rec.rows.size());
        for (const auto& row : rec.rows) centers.push_back(row.center);
        front = frame_stats(centers).front_indices;
    }
    std::vector<char> in_front(rec.rows.size(), 0);
    for (int i : front) in_front[static_cast<std::size_t>(i)] = 1;

    std::string svg;
    svg.reserve(128 * circles.size() + 512);
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opts.width_px) +
           "\" height=\"" + std::to_string(height_px) + "\" viewBox=\"0 0 " +
           std::to_string(opts.width_px) + " " + std::to_string(height_px) + "\">\n";
    if (!config_echo.empty()) svg += "<!-- " + config_echo + " -->\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    if (disc) {
        svg += "<defs><clipPath id=\"disc\"><circle cx=\"" + num(tx(0.0)) + "\" cy=\"" +
               num(ty(0.0)) + "\" r=\"" + num(scale) + "\"/></clipPath></defs>\n";
        svg += "<circle cx=\"" + num(tx(0.0)) + "\" cy=\"" + num(ty(0.0)) + "\" r=\"" + num(scale) +
               "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
        svg += "<g clip-path=\"url(#disc)\">\n";
    } else {
        svg += "<g>\n";
    }
    for (std::size_t i = 0; i < circles.size(); ++i) {
        const Circle& c = circles[i];
        const char* fill = in_front[i] ? "#d62728" : "#4878a8";
        svg += "<circle cx=\"" + num(tx(c.cx)) + "\" cy=\"" + num(ty(c.cy)) + "\" r=\"" +
               num(c.r * scale) + "\" fill=\"" + fill +
               "\" fill-opacity=\"0.55\" stroke=\"#1f3552\" stroke-width=\"0.4\"/>\n";
    }
    if (opts.highlight == RenderOptions::Highlight::parent_edges) {
        std::vector<std::pair<double, double>> pos;
        pos.reserve(rec.rows.size());
        for (const auto& row : rec.rows) {
            if (disc) {
                const auto [u, v] = to_disc_model(row.center);
                pos.emplace_back(u, v);
            } else {
                pos.emplace_back(row.center.x, row.center.y);
            }
        }
        for (std::size_t i = 1; i < rec.rows.size(); ++i) {
            const int p = rec.rows[i].parent;
            if (p < 0) continue;
            svg += "<line x1=\"" + num(tx(pos[static_cast<std::size_t>(p)].first)) + "\" y1=\"" +
                   num(ty(pos[static_cast<std::size_t>(p)].second)) + "\" x2=\"" +
                   num(tx(pos[i].first)) + "\" y2=\"" + num(ty(pos[i].second)) +
                   "\" stroke=\"#202020\" stroke-width=\"0.6\"/>\n";
        }
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace hypdla
