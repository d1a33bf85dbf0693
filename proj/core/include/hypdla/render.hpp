#pragma once

#include <string>

#include "hypdla/run_record.hpp"

namespace hypdla {

struct RenderOptions {
    enum class Chart { disc, halfplane };
    enum class Highlight { none, front, parent_edges };

    Chart chart = Chart::disc;
    int width_px = 1024;
    Highlight highlight = Highlight::none;
    int radius_shown = 1;  // 1 or 2

    void validate() const;
};

/// Circle of the disc chart that is the image of B_H(center, rho).
/// Computed by circumscribing three exactly mapped boundary points; the
/// hyperbolic center does not map to the Euclidean center.
struct DiscCircle {
    double cx = 0.0, cy = 0.0, r = 0.0;
};
DiscCircle disc_circle_image(const HalfPlanePoint& center, double rho);

/// Deterministic SVG bytes: all particle balls as circles, clipped to the
/// unit circle in the disc chart.
std::string render_svg(const RunRecord& rec, const RenderOptions& opts,
                       const std::string& config_echo = {});

}  // namespace hypdla
