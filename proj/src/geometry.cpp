#include "foveagaze/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "foveagaze/errors.hpp"

namespace foveagaze {

double pixels_to_cm(double d_px, ScaleCalibration cal) {
    if (d_px < 0.0) throw Error(ErrorCode::NegativeDistance, "pixel distance is negative");
    return d_px * cal.cm_per_px;
}

double angular_error(Point gaze_px, Point target_px, const ViewingGeometry& geom) {
    if (!(geom.distance_cm > 0.0) || !(geom.cm_per_px > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "viewing distance and scale must be positive");
    }
    auto to_panel = [&](Point p) {
        return std::array<double, 3>{(p.x - geom.panel_center_px.x) * geom.cm_per_px,
                                     (p.y - geom.panel_center_px.y) * geom.cm_per_px, geom.distance_cm};
    };
    const auto u = to_panel(target_px);
    const auto v = to_panel(gaze_px);
    const double dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    const double nu = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    const double nv = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    // |u x v| keeps precision for tiny angles where acos(dot) flattens out.
    const double cx = u[1] * v[2] - u[2] * v[1];
    const double cy = u[2] * v[0] - u[0] * v[2];
    const double cz = u[0] * v[1] - u[1] * v[0];
    const double cross = std::sqrt(cx * cx + cy * cy + cz * cz);
    const double cosine = std::clamp(dot / (nu * nv), -1.0, 1.0);
    const double angle = cosine > 0.9 ? std::asin(std::min(1.0, cross / (nu * nv))) : std::acos(cosine);
    return angle * 180.0 / std::numbers::pi;
}

FovExtent fov_extent(const TargetLayout& layout, const ViewingGeometry& geom) {
    auto mean_of = [&](std::array<TargetLabel, 3> labels) {
        Point sum;
        for (TargetLabel l : labels) sum = sum + layout.center(l);
        return sum * (1.0 / 3.0);
    };
    using enum TargetLabel;
    const Point left_col = mean_of({top_left, left, bottom_left});
    const Point right_col = mean_of({top_right, right, bottom_right});
    const Point top_row = mean_of({top_left, top, top_right});
    const Point bottom_row = mean_of({bottom_left, bottom, bottom_right});
    return {angular_error(left_col, right_col, geom), angular_error(top_row, bottom_row, geom)};
}

}  // namespace foveagaze
