#pragma once

#include "foveagaze/image.hpp"
#include "foveagaze/targets.hpp"

namespace foveagaze {

/// Flat, fronto-parallel panel viewed from a point on the normal through
/// `panel_center_px` at `distance_cm`.
struct ViewingGeometry {
    double distance_cm = 63.0;
    double cm_per_px = 0.0;
    Point panel_center_px;
};

struct FovExtent {
    double width_deg = 0.0;
    double height_deg = 0.0;
};

/// Throws NegativeDistance.
double pixels_to_cm(double d_px, ScaleCalibration cal);

/// Angle at the eye between the rays to `gaze_px` and `target_px`, in degrees.
/// Throws InvalidArgument for a non-positive distance or scale.
double angular_error(Point gaze_px, Point target_px, const ViewingGeometry& geom);

/// Angle subtended by the left/right column means and the top/bottom row means.
FovExtent fov_extent(const TargetLayout& layout, const ViewingGeometry& geom);

}  // namespace foveagaze
