#pragma once

#include <optional>
#include <span>

#include "foveagaze/image.hpp"

namespace foveagaze {

/// Local Laplacian variance sampled on a strided grid of square windows.
struct SharpnessMap {
    Grid<double> values;
    int window_px = 31;
    int stride_px = 8;
    int frame_width = 0;
    int frame_height = 0;

    /// Frame position of the center of (possibly fractional) cell (col, row).
    Point cell_center(double col, double row) const {
        const double half = (window_px - 1) / 2.0;
        return {half + col * stride_px, half + row * stride_px};
    }
    double mean() const;
    double max() const;
};

/// Throws FrameTooSmall when the window exceeds the frame.
SharpnessMap sharpness_map(const RgbImage& frame, int window_px = 31, int stride_px = 8);

enum class ThresholdMode { otsu, fraction_of_max };

struct FoveaParams {
    ThresholdMode threshold_mode = ThresholdMode::otsu;
    double fraction_of_max = 0.35;      // fixed threshold, and the Otsu fallback
    double min_separability = 0.10;     // Otsu between-class / total variance
    double min_region_frac = 0.005;
    double max_coverage = 0.90;
    // Above-threshold vs below-threshold contrast, 1 - mean_below/mean_above.
    // Lower means the frame has no blurred periphery.
    double min_contrast = 0.5;
    // Subtracted from the equal-area radius; defaults to half the window,
    // which is how far a window straddling the boundary still reads sharp.
    std::optional<double> transition_margin_px;
    bool refine_with_circle_fit = false;
};

struct FoveaEstimate {
    Point center_px;
    double radius_px = 0.0;
    double confidence = 0.0;
};

struct OtsuResult {
    double threshold = 0.0;      // values strictly above are foreground
    double separability = 0.0;   // in [0, 1]
};

/// Otsu's method over a 256-bin histogram spanning [0, max(values)].
OtsuResult otsu_threshold(std::span<const double> values);

/// Segments the sharp region of a map and returns its centroid as the gaze
/// point. Throws NoTexture, NoFoveaBoundary, RegionTooSmall.
FoveaEstimate detect_fovea(const SharpnessMap& map, const FoveaParams& params = {});

}  // namespace foveagaze
