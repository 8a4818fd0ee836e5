#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "foveagaze/image.hpp"

namespace foveagaze {

enum class TargetLabel { top_left, top, top_right, left, center, right, bottom_left, bottom, bottom_right };

inline constexpr std::array<TargetLabel, 9> kAllTargets{
    TargetLabel::top_left, TargetLabel::top,         TargetLabel::top_right,
    TargetLabel::left,     TargetLabel::center,      TargetLabel::right,
    TargetLabel::bottom_left, TargetLabel::bottom,   TargetLabel::bottom_right,
};

/// "Top-left", "Top", ... "Bottom-right".
std::string_view label_name(TargetLabel label);
std::optional<TargetLabel> parse_label(std::string_view name);
inline std::size_t label_index(TargetLabel label) { return static_cast<std::size_t>(label); }

struct TargetLayout {
    std::array<Point, 9> centers_px{};   // indexed by label_index, row-major
    std::array<Point, 9> offsets_px{};   // centers minus the Center target
    double radius_px = 0.0;

    const Point& center(TargetLabel label) const { return centers_px[label_index(label)]; }
};

struct TargetParams {
    int red_min = 120;
    int dominance_min = 50;
    int r_min_px = 8;
    int r_max_px = 16;
    int min_votes = 0;   // 0 selects ceil(pi * r_min_px)
};

struct Circle {
    Point center;
    double radius = 0.0;
    int votes = 0;
};

struct ScaleCalibration {
    double cm_per_px = 0.0;
};

/// 1 where R >= red_min and R - max(G, B) >= dominance_min.
Grid<std::uint8_t> red_mask(const RgbImage& frame, int red_min, int dominance_min);

/// Gradient-directed Hough voting over radii [r_min, r_max] on the mask's
/// boundary pixels. Peaks are the 3x3 vote sums; returns every peak with at
/// least `min_votes` that survives non-maximum suppression at
/// `min_separation`, strongest first. Centers are integer accumulator cells.
std::vector<Circle> hough_circles(const Grid<std::uint8_t>& mask, int r_min, int r_max, int min_votes,
                                  double min_separation);

/// Locates and labels the nine targets. Throws MissingTargets,
/// AmbiguousTargets, DegenerateGrid, InvalidArgument.
TargetLayout detect_targets(const RgbImage& frame, const TargetParams& params = {});

/// Labels nine points row-major by splitting on the two largest y gaps.
/// Independent of input order. Throws DegenerateGrid.
TargetLayout assign_grid(std::span<const Point> centers, double radius_px = 0.0);

/// Throws ZeroBaseline, NonPositiveLength.
ScaleCalibration calibrate_scale(Point p1, Point p2, double physical_cm);

}  // namespace foveagaze
