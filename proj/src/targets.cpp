#include "foveagaze/targets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "foveagaze/errors.hpp"

namespace foveagaze {

namespace {
constexpr std::array<std::string_view, 9> kNames{"Top-left",    "Top",    "Top-right",
                                                 "Left",        "Center", "Right",
                                                 "Bottom-left", "Bottom", "Bottom-right"};
}

std::string_view label_name(TargetLabel label) { return kNames[label_index(label)]; }

std::optional<TargetLabel> parse_label(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); ++i) {
        if (kNames[i] == name) return kAllTargets[i];
    }
    return std::nullopt;
}

Grid<std::uint8_t> red_mask(const RgbImage& frame, int red_min, int dominance_min) {
    Grid<std::uint8_t> mask(frame.width(), frame.height());
    const int h = frame.height();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        const auto src = frame.row(y);
        auto dst = mask.row(y);
        for (std::size_t x = 0; x < src.size(); ++x) {
            const Rgb p = src[x];
            dst[x] = (p.r >= red_min && p.r - std::max(p.g, p.b) >= dominance_min) ? 1 : 0;
        }
    }
    return mask;
}

std::vector<Circle> hough_circles(const Grid<std::uint8_t>& mask, int r_min, int r_max, int min_votes,
                                  double min_separation) {
    if (r_min < 1 || r_min >= r_max) {
        throw Error(ErrorCode::InvalidArgument, "need 1 <= r_min_px < r_max_px");
    }
    const int w = mask.width();
    const int h = mask.height();
    auto m = [&](int x, int y) { return static_cast<int>(mask.at(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1))); };

    // Boundary pixels of the mask and their Sobel gradient.
    struct Edge {
        int x;
        int y;
        double dx;
        double dy;
    };
    std::vector<Edge> edges;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) continue;
            if (m(x - 1, y) && m(x + 1, y) && m(x, y - 1) && m(x, y + 1)) continue;
            const int gx = (m(x + 1, y - 1) + 2 * m(x + 1, y) + m(x + 1, y + 1)) -
                           (m(x - 1, y - 1) + 2 * m(x - 1, y) + m(x - 1, y + 1));
            const int gy = (m(x - 1, y + 1) + 2 * m(x, y + 1) + m(x + 1, y + 1)) -
                           (m(x - 1, y - 1) + 2 * m(x, y - 1) + m(x + 1, y - 1));
            const double norm = std::hypot(gx, gy);
            if (norm == 0.0) continue;
            edges.push_back({x, y, gx / norm, gy / norm});
        }
    }

    Grid<std::int32_t> acc(w, h);
    for (const Edge& e : edges) {
        for (int r = r_min; r <= r_max; ++r) {
            for (int sign : {1, -1}) {
                const long cx = std::lround(e.x + sign * r * e.dx);
                const long cy = std::lround(e.y + sign * r * e.dy);
                if (acc.contains(static_cast<int>(cx), static_cast<int>(cy))) {
                    ++acc.at(static_cast<int>(cx), static_cast<int>(cy));
                }
            }
        }
    }

    Grid<std::int32_t> score(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!acc.at(x, y)) continue;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (score.contains(x + dx, y + dy)) score.at(x + dx, y + dy) += acc.at(x, y);
                }
            }
        }
    }

    std::vector<Circle> candidates;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int s = score.at(x, y);
            if (s < min_votes || s == 0) continue;
            bool peak = true;
            for (int dy = -1; dy <= 1 && peak; ++dy) {
                for (int dx = -1; dx <= 1 && peak; ++dx) {
                    if ((dx || dy) && score.contains(x + dx, y + dy) && score.at(x + dx, y + dy) > s) peak = false;
                }
            }
            if (peak) candidates.push_back({{static_cast<double>(x), static_cast<double>(y)}, 0.0, s});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Circle& a, const Circle& b) { return a.votes > b.votes; });

    std::vector<Circle> accepted;
    for (const Circle& c : candidates) {
        const bool clear = std::all_of(accepted.begin(), accepted.end(), [&](const Circle& a) {
            return distance(a.center, c.center) >= min_separation;
        });
        if (clear) accepted.push_back(c);
    }

    // Radius: median distance from the center to nearby boundary pixels.
    std::vector<double> dists;
    for (Circle& c : accepted) {
        dists.clear();
        for (const Edge& e : edges) {
            const double d = std::hypot(e.x - c.center.x, e.y - c.center.y);
            if (d <= r_max + 1.5) dists.push_back(d);
        }
        if (dists.empty()) {
            c.radius = r_min;
            continue;
        }
        std::nth_element(dists.begin(), dists.begin() + dists.size() / 2, dists.end());
        c.radius = std::clamp(dists[dists.size() / 2], static_cast<double>(r_min), static_cast<double>(r_max));
    }
    return accepted;
}

namespace {

// Mask centroid within a disk, re-centered a few times so the disk settles
// on the blob rather than on the integer accumulator cell.
Point refine_center(const Grid<std::uint8_t>& mask, Point start, double radius) {
    Point c = start;
    for (int iter = 0; iter < 4; ++iter) {
        double sx = 0.0;
        double sy = 0.0;
        double n = 0.0;
        const int x0 = std::max(0, static_cast<int>(std::floor(c.x - radius)));
        const int x1 = std::min(mask.width() - 1, static_cast<int>(std::ceil(c.x + radius)));
        const int y0 = std::max(0, static_cast<int>(std::floor(c.y - radius)));
        const int y1 = std::min(mask.height() - 1, static_cast<int>(std::ceil(c.y + radius)));
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                if (mask.at(x, y) && std::hypot(x - c.x, y - c.y) <= radius) {
                    sx += x;
                    sy += y;
                    n += 1.0;
                }
            }
        }
        if (n == 0.0) break;
        c = {sx / n, sy / n};
    }
    return c;
}

}  // namespace

TargetLayout detect_targets(const RgbImage& frame, const TargetParams& params) {
    if (params.r_min_px >= params.r_max_px) {
        throw Error(ErrorCode::InvalidArgument, "r_min_px must be below r_max_px");
    }
    const auto mask = red_mask(frame, params.red_min, params.dominance_min);
    const int min_votes = params.min_votes > 0 ? params.min_votes
                                               : static_cast<int>(std::ceil(std::numbers::pi * params.r_min_px));
    const auto circles = hough_circles(mask, params.r_min_px, params.r_max_px, min_votes, 3.0 * params.r_max_px);
    if (circles.size() < 9) {
        throw Error(ErrorCode::MissingTargets, "found " + std::to_string(circles.size()) + " of 9 targets");
    }
    const int ninth = circles[8].votes;
    const auto strong = std::count_if(circles.begin(), circles.end(),
                                      [&](const Circle& c) { return c.votes >= 0.8 * ninth; });
    if (strong > 9) {
        throw Error(ErrorCode::AmbiguousTargets,
                    std::to_string(strong) + " circles within 80% of the 9th strongest vote (" +
                        std::to_string(ninth) + ")");
    }
    std::vector<Point> centers;
    std::vector<double> radii;
    for (int i = 0; i < 9; ++i) {
        centers.push_back(refine_center(mask, circles[i].center, circles[i].radius + 2.0));
        radii.push_back(circles[i].radius);
    }
    std::nth_element(radii.begin(), radii.begin() + 4, radii.end());
    return assign_grid(centers, radii[4]);
}

TargetLayout assign_grid(std::span<const Point> centers, double radius_px) {
    if (centers.size() != 9) {
        throw Error(ErrorCode::DegenerateGrid, "expected 9 points, got " + std::to_string(centers.size()));
    }
    for (std::size_t i = 0; i < centers.size(); ++i) {
        for (std::size_t j = i + 1; j < centers.size(); ++j) {
            if (distance(centers[i], centers[j]) < 1e-9) {
                throw Error(ErrorCode::DegenerateGrid, "coincident points");
            }
        }
    }
    std::vector<Point> pts(centers.begin(), centers.end());
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.y != b.y ? a.y < b.y : a.x < b.x; });

    // Row breaks must sit after the 3rd and 6th point and be strictly wider
    // than every within-row gap.
    std::array<double, 8> gaps{};
    for (int i = 0; i < 8; ++i) gaps[i] = pts[i + 1].y - pts[i].y;
    const double between = std::min(gaps[2], gaps[5]);
    for (int i = 0; i < 8; ++i) {
        if (i != 2 && i != 5 && gaps[i] >= between) {
            throw Error(ErrorCode::DegenerateGrid, "points do not split into three rows of three");
        }
    }

    TargetLayout layout;
    layout.radius_px = radius_px;
    for (int row = 0; row < 3; ++row) {
        std::sort(pts.begin() + 3 * row, pts.begin() + 3 * row + 3, [](Point a, Point b) {
            return a.x != b.x ? a.x < b.x : a.y < b.y;
        });
        for (int col = 0; col < 3; ++col) layout.centers_px[3 * row + col] = pts[3 * row + col];
    }
    const Point origin = layout.center(TargetLabel::center);
    for (std::size_t i = 0; i < 9; ++i) layout.offsets_px[i] = layout.centers_px[i] - origin;
    return layout;
}

ScaleCalibration calibrate_scale(Point p1, Point p2, double physical_cm) {
    if (!(physical_cm > 0.0)) {
        throw Error(ErrorCode::NonPositiveLength, "ruler length must be positive");
    }
    const double d = distance(p1, p2);
    if (!(d > 0.0)) {
        throw Error(ErrorCode::ZeroBaseline, "ruler endpoints coincide");
    }
    return {physical_cm / d};
}

}  // namespace foveagaze
