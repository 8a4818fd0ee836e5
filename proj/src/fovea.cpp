#include "foveagaze/fovea.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "foveagaze/errors.hpp"
#include "foveagaze/kernels.hpp"

namespace foveagaze {

double SharpnessMap::mean() const {
    const auto v = values.values();
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double SharpnessMap::max() const {
    const auto v = values.values();
    return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

SharpnessMap sharpness_map(const RgbImage& frame, int window_px, int stride_px) {
    kernels::window_layout(frame.width(), frame.height(), window_px, stride_px);
    const auto lap = kernels::laplacian(kernels::luminance(frame));
    return SharpnessMap{kernels::window_variance(lap, window_px, stride_px), window_px, stride_px, frame.width(),
                        frame.height()};
}

OtsuResult otsu_threshold(std::span<const double> values) {
    constexpr int kBins = 256;
    if (values.empty()) return {};
    const double vmax = *std::max_element(values.begin(), values.end());
    if (!(vmax > 0.0)) return {0.0, 0.0};
    const double bin_width = vmax / kBins;
    std::array<double, kBins> count{};
    std::array<double, kBins> sum{};
    for (double v : values) {
        const int b = std::min(kBins - 1, static_cast<int>(v / bin_width));
        count[b] += 1.0;
        sum[b] += v;
    }
    const double n = static_cast<double>(values.size());
    const double total_sum = std::accumulate(sum.begin(), sum.end(), 0.0);
    const double mu = total_sum / n;
    double total_var = 0.0;
    for (double v : values) total_var += (v - mu) * (v - mu);
    total_var /= n;

    double best = -1.0;
    int best_bin = 0;
    double w0 = 0.0;
    double s0 = 0.0;
    for (int k = 0; k < kBins - 1; ++k) {
        w0 += count[k];
        s0 += sum[k];
        const double w1 = n - w0;
        if (w0 == 0.0 || w1 == 0.0) continue;
        const double m0 = s0 / w0;
        const double m1 = (total_sum - s0) / w1;
        const double between = (w0 / n) * (w1 / n) * (m1 - m0) * (m1 - m0);
        if (between > best) {
            best = between;
            best_bin = k;
        }
    }
    if (best < 0.0) return {0.0, 0.0};
    return {(best_bin + 1) * bin_width, total_var > 0.0 ? std::min(1.0, best / total_var) : 0.0};
}

namespace {

struct Component {
    std::vector<std::pair<int, int>> cells;
    double cx = 0.0;
    double cy = 0.0;
};

std::vector<Component> connected_components(const Grid<std::uint8_t>& mask) {
    Grid<std::uint8_t> seen(mask.width(), mask.height());
    std::vector<Component> out;
    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask.at(x, y) || seen.at(x, y)) continue;
            Component comp;
            stack.assign(1, {x, y});
            seen.at(x, y) = 1;
            while (!stack.empty()) {
                const auto [cx, cy] = stack.back();
                stack.pop_back();
                comp.cells.emplace_back(cx, cy);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = cx + dx;
                        const int ny = cy + dy;
                        if (mask.contains(nx, ny) && mask.at(nx, ny) && !seen.at(nx, ny)) {
                            seen.at(nx, ny) = 1;
                            stack.emplace_back(nx, ny);
                        }
                    }
                }
            }
            double sx = 0.0;
            double sy = 0.0;
            for (const auto& [px, py] : comp.cells) {
                sx += px;
                sy += py;
            }
            comp.cx = sx / static_cast<double>(comp.cells.size());
            comp.cy = sy / static_cast<double>(comp.cells.size());
            out.push_back(std::move(comp));
        }
    }
    return out;
}

// Algebraic (Kasa) circle fit. Returns nullopt for degenerate point sets.
std::optional<std::pair<Point, double>> fit_circle(const std::vector<Point>& pts) {
    if (pts.size() < 3) return std::nullopt;
    // Normal equations for x^2 + y^2 + D x + E y + F = 0.
    double a[3][4] = {};
    for (const Point& p : pts) {
        const double row[3] = {p.x, p.y, 1.0};
        const double rhs = -(p.x * p.x + p.y * p.y);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) a[i][j] += row[i] * row[j];
            a[i][3] += row[i] * rhs;
        }
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        }
        if (std::abs(a[piv][col]) < 1e-12) return std::nullopt;
        for (int j = 0; j < 4; ++j) std::swap(a[col][j], a[piv][j]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (int j = col; j < 4; ++j) a[r][j] -= f * a[col][j];
        }
    }
    const double d = a[0][3] / a[0][0];
    const double e = a[1][3] / a[1][1];
    const double f = a[2][3] / a[2][2];
    const Point c{-d / 2.0, -e / 2.0};
    const double r2 = c.x * c.x + c.y * c.y - f;
    if (!(r2 > 0.0)) return std::nullopt;
    return std::make_pair(c, std::sqrt(r2));
}

}  // namespace

FoveaEstimate detect_fovea(const SharpnessMap& map, const FoveaParams& params) {
    const auto values = map.values.values();
    if (values.empty() || !(map.max() > 0.0)) {
        throw Error(ErrorCode::NoTexture, "sharpness map is identically zero");
    }
    double threshold = params.fraction_of_max * map.max();
    if (params.threshold_mode == ThresholdMode::otsu) {
        const OtsuResult otsu = otsu_threshold(values);
        if (otsu.separability >= params.min_separability) threshold = otsu.threshold;
    }

    Grid<std::uint8_t> mask(map.values.width(), map.values.height());
    std::size_t above = 0;
    double sum_above = 0.0;
    double sum_below = 0.0;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            const double v = map.values.at(x, y);
            if (v > threshold) {
                mask.at(x, y) = 1;
                ++above;
                sum_above += v;
            } else {
                sum_below += v;
            }
        }
    }
    const double total = static_cast<double>(values.size());
    if (above == 0) {
        throw Error(ErrorCode::RegionTooSmall, "no cell above threshold");
    }
    const double coverage = static_cast<double>(above) / total;
    if (coverage > params.max_coverage) {
        throw Error(ErrorCode::NoFoveaBoundary,
                    "sharp region covers " + std::to_string(coverage * 100.0) + "% of the frame");
    }
    const double class_contrast = 1.0 - (sum_below / (total - static_cast<double>(above))) /
                                            (sum_above / static_cast<double>(above));
    if (class_contrast < params.min_contrast) {
        throw Error(ErrorCode::NoFoveaBoundary,
                    "sharp/blurred contrast " + std::to_string(class_contrast) + " below minimum");
    }

    auto comps = connected_components(mask);
    const auto best = std::min_element(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        if (a.cells.size() != b.cells.size()) return a.cells.size() > b.cells.size();
        if (a.cy != b.cy) return a.cy < b.cy;
        return a.cx < b.cx;
    });
    const double area_cells = static_cast<double>(best->cells.size());
    if (area_cells < params.min_region_frac * total) {
        throw Error(ErrorCode::RegionTooSmall, "largest sharp region has " +
                                                   std::to_string(best->cells.size()) + " of " +
                                                   std::to_string(values.size()) + " cells");
    }

    Grid<std::uint8_t> in_region(mask.width(), mask.height());
    double sum_in = 0.0;
    for (const auto& [x, y] : best->cells) {
        in_region.at(x, y) = 1;
        sum_in += map.values.at(x, y);
    }
    const double sum_out = std::accumulate(values.begin(), values.end(), 0.0) - sum_in;
    const double n_out = total - area_cells;
    const double mean_in = sum_in / area_cells;
    const double mean_out = n_out > 0.0 ? sum_out / n_out : 0.0;

    FoveaEstimate est;
    est.center_px = map.cell_center(best->cx, best->cy);
    const double stride = map.stride_px;
    const double margin = params.transition_margin_px.value_or((map.window_px - 1) / 2.0);
    est.radius_px = std::sqrt(area_cells * stride * stride / std::numbers::pi) - margin;

    if (params.refine_with_circle_fit) {
        std::vector<Point> boundary;
        for (const auto& [x, y] : best->cells) {
            if (x == 0 || y == 0 || x == mask.width() - 1 || y == mask.height() - 1) continue;
            bool edge = false;
            for (int d = 0; d < 4 && !edge; ++d) {
                static constexpr int kDx[4] = {1, -1, 0, 0};
                static constexpr int kDy[4] = {0, 0, 1, -1};
                edge = !in_region.at(x + kDx[d], y + kDy[d]);
            }
            if (edge) boundary.push_back(map.cell_center(x, y));
        }
        if (const auto fit = fit_circle(boundary)) {
            est.center_px = fit->first;
            est.radius_px = fit->second - margin;
        }
    }
    est.center_px.x = std::clamp(est.center_px.x, 0.0, static_cast<double>(map.frame_width - 1));
    est.center_px.y = std::clamp(est.center_px.y, 0.0, static_cast<double>(map.frame_height - 1));
    est.radius_px = std::max(est.radius_px, stride / 2.0);
    est.confidence = std::clamp(1.0 - mean_out / mean_in, 0.0, 1.0);
    return est;
}

}  // namespace foveagaze
