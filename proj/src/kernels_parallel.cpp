#include <algorithm>
#include <cmath>
#include <vector>

#include "foveagaze/errors.hpp"
#include "foveagaze/kernels.hpp"
#include "kernels_common.hpp"

namespace foveagaze::kernels::parallel {

LumaImage luminance(const RgbImage& image) {
    LumaImage out(image.width(), image.height());
    const int h = image.height();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        const auto src = image.row(y);
        auto dst = out.row(y);
        for (std::size_t x = 0; x < src.size(); ++x) dst[x] = detail::luma_milli(src[x]);
    }
    return out;
}

Grid<std::int32_t> laplacian(const LumaImage& luma) {
    const int w = luma.width();
    const int h = luma.height();
    Grid<std::int32_t> out(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        const auto up = luma.row(std::max(y - 1, 0));
        const auto mid = luma.row(y);
        const auto down = luma.row(std::min(y + 1, h - 1));
        auto dst = out.row(y);
        for (int x = 0; x < w; ++x) {
            dst[x] = mid[std::max(x - 1, 0)] + mid[std::min(x + 1, w - 1)] + up[x] + down[x] - 4 * mid[x];
        }
    }
    return out;
}

// One cell row at a time: column sums over the window's rows, then a prefix
// sum along x gives every cell of the row in O(1).
Grid<double> window_variance(const Grid<std::int32_t>& lap, int window, int stride) {
    const WindowLayout layout = window_layout(lap.width(), lap.height(), window, stride);
    const int w = lap.width();
    Grid<double> out(layout.cols, layout.rows);
#pragma omp parallel
    {
        std::vector<std::int64_t> col_sum(w);
        std::vector<std::int64_t> col_sq(w);
        std::vector<std::int64_t> pre_sum(w + 1);
        std::vector<std::int64_t> pre_sq(w + 1);
#pragma omp for schedule(static)
        for (int r = 0; r < layout.rows; ++r) {
            std::fill(col_sum.begin(), col_sum.end(), 0);
            std::fill(col_sq.begin(), col_sq.end(), 0);
            for (int y = r * stride; y < r * stride + window; ++y) {
                const auto src = lap.row(y);
                for (int x = 0; x < w; ++x) {
                    const std::int64_t v = src[x];
                    col_sum[x] += v;
                    col_sq[x] += v * v;
                }
            }
            for (int x = 0; x < w; ++x) {
                pre_sum[x + 1] = pre_sum[x] + col_sum[x];
                pre_sq[x + 1] = pre_sq[x] + col_sq[x];
            }
            for (int c = 0; c < layout.cols; ++c) {
                const int x0 = c * stride;
                out.at(c, r) = detail::variance_from_sums(pre_sum[x0 + window] - pre_sum[x0],
                                                          pre_sq[x0 + window] - pre_sq[x0], window);
            }
        }
    }
    return out;
}

RgbImage gaussian_blur(const RgbImage& image, double sigma) {
    if (!(sigma > 0.0)) return image;
    const auto taps = gaussian_taps(sigma);
    const int radius = static_cast<int>(taps.size() / 2);
    const int w = image.width();
    const int h = image.height();
    Grid<detail::Accum3> horiz(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        const auto src = image.row(y);
        auto dst = horiz.row(y);
        for (int x = 0; x < w; ++x) {
            detail::Accum3 acc;
            for (int k = -radius; k <= radius; ++k) acc.add(src[std::clamp(x + k, 0, w - 1)], taps[k + radius]);
            dst[x] = acc;
        }
    }
    RgbImage out(w, h);
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        auto dst = out.row(y);
        for (int x = 0; x < w; ++x) {
            detail::Accum3 acc;
            for (int k = -radius; k <= radius; ++k) {
                acc.add(horiz.at(x, std::clamp(y + k, 0, h - 1)), taps[k + radius]);
            }
            dst[x] = acc.to_rgb();
        }
    }
    return out;
}

RgbImage blend_foveated(const RgbImage& sharp, const RgbImage& blurred, Point gaze, double radius, double band) {
    if (sharp.width() != blurred.width() || sharp.height() != blurred.height()) {
        throw Error(ErrorCode::DimensionMismatch, "sharp and blurred images differ in size");
    }
    RgbImage out(sharp.width(), sharp.height());
    const int h = sharp.height();
#pragma omp parallel for schedule(static)
    for (int y = 0; y < h; ++y) {
        const auto s = sharp.row(y);
        const auto b = blurred.row(y);
        auto dst = out.row(y);
        for (int x = 0; x < static_cast<int>(s.size()); ++x) {
            const double alpha = foveation_alpha(std::hypot(x - gaze.x, y - gaze.y), radius, band);
            dst[x] = detail::mix(s[x], b[x], alpha);
        }
    }
    return out;
}

}  // namespace foveagaze::kernels::parallel
