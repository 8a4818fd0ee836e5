#include <algorithm>
#include <cmath>

#include "foveagaze/errors.hpp"
#include "foveagaze/kernels.hpp"
#include "kernels_common.hpp"

namespace foveagaze::kernels {

WindowLayout window_layout(int width, int height, int window, int stride) {
    if (window < 3 || window % 2 == 0) {
        throw Error(ErrorCode::InvalidArgument, "window_px must be odd and >= 3, got " + std::to_string(window));
    }
    if (stride < 1) {
        throw Error(ErrorCode::InvalidArgument, "stride_px must be >= 1, got " + std::to_string(stride));
    }
    if (window > width || window > height) {
        throw Error(ErrorCode::FrameTooSmall, "window " + std::to_string(window) + " exceeds frame " +
                                                  std::to_string(width) + "x" + std::to_string(height));
    }
    return {window, stride, (width - window) / stride + 1, (height - window) / stride + 1};
}

std::vector<double> gaussian_taps(double sigma) {
    if (!(sigma > 0.0)) return {1.0};
    const int radius = static_cast<int>(std::ceil(4.0 * sigma));
    std::vector<double> taps(2 * radius + 1);
    double sum = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        taps[k + radius] = std::exp(-(k * k) / (2.0 * sigma * sigma));
        sum += taps[k + radius];
    }
    for (double& t : taps) t /= sum;
    return taps;
}

double foveation_alpha(double d, double radius, double band) {
    if (d <= radius) return 1.0;
    if (d >= radius + band) return 0.0;
    return 1.0 - (d - radius) / band;
}

namespace serial {

LumaImage luminance(const RgbImage& image) {
    LumaImage out(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            out.at(x, y) = detail::luma_milli(image.at(x, y));
        }
    }
    return out;
}

Grid<std::int32_t> laplacian(const LumaImage& luma) {
    const int w = luma.width();
    const int h = luma.height();
    Grid<std::int32_t> out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::int32_t c = luma.at(x, y);
            out.at(x, y) = luma.at(std::max(x - 1, 0), y) + luma.at(std::min(x + 1, w - 1), y) +
                           luma.at(x, std::max(y - 1, 0)) + luma.at(x, std::min(y + 1, h - 1)) - 4 * c;
        }
    }
    return out;
}

Grid<double> window_variance(const Grid<std::int32_t>& lap, int window, int stride) {
    const WindowLayout layout = window_layout(lap.width(), lap.height(), window, stride);
    Grid<double> out(layout.cols, layout.rows);
    for (int r = 0; r < layout.rows; ++r) {
        for (int c = 0; c < layout.cols; ++c) {
            std::int64_t sum = 0;
            std::int64_t sum_sq = 0;
            for (int y = r * stride; y < r * stride + window; ++y) {
                for (int x = c * stride; x < c * stride + window; ++x) {
                    const std::int64_t v = lap.at(x, y);
                    sum += v;
                    sum_sq += v * v;
                }
            }
            out.at(c, r) = detail::variance_from_sums(sum, sum_sq, window);
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
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            detail::Accum3 acc;
            for (int k = -radius; k <= radius; ++k) {
                acc.add(image.at(std::clamp(x + k, 0, w - 1), y), taps[k + radius]);
            }
            horiz.at(x, y) = acc;
        }
    }
    RgbImage out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            detail::Accum3 acc;
            for (int k = -radius; k <= radius; ++k) {
                acc.add(horiz.at(x, std::clamp(y + k, 0, h - 1)), taps[k + radius]);
            }
            out.at(x, y) = acc.to_rgb();
        }
    }
    return out;
}

RgbImage blend_foveated(const RgbImage& sharp, const RgbImage& blurred, Point gaze, double radius, double band) {
    if (sharp.width() != blurred.width() || sharp.height() != blurred.height()) {
        throw Error(ErrorCode::DimensionMismatch, "sharp and blurred images differ in size");
    }
    RgbImage out(sharp.width(), sharp.height());
    for (int y = 0; y < sharp.height(); ++y) {
        for (int x = 0; x < sharp.width(); ++x) {
            const double alpha = foveation_alpha(std::hypot(x - gaze.x, y - gaze.y), radius, band);
            out.at(x, y) = detail::mix(sharp.at(x, y), blurred.at(x, y), alpha);
        }
    }
    return out;
}

}  // namespace serial
}  // namespace foveagaze::kernels
