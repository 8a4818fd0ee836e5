#pragma once

// Pixel kernels in two flavours: `serial` is the straightforward reference
// kept for tests and benchmarks, `parallel` is the OpenMP version used by
// the pipeline. Both produce bit-identical results.

#include <cstdint>
#include <vector>

#include "foveagaze/image.hpp"

namespace foveagaze::kernels {

/// Luminance 0.299R + 0.587G + 0.114B scaled by 1000, which keeps it integral.
using LumaImage = Grid<std::int32_t>;
inline constexpr int kLumaScale = 1000;

/// Placement of variance windows: cell (c, r) covers pixels
/// [c*stride, c*stride + window) x [r*stride, r*stride + window).
struct WindowLayout {
    int window = 0;
    int stride = 0;
    int cols = 0;
    int rows = 0;
};

/// Throws FrameTooSmall if the window does not fit, InvalidArgument on bad window/stride.
WindowLayout window_layout(int width, int height, int window, int stride);

/// Normalized taps exp(-k^2 / 2 sigma^2) for k in [-ceil(4 sigma), ceil(4 sigma)].
std::vector<double> gaussian_taps(double sigma);

/// Blend weight of the sharp image at distance `d` from the gaze point.
double foveation_alpha(double d, double radius, double band);

namespace serial {

LumaImage luminance(const RgbImage& image);
/// 4-neighbour Laplacian with replicated borders, in luminance x 1000 units.
Grid<std::int32_t> laplacian(const LumaImage& luma);
/// Per-window variance of `lap`, converted back to luminance^2 units.
Grid<double> window_variance(const Grid<std::int32_t>& lap, int window, int stride);
RgbImage gaussian_blur(const RgbImage& image, double sigma);
RgbImage blend_foveated(const RgbImage& sharp, const RgbImage& blurred, Point gaze, double radius, double band);

}  // namespace serial

namespace parallel {

LumaImage luminance(const RgbImage& image);
Grid<std::int32_t> laplacian(const LumaImage& luma);
Grid<double> window_variance(const Grid<std::int32_t>& lap, int window, int stride);
RgbImage gaussian_blur(const RgbImage& image, double sigma);
RgbImage blend_foveated(const RgbImage& sharp, const RgbImage& blurred, Point gaze, double radius, double band);

}  // namespace parallel

using parallel::blend_foveated;
using parallel::gaussian_blur;
using parallel::laplacian;
using parallel::luminance;
using parallel::window_variance;

}  // namespace foveagaze::kernels
