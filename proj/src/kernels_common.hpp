#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "foveagaze/image.hpp"

namespace foveagaze::kernels::detail {

inline std::int32_t luma_milli(Rgb p) { return 299 * p.r + 587 * p.g + 114 * p.b; }

// Exact in integers; the only rounding is the final division.
inline double variance_from_sums(std::int64_t sum, std::int64_t sum_sq, int window) {
    const std::int64_t n = static_cast<std::int64_t>(window) * window;
    const std::int64_t num = n * sum_sq - sum * sum;
    return static_cast<double>(num) / (static_cast<double>(n) * static_cast<double>(n) * 1.0e6);
}

inline std::uint8_t to_u8(double v) { return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L)); }

struct Accum3 {
    double r = 0.0;
    double g = 0.0;
    double b = 0.0;

    void add(Rgb p, double w) {
        r += w * p.r;
        g += w * p.g;
        b += w * p.b;
    }
    void add(const Accum3& p, double w) {
        r += w * p.r;
        g += w * p.g;
        b += w * p.b;
    }
    Rgb to_rgb() const { return {to_u8(r), to_u8(g), to_u8(b)}; }
};

inline Rgb mix(Rgb sharp, Rgb blurred, double alpha) {
    if (alpha >= 1.0) return sharp;
    if (alpha <= 0.0) return blurred;
    return {to_u8(alpha * sharp.r + (1.0 - alpha) * blurred.r), to_u8(alpha * sharp.g + (1.0 - alpha) * blurred.g),
            to_u8(alpha * sharp.b + (1.0 - alpha) * blurred.b)};
}

}  // namespace foveagaze::kernels::detail
