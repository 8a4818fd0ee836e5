#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "foveagaze/errors.hpp"
#include "foveagaze/kernels.hpp"
#include "support.hpp"

using namespace foveagaze;
namespace k = foveagaze::kernels;

namespace {

// Direct definition: variance of lap / 1000 over the window, two-pass in double.
double window_variance_oracle(const Grid<std::int32_t>& lap, int x0, int y0, int window) {
    double sum = 0.0;
    for (int y = y0; y < y0 + window; ++y)
        for (int x = x0; x < x0 + window; ++x) sum += lap.at(x, y) / 1000.0;
    const double m = sum / (window * window);
    double ss = 0.0;
    for (int y = y0; y < y0 + window; ++y)
        for (int x = x0; x < x0 + window; ++x) ss += (lap.at(x, y) / 1000.0 - m) * (lap.at(x, y) / 1000.0 - m);
    return ss / (window * window);
}

}  // namespace

TEST(Kernels, LuminanceIsIntegerWeightedSum) {
    RgbImage img(2, 1);
    img.at(0, 0) = Rgb{255, 255, 255};
    img.at(1, 0) = Rgb{10, 20, 30};
    const k::LumaImage l = k::luminance(img);
    EXPECT_EQ(l.at(0, 0), 255000);
    EXPECT_EQ(l.at(1, 0), 299 * 10 + 587 * 20 + 114 * 30);
}

TEST(Kernels, LaplacianOfSinglePixel) {
    RgbImage img(9, 9, Rgb{0, 0, 0});
    img.at(4, 4) = Rgb{255, 255, 255};
    const Grid<std::int32_t> lap = k::laplacian(k::luminance(img));
    for (int y = 0; y < 9; ++y) {
        for (int x = 0; x < 9; ++x) {
            const int d = std::abs(x - 4) + std::abs(y - 4);
            const int expected = d == 0 ? -1020 : (d == 1 ? 255 : 0);
            EXPECT_EQ(lap.at(x, y), expected * k::kLumaScale) << x << "," << y;
        }
    }
}

TEST(Kernels, SinglePixelWindowVarianceClosedForm) {
    RgbImage img(9, 9, Rgb{0, 0, 0});
    img.at(4, 4) = Rgb{255, 255, 255};
    const Grid<double> v = k::window_variance(k::laplacian(k::luminance(img)), 3, 3);
    ASSERT_EQ(v.width(), 3);
    // Center window holds -1020 and four 255s; E[x] = 0, E[x^2] = (1020^2 + 4 * 255^2) / 9.
    EXPECT_DOUBLE_EQ(v.at(1, 1), (1020.0 * 1020.0 + 4 * 255.0 * 255.0) / 9.0);
    EXPECT_DOUBLE_EQ(v.at(0, 1), 0.0);
    // Window [5,7] x [3,5] holds a single 255.
    const Grid<double> v1 = k::window_variance(k::laplacian(k::luminance(img)), 3, 1);
    EXPECT_DOUBLE_EQ(v1.at(5, 3), 255.0 * 255.0 / 9.0 - (255.0 / 9.0) * (255.0 / 9.0));
}

TEST(Kernels, ConstantImageHasZeroVariance) {
    const RgbImage img(64, 48, Rgb{128, 128, 128});
    const Grid<double> v = k::window_variance(k::laplacian(k::luminance(img)), 31, 8);
    for (double x : v.values()) EXPECT_EQ(x, 0.0);
}

TEST(Kernels, WindowVarianceMatchesDirectDefinition) {
    const RgbImage img = testing_support::random_image(71, 53, 5);
    const Grid<std::int32_t> lap = k::laplacian(k::luminance(img));
    for (auto [window, stride] : {std::pair{31, 8}, std::pair{7, 3}, std::pair{5, 5}}) {
        const Grid<double> v = k::window_variance(lap, window, stride);
        const k::WindowLayout layout = k::window_layout(71, 53, window, stride);
        ASSERT_EQ(v.width(), layout.cols);
        ASSERT_EQ(v.height(), layout.rows);
        for (int r = 0; r < layout.rows; ++r)
            for (int c = 0; c < layout.cols; ++c) {
                const double expected = window_variance_oracle(lap, c * stride, r * stride, window);
                ASSERT_NEAR(v.at(c, r), expected, 1e-9 * expected) << window << " " << c << "," << r;
            }
    }
}

TEST(Kernels, WindowLayoutValidation) {
    EXPECT_THROW_CODE(k::window_layout(20, 40, 31, 8), ErrorCode::FrameTooSmall);
    EXPECT_THROW_CODE(k::window_layout(40, 40, 0, 8), ErrorCode::InvalidArgument);
    EXPECT_THROW_CODE(k::window_layout(40, 40, 31, 0), ErrorCode::InvalidArgument);
    const k::WindowLayout l = k::window_layout(1920, 1080, 31, 8);
    EXPECT_EQ(l.cols, (1920 - 31) / 8 + 1);
    EXPECT_EQ(l.rows, (1080 - 31) / 8 + 1);
}

TEST(Kernels, GaussianTapsAreNormalizedAndSymmetric) {
    for (double sigma : {0.5, 1.0, 3.0, 6.0}) {
        const auto taps = k::gaussian_taps(sigma);
        const int r = static_cast<int>(std::ceil(4 * sigma));
        ASSERT_EQ(taps.size(), static_cast<std::size_t>(2 * r + 1));
        EXPECT_NEAR(std::accumulate(taps.begin(), taps.end(), 0.0), 1.0, 1e-12);
        for (int i = 0; i < r; ++i) EXPECT_DOUBLE_EQ(taps[i], taps[taps.size() - 1 - i]);
        EXPECT_NEAR(taps[r + 1] / taps[r], std::exp(-1.0 / (2 * sigma * sigma)), 1e-12);
    }
}

TEST(Kernels, GaussianBlurMatchesDirectConvolution) {
    const RgbImage img = testing_support::random_image(40, 30, 9);
    for (double sigma : {1.0, 2.5}) {
        EXPECT_LE(testing_support::max_channel_diff(k::gaussian_blur(img, sigma), testing_support::blur_oracle(img, sigma)), 1) << sigma;
    }
    const RgbImage board = testing_support::checkerboard(48, 36, 5);
    EXPECT_LE(testing_support::max_channel_diff(k::gaussian_blur(board, 3.0), testing_support::blur_oracle(board, 3.0)), 1);
}

TEST(Kernels, FoveationAlpha) {
    EXPECT_EQ(k::foveation_alpha(0.0, 100.0, 10.0), 1.0);
    EXPECT_EQ(k::foveation_alpha(100.0, 100.0, 10.0), 1.0);
    EXPECT_DOUBLE_EQ(k::foveation_alpha(105.0, 100.0, 10.0), 0.5);
    EXPECT_EQ(k::foveation_alpha(110.0, 100.0, 10.0), 0.0);
    EXPECT_EQ(k::foveation_alpha(500.0, 100.0, 10.0), 0.0);
    EXPECT_EQ(k::foveation_alpha(100.5, 100.0, 0.0), 0.0);
}

TEST(Kernels, SerialAndParallelAgreeExactly) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const RgbImage img = testing_support::random_image(97 + static_cast<int>(seed), 61, seed);
        const auto l1 = k::serial::luminance(img);
        EXPECT_EQ(l1, k::parallel::luminance(img));
        const auto lap = k::serial::laplacian(l1);
        EXPECT_EQ(lap, k::parallel::laplacian(l1));
        EXPECT_EQ(k::serial::window_variance(lap, 31, 8), k::parallel::window_variance(lap, 31, 8));
        EXPECT_EQ(k::serial::window_variance(lap, 9, 4), k::parallel::window_variance(lap, 9, 4));
        const auto blurred = k::serial::gaussian_blur(img, 2.0);
        EXPECT_EQ(blurred, k::parallel::gaussian_blur(img, 2.0));
        EXPECT_EQ(k::serial::blend_foveated(img, blurred, {40.5, 30}, 20, 6),
                  k::parallel::blend_foveated(img, blurred, {40.5, 30}, 20, 6));
    }
}
