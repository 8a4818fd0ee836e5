#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include "foveagaze/image.hpp"
#include "foveagaze/synth.hpp"

namespace testing_support {

using foveagaze::Point;
using foveagaze::Rgb;
using foveagaze::RgbImage;

inline std::filesystem::path data_dir() { return FOVEAGAZE_DATA_DIR; }

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& suffix = "") {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        std::string name = "foveagaze_";
        if (info) name += std::string(info->test_suite_name()) + "_" + info->name();
        name += suffix;
        for (char& c : name) {
            if (c == '/') c = '_';
        }
        path_ = std::filesystem::temp_directory_path() / name;
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& s) const { return path_ / s; }

private:
    std::filesystem::path path_;
};

inline RgbImage checkerboard(int w, int h, int cell, Rgb a = {32, 32, 32}, Rgb b = {224, 224, 224}) {
    RgbImage img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) img.at(x, y) = ((x / cell + y / cell) % 2 == 0) ? a : b;
    }
    return img;
}

inline RgbImage random_image(int w, int h, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(0, 255);
    RgbImage img(w, h);
    for (Rgb& p : img.values()) p = Rgb{static_cast<std::uint8_t>(d(rng)), static_cast<std::uint8_t>(d(rng)),
                                        static_cast<std::uint8_t>(d(rng))};
    return img;
}

/// Hard-edged disk: pixel centers within r of c.
inline void fill_disk(RgbImage& img, Point c, double r, Rgb color) {
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (std::hypot(x - c.x, y - c.y) <= r) img.at(x, y) = color;
        }
    }
}

/// Small panel used where the full-HD default would only cost time.
inline foveagaze::PanelSpec small_panel() {
    foveagaze::PanelSpec s;
    s.width = 960;
    s.height = 540;
    s.checker_px = 10;
    s.grid_center_px = {479.5, 269.5};
    s.spacing_x_px = 300;
    s.spacing_y_px = 150;
    s.ruler_p1 = {179.5, 500};
    s.ruler_p2 = {779.5, 500};
    s.ruler_cm = 21.4;
    return s;
}

// Non-separable 2-D Gaussian convolution with replicated borders.
inline RgbImage blur_oracle(const RgbImage& img, double sigma) {
    const int r = static_cast<int>(std::ceil(4 * sigma));
    std::vector<double> w;
    double total = 0.0;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            w.push_back(std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma)));
            total += w.back();
        }
    RgbImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double acc[3] = {0, 0, 0};
            std::size_t i = 0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx, ++i) {
                    const Rgb p = img.at(std::clamp(x + dx, 0, img.width() - 1), std::clamp(y + dy, 0, img.height() - 1));
                    acc[0] += w[i] * p.r;
                    acc[1] += w[i] * p.g;
                    acc[2] += w[i] * p.b;
                }
            out.at(x, y) = Rgb{static_cast<std::uint8_t>(std::lround(acc[0] / total)),
                               static_cast<std::uint8_t>(std::lround(acc[1] / total)),
                               static_cast<std::uint8_t>(std::lround(acc[2] / total))};
        }
    return out;
}

inline int max_channel_diff(const RgbImage& a, const RgbImage& b) {
    int worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Rgb p = a.values()[i];
        const Rgb q = b.values()[i];
        worst = std::max({worst, std::abs(p.r - q.r), std::abs(p.g - q.g), std::abs(p.b - q.b)});
    }
    return worst;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void spit(const std::filesystem::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    out << s;
}

}  // namespace testing_support

#define EXPECT_THROW_CODE(stmt, expected_code)                                          \
    do {                                                                                \
        try {                                                                           \
            stmt;                                                                       \
            ADD_FAILURE() << "expected " << foveagaze::to_string(expected_code);        \
        } catch (const foveagaze::Error& e_) {                                          \
            EXPECT_EQ(e_.code(), expected_code) << e_.what();                           \
        }                                                                               \
    } while (0)
