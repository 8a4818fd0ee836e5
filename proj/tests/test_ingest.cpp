#include <gtest/gtest.h>

#include <algorithm>
#include <cstring>
#include <vector>

#include "foveagaze/errors.hpp"
#include "foveagaze/image_io.hpp"
#include "foveagaze/ingest.hpp"
#include "support.hpp"

using namespace foveagaze;
using testing_support::TempDir;

namespace {

void write_bmp24(const std::filesystem::path& p, const RgbImage& img) {
    const int w = img.width();
    const int h = img.height();
    const int stride = (3 * w + 3) / 4 * 4;
    std::vector<unsigned char> buf(54 + static_cast<std::size_t>(stride) * h, 0);
    auto put32 = [&](std::size_t off, std::uint32_t v) { std::memcpy(&buf[off], &v, 4); };
    auto put16 = [&](std::size_t off, std::uint16_t v) { std::memcpy(&buf[off], &v, 2); };
    buf[0] = 'B';
    buf[1] = 'M';
    put32(2, static_cast<std::uint32_t>(buf.size()));
    put32(10, 54);
    put32(14, 40);
    put32(18, static_cast<std::uint32_t>(w));
    put32(22, static_cast<std::uint32_t>(h));
    put16(26, 1);
    put16(28, 24);
    for (int y = 0; y < h; ++y) {
        unsigned char* row = &buf[54 + static_cast<std::size_t>(h - 1 - y) * stride];
        for (int x = 0; x < w; ++x) {
            const Rgb p = img.at(x, y);
            row[3 * x] = p.b;
            row[3 * x + 1] = p.g;
            row[3 * x + 2] = p.r;
        }
    }
    testing_support::spit(p, std::string(buf.begin(), buf.end()));
}

}  // namespace

TEST(Ingest, ThreeFramesAt30HzHaveExpectedTimestamps) {
    TempDir dir;
    for (int i = 0; i < 3; ++i) write_png(dir / ("f00" + std::to_string(i) + ".png"), RgbImage(8, 6, Rgb{1, 2, 3}));
    const FrameSequence seq = load_frames(dir.path(), "*.png", 30.0);
    ASSERT_EQ(seq.frames.size(), 3u);
    EXPECT_DOUBLE_EQ(seq.frames[0].timestamp_ms, 0.0);
    EXPECT_DOUBLE_EQ(seq.frames[1].timestamp_ms, 33.33);
    EXPECT_DOUBLE_EQ(seq.frames[2].timestamp_ms, 66.67);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(seq.frames[i].index, i);
}

TEST(Ingest, EmptyDirectoryIsEmptySequence) {
    TempDir dir;
    EXPECT_THROW_CODE(load_frames(dir.path()), ErrorCode::EmptySequence);
}

TEST(Ingest, NoMatchingFilesIsEmptySequence) {
    TempDir dir;
    write_png(dir / "a.png", RgbImage(4, 4));
    EXPECT_THROW_CODE(list_frames(dir.path(), "*.bmp", 30.0), ErrorCode::EmptySequence);
}

TEST(Ingest, MixedDimensionsAreRejected) {
    TempDir dir;
    write_png(dir / "f1.png", RgbImage(1920, 1080));
    write_png(dir / "f2.png", RgbImage(1280, 720));
    EXPECT_THROW_CODE(load_frames(dir.path()), ErrorCode::DimensionMismatch);
}

TEST(Ingest, CorruptFileIsDecodeFailure) {
    TempDir dir;
    testing_support::spit(dir / "f1.png", "\x89PNG\r\n\x1a\nnot really");
    EXPECT_THROW_CODE(load_frames(dir.path()), ErrorCode::DecodeFailure);
    testing_support::spit(dir / "f1.png", "plain text");
    EXPECT_THROW_CODE(read_image(dir / "f1.png"), ErrorCode::DecodeFailure);
}

TEST(Ingest, NaturalOrderComparesDigitRunsByValue) {
    EXPECT_TRUE(natural_less("f2.png", "f10.png"));
    EXPECT_FALSE(natural_less("f10.png", "f2.png"));
    EXPECT_TRUE(natural_less("a9", "b1"));
    EXPECT_TRUE(natural_less("f002", "f10"));
    EXPECT_FALSE(natural_less("f1", "f1"));

    std::vector<std::string> names{"f10.png", "f2.png", "f1.png", "f100.png", "f20.png"};
    std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) { return natural_less(a, b); });
    EXPECT_EQ(names, (std::vector<std::string>{"f1.png", "f2.png", "f10.png", "f20.png", "f100.png"}));
}

TEST(Ingest, ListingFollowsNaturalOrder) {
    TempDir dir;
    for (int i : {10, 2, 1}) {
        RgbImage img(4, 4, Rgb{static_cast<std::uint8_t>(i), 0, 0});
        write_png(dir / ("f" + std::to_string(i) + ".png"), img);
    }
    const FrameSequence seq = load_frames(dir.path());
    ASSERT_EQ(seq.frames.size(), 3u);
    EXPECT_EQ(seq.frames[0].pixels.at(0, 0).r, 1);
    EXPECT_EQ(seq.frames[1].pixels.at(0, 0).r, 2);
    EXPECT_EQ(seq.frames[2].pixels.at(0, 0).r, 10);
}

TEST(Ingest, TimestampSpacingMatchesFrameRate) {
    for (double rate : {24.0, 29.97, 30.0, 60.0, 90.0}) {
        for (int i = 0; i < 5000; ++i) {
            const double dt = frame_timestamp_ms(i + 1, rate) - frame_timestamp_ms(i, rate);
            ASSERT_NEAR(dt, 1000.0 / rate, 0.01 + 1e-9) << "rate " << rate << " frame " << i;
        }
    }
}

TEST(Ingest, LoadingIsDeterministic) {
    TempDir dir;
    for (int i = 0; i < 4; ++i) write_png(dir / ("f" + std::to_string(i) + ".png"), testing_support::random_image(17, 9, i));
    const FrameSequence a = load_frames(dir.path());
    const FrameSequence b = load_frames(dir.path());
    ASSERT_EQ(a.frames.size(), b.frames.size());
    for (std::size_t i = 0; i < a.frames.size(); ++i) {
        EXPECT_EQ(a.frames[i].pixels, b.frames[i].pixels);
        EXPECT_EQ(a.frames[i].timestamp_ms, b.frames[i].timestamp_ms);
    }
}

TEST(ImageIo, PngRoundTripIsLossless) {
    TempDir dir;
    const RgbImage img = testing_support::random_image(33, 21, 7);
    write_png(dir / "x.png", img);
    EXPECT_EQ(read_image(dir / "x.png"), img);
    EXPECT_EQ(read_image_size(dir / "x.png"), (ImageSize{33, 21}));
}

TEST(ImageIo, BmpMatchesPng) {
    TempDir dir;
    const RgbImage img = testing_support::random_image(13, 7, 3);  // odd width exercises row padding
    write_bmp24(dir / "x.bmp", img);
    EXPECT_EQ(read_image(dir / "x.bmp"), img);
    EXPECT_EQ(read_image_size(dir / "x.bmp"), (ImageSize{13, 7}));
}

TEST(ImageIo, PngBytesDependOnlyOnPixels) {
    TempDir dir;
    const RgbImage img = testing_support::random_image(20, 20, 11);
    write_png(dir / "a.png", img);
    write_png(dir / "b.png", img);
    EXPECT_EQ(testing_support::slurp(dir / "a.png"), testing_support::slurp(dir / "b.png"));
}
