#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "foveagaze/image.hpp"

namespace foveagaze {

struct Frame {
    int index = 0;              // 0-based ordinal within the sequence
    double timestamp_ms = 0.0;
    RgbImage pixels;
};

struct FrameSequence {
    std::vector<Frame> frames;
    double frame_rate_hz = 30.0;
};

/// A frame on disk, not yet decoded.
struct FrameFile {
    int index = 0;
    double timestamp_ms = 0.0;
    std::filesystem::path path;
};

/// i * 1000 / rate, rounded to 0.01 ms.
double frame_timestamp_ms(int index, double frame_rate_hz);

/// Numeric-aware filename order: digit runs compare by value, so "f2" < "f10".
bool natural_less(std::string_view a, std::string_view b);

/// Lists files in `dir` whose name matches the shell glob `pattern`, in
/// natural order, with timestamps assigned. Throws EmptySequence.
std::vector<FrameFile> list_frames(const std::filesystem::path& dir, const std::string& pattern,
                                   double frame_rate_hz);

/// Lists and decodes every frame. Decoding fans out over OpenMP threads.
/// Throws EmptySequence, DecodeFailure, DimensionMismatch.
FrameSequence load_frames(const std::filesystem::path& dir, const std::string& pattern = "*.png",
                          double frame_rate_hz = 30.0);

}  // namespace foveagaze
