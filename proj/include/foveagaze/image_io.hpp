#pragma once

#include <filesystem>

#include "foveagaze/image.hpp"

namespace foveagaze {

struct ImageSize {
    int width = 0;
    int height = 0;

    friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

/// Decodes a PNG or uncompressed 24/32-bit BMP, chosen by file signature.
/// Throws DecodeFailure.
RgbImage read_image(const std::filesystem::path& path);

/// Reads only the header. Throws DecodeFailure.
ImageSize read_image_size(const std::filesystem::path& path);

/// Writes an 8-bit RGB PNG. Output bytes depend only on the pixels. Throws IoFailure.
void write_png(const std::filesystem::path& path, const RgbImage& image);

}  // namespace foveagaze
