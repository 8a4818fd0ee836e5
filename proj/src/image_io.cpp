#include "foveagaze/image_io.hpp"

#include <png.h>

#include <array>
#include <cstring>
#include <fstream>

#include "foveagaze/errors.hpp"

namespace foveagaze {
namespace {

enum class Format { png, bmp, unknown };

Format sniff(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::array<unsigned char, 8> magic{};
    if (!in.read(reinterpret_cast<char*>(magic.data()), magic.size())) return Format::unknown;
    static constexpr std::array<unsigned char, 8> kPng{0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
    if (magic == kPng) return Format::png;
    if (magic[0] == 'B' && magic[1] == 'M') return Format::bmp;
    return Format::unknown;
}

struct PngImage {
    png_image image{};
    PngImage() {
        image.version = PNG_IMAGE_VERSION;
    }
    ~PngImage() { png_image_free(&image); }
    PngImage(const PngImage&) = delete;
    PngImage& operator=(const PngImage&) = delete;
};

std::uint32_t le32(const unsigned char* p) {
    return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}
std::uint16_t le16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

struct BmpHeader {
    int width = 0;
    int height = 0;
    bool top_down = false;
    int bits = 0;
    std::uint32_t data_offset = 0;
};

BmpHeader read_bmp_header(std::ifstream& in, const std::filesystem::path& path) {
    std::array<unsigned char, 54> h{};
    if (!in.read(reinterpret_cast<char*>(h.data()), h.size())) {
        throw Error(ErrorCode::DecodeFailure, path.string() + ": truncated BMP header");
    }
    BmpHeader out;
    out.data_offset = le32(&h[10]);
    const auto w = static_cast<std::int32_t>(le32(&h[18]));
    const auto hgt = static_cast<std::int32_t>(le32(&h[22]));
    out.bits = le16(&h[28]);
    const std::uint32_t compression = le32(&h[30]);
    if (w <= 0 || hgt == 0 || (out.bits != 24 && out.bits != 32) || (compression != 0 && compression != 3)) {
        throw Error(ErrorCode::DecodeFailure, path.string() + ": unsupported BMP variant");
    }
    out.width = w;
    out.top_down = hgt < 0;
    out.height = hgt < 0 ? -hgt : hgt;
    return out;
}

RgbImage read_bmp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    const BmpHeader h = read_bmp_header(in, path);
    const int bytes_pp = h.bits / 8;
    const std::size_t stride = (static_cast<std::size_t>(h.width) * bytes_pp + 3) & ~std::size_t{3};
    std::vector<unsigned char> line(stride);
    RgbImage img(h.width, h.height);
    in.seekg(h.data_offset);
    for (int r = 0; r < h.height; ++r) {
        if (!in.read(reinterpret_cast<char*>(line.data()), static_cast<std::streamsize>(stride))) {
            throw Error(ErrorCode::DecodeFailure, path.string() + ": truncated BMP pixel data");
        }
        const int y = h.top_down ? r : h.height - 1 - r;
        auto out = img.row(y);
        for (int x = 0; x < h.width; ++x) {
            const unsigned char* p = &line[static_cast<std::size_t>(x) * bytes_pp];
            out[x] = Rgb{p[2], p[1], p[0]};
        }
    }
    return img;
}

}  // namespace

RgbImage read_image(const std::filesystem::path& path) {
    switch (sniff(path)) {
        case Format::bmp:
            return read_bmp(path);
        case Format::unknown:
            throw Error(ErrorCode::DecodeFailure, path.string() + ": not a PNG or BMP file");
        case Format::png:
            break;
    }
    PngImage png;
    if (!png_image_begin_read_from_file(&png.image, path.c_str())) {
        throw Error(ErrorCode::DecodeFailure, path.string() + ": " + png.image.message);
    }
    png.image.format = PNG_FORMAT_RGB;
    RgbImage img(static_cast<int>(png.image.width), static_cast<int>(png.image.height));
    static_assert(sizeof(Rgb) == 3);
    if (!png_image_finish_read(&png.image, nullptr, img.values().data(), 0, nullptr)) {
        throw Error(ErrorCode::DecodeFailure, path.string() + ": " + png.image.message);
    }
    return img;
}

ImageSize read_image_size(const std::filesystem::path& path) {
    switch (sniff(path)) {
        case Format::bmp: {
            std::ifstream in(path, std::ios::binary);
            const BmpHeader h = read_bmp_header(in, path);
            return {h.width, h.height};
        }
        case Format::unknown:
            throw Error(ErrorCode::DecodeFailure, path.string() + ": not a PNG or BMP file");
        case Format::png:
            break;
    }
    PngImage png;
    if (!png_image_begin_read_from_file(&png.image, path.c_str())) {
        throw Error(ErrorCode::DecodeFailure, path.string() + ": " + png.image.message);
    }
    return {static_cast<int>(png.image.width), static_cast<int>(png.image.height)};
}

void write_png(const std::filesystem::path& path, const RgbImage& image) {
    PngImage png;
    png.image.width = static_cast<png_uint_32>(image.width());
    png.image.height = static_cast<png_uint_32>(image.height());
    png.image.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&png.image, path.c_str(), 0, image.values().data(), 0, nullptr)) {
        throw Error(ErrorCode::IoFailure, path.string() + ": " + png.image.message);
    }
}

}  // namespace foveagaze
