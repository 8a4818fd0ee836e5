#include "foveagaze/ingest.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <exception>
#include <optional>

#include "foveagaze/errors.hpp"
#include "foveagaze/image_io.hpp"

namespace foveagaze {

double frame_timestamp_ms(int index, double frame_rate_hz) {
    return std::round(index * 1000.0 / frame_rate_hz * 100.0) / 100.0;
}

bool natural_less(std::string_view a, std::string_view b) {
    std::size_t i = 0;
    std::size_t j = 0;
    auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
    while (i < a.size() && j < b.size()) {
        if (is_digit(a[i]) && is_digit(b[j])) {
            std::size_t ei = i;
            std::size_t ej = j;
            while (ei < a.size() && is_digit(a[ei])) ++ei;
            while (ej < b.size() && is_digit(b[ej])) ++ej;
            std::string_view da = a.substr(i, ei - i);
            std::string_view db = b.substr(j, ej - j);
            const auto strip = [](std::string_view s) {
                const auto nz = s.find_first_not_of('0');
                return nz == std::string_view::npos ? std::string_view{} : s.substr(nz);
            };
            const std::string_view sa = strip(da);
            const std::string_view sb = strip(db);
            if (sa.size() != sb.size()) return sa.size() < sb.size();
            if (sa != sb) return sa < sb;
            i = ei;
            j = ej;
            continue;
        }
        if (a[i] != b[j]) return a[i] < b[j];
        ++i;
        ++j;
    }
    if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
    // Equal under numeric comparison ("f01" vs "f1"): fall back to bytes for a total order.
    return a < b;
}

std::vector<FrameFile> list_frames(const std::filesystem::path& dir, const std::string& pattern,
                                   double frame_rate_hz) {
    if (!(frame_rate_hz > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "frame_rate_hz must be positive");
    }
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) {
        throw Error(ErrorCode::EmptySequence, dir.string() + ": not a directory");
    }
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string name = entry.path().filename().string();
        if (fnmatch(pattern.c_str(), name.c_str(), 0) == 0) names.push_back(std::move(name));
    }
    if (names.empty()) {
        throw Error(ErrorCode::EmptySequence, dir.string() + ": no files match '" + pattern + "'");
    }
    std::sort(names.begin(), names.end(),
              [](const std::string& a, const std::string& b) { return natural_less(a, b); });
    std::vector<FrameFile> files;
    files.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        const int idx = static_cast<int>(i);
        files.push_back({idx, frame_timestamp_ms(idx, frame_rate_hz), dir / names[i]});
    }
    return files;
}

FrameSequence load_frames(const std::filesystem::path& dir, const std::string& pattern, double frame_rate_hz) {
    const auto files = list_frames(dir, pattern, frame_rate_hz);
    FrameSequence seq;
    seq.frame_rate_hz = frame_rate_hz;
    seq.frames.resize(files.size());
    std::vector<std::optional<Error>> failures(files.size());
    const auto n = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            seq.frames[i] = Frame{files[i].index, files[i].timestamp_ms, read_image(files[i].path)};
        } catch (const Error& e) {
            failures[i] = e;
        }
    }
    for (const auto& f : failures) {
        if (f) throw *f;
    }
    const int w = seq.frames.front().pixels.width();
    const int h = seq.frames.front().pixels.height();
    for (std::size_t i = 1; i < files.size(); ++i) {
        const auto& px = seq.frames[i].pixels;
        if (px.width() != w || px.height() != h) {
            throw Error(ErrorCode::DimensionMismatch,
                        files[i].path.string() + " is " + std::to_string(px.width()) + "x" +
                            std::to_string(px.height()) + ", expected " + std::to_string(w) + "x" +
                            std::to_string(h));
        }
    }
    return seq;
}

}  // namespace foveagaze
