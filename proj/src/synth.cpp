#include "foveagaze/synth.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>

#include "csv_util.hpp"
#include "foveagaze/errors.hpp"
#include "foveagaze/image_io.hpp"
#include "foveagaze/kernels.hpp"

namespace foveagaze {

std::array<Point, 9> target_centers(const PanelSpec& spec) {
    std::array<Point, 9> out{};
    for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 3; ++col) {
            out[3 * row + col] = {spec.grid_center_px.x + (col - 1) * spec.spacing_x_px,
                                  spec.grid_center_px.y + (row - 1) * spec.spacing_y_px};
        }
    }
    return out;
}

void validate(const PanelSpec& spec) {
    if (spec.width < 1 || spec.height < 1 || spec.checker_px < 1) {
        throw Error(ErrorCode::SpecOverflow, "frame size and checker size must be positive");
    }
    if (!(spec.target_radius_px > 0.0)) throw Error(ErrorCode::SpecOverflow, "target radius must be positive");
    if (!(spec.target_radius_px < 0.5 * std::min(spec.spacing_x_px, spec.spacing_y_px))) {
        throw Error(ErrorCode::SpecOverflow, "target radius must be below half the grid spacing");
    }
    const double r = spec.target_radius_px;
    for (const Point& c : target_centers(spec)) {
        if (c.x - r < 0.0 || c.y - r < 0.0 || c.x + r > spec.width - 1 || c.y + r > spec.height - 1) {
            throw Error(ErrorCode::SpecOverflow, "target grid exceeds the frame");
        }
    }
}

SessionScript default_script(const PanelSpec& spec, int frames_per_dwell, double jitter_sd_px) {
    using enum TargetLabel;
    static constexpr std::array<TargetLabel, 9> kOrder{center, top_left,     top,    top_right,  right,
                                                       bottom_right, bottom, bottom_left, left};
    const auto centers = target_centers(spec);
    SessionScript script;
    for (TargetLabel l : kOrder) {
        script.dwells.push_back({centers[label_index(l)], frames_per_dwell, jitter_sd_px, std::string(label_name(l))});
    }
    return script;
}

RgbImage render_panel(const PanelSpec& spec) {
    validate(spec);
    RgbImage img(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            img.at(x, y) = ((x / spec.checker_px + y / spec.checker_px) % 2 == 0) ? spec.color_a : spec.color_b;
        }
    }
    constexpr int kSub = 4;
    const double r = spec.target_radius_px;
    for (const Point& c : target_centers(spec)) {
        const int x0 = std::max(0, static_cast<int>(std::floor(c.x - r - 1)));
        const int x1 = std::min(spec.width - 1, static_cast<int>(std::ceil(c.x + r + 1)));
        const int y0 = std::max(0, static_cast<int>(std::floor(c.y - r - 1)));
        const int y1 = std::min(spec.height - 1, static_cast<int>(std::ceil(c.y + r + 1)));
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                int inside = 0;
                for (int sy = 0; sy < kSub; ++sy) {
                    for (int sx = 0; sx < kSub; ++sx) {
                        const double px = x + (sx + 0.5) / kSub - 0.5;
                        const double py = y + (sy + 0.5) / kSub - 0.5;
                        if ((px - c.x) * (px - c.x) + (py - c.y) * (py - c.y) <= r * r) ++inside;
                    }
                }
                if (inside == 0) continue;
                const double a = static_cast<double>(inside) / (kSub * kSub);
                const Rgb bg = img.at(x, y);
                auto blend = [a](std::uint8_t fg, std::uint8_t b) {
                    return static_cast<std::uint8_t>(std::lround(a * fg + (1.0 - a) * b));
                };
                img.at(x, y) = {blend(spec.target_color.r, bg.r), blend(spec.target_color.g, bg.g),
                                blend(spec.target_color.b, bg.b)};
            }
        }
    }
    return img;
}

RgbImage apply_foveation(const RgbImage& frame, Point gaze_px, double fovea_radius_px, double blur_sigma,
                         double transition_band_px) {
    if (blur_sigma < 0.0) throw Error(ErrorCode::InvalidArgument, "blur sigma must be >= 0");
    if (blur_sigma == 0.0) return frame;
    return kernels::blend_foveated(frame, kernels::gaussian_blur(frame, blur_sigma), gaze_px, fovea_radius_px,
                                   transition_band_px);
}

std::vector<TruthRow> session_truth(const SessionScript& script) {
    // Box-Muller over mt19937_64 so the stream is identical on every standard library.
    std::mt19937_64 gen(script.seed);
    auto uniform = [&gen] { return ((gen() >> 11) + 0.5) * 0x1.0p-53; };
    auto normal_pair = [&] {
        const double u1 = uniform();
        const double u2 = uniform();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        return Point{mag * std::cos(2.0 * std::numbers::pi * u2), mag * std::sin(2.0 * std::numbers::pi * u2)};
    };
    std::vector<TruthRow> rows;
    int frame = 0;
    for (const Dwell& d : script.dwells) {
        if (d.n_frames < 1) throw Error(ErrorCode::InvalidArgument, "dwell needs at least one frame");
        if (d.jitter_sd_px < 0.0) throw Error(ErrorCode::InvalidArgument, "jitter SD must be >= 0");
        for (int i = 0; i < d.n_frames; ++i) {
            Point g = d.gaze_px;
            if (d.jitter_sd_px > 0.0) g = g + normal_pair() * d.jitter_sd_px;
            rows.push_back({frame++, g, d.label});
        }
    }
    return rows;
}

SessionManifest generate_session(const PanelSpec& spec, const SessionScript& script,
                                 const std::filesystem::path& out_dir) {
    if (!(script.blur_sigma >= 0.0) || !(script.fovea_radius_px > 0.0) || !(script.transition_band_px >= 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "invalid foveation parameters");
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, out_dir.string() + ": " + ec.message());

    SessionManifest manifest;
    manifest.rows = session_truth(script);
    manifest.target_centers = target_centers(spec);
    const RgbImage panel = render_panel(spec);
    const RgbImage blurred = kernels::gaussian_blur(panel, script.blur_sigma);

    const auto n = static_cast<std::ptrdiff_t>(manifest.rows.size());
    std::vector<std::optional<Error>> failures(manifest.rows.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const TruthRow& row = manifest.rows[i];
        try {
            const RgbImage frame = script.blur_sigma > 0.0
                                       ? kernels::serial::blend_foveated(panel, blurred, row.gaze_px,
                                                                         script.fovea_radius_px,
                                                                         script.transition_band_px)
                                       : panel;
            write_png(out_dir / fmt::format("frame_{:05d}.png", row.frame), frame);
        } catch (const Error& e) {
            failures[i] = e;
        }
    }
    for (const auto& f : failures) {
        if (f) throw *f;
    }

    std::ofstream truth(out_dir / "truth.csv", std::ios::binary);
    if (!truth) throw Error(ErrorCode::IoFailure, (out_dir / "truth.csv").string() + ": cannot write");
    truth << "frame,gaze_x,gaze_y,target_label\n";
    for (const TruthRow& r : manifest.rows) {
        truth << fmt::format("{},{:.6f},{:.6f},{}\n", r.frame, r.gaze_px.x, r.gaze_px.y, r.target_label);
    }
    if (!truth) throw Error(ErrorCode::IoFailure, (out_dir / "truth.csv").string() + ": write failed");
    return manifest;
}

std::vector<TruthRow> read_truth_csv(const std::filesystem::path& path) {
    const auto t = csv::read_file(path);
    if (t.header != std::vector<std::string>{"frame", "gaze_x", "gaze_y", "target_label"}) {
        throw Error(ErrorCode::ConfigError, path.string() + ": unexpected truth header");
    }
    std::vector<TruthRow> rows;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        const auto frame = r.size() == 4 ? csv::parse_int(r[0]) : std::nullopt;
        const auto x = r.size() == 4 ? csv::parse_double(r[1]) : std::nullopt;
        const auto y = r.size() == 4 ? csv::parse_double(r[2]) : std::nullopt;
        if (!frame || !x || !y) {
            throw Error(ErrorCode::ConfigError, path.string() + " row " + std::to_string(i + 1) + ": malformed");
        }
        rows.push_back({*frame, {*x, *y}, r[3]});
    }
    return rows;
}

}  // namespace foveagaze
