#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "foveagaze/image.hpp"
#include "foveagaze/targets.hpp"

namespace foveagaze {

/// A checkerboard panel with a 3x3 grid of red fixation disks. The defaults
/// put disk centers on checker corners and span about 34 x 18 degrees at
/// 63 cm with the default ruler.
struct PanelSpec {
    int width = 1920;
    int height = 1080;
    int checker_px = 20;
    Rgb color_a{32, 32, 32};
    Rgb color_b{224, 224, 224};
    double target_radius_px = 12.0;
    Rgb target_color{255, 0, 0};
    Point grid_center_px{959.5, 539.5};
    double spacing_x_px = 540.0;
    double spacing_y_px = 280.0;
    Point ruler_p1{419.5, 1000.0};
    Point ruler_p2{1499.5, 1000.0};
    double ruler_cm = 38.5;
};

/// Throws SpecOverflow if the grid does not fit or disks would overlap.
void validate(const PanelSpec& spec);

/// Target centers in row-major label order.
std::array<Point, 9> target_centers(const PanelSpec& spec);

struct Dwell {
    Point gaze_px;
    int n_frames = 1;
    double jitter_sd_px = 0.0;
    std::string label;   // active target, free text ("" when none)
};

struct SessionScript {
    std::vector<Dwell> dwells;
    double blur_sigma = 6.0;
    double fovea_radius_px = 200.0;
    double transition_band_px = 16.0;
    std::uint64_t seed = 1;
};

/// One dwell per target, centered on it.
SessionScript default_script(const PanelSpec& spec, int frames_per_dwell = 10, double jitter_sd_px = 3.0);

/// Deterministic render: checkerboard, then 4x4-supersampled disks.
RgbImage render_panel(const PanelSpec& spec);

/// Keeps the frame sharp within `fovea_radius_px` of the gaze point and
/// fades linearly to a Gaussian-blurred copy across `transition_band_px`.
RgbImage apply_foveation(const RgbImage& frame, Point gaze_px, double fovea_radius_px, double blur_sigma,
                         double transition_band_px);

struct TruthRow {
    int frame = 0;
    Point gaze_px;
    std::string target_label;
};

struct SessionManifest {
    std::vector<TruthRow> rows;
    std::array<Point, 9> target_centers{};
};

/// Per-frame gaze: dwell gaze plus isotropic Gaussian jitter from `seed`.
std::vector<TruthRow> session_truth(const SessionScript& script);

/// Writes frame_%05d.png for every frame and truth.csv. Throws IoFailure.
SessionManifest generate_session(const PanelSpec& spec, const SessionScript& script,
                                 const std::filesystem::path& out_dir);

/// Reads a truth.csv written by generate_session.
std::vector<TruthRow> read_truth_csv(const std::filesystem::path& path);

}  // namespace foveagaze
