#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "foveagaze/fovea.hpp"
#include "foveagaze/synth.hpp"
#include "foveagaze/targets.hpp"

namespace foveagaze {

struct RulerConfig {
    Point p1;
    Point p2;
    double length_cm = 0.0;
};

/// Settings for `analyze`. Relative paths are resolved against the config
/// file's directory.
struct AnalysisConfig {
    std::filesystem::path frames_dir;
    std::string frame_pattern = "*.png";
    double frame_rate_hz = 30.0;
    double viewing_distance_cm = 63.0;
    RulerConfig ruler;
    int window_px = 31;
    int stride_px = 8;
    FoveaParams fovea;
    TargetParams targets;
    int k_window = 3;
    std::optional<std::filesystem::path> schedule;
    std::filesystem::path output_dir = "analysis";
    bool skip_failed_frames = false;
    std::string recording_id;
};

struct SynthConfig {
    PanelSpec panel;
    SessionScript script;
};

/// JSON config; unknown keys, wrong types and invalid values raise ConfigError.
AnalysisConfig load_analysis_config(const std::filesystem::path& path);
AnalysisConfig parse_analysis_config(const std::string& json_text, const std::filesystem::path& base_dir);

/// Serializes with paths written as given (not re-relativized).
std::string analysis_config_json(const AnalysisConfig& config);

SynthConfig load_synth_config(const std::filesystem::path& path);
SynthConfig parse_synth_config(const std::string& json_text);

}  // namespace foveagaze
