#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <vector>

#include "foveagaze/config.hpp"
#include "foveagaze/errors.hpp"
#include "foveagaze/geometry.hpp"
#include "foveagaze/metrics.hpp"

namespace foveagaze {

/// Where in the pipeline a failure happened, for diagnostics and exit codes.
enum class Stage { config, ingest, fovea, targets, metrics };

std::string_view stage_name(Stage stage);

class PipelineError : public Error {
public:
    PipelineError(Stage stage, const Error& cause, int frame = -1);

    Stage stage() const noexcept { return stage_; }
    int frame() const noexcept { return frame_; }

private:
    Stage stage_;
    int frame_;
};

struct SkippedFrame {
    int frame = 0;
    ErrorCode code = ErrorCode::NoFoveaBoundary;
};

struct AnalysisResult {
    int frame_count = 0;
    GazeTrace trace;
    std::vector<SkippedFrame> skipped;
    int layout_frame = 0;          // frame the targets were detected on
    TargetLayout layout;
    ScaleCalibration scale;
    ViewingGeometry geometry;
    std::array<FixationMeasurement, 9> measurements{};
    FovExtent fov;
};

/// Schedule CSV `target,first_frame,last_frame` restricting each target's window search.
std::map<TargetLabel, FrameRange> read_schedule(const std::filesystem::path& path);

/// Runs ingest -> fovea -> targets -> geometry -> metrics. Per-frame work
/// uses the current OpenMP thread count; results do not depend on it.
/// Throws PipelineError.
AnalysisResult run_analysis(const AnalysisConfig& config);

}  // namespace foveagaze
