#include "foveagaze/pipeline.hpp"

#include <algorithm>
#include <optional>
#include <variant>

#include "csv_util.hpp"
#include "foveagaze/fovea.hpp"
#include "foveagaze/image_io.hpp"
#include "foveagaze/ingest.hpp"

namespace foveagaze {

std::string_view stage_name(Stage stage) {
    switch (stage) {
        case Stage::config: return "config";
        case Stage::ingest: return "ingest";
        case Stage::fovea: return "fovea";
        case Stage::targets: return "targets";
        case Stage::metrics: return "metrics";
    }
    return "unknown";
}

namespace {
std::string describe(Stage stage, const Error& cause, int frame) {
    std::string s = std::string(stage_name(stage)) + " stage";
    if (frame >= 0) s += ", frame " + std::to_string(frame);
    return s + ": " + cause.detail();
}
}  // namespace

PipelineError::PipelineError(Stage stage, const Error& cause, int frame)
    : Error(cause.code(), describe(stage, cause, frame)), stage_(stage), frame_(frame) {}

std::map<TargetLabel, FrameRange> read_schedule(const std::filesystem::path& path) {
    const auto t = csv::read_file(path);
    if (t.header != std::vector<std::string>{"target", "first_frame", "last_frame"}) {
        throw Error(ErrorCode::ConfigError, path.string() + ": header must be target,first_frame,last_frame");
    }
    std::map<TargetLabel, FrameRange> out;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        const std::string where = path.string() + " row " + std::to_string(i + 1);
        if (r.size() != 3) throw Error(ErrorCode::ConfigError, where + ": expected 3 fields");
        const auto label = parse_label(r[0]);
        const auto first = csv::parse_int(r[1]);
        const auto last = csv::parse_int(r[2]);
        if (!label) throw Error(ErrorCode::ConfigError, where + ": unknown target '" + r[0] + "'");
        if (!first || !last || *first > *last) throw Error(ErrorCode::ConfigError, where + ": bad frame range");
        if (!out.emplace(*label, FrameRange{*first, *last}).second) {
            throw Error(ErrorCode::ConfigError, where + ": duplicate target");
        }
    }
    return out;
}

namespace {

struct FrameOutcome {
    double mean_sharpness = 0.0;
    std::optional<FoveaEstimate> estimate;
    std::optional<Error> ingest_error;
    std::optional<Error> fovea_error;
};

}  // namespace

AnalysisResult run_analysis(const AnalysisConfig& config) {
    std::vector<FrameFile> files;
    ImageSize size;
    try {
        files = list_frames(config.frames_dir, config.frame_pattern, config.frame_rate_hz);
        size = read_image_size(files.front().path);
    } catch (const Error& e) {
        throw PipelineError(Stage::ingest, e);
    }

    std::map<TargetLabel, FrameRange> schedule;
    if (config.schedule) {
        try {
            schedule = read_schedule(*config.schedule);
        } catch (const Error& e) {
            throw PipelineError(Stage::config, e);
        }
    }

    std::vector<FrameOutcome> outcomes(files.size());
    const auto n = static_cast<std::ptrdiff_t>(files.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        FrameOutcome& out = outcomes[i];
        RgbImage img;
        try {
            img = read_image(files[i].path);
            if (img.width() != size.width || img.height() != size.height) {
                throw Error(ErrorCode::DimensionMismatch,
                            files[i].path.filename().string() + " is " + std::to_string(img.width()) + "x" +
                                std::to_string(img.height()) + ", expected " + std::to_string(size.width) + "x" +
                                std::to_string(size.height));
            }
        } catch (const Error& e) {
            out.ingest_error = e;
            continue;
        }
        try {
            const SharpnessMap map = sharpness_map(img, config.window_px, config.stride_px);
            out.mean_sharpness = map.mean();
            out.estimate = detect_fovea(map, config.fovea);
        } catch (const Error& e) {
            out.fovea_error = e;
        }
    }

    AnalysisResult result;
    result.frame_count = static_cast<int>(files.size());
    result.trace.source_id = config.recording_id;
    if (result.trace.source_id.empty()) {
        std::filesystem::path dir = std::filesystem::absolute(config.frames_dir).lexically_normal();
        if (dir.filename().empty()) dir = dir.parent_path();
        result.trace.source_id = dir.filename().string();
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (outcomes[i].ingest_error) throw PipelineError(Stage::ingest, *outcomes[i].ingest_error, files[i].index);
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        const FrameOutcome& o = outcomes[i];
        if (o.fovea_error) {
            if (!config.skip_failed_frames) throw PipelineError(Stage::fovea, *o.fovea_error, files[i].index);
            result.skipped.push_back({files[i].index, o.fovea_error->code()});
            continue;
        }
        result.trace.samples.push_back({files[i].index, files[i].timestamp_ms, o.estimate->center_px,
                                        o.estimate->confidence});
    }
    if (result.trace.samples.empty()) {
        const auto first = std::find_if(outcomes.begin(), outcomes.end(), [](const FrameOutcome& o) { return o.fovea_error.has_value(); });
        throw PipelineError(Stage::fovea, *first->fovea_error, files[first - outcomes.begin()].index);
    }

    // Targets are static; detect them once on the sharpest frame.
    std::size_t sharpest = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i) {
        if (outcomes[i].mean_sharpness > outcomes[sharpest].mean_sharpness) sharpest = i;
    }
    result.layout_frame = files[sharpest].index;
    try {
        result.layout = detect_targets(read_image(files[sharpest].path), config.targets);
    } catch (const Error& e) {
        throw PipelineError(Stage::targets, e, result.layout_frame);
    }

    try {
        result.scale = calibrate_scale(config.ruler.p1, config.ruler.p2, config.ruler.length_cm);
    } catch (const Error& e) {
        throw PipelineError(Stage::config, e);
    }
    result.geometry = {config.viewing_distance_cm, result.scale.cm_per_px, result.layout.center(TargetLabel::center)};

    try {
        for (TargetLabel label : kAllTargets) {
            std::optional<FrameRange> range;
            if (const auto it = schedule.find(label); it != schedule.end()) range = it->second;
            result.measurements[label_index(label)] = select_best_window(
                result.trace, label, result.layout.center(label), result.geometry, config.k_window, range);
        }
        result.fov = fov_extent(result.layout, result.geometry);
    } catch (const Error& e) {
        throw PipelineError(Stage::metrics, e);
    }
    return result;
}

}  // namespace foveagaze
