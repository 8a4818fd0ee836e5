#include "foveagaze/report.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <fstream>

#include "foveagaze/errors.hpp"

namespace foveagaze {

std::string gaze_trace_csv(const GazeTrace& trace) {
    std::string out = "frame,gaze_x,gaze_y,confidence\n";
    for (const GazeSample& s : trace.samples) {
        out += fmt::format("{},{:.4f},{:.4f},{:.6f}\n", s.frame, s.gaze_px.x, s.gaze_px.y, s.confidence);
    }
    return out;
}

std::string accuracy_csv(const std::array<FixationMeasurement, 9>& measurements) {
    std::string out = "target,error_px,error_deg,window_start\n";
    for (const FixationMeasurement& m : measurements) {
        out += fmt::format("{},{:.4f},{:.4f},{}\n", label_name(m.target), m.mean_error_px, m.mean_error_deg,
                           m.window_start);
    }
    return out;
}

namespace {
// Rounded through text so the JSON carries exactly the printed precision.
double fixed(double v, int digits) { return std::stod(fmt::format("{:.{}f}", v, digits)); }
}  // namespace

std::string analysis_report_json(const AnalysisResult& r, const AnalysisConfig& config) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["recording_id"] = r.trace.source_id;
    j["frames"] = r.frame_count;
    j["analyzed_frames"] = r.trace.samples.size();
    ordered_json skipped = ordered_json::array();
    for (const SkippedFrame& s : r.skipped) skipped.push_back({{"frame", s.frame}, {"error", to_string(s.code)}});
    j["skipped_frames"] = skipped;
    j["frame_rate_hz"] = config.frame_rate_hz;
    j["viewing_distance_cm"] = config.viewing_distance_cm;
    j["cm_per_px"] = fixed(r.scale.cm_per_px, 8);
    j["targets_frame"] = r.layout_frame;
    j["target_radius_px"] = fixed(r.layout.radius_px, 3);
    ordered_json centers;
    for (TargetLabel l : kAllTargets) {
        const Point c = r.layout.center(l);
        centers[std::string(label_name(l))] = {fixed(c.x, 4), fixed(c.y, 4)};
    }
    j["target_centers_px"] = centers;
    j["fov_extent_deg"] = {{"width", fixed(r.fov.width_deg, 4)}, {"height", fixed(r.fov.height_deg, 4)}};

    double sum_px = 0.0;
    double sum_deg = 0.0;
    const auto [min_px, max_px] = std::minmax_element(
        r.measurements.begin(), r.measurements.end(),
        [](const FixationMeasurement& a, const FixationMeasurement& b) { return a.mean_error_px < b.mean_error_px; });
    const auto [min_deg, max_deg] = std::minmax_element(
        r.measurements.begin(), r.measurements.end(),
        [](const FixationMeasurement& a, const FixationMeasurement& b) { return a.mean_error_deg < b.mean_error_deg; });
    ordered_json per_target = ordered_json::array();
    for (const FixationMeasurement& m : r.measurements) {
        sum_px += m.mean_error_px;
        sum_deg += m.mean_error_deg;
        per_target.push_back({{"target", label_name(m.target)},
                              {"error_px", fixed(m.mean_error_px, 4)},
                              {"error_deg", fixed(m.mean_error_deg, 4)},
                              {"window_start", m.window_start},
                              {"window_length", m.window_length}});
    }
    j["overall"] = {{"mean_error_px", fixed(sum_px / 9.0, 4)},
                    {"mean_error_deg", fixed(sum_deg / 9.0, 4)},
                    {"min_error_px", fixed(min_px->mean_error_px, 4)},
                    {"max_error_px", fixed(max_px->mean_error_px, 4)},
                    {"min_error_deg", fixed(min_deg->mean_error_deg, 4)},
                    {"max_error_deg", fixed(max_deg->mean_error_deg, 4)}};
    j["per_target"] = per_target;
    return j.dump(2) + "\n";
}

std::string error_bar_svg(const std::array<double, 9>& error_deg, const std::array<double, 9>& error_px,
                          const std::string& title) {
    constexpr int kPanelW = 480;
    constexpr int kPanelH = 300;
    constexpr int kMarginL = 50;
    constexpr int kMarginT = 50;
    constexpr int kMarginB = 90;
    constexpr int kWidth = 2 * kPanelW + 2 * kMarginL + 40;
    constexpr int kHeight = kPanelH + kMarginT + kMarginB;
    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
        "font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        "<text x=\"{}\" y=\"24\" font-size=\"16\" text-anchor=\"middle\">{}</text>\n",
        kWidth, kHeight, kWidth, kHeight, kWidth / 2, title);

    auto panel = [&](const std::array<double, 9>& values, int x0, const char* unit, const char* fill, int digits) {
        const double vmax = std::max(1e-9, *std::max_element(values.begin(), values.end()));
        const double bar_w = kPanelW / 9.0;
        s += fmt::format("<g class=\"panel\" data-unit=\"{}\">\n", unit);
        s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", x0, kMarginT + kPanelH,
                         x0 + kPanelW, kMarginT + kPanelH);
        s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n", x0, kMarginT, x0,
                         kMarginT + kPanelH);
        s += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\" "
                         "transform=\"rotate(-90 {} {})\">gaze error ({})</text>\n",
                         x0 - 30, kMarginT + kPanelH / 2, x0 - 30, kMarginT + kPanelH / 2, unit);
        for (std::size_t i = 0; i < 9; ++i) {
            const double h = values[i] / vmax * (kPanelH - 20);
            const double x = x0 + i * bar_w + bar_w * 0.15;
            const double y = kMarginT + kPanelH - h;
            s += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n", x,
                             y, bar_w * 0.7, h, fill);
            s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\" text-anchor=\"middle\">{:.{}f}</text>\n",
                             x + bar_w * 0.35, y - 4, values[i], digits);
            const double lx = x + bar_w * 0.35;
            const double ly = kMarginT + kPanelH + 12;
            s += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\" text-anchor=\"end\" "
                             "transform=\"rotate(-45 {:.2f} {:.2f})\">{}</text>\n",
                             lx, ly, lx, ly, label_name(kAllTargets[i]));
        }
        s += "</g>\n";
    };
    panel(error_deg, kMarginL, "deg", "#4c72b0", 2);
    panel(error_px, kMarginL * 2 + kPanelW + 40, "px", "#dd8452", 2);
    s += "</svg>\n";
    return s;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoFailure, path.string() + ": cannot open for writing");
    out << contents;
    if (!out) throw Error(ErrorCode::IoFailure, path.string() + ": write failed");
}

}  // namespace foveagaze
