#include "foveagaze/config.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "foveagaze/errors.hpp"

namespace foveagaze {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) fail(where + " must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail("unknown key '" + where + (where.empty() ? "" : ".") + key + "'");
        }
    }
}

template <typename T>
void read(const json& obj, std::string_view key, T& out, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    try {
        if constexpr (std::is_same_v<T, double>) {
            if (!it->is_number()) fail(where + "." + std::string(key) + " must be a number");
        } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
            if (!it->is_number_integer()) fail(where + "." + std::string(key) + " must be an integer");
        }
        out = it->get<T>();
    } catch (const json::exception&) {
        fail(where + "." + std::string(key) + " has the wrong type");
    }
}

Point read_point(const json& v, const std::string& name) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(name + " must be [x, y]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

Rgb read_rgb(const json& v, const std::string& name) {
    if (!v.is_array() || v.size() != 3) fail(name + " must be [r, g, b]");
    std::array<int, 3> c{};
    for (int i = 0; i < 3; ++i) {
        if (!v[i].is_number_integer() || v[i].get<int>() < 0 || v[i].get<int>() > 255) {
            fail(name + " components must be integers in 0..255");
        }
        c[i] = v[i].get<int>();
    }
    return {static_cast<std::uint8_t>(c[0]), static_cast<std::uint8_t>(c[1]), static_cast<std::uint8_t>(c[2])};
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path.string() + ": cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : (base / path).lexically_normal();
}

RulerConfig read_ruler(const json& r, const std::string& where) {
    reject_unknown(r, where, {"p1", "p2", "length_cm"});
    if (!r.contains("p1") || !r.contains("p2") || !r.contains("length_cm")) {
        fail(where + " needs p1, p2 and length_cm");
    }
    RulerConfig ruler;
    ruler.p1 = read_point(r["p1"], where + ".p1");
    ruler.p2 = read_point(r["p2"], where + ".p2");
    read(r, "length_cm", ruler.length_cm, where);
    return ruler;
}

}  // namespace

AnalysisConfig parse_analysis_config(const std::string& json_text, const std::filesystem::path& base_dir) {
    const json j = parse_text(json_text);
    reject_unknown(j, "", {"frames_dir", "frame_pattern", "frame_rate_hz", "viewing_distance_cm", "ruler", "fovea",
                           "targets", "k_window", "schedule", "output_dir", "skip_failed_frames", "recording_id"});
    AnalysisConfig c;
    if (!j.contains("frames_dir") || !j["frames_dir"].is_string()) fail("frames_dir (string) is required");
    c.frames_dir = resolve(base_dir, j["frames_dir"].get<std::string>());
    read(j, "frame_pattern", c.frame_pattern, "config");
    read(j, "frame_rate_hz", c.frame_rate_hz, "config");
    read(j, "viewing_distance_cm", c.viewing_distance_cm, "config");
    read(j, "k_window", c.k_window, "config");
    read(j, "skip_failed_frames", c.skip_failed_frames, "config");
    read(j, "recording_id", c.recording_id, "config");
    if (!j.contains("ruler")) fail("ruler is required");
    c.ruler = read_ruler(j["ruler"], "ruler");
    if (j.contains("schedule") && !j["schedule"].is_null()) {
        if (!j["schedule"].is_string()) fail("schedule must be a path");
        c.schedule = resolve(base_dir, j["schedule"].get<std::string>());
    }
    std::string out_dir = c.output_dir.string();
    read(j, "output_dir", out_dir, "config");
    c.output_dir = resolve(base_dir, out_dir);

    if (j.contains("fovea")) {
        const json& f = j["fovea"];
        reject_unknown(f, "fovea", {"window_px", "stride_px", "threshold_mode", "threshold_fraction",
                                    "min_region_frac", "min_contrast", "transition_margin_px", "circle_fit"});
        read(f, "window_px", c.window_px, "fovea");
        read(f, "stride_px", c.stride_px, "fovea");
        std::string mode = "otsu";
        read(f, "threshold_mode", mode, "fovea");
        if (mode == "otsu") {
            c.fovea.threshold_mode = ThresholdMode::otsu;
        } else if (mode == "fraction_of_max") {
            c.fovea.threshold_mode = ThresholdMode::fraction_of_max;
        } else {
            fail("fovea.threshold_mode must be 'otsu' or 'fraction_of_max'");
        }
        read(f, "threshold_fraction", c.fovea.fraction_of_max, "fovea");
        read(f, "min_region_frac", c.fovea.min_region_frac, "fovea");
        read(f, "min_contrast", c.fovea.min_contrast, "fovea");
        read(f, "circle_fit", c.fovea.refine_with_circle_fit, "fovea");
        if (f.contains("transition_margin_px") && !f["transition_margin_px"].is_null()) {
            double m = 0.0;
            read(f, "transition_margin_px", m, "fovea");
            c.fovea.transition_margin_px = m;
        }
    }
    if (j.contains("targets")) {
        const json& t = j["targets"];
        reject_unknown(t, "targets", {"red_min", "dominance_min", "r_min_px", "r_max_px", "min_votes"});
        read(t, "red_min", c.targets.red_min, "targets");
        read(t, "dominance_min", c.targets.dominance_min, "targets");
        read(t, "r_min_px", c.targets.r_min_px, "targets");
        read(t, "r_max_px", c.targets.r_max_px, "targets");
        read(t, "min_votes", c.targets.min_votes, "targets");
    }

    if (!(c.frame_rate_hz > 0.0)) fail("frame_rate_hz must be positive");
    if (!(c.viewing_distance_cm > 0.0)) fail("viewing_distance_cm must be positive");
    if (c.window_px < 3 || c.window_px % 2 == 0) fail("fovea.window_px must be odd and >= 3");
    if (c.stride_px < 1) fail("fovea.stride_px must be >= 1");
    if (c.k_window < 1) fail("k_window must be >= 1");
    if (c.targets.r_min_px < 1 || c.targets.r_min_px >= c.targets.r_max_px) {
        fail("targets.r_min_px must be >= 1 and below r_max_px");
    }
    if (!(c.fovea.fraction_of_max > 0.0 && c.fovea.fraction_of_max < 1.0)) {
        fail("fovea.threshold_fraction must be in (0, 1)");
    }
    return c;
}

AnalysisConfig load_analysis_config(const std::filesystem::path& path) {
    return parse_analysis_config(slurp(path), path.parent_path());
}

std::string analysis_config_json(const AnalysisConfig& c) {
    nlohmann::ordered_json j;
    j["frames_dir"] = c.frames_dir.string();
    j["frame_pattern"] = c.frame_pattern;
    j["frame_rate_hz"] = c.frame_rate_hz;
    j["viewing_distance_cm"] = c.viewing_distance_cm;
    j["ruler"] = {{"p1", {c.ruler.p1.x, c.ruler.p1.y}}, {"p2", {c.ruler.p2.x, c.ruler.p2.y}},
                  {"length_cm", c.ruler.length_cm}};
    nlohmann::ordered_json f;
    f["window_px"] = c.window_px;
    f["stride_px"] = c.stride_px;
    f["threshold_mode"] = c.fovea.threshold_mode == ThresholdMode::otsu ? "otsu" : "fraction_of_max";
    f["threshold_fraction"] = c.fovea.fraction_of_max;
    f["min_region_frac"] = c.fovea.min_region_frac;
    f["min_contrast"] = c.fovea.min_contrast;
    f["circle_fit"] = c.fovea.refine_with_circle_fit;
    if (c.fovea.transition_margin_px) f["transition_margin_px"] = *c.fovea.transition_margin_px;
    j["fovea"] = f;
    j["targets"] = {{"red_min", c.targets.red_min},
                    {"dominance_min", c.targets.dominance_min},
                    {"r_min_px", c.targets.r_min_px},
                    {"r_max_px", c.targets.r_max_px}};
    j["k_window"] = c.k_window;
    if (c.schedule) j["schedule"] = c.schedule->string();
    j["output_dir"] = c.output_dir.string();
    j["skip_failed_frames"] = c.skip_failed_frames;
    if (!c.recording_id.empty()) j["recording_id"] = c.recording_id;
    return j.dump(2) + "\n";
}

SynthConfig parse_synth_config(const std::string& json_text) {
    const json j = parse_text(json_text);
    reject_unknown(j, "", {"panel", "session"});
    SynthConfig c;
    if (j.contains("panel")) {
        const json& p = j["panel"];
        reject_unknown(p, "panel", {"width", "height", "checker_px", "color_a", "color_b", "target_radius_px",
                                    "target_color", "grid_center_px", "spacing_px", "ruler"});
        read(p, "width", c.panel.width, "panel");
        read(p, "height", c.panel.height, "panel");
        read(p, "checker_px", c.panel.checker_px, "panel");
        read(p, "target_radius_px", c.panel.target_radius_px, "panel");
        if (p.contains("color_a")) c.panel.color_a = read_rgb(p["color_a"], "panel.color_a");
        if (p.contains("color_b")) c.panel.color_b = read_rgb(p["color_b"], "panel.color_b");
        if (p.contains("target_color")) c.panel.target_color = read_rgb(p["target_color"], "panel.target_color");
        if (p.contains("grid_center_px")) c.panel.grid_center_px = read_point(p["grid_center_px"], "panel.grid_center_px");
        if (p.contains("spacing_px")) {
            const Point s = read_point(p["spacing_px"], "panel.spacing_px");
            c.panel.spacing_x_px = s.x;
            c.panel.spacing_y_px = s.y;
        }
        if (p.contains("ruler")) {
            const RulerConfig r = read_ruler(p["ruler"], "panel.ruler");
            c.panel.ruler_p1 = r.p1;
            c.panel.ruler_p2 = r.p2;
            c.panel.ruler_cm = r.length_cm;
        }
    }
    try {
        validate(c.panel);
    } catch (const Error& e) {
        throw Error(ErrorCode::ConfigError, std::string(e.what()));
    }

    int frames_per_dwell = 10;
    double jitter = 3.0;
    std::vector<TargetLabel> sequence;
    std::vector<Dwell> dwells;
    if (j.contains("session")) {
        const json& s = j["session"];
        reject_unknown(s, "session", {"blur_sigma", "fovea_radius_px", "transition_band_px", "seed",
                                      "frames_per_dwell", "jitter_sd_px", "sequence", "dwells"});
        read(s, "blur_sigma", c.script.blur_sigma, "session");
        read(s, "fovea_radius_px", c.script.fovea_radius_px, "session");
        read(s, "transition_band_px", c.script.transition_band_px, "session");
        read(s, "seed", c.script.seed, "session");
        read(s, "frames_per_dwell", frames_per_dwell, "session");
        read(s, "jitter_sd_px", jitter, "session");
        if (s.contains("sequence") && s.contains("dwells")) fail("session takes either sequence or dwells, not both");
        if (s.contains("sequence")) {
            if (!s["sequence"].is_array()) fail("session.sequence must be a list of target labels");
            for (const auto& l : s["sequence"]) {
                const auto label = l.is_string() ? parse_label(l.get<std::string>()) : std::nullopt;
                if (!label) fail("session.sequence has an unknown target label " + l.dump());
                sequence.push_back(*label);
            }
        }
        if (s.contains("dwells")) {
            if (!s["dwells"].is_array()) fail("session.dwells must be a list");
            for (const auto& d : s["dwells"]) {
                reject_unknown(d, "session.dwells[]", {"gaze_px", "n_frames", "jitter_sd_px", "label"});
                if (!d.contains("gaze_px")) fail("session.dwells[] needs gaze_px");
                Dwell dwell{read_point(d["gaze_px"], "session.dwells[].gaze_px"), frames_per_dwell, jitter, ""};
                read(d, "n_frames", dwell.n_frames, "session.dwells[]");
                read(d, "jitter_sd_px", dwell.jitter_sd_px, "session.dwells[]");
                read(d, "label", dwell.label, "session.dwells[]");
                dwells.push_back(dwell);
            }
        }
    }
    if (frames_per_dwell < 1) fail("session.frames_per_dwell must be >= 1");
    if (jitter < 0.0) fail("session.jitter_sd_px must be >= 0");
    if (!(c.script.blur_sigma >= 0.0)) fail("session.blur_sigma must be >= 0");
    if (!(c.script.fovea_radius_px > 0.0)) fail("session.fovea_radius_px must be positive");
    if (!(c.script.transition_band_px >= 0.0)) fail("session.transition_band_px must be >= 0");

    if (!dwells.empty()) {
        for (const Dwell& d : dwells) {
            if (d.n_frames < 1) fail("session.dwells[].n_frames must be >= 1");
            if (d.jitter_sd_px < 0.0) fail("session.dwells[].jitter_sd_px must be >= 0");
        }
        const std::uint64_t seed = c.script.seed;
        c.script.dwells = std::move(dwells);
        c.script.seed = seed;
    } else {
        const SessionScript defaults = default_script(c.panel, frames_per_dwell, jitter);
        if (sequence.empty()) {
            c.script.dwells = defaults.dwells;
        } else {
            const auto centers = target_centers(c.panel);
            for (TargetLabel l : sequence) {
                c.script.dwells.push_back({centers[label_index(l)], frames_per_dwell, jitter, std::string(label_name(l))});
            }
        }
    }
    return c;
}

SynthConfig load_synth_config(const std::filesystem::path& path) { return parse_synth_config(slurp(path)); }

}  // namespace foveagaze
