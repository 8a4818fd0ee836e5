#include "foveagaze/commands.hpp"

#include <fmt/format.h>
#include <omp.h>

#include <map>

#include "foveagaze/config.hpp"
#include "foveagaze/pipeline.hpp"
#include "foveagaze/report.hpp"
#include "foveagaze/reproduce.hpp"
#include "foveagaze/sus.hpp"
#include "foveagaze/synth.hpp"

namespace fs = std::filesystem;

namespace foveagaze {

namespace {

void set_jobs(std::optional<int> jobs) {
    if (jobs && *jobs > 0) omp_set_num_threads(*jobs);
}

int stage_exit_code(Stage stage) {
    switch (stage) {
        case Stage::config: return exit_code::config;
        case Stage::ingest: return exit_code::ingest;
        case Stage::fovea:
        case Stage::targets:
        case Stage::metrics: return exit_code::detection;
    }
    return exit_code::unexpected;
}

void make_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, dir.string() + ": " + ec.message());
}

}  // namespace

int cmd_analyze(const fs::path& config_path, std::optional<int> jobs, std::ostream& out, std::ostream& err) {
    AnalysisConfig config;
    try {
        config = load_analysis_config(config_path);
    } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::config;
    }
    set_jobs(jobs);
    AnalysisResult result;
    try {
        result = run_analysis(config);
    } catch (const PipelineError& e) {
        err << "analysis failed: " << e.what() << "\n";
        return stage_exit_code(e.stage());
    } catch (const std::exception& e) {
        err << "unexpected error: " << e.what() << "\n";
        return exit_code::unexpected;
    }
    try {
        make_dir(config.output_dir);
        write_text_file(config.output_dir / "gaze_trace.csv", gaze_trace_csv(result.trace));
        write_text_file(config.output_dir / "accuracy.csv", accuracy_csv(result.measurements));
        write_text_file(config.output_dir / "report.json", analysis_report_json(result, config));
        std::array<double, 9> deg{};
        std::array<double, 9> px{};
        for (std::size_t i = 0; i < 9; ++i) {
            deg[i] = result.measurements[i].mean_error_deg;
            px[i] = result.measurements[i].mean_error_px;
        }
        write_text_file(config.output_dir / "error_by_target.svg",
                        error_bar_svg(deg, px, "Gaze error by target: " + result.trace.source_id));
    } catch (const Error& e) {
        err << "output error: " << e.what() << "\n";
        return exit_code::io;
    }
    out << fmt::format("{}: {} frames, {} analyzed, {} skipped\n", result.trace.source_id, result.frame_count,
                       result.trace.samples.size(), result.skipped.size());
    out << fmt::format("scale {:.6f} cm/px, FOV {:.2f} x {:.2f} deg\n", result.scale.cm_per_px, result.fov.width_deg,
                       result.fov.height_deg);
    double sum_px = 0.0;
    double sum_deg = 0.0;
    for (const FixationMeasurement& m : result.measurements) {
        out << fmt::format("  {:<13} {:8.2f} px {:6.3f} deg  (frames {}-{})\n", label_name(m.target),
                           m.mean_error_px, m.mean_error_deg, m.window_start, m.window_start + m.window_length - 1);
        sum_px += m.mean_error_px;
        sum_deg += m.mean_error_deg;
    }
    out << fmt::format("overall {:.2f} px, {:.3f} deg\n", sum_px / 9.0, sum_deg / 9.0);
    out << "outputs in " << config.output_dir.string() << "\n";
    return exit_code::ok;
}

int cmd_reproduce(const fs::path& data_dir, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
    ReproductionResult result;
    try {
        result = reproduce_published(data_dir);
    } catch (const Error& e) {
        err << "cannot load bundled data: " << e.what() << "\n";
        return e.code() == ErrorCode::IoFailure ? exit_code::io : exit_code::config;
    }
    out << reproduction_summary(result);
    try {
        make_dir(out_dir);
        write_text_file(out_dir / "reproduction_report.json", reproduction_report_json(result));
    } catch (const Error& e) {
        err << "output error: " << e.what() << "\n";
        return exit_code::io;
    }
    if (!result.all_pass()) {
        err << reproduction_failures(result);
        return exit_code::mismatch;
    }
    return exit_code::ok;
}

int cmd_synth(const fs::path& config_path, const fs::path& out_dir, std::optional<int> jobs, std::ostream& out,
              std::ostream& err) {
    SynthConfig config;
    try {
        config = load_synth_config(config_path);
    } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return exit_code::config;
    }
    set_jobs(jobs);
    SessionManifest manifest;
    try {
        make_dir(out_dir);
        manifest = generate_session(config.panel, config.script, out_dir);

        // Consecutive frame ranges per dwell, for dwells labelled with a target.
        std::map<TargetLabel, FrameRange> ranges;
        bool all_labelled = true;
        int first = 0;
        for (const Dwell& d : config.script.dwells) {
            const auto label = parse_label(d.label);
            if (!label || ranges.count(*label)) all_labelled = false;
            else ranges[*label] = FrameRange{first, first + d.n_frames - 1};
            first += d.n_frames;
        }
        AnalysisConfig analysis;
        analysis.frames_dir = ".";
        analysis.frame_pattern = "frame_*.png";
        analysis.ruler = RulerConfig{config.panel.ruler_p1, config.panel.ruler_p2, config.panel.ruler_cm};
        analysis.output_dir = "analysis";
        analysis.recording_id = "synthetic";
        if (all_labelled && ranges.size() == 9) {
            std::string schedule = "target,first_frame,last_frame\n";
            for (const auto& [label, range] : ranges) {
                schedule += fmt::format("{},{},{}\n", label_name(label), range.first, range.last);
            }
            write_text_file(out_dir / "schedule.csv", schedule);
            analysis.schedule = "schedule.csv";
        }
        write_text_file(out_dir / "analysis_config.json", analysis_config_json(analysis));
    } catch (const Error& e) {
        err << "synth failed: " << e.what() << "\n";
        return e.code() == ErrorCode::IoFailure ? exit_code::io : exit_code::config;
    }
    out << fmt::format("{} frames in {} dwell segments written to {}\n", manifest.rows.size(),
                       config.script.dwells.size(), out_dir.string());
    out << "target centers:";
    for (TargetLabel l : kAllTargets) {
        const Point c = manifest.target_centers[label_index(l)];
        out << fmt::format(" {}=({:.1f},{:.1f})", label_name(l), c.x, c.y);
    }
    out << "\n";
    return exit_code::ok;
}

int cmd_sus(const fs::path& input, const fs::path& out_dir, std::ostream& out, std::ostream& err) {
    std::vector<SusResponse> responses;
    try {
        responses = read_sus_csv(input);
    } catch (const Error& e) {
        err << "invalid SUS input: " << e.what() << "\n";
        return e.code() == ErrorCode::IoFailure ? exit_code::io : exit_code::config;
    }
    std::string csv = "participant,usable,learnable,overall\n";
    out << fmt::format("{:<12} {:>8} {:>9} {:>8}\n", "participant", "usable", "learnable", "overall");
    for (const SusResponse& r : responses) {
        const SusScores s = score_sus(r);
        csv += fmt::format("{},{:.2f},{:.2f},{:.2f}\n", r.participant, round2(s.usable), round2(s.learnable),
                           round2(s.overall));
        out << fmt::format("{:<12} {:8.2f} {:9.2f} {:8.2f}\n", r.participant, round2(s.usable),
                           round2(s.learnable), round2(s.overall));
    }
    try {
        const SusSummary sum = sus_summary(responses);
        out << fmt::format("{:<12} {:8.2f} {:9.2f} {:8.2f}\n", "mean", round2(sum.usable.mean),
                           round2(sum.learnable.mean), round2(sum.overall.mean));
        out << fmt::format("{:<12} {:8.2f} {:9.2f} {:8.2f}\n", "sd", round2(sum.usable.sd), round2(sum.learnable.sd),
                           round2(sum.overall.sd));
        if (sum.insufficient_n) out << "note: fewer than 2 responses, SDs reported as 0\n";
        make_dir(out_dir);
        write_text_file(out_dir / "sus_scores.csv", csv);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return e.code() == ErrorCode::IoFailure ? exit_code::io : exit_code::config;
    }
    return exit_code::ok;
}

}  // namespace foveagaze
