#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "foveagaze/commands.hpp"

int main(int argc, char** argv) {
    using namespace foveagaze;
    CLI::App app{"Eye-tracking accuracy analysis for foveated-rendering screen recordings"};
    app.require_subcommand(1);

    std::string config_path;
    int jobs = 0;
    auto* analyze = app.add_subcommand("analyze", "Estimate gaze per frame and compute per-target accuracy");
    analyze->add_option("--config", config_path, "Analysis config (JSON)")->required();
    analyze->add_option("--jobs", jobs, "Worker threads (default: OpenMP default)")->check(CLI::PositiveNumber);

    std::string data_dir = FOVEAGAZE_DATA_DIR;
    std::string reproduce_out = ".";
    auto* reproduce = app.add_subcommand("reproduce", "Recompute the published tables and statistics");
    reproduce->add_option("--data", data_dir, "Directory with gaze_table1.csv and sus_table2.csv");
    reproduce->add_option("--out", reproduce_out, "Directory for reproduction_report.json");

    std::string synth_config;
    std::string synth_out;
    int synth_jobs = 0;
    auto* synth = app.add_subcommand("synth", "Render a synthetic foveated session with ground truth");
    synth->add_option("--config", synth_config, "Panel and session config (JSON)")->required();
    synth->add_option("--out", synth_out, "Output directory")->required();
    synth->add_option("--jobs", synth_jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::string sus_input;
    std::string sus_out = ".";
    auto* sus = app.add_subcommand("sus", "Score System Usability Scale responses");
    sus->add_option("--input", sus_input, "Responses CSV")->required();
    sus->add_option("--out", sus_out, "Directory for sus_scores.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_code::ok : exit_code::config;
    }

    auto opt = [](int v) { return v > 0 ? std::optional<int>(v) : std::nullopt; };
    try {
        if (*analyze) return cmd_analyze(config_path, opt(jobs), std::cout, std::cerr);
        if (*reproduce) return cmd_reproduce(data_dir, reproduce_out, std::cout, std::cerr);
        if (*synth) return cmd_synth(synth_config, synth_out, opt(synth_jobs), std::cout, std::cerr);
        if (*sus) return cmd_sus(sus_input, sus_out, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
    }
    return exit_code::unexpected;
}
