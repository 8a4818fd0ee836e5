#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "foveagaze/errors.hpp"

namespace foveagaze {

/// Process exit codes shared by all subcommands.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int unexpected = 1;
inline constexpr int config = 2;
inline constexpr int ingest = 3;
inline constexpr int detection = 4;
inline constexpr int mismatch = 5;
inline constexpr int io = 6;
}  // namespace exit_code

/// Summary goes to `out`, diagnostics to `err`. `jobs` sets the OpenMP thread count.
int cmd_analyze(const std::filesystem::path& config_path, std::optional<int> jobs, std::ostream& out,
                std::ostream& err);

/// `out_dir` receives reproduction_report.json.
int cmd_reproduce(const std::filesystem::path& data_dir, const std::filesystem::path& out_dir, std::ostream& out,
                  std::ostream& err);

/// Also writes analysis_config.json and schedule.csv into `out_dir` so the
/// session can be analyzed directly.
int cmd_synth(const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
              std::optional<int> jobs, std::ostream& out, std::ostream& err);

/// Writes sus_scores.csv into `out_dir`.
int cmd_sus(const std::filesystem::path& input, const std::filesystem::path& out_dir, std::ostream& out,
            std::ostream& err);

}  // namespace foveagaze
