#pragma once

#include <array>
#include <filesystem>
#include <string>

#include "foveagaze/config.hpp"
#include "foveagaze/metrics.hpp"
#include "foveagaze/pipeline.hpp"

namespace foveagaze {

// All writers use '.' decimals, LF line endings and fixed precision so the
// same inputs give byte-identical files.

std::string gaze_trace_csv(const GazeTrace& trace);
std::string accuracy_csv(const std::array<FixationMeasurement, 9>& measurements);
std::string analysis_report_json(const AnalysisResult& result, const AnalysisConfig& config);

/// Two bar panels (degrees and pixels) with one bar per target, values printed above bars.
std::string error_bar_svg(const std::array<double, 9>& error_deg, const std::array<double, 9>& error_px,
                          const std::string& title);

/// Throws IoFailure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace foveagaze
