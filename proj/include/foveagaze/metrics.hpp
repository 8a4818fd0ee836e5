#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "foveagaze/geometry.hpp"
#include "foveagaze/image.hpp"
#include "foveagaze/stats.hpp"
#include "foveagaze/targets.hpp"

namespace foveagaze {

struct GazeSample {
    int frame = 0;
    double timestamp_ms = 0.0;
    Point gaze_px;
    double confidence = 0.0;
};

/// One sample per analyzable frame, frame indices strictly increasing.
struct GazeTrace {
    std::string source_id;
    std::vector<GazeSample> samples;
};

/// Inclusive frame-index range.
struct FrameRange {
    int first = 0;
    int last = 0;
};

struct FixationMeasurement {
    TargetLabel target = TargetLabel::center;
    int window_start = 0;    // frame index of the first frame in the window
    int window_length = 0;
    double mean_error_px = 0.0;
    double mean_error_deg = 0.0;
};

/// Among runs of k consecutive frames (optionally restricted to `range`),
/// the one with the smallest mean gaze-target distance; ties go to the
/// earliest. Throws TraceTooShort when no run exists.
FixationMeasurement select_best_window(const GazeTrace& trace, TargetLabel target, Point target_px,
                                       const ViewingGeometry& geom, int k = 3,
                                       std::optional<FrameRange> range = std::nullopt);

struct ErrorCell {
    double px = 0.0;
    double deg = 0.0;
};

struct ParticipantRow {
    std::string participant;
    std::array<ErrorCell, 9> cells{};   // indexed by label_index
};

struct ParticipantMeasurements {
    std::string participant;
    std::vector<FixationMeasurement> measurements;
};

struct ColumnSummary {
    double mean_px = 0.0;
    double sd_px = 0.0;
    double mean_deg = 0.0;
    double sd_deg = 0.0;
};

struct CellRef {
    double value = 0.0;
    std::size_t row = 0;
    TargetLabel target = TargetLabel::center;
};

struct AccuracyTable {
    std::vector<ParticipantRow> rows;
    std::array<ColumnSummary, 9> columns{};
    stats::SdKind sd_kind = stats::SdKind::population;
    double overall_mean_px = 0.0;
    double overall_mean_deg = 0.0;
    CellRef min_px;
    CellRef max_px;
    CellRef min_deg;
    CellRef max_deg;
};

/// Throws IncompleteRow(participant) unless every participant has each target exactly once.
AccuracyTable accuracy_table(std::span<const ParticipantMeasurements> participants,
                             stats::SdKind sd_kind = stats::SdKind::population);
/// Throws EmptyInput.
AccuracyTable accuracy_table(std::vector<ParticipantRow> rows, stats::SdKind sd_kind = stats::SdKind::population);

enum class ErrorUnit { px, deg };

/// Participants x targets matrix: height = participants, width = 9.
Grid<double> table_values(const AccuracyTable& table, ErrorUnit unit);

/// Per-participant mean over the nine targets.
std::vector<double> participant_means(const AccuracyTable& table, ErrorUnit unit);

enum class SphericityCorrection { none, lower_bound };

struct AnovaResult {
    double f = 0.0;
    double df1 = 0.0;
    double df2 = 0.0;
    double p = 0.0;
    double ss_conditions = 0.0;
    double ss_subjects = 0.0;
    double ss_error = 0.0;
};

/// One-way repeated-measures ANOVA; matrix rows are subjects, columns conditions.
/// Throws DegenerateVariance when the residual mean square is zero.
AnovaResult rm_anova(const Grid<double>& values, SphericityCorrection correction);

struct PairedT {
    double t = 0.0;
    double df = 0.0;
    double p = 0.0;
    double mean_diff = 0.0;
};

/// Throws LengthMismatch, DegenerateVariance (constant differences).
PairedT paired_t_test(std::span<const double> a, std::span<const double> b);

struct PairwiseContrast {
    std::size_t a = 0;
    std::size_t b = 0;
    double mean_diff = 0.0;     // mean of column a minus column b
    double t = 0.0;
    double df = 0.0;
    double p_raw = 1.0;
    double p_bonferroni = 1.0;
    bool significant = false;
    bool degenerate = false;    // constant differences; t and p undefined
};

/// Paired t-tests over all column pairs with Bonferroni adjustment.
std::vector<PairwiseContrast> posthoc_pairwise(const Grid<double>& values, double alpha);

struct Correlation {
    double r = 0.0;
    double p = 1.0;
    std::size_t n = 0;
};

/// Throws LengthMismatch, ZeroVariance, InvalidArgument (n < 3).
Correlation pearson(std::span<const double> x, std::span<const double> y);

}  // namespace foveagaze
