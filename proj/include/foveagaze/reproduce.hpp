#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "foveagaze/metrics.hpp"
#include "foveagaze/sus.hpp"

namespace foveagaze {

enum class Relation { within, less, greater };

/// One graded comparison against a published value.
struct Check {
    int criterion = 0;
    std::string metric;
    Relation relation = Relation::within;
    double expected = 0.0;
    double tolerance = 0.0;    // only for Relation::within
    double actual = 0.0;
    bool pass = false;
};

struct ReproductionResult {
    AccuracyTable table;
    std::vector<SusResponse> sus_responses;
    std::vector<SusScores> sus_scores;
    SusSummary sus;
    std::array<Correlation, 3> correlations{};   // usable, learnable, overall
    AnovaResult anova_deg;                       // uncorrected
    AnovaResult anova_deg_lower_bound;
    AnovaResult anova_px_lower_bound;
    std::vector<PairwiseContrast> posthoc;       // degrees, alpha 0.05
    std::vector<Check> checks;

    bool all_pass() const;
    bool criterion_pass(int criterion) const;
};

/// CSV `participant,target,error_px,error_deg`, one row per cell.
/// Throws ConfigError on malformed rows and IncompleteRow for missing cells.
std::vector<ParticipantRow> read_gaze_table(const std::filesystem::path& path);

/// Loads gaze_table1.csv and sus_table2.csv from `data_dir` and grades them
/// against the published tables and statistics.
ReproductionResult reproduce_published(const std::filesystem::path& data_dir);

std::string reproduction_report_json(const ReproductionResult& result);
/// Human-readable summary for stdout.
std::string reproduction_summary(const ReproductionResult& result);
/// One line per failed check with expected and actual values.
std::string reproduction_failures(const ReproductionResult& result);

}  // namespace foveagaze
