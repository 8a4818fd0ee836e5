#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace foveagaze {

/// How the ten item values in a response are encoded.
enum class SusEncoding {
    likert,         // raw 1..5 agreement
    contribution,   // 0..4 item contribution
};

struct SusResponse {
    std::string participant;
    std::array<int, 10> contributions{};
};

struct SusScores {
    double usable = 0.0;
    double learnable = 0.0;
    double overall = 0.0;
};

/// Odd items contribute response - 1, even items 5 - response.
/// Throws OutOfRangeItem naming the 1-based item.
SusResponse make_sus_response(std::string participant, const std::array<int, 10>& values, SusEncoding encoding);

/// Inverse of the Likert conversion.
std::array<int, 10> to_likert(const SusResponse& response);

/// Items 4 and 10 form the learnable subscale, the other eight the usable one.
SusScores score_sus(const SusResponse& response);

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

struct SusSummary {
    std::size_t n = 0;
    bool insufficient_n = false;     // n < 2: SDs reported as 0
    std::array<MeanSd, 10> items{};
    MeanSd usable;
    MeanSd learnable;
    MeanSd overall;
};

/// Population SDs. Throws EmptyInput.
SusSummary sus_summary(std::span<const SusResponse> responses);

/// CSV with header `participant,i1,...,i10,encoding`; encoding is `likert`
/// or `contribution`. Malformed rows raise ConfigError or OutOfRangeItem with
/// the 1-based data row number.
std::vector<SusResponse> read_sus_csv(const std::filesystem::path& path);

/// Half-away-from-zero rounding to 2 decimals, as printed in reports.
double round2(double v);

}  // namespace foveagaze
