#include "foveagaze/sus.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "foveagaze/errors.hpp"
#include "foveagaze/stats.hpp"
#include "csv_util.hpp"

namespace foveagaze {

SusResponse make_sus_response(std::string participant, const std::array<int, 10>& values, SusEncoding encoding) {
    SusResponse out{std::move(participant), {}};
    for (std::size_t i = 0; i < 10; ++i) {
        const int v = values[i];
        if (encoding == SusEncoding::likert) {
            if (v < 1 || v > 5) {
                throw Error(ErrorCode::OutOfRangeItem, "item " + std::to_string(i + 1) + " = " + std::to_string(v) +
                                                           " outside Likert range 1..5");
            }
            out.contributions[i] = (i % 2 == 0) ? v - 1 : 5 - v;
        } else {
            if (v < 0 || v > 4) {
                throw Error(ErrorCode::OutOfRangeItem, "item " + std::to_string(i + 1) + " = " + std::to_string(v) +
                                                           " outside contribution range 0..4");
            }
            out.contributions[i] = v;
        }
    }
    return out;
}

std::array<int, 10> to_likert(const SusResponse& response) {
    std::array<int, 10> out{};
    for (std::size_t i = 0; i < 10; ++i) {
        const int c = response.contributions[i];
        out[i] = (i % 2 == 0) ? c + 1 : 5 - c;
    }
    return out;
}

SusScores score_sus(const SusResponse& response) {
    for (std::size_t i = 0; i < 10; ++i) {
        const int c = response.contributions[i];
        if (c < 0 || c > 4) {
            throw Error(ErrorCode::OutOfRangeItem, "item " + std::to_string(i + 1) + " = " + std::to_string(c));
        }
    }
    const auto& c = response.contributions;
    const int total = std::accumulate(c.begin(), c.end(), 0);
    const int learn = c[3] + c[9];
    return {100.0 * (total - learn) / 32.0, 100.0 * learn / 8.0, 2.5 * total};
}

SusSummary sus_summary(std::span<const SusResponse> responses) {
    if (responses.empty()) throw Error(ErrorCode::EmptyInput, "no SUS responses");
    SusSummary s;
    s.n = responses.size();
    s.insufficient_n = s.n < 2;
    constexpr auto kSd = stats::SdKind::population;
    auto summarize = [&](const std::vector<double>& v) {
        return MeanSd{stats::mean(v), s.insufficient_n ? 0.0 : stats::standard_deviation(v, kSd)};
    };
    std::vector<double> col(s.n);
    for (std::size_t i = 0; i < 10; ++i) {
        for (std::size_t r = 0; r < s.n; ++r) col[r] = responses[r].contributions[i];
        s.items[i] = summarize(col);
    }
    std::vector<double> us(s.n);
    std::vector<double> le(s.n);
    std::vector<double> ov(s.n);
    for (std::size_t r = 0; r < s.n; ++r) {
        const SusScores sc = score_sus(responses[r]);
        us[r] = sc.usable;
        le[r] = sc.learnable;
        ov[r] = sc.overall;
    }
    s.usable = summarize(us);
    s.learnable = summarize(le);
    s.overall = summarize(ov);
    return s;
}

std::vector<SusResponse> read_sus_csv(const std::filesystem::path& path) {
    const auto table = csv::read_file(path);
    const std::vector<std::string> expected{"participant", "i1", "i2", "i3", "i4",       "i5",
                                            "i6",          "i7", "i8", "i9", "i10", "encoding"};
    if (table.header != expected) {
        throw Error(ErrorCode::ConfigError,
                    path.string() + ": header must be participant,i1,...,i10,encoding");
    }
    std::vector<SusResponse> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::string where = path.string() + " row " + std::to_string(r + 1);
        if (row.size() != expected.size()) {
            throw Error(ErrorCode::ConfigError, where + ": expected 12 fields, got " + std::to_string(row.size()));
        }
        SusEncoding enc;
        if (row[11] == "likert") {
            enc = SusEncoding::likert;
        } else if (row[11] == "contribution") {
            enc = SusEncoding::contribution;
        } else {
            throw Error(ErrorCode::ConfigError, where + ": unknown encoding '" + row[11] + "'");
        }
        std::array<int, 10> values{};
        for (std::size_t i = 0; i < 10; ++i) {
            const auto v = csv::parse_int(row[i + 1]);
            if (!v) throw Error(ErrorCode::ConfigError, where + ": item " + std::to_string(i + 1) + " is not an integer");
            values[i] = *v;
        }
        try {
            out.push_back(make_sus_response(row[0], values, enc));
        } catch (const Error& e) {
            throw Error(e.code(), where + ": " + e.detail());
        }
    }
    return out;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

}  // namespace foveagaze
