#include "foveagaze/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "foveagaze/errors.hpp"

namespace foveagaze {

FixationMeasurement select_best_window(const GazeTrace& trace, TargetLabel target, Point target_px,
                                       const ViewingGeometry& geom, int k, std::optional<FrameRange> range) {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "window length must be >= 1");
    const auto& s = trace.samples;
    std::vector<double> err(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) err[i] = distance(s[i].gaze_px, target_px);

    const auto n = static_cast<std::ptrdiff_t>(s.size());
    std::optional<std::ptrdiff_t> best;
    double best_mean = std::numeric_limits<double>::infinity();
    for (std::ptrdiff_t i = 0; i + k <= n; ++i) {
        const int first = s[i].frame;
        const int last = s[i + k - 1].frame;
        if (last - first != k - 1) continue;
        if (range && (first < range->first || last > range->last)) continue;
        double sum = 0.0;
        for (std::ptrdiff_t j = i; j < i + k; ++j) sum += err[j];
        const double m = sum / k;
        if (m < best_mean) {
            best_mean = m;
            best = i;
        }
    }
    if (!best) {
        throw Error(ErrorCode::TraceTooShort, "no run of " + std::to_string(k) + " consecutive frames for " +
                                                  std::string(label_name(target)));
    }
    double deg = 0.0;
    for (std::ptrdiff_t j = *best; j < *best + k; ++j) deg += angular_error(s[j].gaze_px, target_px, geom);
    return {target, s[*best].frame, k, best_mean, deg / k};
}

AccuracyTable accuracy_table(std::span<const ParticipantMeasurements> participants, stats::SdKind sd_kind) {
    std::vector<ParticipantRow> rows;
    for (const auto& p : participants) {
        ParticipantRow row{p.participant, {}};
        std::array<bool, 9> seen{};
        for (const auto& m : p.measurements) {
            const auto i = label_index(m.target);
            if (seen[i]) throw Error(ErrorCode::IncompleteRow, p.participant + ": duplicate " +
                                                                   std::string(label_name(m.target)));
            seen[i] = true;
            row.cells[i] = {m.mean_error_px, m.mean_error_deg};
        }
        for (std::size_t i = 0; i < 9; ++i) {
            if (!seen[i]) throw Error(ErrorCode::IncompleteRow, p.participant + ": missing " +
                                                                    std::string(label_name(kAllTargets[i])));
        }
        rows.push_back(std::move(row));
    }
    return accuracy_table(std::move(rows), sd_kind);
}

AccuracyTable accuracy_table(std::vector<ParticipantRow> rows, stats::SdKind sd_kind) {
    if (rows.empty()) throw Error(ErrorCode::EmptyInput, "accuracy table has no participants");
    AccuracyTable table;
    table.sd_kind = sd_kind;
    table.rows = std::move(rows);
    const std::size_t n = table.rows.size();
    std::vector<double> px(n);
    std::vector<double> deg(n);
    for (std::size_t c = 0; c < 9; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            px[r] = table.rows[r].cells[c].px;
            deg[r] = table.rows[r].cells[c].deg;
        }
        table.columns[c] = {stats::mean(px), stats::standard_deviation(px, sd_kind), stats::mean(deg),
                            stats::standard_deviation(deg, sd_kind)};
    }
    double sum_px = 0.0;
    double sum_deg = 0.0;
    const auto& first = table.rows.front().cells.front();
    table.min_px = table.max_px = {first.px, 0, TargetLabel::top_left};
    table.min_deg = table.max_deg = {first.deg, 0, TargetLabel::top_left};
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < 9; ++c) {
            const ErrorCell cell = table.rows[r].cells[c];
            sum_px += cell.px;
            sum_deg += cell.deg;
            if (cell.px < table.min_px.value) table.min_px = {cell.px, r, kAllTargets[c]};
            if (cell.px > table.max_px.value) table.max_px = {cell.px, r, kAllTargets[c]};
            if (cell.deg < table.min_deg.value) table.min_deg = {cell.deg, r, kAllTargets[c]};
            if (cell.deg > table.max_deg.value) table.max_deg = {cell.deg, r, kAllTargets[c]};
        }
    }
    table.overall_mean_px = sum_px / static_cast<double>(9 * n);
    table.overall_mean_deg = sum_deg / static_cast<double>(9 * n);
    return table;
}

Grid<double> table_values(const AccuracyTable& table, ErrorUnit unit) {
    Grid<double> out(9, static_cast<int>(table.rows.size()));
    for (int r = 0; r < out.height(); ++r) {
        for (int c = 0; c < 9; ++c) {
            const ErrorCell cell = table.rows[r].cells[c];
            out.at(c, r) = unit == ErrorUnit::px ? cell.px : cell.deg;
        }
    }
    return out;
}

std::vector<double> participant_means(const AccuracyTable& table, ErrorUnit unit) {
    const Grid<double> v = table_values(table, unit);
    std::vector<double> out;
    for (int r = 0; r < v.height(); ++r) out.push_back(stats::mean(v.row(r)));
    return out;
}

AnovaResult rm_anova(const Grid<double>& values, SphericityCorrection correction) {
    const int k = values.width();
    const int n = values.height();
    if (k < 2 || n < 2) throw Error(ErrorCode::InvalidArgument, "repeated-measures ANOVA needs >= 2 subjects and conditions");
    double grand = 0.0;
    std::vector<double> col_mean(k, 0.0);
    std::vector<double> row_mean(n, 0.0);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < k; ++c) {
            const double v = values.at(c, r);
            grand += v;
            col_mean[c] += v;
            row_mean[r] += v;
        }
    }
    grand /= static_cast<double>(n) * k;
    for (double& m : col_mean) m /= n;
    for (double& m : row_mean) m /= k;

    AnovaResult res;
    double ss_total = 0.0;
    for (int c = 0; c < k; ++c) res.ss_conditions += n * (col_mean[c] - grand) * (col_mean[c] - grand);
    for (int r = 0; r < n; ++r) res.ss_subjects += k * (row_mean[r] - grand) * (row_mean[r] - grand);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < k; ++c) {
            const double resid = values.at(c, r) - row_mean[r] - col_mean[c] + grand;
            res.ss_error += resid * resid;
            ss_total += (values.at(c, r) - grand) * (values.at(c, r) - grand);
        }
    }
    if (!(res.ss_error > 1e-12 * ss_total) || ss_total == 0.0) {
        throw Error(ErrorCode::DegenerateVariance, "residual mean square is zero");
    }
    const double df1 = k - 1;
    const double df2 = static_cast<double>(k - 1) * (n - 1);
    res.f = (res.ss_conditions / df1) / (res.ss_error / df2);
    const double eps = correction == SphericityCorrection::lower_bound ? 1.0 / (k - 1) : 1.0;
    res.df1 = df1 * eps;
    res.df2 = df2 * eps;
    res.p = stats::f_survival(res.f, res.df1, res.df2);
    return res;
}

PairedT paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error(ErrorCode::LengthMismatch, "paired samples differ in length");
    if (a.size() < 2) throw Error(ErrorCode::InvalidArgument, "paired t-test needs n >= 2");
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    const double m = stats::mean(d);
    const double sd = stats::standard_deviation(d, stats::SdKind::sample);
    if (!(sd > 1e-12 * std::max(1.0, std::abs(m)))) {
        throw Error(ErrorCode::DegenerateVariance, "paired differences are constant");
    }
    const double n = static_cast<double>(d.size());
    const double t = m / (sd / std::sqrt(n));
    return {t, n - 1.0, stats::student_t_two_sided_p(t, n - 1.0), m};
}

std::vector<PairwiseContrast> posthoc_pairwise(const Grid<double>& values, double alpha) {
    const int k = values.width();
    const int n = values.height();
    std::vector<std::vector<double>> cols(k, std::vector<double>(n));
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < k; ++c) cols[c][r] = values.at(c, r);
    }
    const double pairs = k * (k - 1) / 2.0;
    std::vector<PairwiseContrast> out;
    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            PairwiseContrast pc;
            pc.a = a;
            pc.b = b;
            try {
                const PairedT t = paired_t_test(cols[a], cols[b]);
                pc.mean_diff = t.mean_diff;
                pc.t = t.t;
                pc.df = t.df;
                pc.p_raw = t.p;
                pc.p_bonferroni = std::min(1.0, pairs * t.p);
                pc.significant = pc.p_bonferroni < alpha;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::DegenerateVariance) throw;
                pc.degenerate = true;
                pc.mean_diff = stats::mean(cols[a]) - stats::mean(cols[b]);
                pc.t = std::numeric_limits<double>::quiet_NaN();
                pc.df = n - 1.0;
            }
            out.push_back(pc);
        }
    }
    return out;
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "pearson inputs differ in length");
    if (x.size() < 3) throw Error(ErrorCode::InvalidArgument, "pearson needs n >= 3");
    const double mx = stats::mean(x);
    const double my = stats::mean(y);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) throw Error(ErrorCode::ZeroVariance, "pearson input has zero variance");
    Correlation c;
    c.n = x.size();
    c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    const double df = static_cast<double>(c.n) - 2.0;
    if (std::abs(c.r) >= 1.0) {
        c.p = 0.0;
    } else {
        const double t = c.r * std::sqrt(df / (1.0 - c.r * c.r));
        c.p = stats::student_t_two_sided_p(t, df);
    }
    return c;
}

}  // namespace foveagaze
