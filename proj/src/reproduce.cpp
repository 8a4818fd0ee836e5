#include "foveagaze/reproduce.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "csv_util.hpp"
#include "foveagaze/errors.hpp"

namespace foveagaze {

namespace {

// Printed values of the published tables, indexed by label_index.
constexpr std::array<double, 9> kMeanPx{80.52, 63.11, 70.20, 68.61, 47.56, 46.68, 78.20, 46.62, 52.22};
constexpr std::array<double, 9> kMeanDeg{3.16, 2.63, 2.76, 2.86, 2.08, 1.94, 3.07, 1.94, 2.05};
constexpr std::array<double, 9> kSdPx{24.87, 34.86, 43.06, 12.39, 14.14, 23.03, 20.93, 16.39, 28.85};
constexpr std::array<double, 9> kSdDeg{0.98, 1.45, 1.69, 0.52, 0.62, 0.96, 0.82, 0.68, 1.13};
constexpr double kOverallPx = 61.95;
constexpr double kOverallDeg = 2.5;
constexpr double kMinPx = 6.05;
constexpr double kMaxPx = 212.46;

// usable, learnable, overall per participant
constexpr std::array<std::array<double, 3>, 24> kSusRows{{
    {68.75, 100.00, 75.00}, {75.00, 62.50, 72.50}, {59.38, 87.50, 65.00}, {81.25, 100.00, 85.00},
    {68.75, 37.50, 62.50},  {78.13, 62.50, 75.00}, {68.75, 100.00, 75.00}, {87.50, 75.00, 85.00},
    {84.38, 100.00, 87.50}, {90.63, 75.00, 87.50}, {68.75, 37.50, 62.50},  {68.75, 100.00, 75.00},
    {56.25, 75.00, 60.00},  {40.63, 37.50, 40.00}, {59.38, 75.00, 62.50},  {56.25, 25.00, 50.00},
    {62.50, 87.50, 67.50},  {93.75, 75.00, 90.00}, {93.75, 87.50, 92.50},  {81.25, 100.00, 85.00},
    {87.50, 50.00, 80.00},  {81.25, 50.00, 75.00}, {71.88, 25.00, 62.50},  {87.50, 75.00, 85.00},
}};
constexpr std::array<double, 3> kSusMean{73.83, 70.83, 73.23};
constexpr std::array<double, 3> kSusSd{13.43, 24.65, 13.00};
constexpr std::array<double, 3> kCorrelation{0.049, 0.076, 0.069};
constexpr double kPublishedF = 9.29;
constexpr std::array<TargetLabel, 3> kWorseThanCenter{TargetLabel::bottom_left, TargetLabel::bottom,
                                                      TargetLabel::bottom_right};
constexpr std::array<const char*, 3> kSubscales{"usable", "learnable", "overall"};

bool graded(Relation rel, double expected, double tol, double actual) {
    switch (rel) {
        case Relation::within: return std::abs(actual - expected) <= tol + 1e-9;
        case Relation::less: return actual < expected;
        case Relation::greater: return actual > expected;
    }
    return false;
}

const char* relation_symbol(Relation rel) {
    switch (rel) {
        case Relation::within: return "within";
        case Relation::less: return "<";
        case Relation::greater: return ">";
    }
    return "?";
}

}  // namespace

bool ReproductionResult::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

bool ReproductionResult::criterion_pass(int criterion) const {
    return std::all_of(checks.begin(), checks.end(),
                       [&](const Check& c) { return c.criterion != criterion || c.pass; });
}

std::vector<ParticipantRow> read_gaze_table(const std::filesystem::path& path) {
    const csv::Table t = csv::read_file(path);
    const std::vector<std::string> expected{"participant", "target", "error_px", "error_deg"};
    if (t.header != expected) {
        throw Error(ErrorCode::ConfigError, path.string() + ": expected header participant,target,error_px,error_deg");
    }
    std::vector<ParticipantRow> rows;
    std::map<std::string, std::size_t> index;
    std::vector<std::set<std::size_t>> seen;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& f = t.rows[r];
        const std::string where = fmt::format("{}: row {}", path.string(), r + 1);
        if (f.size() != 4) throw Error(ErrorCode::ConfigError, where + ": expected 4 fields");
        const auto label = parse_label(f[1]);
        if (!label) throw Error(ErrorCode::ConfigError, where + ": unknown target '" + f[1] + "'");
        const auto px = csv::parse_double(f[2]);
        const auto deg = csv::parse_double(f[3]);
        if (!px || !deg) throw Error(ErrorCode::ConfigError, where + ": non-numeric error value");
        auto [it, inserted] = index.try_emplace(f[0], rows.size());
        if (inserted) {
            rows.push_back(ParticipantRow{f[0], {}});
            seen.emplace_back();
        }
        const std::size_t li = label_index(*label);
        if (!seen[it->second].insert(li).second) {
            throw Error(ErrorCode::ConfigError, where + ": duplicate cell for participant " + f[0]);
        }
        rows[it->second].cells[li] = ErrorCell{*px, *deg};
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (seen[i].size() != 9) throw Error(ErrorCode::IncompleteRow, "participant " + rows[i].participant);
    }
    return rows;
}

ReproductionResult reproduce_published(const std::filesystem::path& data_dir) {
    ReproductionResult res;
    res.table = accuracy_table(read_gaze_table(data_dir / "gaze_table1.csv"));
    res.sus_responses = read_sus_csv(data_dir / "sus_table2.csv");
    for (const SusResponse& r : res.sus_responses) res.sus_scores.push_back(score_sus(r));
    res.sus = sus_summary(res.sus_responses);

    auto add = [&](int criterion, std::string metric, Relation rel, double expected, double tol, double actual) {
        res.checks.push_back(Check{criterion, std::move(metric), rel, expected, tol, actual,
                                   graded(rel, expected, tol, actual)});
    };

    // SUS rows and summary
    if (res.sus_scores.size() != kSusRows.size()) {
        add(1, "sus.row_count", Relation::within, static_cast<double>(kSusRows.size()), 0.0,
            static_cast<double>(res.sus_scores.size()));
    }
    for (std::size_t i = 0; i < std::min(res.sus_scores.size(), kSusRows.size()); ++i) {
        const SusScores& s = res.sus_scores[i];
        const std::array<double, 3> got{s.usable, s.learnable, s.overall};
        for (std::size_t k = 0; k < 3; ++k) {
            add(1, fmt::format("sus.row{}.{}", i + 1, kSubscales[k]), Relation::within, kSusRows[i][k], 0.01, got[k]);
        }
    }
    const std::array<MeanSd, 3> sub{res.sus.usable, res.sus.learnable, res.sus.overall};
    for (std::size_t k = 0; k < 3; ++k) {
        add(1, fmt::format("sus.mean.{}", kSubscales[k]), Relation::within, kSusMean[k], 0.01, sub[k].mean);
        add(1, fmt::format("sus.sd.{}", kSubscales[k]), Relation::within, kSusSd[k], 0.01, sub[k].sd);
    }

    // accuracy table
    for (TargetLabel l : kAllTargets) {
        const std::size_t i = label_index(l);
        const ColumnSummary& c = res.table.columns[i];
        const std::string name(label_name(l));
        add(2, "accuracy.mean_px." + name, Relation::within, kMeanPx[i], 0.05, c.mean_px);
        add(2, "accuracy.sd_px." + name, Relation::within, kSdPx[i], 0.05, c.sd_px);
        add(2, "accuracy.mean_deg." + name, Relation::within, kMeanDeg[i], 0.01, c.mean_deg);
        add(2, "accuracy.sd_deg." + name, Relation::within, kSdDeg[i], 0.01, c.sd_deg);
    }
    add(2, "accuracy.overall_deg", Relation::within, kOverallDeg, 0.02, res.table.overall_mean_deg);
    add(2, "accuracy.overall_px", Relation::within, kOverallPx, 0.01 * kOverallPx, res.table.overall_mean_px);
    add(2, "accuracy.min_px", Relation::within, kMinPx, 0.0, res.table.min_px.value);
    add(2, "accuracy.max_px", Relation::within, kMaxPx, 0.0, res.table.max_px.value);

    // correlations
    const std::vector<double> err = participant_means(res.table, ErrorUnit::deg);
    std::array<std::vector<double>, 3> sus_cols;
    for (const SusScores& s : res.sus_scores) {
        sus_cols[0].push_back(s.usable);
        sus_cols[1].push_back(s.learnable);
        sus_cols[2].push_back(s.overall);
    }
    for (std::size_t k = 0; k < 3; ++k) {
        res.correlations[k] = pearson(err, sus_cols[k]);
        add(3, fmt::format("correlation.r.{}", kSubscales[k]), Relation::within, kCorrelation[k], 0.02,
            res.correlations[k].r);
        add(3, fmt::format("correlation.p.{}", kSubscales[k]), Relation::greater, 0.5, 0.0, res.correlations[k].p);
    }

    // ANOVA and post-hoc on degrees
    const Grid<double> deg = table_values(res.table, ErrorUnit::deg);
    res.anova_deg = rm_anova(deg, SphericityCorrection::none);
    res.anova_deg_lower_bound = rm_anova(deg, SphericityCorrection::lower_bound);
    res.anova_px_lower_bound = rm_anova(table_values(res.table, ErrorUnit::px), SphericityCorrection::lower_bound);
    add(4, "anova.p", Relation::less, 0.01, 0.0, res.anova_deg.p);
    add(4, "anova.lower_bound.df1", Relation::within, 1.0, 0.0, res.anova_deg_lower_bound.df1);
    add(4, "anova.lower_bound.df2", Relation::within, 23.0, 0.0, res.anova_deg_lower_bound.df2);
    add(4, "anova.lower_bound.p", Relation::less, 0.05, 0.0, res.anova_deg_lower_bound.p);

    res.posthoc = posthoc_pairwise(deg, 0.05);
    const std::size_t ci = label_index(TargetLabel::center);
    for (TargetLabel other : kWorseThanCenter) {
        const std::size_t oi = label_index(other);
        const auto it = std::find_if(res.posthoc.begin(), res.posthoc.end(), [&](const PairwiseContrast& c) {
            return (c.a == ci && c.b == oi) || (c.a == oi && c.b == ci);
        });
        const double center_minus_other = it->a == ci ? it->mean_diff : -it->mean_diff;
        const std::string name(label_name(other));
        add(4, "posthoc.center_minus." + name, Relation::less, 0.0, 0.0, center_minus_other);
        add(4, "posthoc.p_bonferroni.center_vs." + name, Relation::less, 0.05, 0.0, it->p_bonferroni);
    }
    return res;
}

std::string reproduction_report_json(const ReproductionResult& r) {
    using nlohmann::ordered_json;
    ordered_json j;
    ordered_json targets = ordered_json::array();
    for (TargetLabel l : kAllTargets) {
        const ColumnSummary& c = r.table.columns[label_index(l)];
        targets.push_back({{"target", label_name(l)},
                           {"mean_px", c.mean_px},
                           {"sd_px", c.sd_px},
                           {"mean_deg", c.mean_deg},
                           {"sd_deg", c.sd_deg}});
    }
    j["accuracy"] = {{"per_target", targets},
                     {"overall_mean_px", r.table.overall_mean_px},
                     {"overall_mean_deg", r.table.overall_mean_deg},
                     {"min_px", r.table.min_px.value},
                     {"max_px", r.table.max_px.value},
                     {"min_deg", r.table.min_deg.value},
                     {"max_deg", r.table.max_deg.value}};
    auto anova = [](const AnovaResult& a) {
        return ordered_json{{"f", a.f}, {"df1", a.df1}, {"df2", a.df2}, {"p", a.p}};
    };
    j["anova"] = {{"unit", "deg"},
                  {"uncorrected", anova(r.anova_deg)},
                  {"lower_bound", anova(r.anova_deg_lower_bound)},
                  {"lower_bound_px", anova(r.anova_px_lower_bound)},
                  {"published_f", kPublishedF}};
    ordered_json post = ordered_json::array();
    for (const PairwiseContrast& c : r.posthoc) {
        ordered_json e{{"a", label_name(kAllTargets[c.a])},
                       {"b", label_name(kAllTargets[c.b])},
                       {"mean_diff", c.mean_diff},
                       {"t", c.t},
                       {"df", c.df},
                       {"p_raw", c.p_raw},
                       {"p_bonferroni", c.p_bonferroni},
                       {"significant", c.significant}};
        if (c.degenerate) e["degenerate"] = true;
        post.push_back(e);
    }
    j["posthoc"] = post;
    auto msd = [](const MeanSd& m) { return ordered_json{{"mean", m.mean}, {"sd", m.sd}}; };
    j["sus"] = {{"n", r.sus.n},
                {"usable", msd(r.sus.usable)},
                {"learnable", msd(r.sus.learnable)},
                {"overall", msd(r.sus.overall)}};
    ordered_json corr;
    for (std::size_t k = 0; k < 3; ++k) {
        corr[kSubscales[k]] = {{"r", r.correlations[k].r}, {"p", r.correlations[k].p}, {"n", r.correlations[k].n}};
    }
    j["correlations"] = corr;
    ordered_json checks = ordered_json::array();
    for (const Check& c : r.checks) {
        ordered_json e{{"criterion", c.criterion},
                       {"metric", c.metric},
                       {"relation", relation_symbol(c.relation)},
                       {"expected", c.expected}};
        if (c.relation == Relation::within) e["tolerance"] = c.tolerance;
        e["actual"] = c.actual;
        e["pass"] = c.pass;
        checks.push_back(e);
    }
    j["checks"] = checks;
    j["pass"] = r.all_pass();
    return j.dump(2) + "\n";
}

std::string reproduction_summary(const ReproductionResult& r) {
    std::string s = "Gaze error by target (mean/SD)\n";
    for (TargetLabel l : kAllTargets) {
        const ColumnSummary& c = r.table.columns[label_index(l)];
        s += fmt::format("  {:<13} {:7.2f} px ({:5.2f})   {:5.2f} deg ({:4.2f})\n", label_name(l), c.mean_px, c.sd_px,
                         c.mean_deg, c.sd_deg);
    }
    s += fmt::format("Overall: {:.2f} px, {:.3f} deg; cells {:.2f}..{:.2f} px\n", r.table.overall_mean_px,
                     r.table.overall_mean_deg, r.table.min_px.value, r.table.max_px.value);
    const AnovaResult& a = r.anova_deg;
    const AnovaResult& lb = r.anova_deg_lower_bound;
    s += fmt::format("RM-ANOVA (deg): F({:g},{:g}) = {:.2f}, p = {:.3g}; lower-bound F({:g},{:g}), p = {:.3g} "
                     "(published F = {:.2f})\n",
                     a.df1, a.df2, a.f, a.p, lb.df1, lb.df2, lb.p, kPublishedF);
    std::size_t n_sig = 0;
    for (const PairwiseContrast& c : r.posthoc) n_sig += c.significant ? 1 : 0;
    s += fmt::format("Post-hoc (Bonferroni, {} pairs): {} significant\n", r.posthoc.size(), n_sig);
    for (const PairwiseContrast& c : r.posthoc) {
        if (!c.significant) continue;
        s += fmt::format("  {} vs {}: diff {:+.3f} deg, t({:g}) = {:.2f}, p_bonf = {:.4f}\n",
                         label_name(kAllTargets[c.a]), label_name(kAllTargets[c.b]), c.mean_diff, c.df, c.t,
                         c.p_bonferroni);
    }
    s += fmt::format("SUS (n={}): usable {:.2f} ({:.2f}), learnable {:.2f} ({:.2f}), overall {:.2f} ({:.2f})\n",
                     r.sus.n, r.sus.usable.mean, r.sus.usable.sd, r.sus.learnable.mean, r.sus.learnable.sd,
                     r.sus.overall.mean, r.sus.overall.sd);
    for (std::size_t k = 0; k < 3; ++k) {
        s += fmt::format("Pearson error(deg) vs {}: r = {:.3f}, p = {:.3f}\n", kSubscales[k], r.correlations[k].r,
                         r.correlations[k].p);
    }
    std::size_t passed = 0;
    for (const Check& c : r.checks) passed += c.pass ? 1 : 0;
    s += fmt::format("Checks: {}/{} passed\n", passed, r.checks.size());
    return s;
}

std::string reproduction_failures(const ReproductionResult& r) {
    std::string s;
    for (const Check& c : r.checks) {
        if (c.pass) continue;
        if (c.relation == Relation::within) {
            s += fmt::format("FAIL {}: expected {:g} +/- {:g}, actual {:.6g}\n", c.metric, c.expected, c.tolerance,
                             c.actual);
        } else {
            s += fmt::format("FAIL {}: expected {} {:g}, actual {:.6g}\n", c.metric, relation_symbol(c.relation),
                             c.expected, c.actual);
        }
    }
    return s;
}

}  // namespace foveagaze
