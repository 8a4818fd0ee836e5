#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "foveagaze/errors.hpp"
#include "foveagaze/metrics.hpp"
#include "foveagaze/reproduce.hpp"
#include "support.hpp"

using namespace foveagaze;

namespace {

const ViewingGeometry kGeom{63, 0.05, {500, 500}};
const Point kTarget{500, 500};

GazeTrace trace_with_errors(const std::vector<double>& err_px, int first_frame = 0) {
    GazeTrace t;
    for (std::size_t i = 0; i < err_px.size(); ++i) {
        t.samples.push_back({first_frame + static_cast<int>(i), 0.0, kTarget + Point{err_px[i], 0}, 1.0});
    }
    return t;
}

Grid<double> matrix(std::initializer_list<std::initializer_list<double>> rows) {
    const int h = static_cast<int>(rows.size());
    const int w = static_cast<int>(rows.begin()->size());
    Grid<double> g(w, h);
    int y = 0;
    for (const auto& r : rows) {
        int x = 0;
        for (double v : r) g.at(x++, y) = v;
        ++y;
    }
    return g;
}

const AccuracyTable& bundled_table() {
    static const AccuracyTable t = accuracy_table(read_gaze_table(testing_support::data_dir() / "gaze_table1.csv"));
    return t;
}

std::vector<double> column(const Grid<double>& g, int x) {
    std::vector<double> c;
    for (int y = 0; y < g.height(); ++y) c.push_back(g.at(x, y));
    return c;
}

}  // namespace

TEST(BestWindow, PicksLowestMeanRun) {
    const FixationMeasurement m = select_best_window(trace_with_errors({5, 4, 3, 2, 1, 2}), TargetLabel::center,
                                                     kTarget, kGeom, 3);
    EXPECT_EQ(m.window_start, 3);
    EXPECT_EQ(m.window_length, 3);
    EXPECT_NEAR(m.mean_error_px, 5.0 / 3.0, 1e-12);
    const double deg = (angular_error(kTarget + Point{2, 0}, kTarget, kGeom) * 2 +
                        angular_error(kTarget + Point{1, 0}, kTarget, kGeom)) / 3;
    EXPECT_NEAR(m.mean_error_deg, deg, 1e-12);
}

TEST(BestWindow, TiesGoToEarliestWindow) {
    const FixationMeasurement m =
        select_best_window(trace_with_errors({2, 2, 2, 2}), TargetLabel::top, kTarget, kGeom, 3);
    EXPECT_EQ(m.window_start, 0);
    EXPECT_EQ(m.target, TargetLabel::top);
}

TEST(BestWindow, ShortTraceIsRejected) {
    EXPECT_THROW_CODE(select_best_window(trace_with_errors({1, 2}), TargetLabel::center, kTarget, kGeom, 3),
                      ErrorCode::TraceTooShort);
}

TEST(BestWindow, WindowsNeverSpanMissingFrames) {
    GazeTrace t = trace_with_errors({9, 1, 1, 9, 9, 9});
    t.samples.erase(t.samples.begin() + 2);  // frames 0,1,3,4,5
    t.samples[2].gaze_px = kTarget;           // frame 3 becomes perfect
    const FixationMeasurement m = select_best_window(t, TargetLabel::center, kTarget, kGeom, 3);
    EXPECT_EQ(m.window_start, 3);
    GazeTrace gaps = trace_with_errors({1, 1});
    gaps.samples.push_back({5, 0.0, kTarget, 1.0});
    EXPECT_THROW_CODE(select_best_window(gaps, TargetLabel::center, kTarget, kGeom, 3), ErrorCode::TraceTooShort);
}

TEST(BestWindow, RangeRestrictsSearch) {
    const GazeTrace t = trace_with_errors({1, 1, 1, 8, 7, 6, 5, 9});
    const FixationMeasurement m = select_best_window(t, TargetLabel::center, kTarget, kGeom, 3, FrameRange{3, 7});
    EXPECT_EQ(m.window_start, 4);
    EXPECT_THROW_CODE(select_best_window(t, TargetLabel::center, kTarget, kGeom, 3, FrameRange{6, 7}),
                      ErrorCode::TraceTooShort);
}

TEST(BestWindow, NeverWorseThanAnyWindowFromExhaustiveScan) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> err(0, 50);
    std::uniform_int_distribution<int> len(3, 200);
    std::uniform_int_distribution<int> kk(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = len(rng);
        const int k = std::min(kk(rng), n);
        std::vector<double> e(n);
        for (double& v : e) v = std::round(err(rng) * 4) / 4;  // coarse values force ties
        const FixationMeasurement m = select_best_window(trace_with_errors(e, 7), TargetLabel::left, kTarget, kGeom, k);
        double best = 1e300;
        int best_start = -1;
        for (int s = 0; s + k <= n; ++s) {
            double sum = 0;
            for (int i = s; i < s + k; ++i) sum += e[i];
            if (sum / k < best - 1e-12) {
                best = sum / k;
                best_start = s;
            }
        }
        ASSERT_NEAR(m.mean_error_px, best, 1e-9) << trial;
        ASSERT_EQ(m.window_start, best_start + 7) << trial;
    }
}

TEST(AccuracyTable, BundledCenterColumn) {
    const ColumnSummary& c = bundled_table().columns[label_index(TargetLabel::center)];
    EXPECT_NEAR(c.mean_px, 47.56, 0.05);
    EXPECT_NEAR(c.mean_deg, 2.08, 0.01);
    EXPECT_NEAR(c.sd_px, 14.14, 0.05);
}

TEST(AccuracyTable, BundledOverallAndExtremes) {
    const AccuracyTable& t = bundled_table();
    EXPECT_NEAR(t.overall_mean_deg, 2.50, 0.02);
    EXPECT_EQ(t.min_deg.value, 0.25);
    EXPECT_EQ(t.max_deg.value, 8.82);
    EXPECT_EQ(t.min_px.value, 6.05);
    EXPECT_EQ(t.max_px.value, 212.46);
    EXPECT_EQ(t.rows.size(), 24u);
}

TEST(AccuracyTable, SingleParticipantConstantCells) {
    ParticipantRow row{"p1", {}};
    row.cells.fill({10.0, 10.0});
    const AccuracyTable t = accuracy_table(std::vector<ParticipantRow>{row});
    for (const ColumnSummary& c : t.columns) {
        EXPECT_EQ(c.mean_px, 10.0);
        EXPECT_EQ(c.sd_px, 0.0);
        EXPECT_EQ(c.mean_deg, 10.0);
        EXPECT_EQ(c.sd_deg, 0.0);
    }
    EXPECT_EQ(t.overall_mean_px, 10.0);
}

TEST(AccuracyTable, OverallIsMeanOfColumnMeans) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(1, 200);
    std::vector<ParticipantRow> rows(13);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].participant = std::to_string(i);
        for (ErrorCell& c : rows[i].cells) c = {u(rng), u(rng) / 20};
    }
    const AccuracyTable t = accuracy_table(rows);
    double px = 0;
    double deg = 0;
    for (const ColumnSummary& c : t.columns) {
        px += c.mean_px / 9;
        deg += c.mean_deg / 9;
    }
    EXPECT_NEAR(t.overall_mean_px, px, 1e-12);
    EXPECT_NEAR(t.overall_mean_deg, deg, 1e-12);
}

TEST(AccuracyTable, SampleSdIsSelectable) {
    const AccuracyTable t = accuracy_table(read_gaze_table(testing_support::data_dir() / "gaze_table1.csv"),
                                           stats::SdKind::sample);
    const ColumnSummary& c = t.columns[label_index(TargetLabel::center)];
    EXPECT_NEAR(c.sd_px, bundled_table().columns[label_index(TargetLabel::center)].sd_px * std::sqrt(24.0 / 23.0),
                1e-9);
}

TEST(AccuracyTable, MeasurementsNeedEveryTargetOnce) {
    ParticipantMeasurements p{"p7", {}};
    for (TargetLabel l : kAllTargets) p.measurements.push_back({l, 0, 3, 1.0, 0.1});
    EXPECT_NO_THROW(accuracy_table(std::span<const ParticipantMeasurements>(&p, 1)));
    p.measurements.pop_back();
    try {
        accuracy_table(std::span<const ParticipantMeasurements>(&p, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IncompleteRow);
        EXPECT_NE(std::string(e.what()).find("p7"), std::string::npos);
    }
    EXPECT_THROW_CODE(accuracy_table(std::vector<ParticipantRow>{}), ErrorCode::EmptyInput);
}

TEST(Anova, PerfectlyAdditiveMatricesAreDegenerate) {
    EXPECT_THROW_CODE(rm_anova(matrix({{1, 3}, {2, 4}}), SphericityCorrection::none), ErrorCode::DegenerateVariance);
    EXPECT_THROW_CODE(rm_anova(matrix({{1, 2, 3}, {2, 3, 4}, {3, 4, 5}}), SphericityCorrection::none),
                      ErrorCode::DegenerateVariance);
}

TEST(Anova, HandDecomposedSmallMatrix) {
    // Grand mean 4; condition means 2, 3, 7; subject means 10/3, 4, 14/3.
    // SS_cond = 3*(4+1+9) = 42; SS_subj = 3*(4/9+0+4/9) = 8/3; SS_total = 52 -> SS_err = 22/3.
    const AnovaResult r = rm_anova(matrix({{1, 2, 7}, {2, 2, 8}, {3, 5, 6}}), SphericityCorrection::none);
    EXPECT_NEAR(r.ss_conditions, 42.0, 1e-12);
    EXPECT_NEAR(r.ss_subjects, 8.0 / 3.0, 1e-12);
    EXPECT_NEAR(r.ss_error, 22.0 / 3.0, 1e-12);
    EXPECT_EQ(r.df1, 2.0);
    EXPECT_EQ(r.df2, 4.0);
    EXPECT_NEAR(r.f, 126.0 / 11.0, 1e-12);
    const AnovaResult lb = rm_anova(matrix({{1, 2, 7}, {2, 2, 8}, {3, 5, 6}}), SphericityCorrection::lower_bound);
    EXPECT_EQ(lb.df1, 1.0);
    EXPECT_EQ(lb.df2, 2.0);
    EXPECT_EQ(lb.f, r.f);
    EXPECT_GT(lb.p, r.p);
}

TEST(Anova, EqualMeanNoiseIsNotSignificant) {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> noise(0, 1);
    Grid<double> g(5, 20);
    for (double& v : g.values()) v = noise(rng);
    EXPECT_GT(rm_anova(g, SphericityCorrection::none).p, 0.05);
}

TEST(Anova, InvariantToPerSubjectOffsets) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> noise(0, 1);
    Grid<double> g(6, 15);
    for (int y = 0; y < 15; ++y)
        for (int x = 0; x < 6; ++x) g.at(x, y) = 0.3 * x + noise(rng);
    const double f = rm_anova(g, SphericityCorrection::none).f;
    std::uniform_real_distribution<double> offset(-100, 100);
    for (int y = 0; y < 15; ++y) {
        const double o = offset(rng);
        for (int x = 0; x < 6; ++x) g.at(x, y) += o;
    }
    EXPECT_NEAR(rm_anova(g, SphericityCorrection::none).f, f, 1e-9);
}

TEST(Anova, BundledDegreesMatchIndependentImplementation) {
    // Reference values from an independent repeated-measures ANOVA implementation.
    const Grid<double> deg = table_values(bundled_table(), ErrorUnit::deg);
    const AnovaResult r = rm_anova(deg, SphericityCorrection::none);
    EXPECT_NEAR(r.f, 5.839713270628889, 1e-9);
    EXPECT_EQ(r.df1, 8.0);
    EXPECT_EQ(r.df2, 184.0);
    EXPECT_NEAR(r.p, 1.1922695294662526e-06, 1e-12);
    const AnovaResult lb = rm_anova(deg, SphericityCorrection::lower_bound);
    EXPECT_EQ(lb.df1, 1.0);
    EXPECT_EQ(lb.df2, 23.0);
    EXPECT_NEAR(lb.p, 0.024005768066531156, 1e-10);
    EXPECT_NEAR(rm_anova(table_values(bundled_table(), ErrorUnit::px), SphericityCorrection::none).f,
                7.160534751617921, 1e-9);
}

TEST(PairedT, ConstantDifferencesAreDegenerate) {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> b{2, 3, 4};
    EXPECT_THROW_CODE(paired_t_test(a, a), ErrorCode::DegenerateVariance);
    EXPECT_THROW_CODE(paired_t_test(a, b), ErrorCode::DegenerateVariance);
    const std::vector<double> c{1, 2};
    EXPECT_THROW_CODE(paired_t_test(a, c), ErrorCode::LengthMismatch);
}

TEST(PairedT, MatchesHandComputation) {
    // Differences -1, -1, -3: mean -5/3, sd sqrt(4/3), t = -2.5.
    const std::vector<double> a{1, 2, 4};
    const std::vector<double> b{2, 3, 7};
    const PairedT r = paired_t_test(a, b);
    EXPECT_NEAR(r.t, -2.5, 1e-12);
    EXPECT_EQ(r.df, 2.0);
    EXPECT_NEAR(r.mean_diff, -5.0 / 3.0, 1e-12);
    EXPECT_NEAR(r.p, 0.1296117202215108, 1e-12);
}

TEST(Posthoc, BundledCenterVersusBottomLeft) {
    const Grid<double> deg = table_values(bundled_table(), ErrorUnit::deg);
    const PairedT t = paired_t_test(column(deg, 4), column(deg, 6));
    EXPECT_NEAR(t.t, -4.6748011816266715, 1e-9);
    EXPECT_NEAR(t.p, 0.00010468757941020255, 1e-12);
    const auto contrasts = posthoc_pairwise(deg, 0.05);
    ASSERT_EQ(contrasts.size(), 36u);
    const auto it = std::find_if(contrasts.begin(), contrasts.end(),
                                 [](const PairwiseContrast& c) { return c.a == 4 && c.b == 6; });
    ASSERT_NE(it, contrasts.end());
    EXPECT_TRUE(it->significant);
    EXPECT_NEAR(it->p_bonferroni, 36 * t.p, 1e-12);
    EXPECT_LT(it->mean_diff, 0.0);
}

TEST(Posthoc, BonferroniIsConservative) {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> noise(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        Grid<double> g(5, 12);
        for (int y = 0; y < 12; ++y)
            for (int x = 0; x < 5; ++x) g.at(x, y) = 0.4 * x * (trial % 3) + noise(rng);
        const auto contrasts = posthoc_pairwise(g, 0.05);
        ASSERT_EQ(contrasts.size(), 10u);
        int corrected = 0;
        int raw = 0;
        for (const PairwiseContrast& c : contrasts) {
            EXPECT_GE(c.p_bonferroni, c.p_raw);
            EXPECT_LE(c.p_bonferroni, 1.0);
            corrected += c.significant;
            raw += c.p_raw < 0.05;
        }
        EXPECT_LE(corrected, raw);
    }
}

TEST(Posthoc, DegeneratePairIsFlagged) {
    const Grid<double> g = matrix({{1, 2, 5}, {2, 3, 4}, {3, 4, 9}, {1, 2, 2}});
    const auto contrasts = posthoc_pairwise(g, 0.05);
    ASSERT_EQ(contrasts.size(), 3u);
    EXPECT_TRUE(contrasts[0].degenerate);
    EXPECT_FALSE(contrasts[0].significant);
    EXPECT_FALSE(contrasts[1].degenerate);
}

TEST(Pearson, PerfectLinearRelations) {
    const std::vector<double> x{1, 2, 3};
    EXPECT_NEAR(pearson(x, std::vector<double>{2, 4, 6}).r, 1.0, 1e-15);
    EXPECT_NEAR(pearson(x, std::vector<double>{3, 2, 1}).r, -1.0, 1e-15);
}

TEST(Pearson, InvariantUnderPositiveAffineMaps) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> n(0, 1);
    std::uniform_real_distribution<double> scale(0.01, 100);
    std::uniform_real_distribution<double> shift(-1000, 1000);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(30);
        std::vector<double> y(30);
        for (int i = 0; i < 30; ++i) {
            x[i] = n(rng);
            y[i] = 0.5 * x[i] + n(rng);
        }
        const double r = pearson(x, y).r;
        const double a = scale(rng), b = shift(rng), c = scale(rng), d = shift(rng);
        std::vector<double> x2(x), y2(y), yneg(y);
        for (int i = 0; i < 30; ++i) {
            x2[i] = a * x[i] + b;
            y2[i] = c * y[i] + d;
            yneg[i] = -y[i];
        }
        EXPECT_NEAR(pearson(x2, y2).r, r, 1e-12);
        EXPECT_NEAR(pearson(x, yneg).r, -r, 1e-12);
    }
}

TEST(Pearson, BundledErrorVersusUsability) {
    const std::vector<double> err = participant_means(bundled_table(), ErrorUnit::deg);
    const auto responses = read_sus_csv(testing_support::data_dir() / "sus_table2.csv");
    std::vector<double> usable;
    for (const SusResponse& r : responses) usable.push_back(score_sus(r).usable);
    const Correlation c = pearson(err, usable);
    EXPECT_NEAR(c.r, 0.049027663363953145, 1e-12);
    EXPECT_NEAR(c.p, 0.8200350024103742, 1e-10);
    EXPECT_EQ(c.n, 24u);
}

TEST(Pearson, Errors) {
    const std::vector<double> x{1, 2, 3};
    EXPECT_THROW_CODE(pearson(x, std::vector<double>{1, 1, 1}), ErrorCode::ZeroVariance);
    EXPECT_THROW_CODE(pearson(x, std::vector<double>{1, 2}), ErrorCode::LengthMismatch);
    EXPECT_THROW_CODE(pearson(std::vector<double>{1, 2}, std::vector<double>{2, 1}), ErrorCode::InvalidArgument);
}
