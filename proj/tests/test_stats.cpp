#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "docq/error.hpp"
#include "docq/stats.hpp"
#include "support/oracles.hpp"

using namespace docq;

namespace {

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1p-53;
    return v;
}

}  // namespace

TEST_SUITE("stats") {
    TEST_CASE("summarize small examples") {
        const std::vector<double> v = {1, 2, 3};
        const GroupSummary s = summarize(v, "g");
        CHECK(s.n == 3);
        CHECK(s.sum == doctest::Approx(6.0).epsilon(1e-15));
        CHECK(s.mean == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(s.variance == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(!s.variance_flagged);

        const std::vector<double> single = {5};
        const GroupSummary s1 = summarize(single);
        CHECK(s1.variance == 0.0);
        CHECK(s1.variance_flagged);

        CHECK_THROWS_AS(summarize(std::vector<double>{}), TooFewSamples);
    }

    TEST_CASE("summarize matches the extended-precision oracle on 1000 values") {
        std::mt19937_64 rng(71);
        const std::vector<double> v = random_values(rng, 1000, -1e6, 1e6);
        const GroupSummary s = summarize(v);
        const oracle::Summary o = oracle::summarize(v);
        CHECK(s.mean == doctest::Approx(static_cast<double>(o.mean)).epsilon(1e-9));
        CHECK(s.variance == doctest::Approx(static_cast<double>(o.variance)).epsilon(1e-9));
    }

    TEST_CASE("welch on identical samples") {
        const std::vector<double> a = {1, 2, 3, 4};
        const TTestResult r = welch_t_test(a, a);
        CHECK(r.statistic == 0.0);
        CHECK(r.p_two_tail == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.p_one_tail == doctest::Approx(0.5).epsilon(1e-12));
    }

    TEST_CASE("welch handbook example") {
        const std::vector<double> a = {1, 2, 3, 4, 5};
        const std::vector<double> b = {2, 3, 4, 5, 6};
        const TTestResult r = welch_t_test(a, b);
        const oracle::WelchResult o = oracle::welch(a, b);
        CHECK(r.statistic == doctest::Approx(static_cast<double>(o.t)).epsilon(1e-9));
        CHECK(r.df == doctest::Approx(static_cast<double>(o.df)).epsilon(1e-9));
        CHECK(r.statistic == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(r.df == doctest::Approx(8.0).epsilon(1e-12));
    }

    TEST_CASE("welch df falls between min(n)-1 and pooled df") {
        std::mt19937_64 rng(73);
        std::vector<double> a = random_values(rng, 2519, 0, 10);
        std::vector<double> b = random_values(rng, 2303, 0, 25);
        const TTestResult r = welch_t_test(a, b);
        CHECK(r.df > 2302.0);
        CHECK(r.df < 4820.0);
    }

    TEST_CASE("welch is antisymmetric") {
        std::mt19937_64 rng(79);
        for (int round = 0; round < 20; ++round) {
            const auto a = random_values(rng, 5 + rng() % 20, -3, 9);
            const auto b = random_values(rng, 5 + rng() % 20, -1, 4);
            const TTestResult ab = welch_t_test(a, b);
            const TTestResult ba = welch_t_test(b, a);
            CHECK(ab.statistic == doctest::Approx(-ba.statistic).epsilon(1e-12));
            CHECK(ab.p_one_tail == doctest::Approx(ba.p_one_tail).epsilon(1e-12));
            CHECK(ab.p_two_tail == doctest::Approx(ba.p_two_tail).epsilon(1e-12));
        }
    }

    TEST_CASE("welch rejects tiny samples") {
        CHECK_THROWS_AS(welch_t_test(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
                        TooFewSamples);
    }

    TEST_CASE("welch matches oracle on random data") {
        std::mt19937_64 rng(83);
        for (int round = 0; round < 100; ++round) {
            const auto a = random_values(rng, 3 + rng() % 40, -5, 5);
            const auto b = random_values(rng, 3 + rng() % 40, 0, 3);
            const TTestResult r = welch_t_test(a, b);
            const oracle::WelchResult o = oracle::welch(a, b);
            CHECK(r.statistic == doctest::Approx(static_cast<double>(o.t)).epsilon(1e-9));
            CHECK(r.df == doctest::Approx(static_cast<double>(o.df)).epsilon(1e-9));
            const double expected_p = static_cast<double>(
                oracle::t_upper_tail(std::fabs(static_cast<long double>(r.statistic)),
                                     static_cast<long double>(r.df)));
            CHECK(r.p_one_tail == doctest::Approx(expected_p).epsilon(1e-8));
        }
    }

    TEST_CASE("t critical values invert the upper tail") {
        for (const double df : {1.0, 4.0, 17.0, 120.0, 3538.0}) {
            const double c1 = student_t_critical(df, 0.05);
            CHECK(student_t_upper_tail(c1, df) == doctest::Approx(0.05).epsilon(1e-9));
            const double c2 = student_t_critical(df, 0.025);
            CHECK(student_t_upper_tail(c2, df) == doctest::Approx(0.025).epsilon(1e-9));
            CHECK(c2 > c1);
        }
        // classic table entry: t_{0.025, inf-ish}
        CHECK(student_t_critical(1e6, 0.025) == doctest::Approx(1.959964).epsilon(1e-4));
    }

    TEST_CASE("anova of identical constant groups is zero") {
        const std::vector<std::vector<double>> groups = {{2, 2, 2}, {2, 2, 2}, {2, 2}};
        const AnovaResult r = one_way_anova(groups);
        CHECK(r.f == 0.0);
        CHECK(r.p == 1.0);
        CHECK(!r.infinite_f);
    }

    TEST_CASE("anova degrees of freedom match the group layout") {
        std::mt19937_64 rng(89);
        std::vector<std::vector<double>> groups(7);
        std::size_t total = 4881;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const std::size_t n = g + 1 < groups.size() ? 697 : total - 697 * 6;
            groups[g] = random_values(rng, n, 0, 1);
        }
        const AnovaResult r = one_way_anova(groups);
        CHECK(r.df_between == 6.0);
        CHECK(r.df_within == 4874.0);
    }

    TEST_CASE("anova matches the brute-force oracle") {
        std::mt19937_64 rng(97);
        for (int round = 0; round < 100; ++round) {
            std::vector<std::vector<double>> groups(2 + rng() % 4);
            for (auto& g : groups) g = random_values(rng, 2 + rng() % 20, -4, 8);
            const AnovaResult r = one_way_anova(groups);
            const double expected = static_cast<double>(oracle::anova_f(groups));
            CHECK(r.f == doctest::Approx(expected).epsilon(1e-9));
            const double expected_p = static_cast<double>(oracle::f_upper_tail(
                static_cast<long double>(r.f), static_cast<long double>(r.df_between),
                static_cast<long double>(r.df_within)));
            CHECK(r.p == doctest::Approx(expected_p).epsilon(1e-8));
        }
    }

    TEST_CASE("two-group anova equals the squared pooled t") {
        std::mt19937_64 rng(101);
        for (int round = 0; round < 50; ++round) {
            const auto a = random_values(rng, 3 + rng() % 15, -2, 6);
            const auto b = random_values(rng, 3 + rng() % 15, 1, 3);
            const std::vector<std::vector<double>> groups = {a, b};
            const AnovaResult r = one_way_anova(groups);
            const long double t = oracle::pooled_t(a, b);
            CHECK(r.f == doctest::Approx(static_cast<double>(t * t)).epsilon(1e-9));
        }
    }

    TEST_CASE("anova flags infinite F") {
        const std::vector<std::vector<double>> groups = {{1, 1, 1}, {2, 2, 2}};
        const AnovaResult r = one_way_anova(groups);
        CHECK(r.infinite_f);
        CHECK(std::isinf(r.f));
        CHECK(r.p == 0.0);
    }

    TEST_CASE("roc perfect and degenerate rankings") {
        const std::vector<double> scores = {0.9, 0.8, 0.2, 0.1};
        const std::vector<bool> labels = {true, true, false, false};
        CHECK(roc_auc(scores, labels).auc == doctest::Approx(1.0).epsilon(1e-15));

        const std::vector<double> flat = {0.5, 0.5, 0.5, 0.5};
        CHECK(roc_auc(flat, labels).auc == doctest::Approx(0.5).epsilon(1e-15));

        const std::vector<bool> single(4, true);
        CHECK_THROWS_AS(roc_auc(scores, single), SingleClass);
    }

    TEST_CASE("roc equals the all-pairs oracle exactly") {
        std::mt19937_64 rng(103);
        for (int round = 0; round < 200; ++round) {
            const std::size_t n = 4 + rng() % 40;
            std::vector<double> scores(n);
            std::vector<bool> labels(n);
            bool saw_pos = false, saw_neg = false;
            for (std::size_t i = 0; i < n; ++i) {
                scores[i] = static_cast<double>(rng() % 12);  // force ties
                labels[i] = rng() % 2 == 0;
                (labels[i] ? saw_pos : saw_neg) = true;
            }
            if (!saw_pos || !saw_neg) {
                labels[0] = true;
                labels[1] = false;
            }
            const EvalReport r = roc_auc(scores, labels);
            CHECK(r.auc == oracle::auc_all_pairs(scores, labels));
        }
    }

    TEST_CASE("auc is invariant under strictly increasing transforms") {
        std::mt19937_64 rng(107);
        std::vector<double> scores(60);
        std::vector<bool> labels(60);
        for (std::size_t i = 0; i < scores.size(); ++i) {
            scores[i] = static_cast<double>(rng() % 100) / 10.0;
            labels[i] = rng() % 3 == 0;
        }
        labels[0] = true;
        labels[1] = false;
        std::vector<double> transformed(scores.size());
        std::transform(scores.begin(), scores.end(), transformed.begin(),
                       [](double s) { return std::exp(0.3 * s) - 7.0; });
        CHECK(roc_auc(scores, labels).auc == roc_auc(transformed, labels).auc);
    }

    TEST_CASE("roc curve integrates to the rank auc when scores are distinct") {
        std::mt19937_64 rng(109);
        std::vector<double> scores(50);
        std::vector<bool> labels(50);
        for (std::size_t i = 0; i < scores.size(); ++i) {
            scores[i] = static_cast<double>(i) + static_cast<double>(rng() % 100) * 1e-4;
            labels[i] = rng() % 2 == 0;
        }
        labels[0] = true;
        labels[1] = false;
        const EvalReport r = roc_auc(scores, labels);
        double area = 0;
        for (std::size_t i = 1; i < r.roc_points.size(); ++i) {
            const auto& p0 = r.roc_points[i - 1];
            const auto& p1 = r.roc_points[i];
            CHECK(p1.fpr >= p0.fpr);
            CHECK(p1.tpr >= p0.tpr);
            area += (p1.fpr - p0.fpr) * (p1.tpr + p0.tpr) / 2.0;
        }
        CHECK(r.roc_points.front().fpr == 0.0);
        CHECK(r.roc_points.front().tpr == 0.0);
        CHECK(r.roc_points.back().fpr == 1.0);
        CHECK(r.roc_points.back().tpr == 1.0);
        CHECK(area == doctest::Approx(r.auc).epsilon(1e-12));
    }

    TEST_CASE("incomplete beta matches numerical integration") {
        const double cases[][3] = {
            {0.5, 0.5, 0.3}, {2, 3, 0.5},   {10, 0.5, 0.9}, {0.5, 7, 0.05},
            {40, 40, 0.45}, {1, 1, 0.125}, {2519.0 / 2, 0.5, 0.6},
        };
        for (const auto& c : cases) {
            const double got = regularized_incomplete_beta(c[0], c[1], c[2]);
            const double expected = static_cast<double>(oracle::ibeta_quadrature(
                static_cast<long double>(c[0]), static_cast<long double>(c[1]),
                static_cast<long double>(c[2])));
            CHECK(got == doctest::Approx(expected).epsilon(1e-10));
        }
        CHECK(regularized_incomplete_beta(2, 3, 0.0) == 0.0);
        CHECK(regularized_incomplete_beta(2, 3, 1.0) == 1.0);
    }
}
