#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace docq {

struct GroupSummary {
    std::string name;
    std::uint64_t n = 0;
    double sum = 0;
    double mean = 0;
    double variance = 0;  // sample variance, n-1 denominator
    double stddev = 0;
    bool variance_flagged = false;  // n < 2: variance reported as 0
};

GroupSummary summarize(std::span<const double> values, const std::string& name = "");

struct TTestResult {
    GroupSummary a, b;
    double statistic = 0;
    double df = 0;
    double p_one_tail = 0;  // P(T >= |t|)
    double p_two_tail = 0;
    double t_critical_one_tail = 0;  // alpha = 0.05
    double t_critical_two_tail = 0;
};

/// Welch's unequal-variance t-test. Zero pooled standard error is settled
/// by convention: t = 0 for equal means, +-inf otherwise, df = n_a+n_b-2.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

struct AnovaResult {
    std::vector<GroupSummary> groups;
    double f = 0;
    double df_between = 0;
    double df_within = 0;
    double p = 1;
    double f_critical = 0;   // alpha = 0.05
    bool infinite_f = false; // zero within-group variance, distinct means
};

AnovaResult one_way_anova(std::span<const std::vector<double>> groups);

struct RocPoint {
    double fpr = 0;
    double tpr = 0;
};

struct EvalReport {
    double auc = 0;
    std::vector<RocPoint> roc_points;
    std::uint64_t n_pos = 0;
    std::uint64_t n_neg = 0;
};

/// AUC via the tie-corrected Mann-Whitney rank formula; positives are
/// label true. ROC thresholds at each distinct score, descending.
EvalReport roc_auc(std::span<const double> scores, const std::vector<bool>& labels);

/// I_x(a,b), continued-fraction evaluation. Domain: a,b > 0, x in [0,1].
double regularized_incomplete_beta(double a, double b, double x);

/// Upper tails and alpha-level critical values of Student's t and F.
double student_t_upper_tail(double t, double df);
double f_upper_tail(double f, double df1, double df2);
double student_t_critical(double df, double upper_p);
double f_critical_value(double df1, double df2, double upper_p);

}  // namespace docq
