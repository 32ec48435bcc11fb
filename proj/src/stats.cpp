#include "docq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "docq/error.hpp"

namespace docq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Continued fraction for the incomplete beta (Lentz's method).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double solve_upper_tail(double target, double lo, double hi, const auto& upper_tail) {
    // upper_tail decreases in the statistic; expand hi until it brackets.
    while (upper_tail(hi) > target && hi < 1e12) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (upper_tail(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

void fill_t_tail(TTestResult& r) {
    const double abs_t = std::fabs(r.statistic);
    r.p_one_tail = student_t_upper_tail(abs_t, r.df);
    r.p_two_tail = std::min(1.0, 2.0 * r.p_one_tail);
    r.t_critical_one_tail = student_t_critical(r.df, 0.05);
    r.t_critical_two_tail = student_t_critical(r.df, 0.025);
}

}  // namespace

GroupSummary summarize(std::span<const double> values, const std::string& name) {
    if (values.empty()) throw TooFewSamples("summarize: need at least one value");
    GroupSummary s;
    s.name = name;
    s.n = values.size();
    s.sum = std::accumulate(values.begin(), values.end(), 0.0);
    s.mean = s.sum / static_cast<double>(s.n);
    if (s.n < 2) {
        s.variance_flagged = true;
    } else {
        double ss = 0;
        for (const double v : values) {
            const double d = v - s.mean;
            ss += d * d;
        }
        s.variance = ss / static_cast<double>(s.n - 1);
    }
    s.stddev = std::sqrt(s.variance);
    return s;
}

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw TooFewSamples("welch_t_test: each sample needs n >= 2");
    TTestResult r;
    r.a = summarize(a, "a");
    r.b = summarize(b, "b");
    const double na = static_cast<double>(r.a.n);
    const double nb = static_cast<double>(r.b.n);
    const double va_n = r.a.variance / na;
    const double vb_n = r.b.variance / nb;
    const double se2 = va_n + vb_n;
    const double diff = r.a.mean - r.b.mean;
    if (se2 == 0.0) {
        r.statistic = diff == 0.0 ? 0.0 : (diff > 0 ? kInf : -kInf);
        r.df = na + nb - 2.0;
    } else {
        r.statistic = diff / std::sqrt(se2);
        r.df = se2 * se2 /
               (va_n * va_n / (na - 1.0) + vb_n * vb_n / (nb - 1.0));
    }
    fill_t_tail(r);
    return r;
}

AnovaResult one_way_anova(std::span<const std::vector<double>> groups) {
    if (groups.size() < 2) throw TooFewSamples("one_way_anova: need at least two groups");
    AnovaResult r;
    std::uint64_t total_n = 0;
    double grand_sum = 0;
    for (const auto& g : groups) {
        if (g.empty()) throw TooFewSamples("one_way_anova: empty group");
        r.groups.push_back(summarize(g, "group" + std::to_string(r.groups.size() + 1)));
        total_n += g.size();
        grand_sum += r.groups.back().sum;
    }
    const double k = static_cast<double>(groups.size());
    const double n = static_cast<double>(total_n);
    if (total_n <= groups.size())
        throw TooFewSamples("one_way_anova: total n must exceed group count");
    const double grand_mean = grand_sum / n;

    double ss_between = 0;
    double ss_within = 0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const double d = r.groups[i].mean - grand_mean;
        ss_between += static_cast<double>(r.groups[i].n) * d * d;
        for (const double v : groups[i]) {
            const double e = v - r.groups[i].mean;
            ss_within += e * e;
        }
    }
    r.df_between = k - 1.0;
    r.df_within = n - k;
    r.f_critical = f_critical_value(r.df_between, r.df_within, 0.05);
    if (ss_within == 0.0) {
        if (ss_between == 0.0) {
            r.f = 0.0;
            r.p = 1.0;
        } else {
            r.f = kInf;
            r.p = 0.0;
            r.infinite_f = true;
        }
        return r;
    }
    const double ms_between = ss_between / r.df_between;
    const double ms_within = ss_within / r.df_within;
    r.f = ms_between / ms_within;
    r.p = f_upper_tail(r.f, r.df_between, r.df_within);
    return r;
}

EvalReport roc_auc(std::span<const double> scores, const std::vector<bool>& labels) {
    if (scores.size() != labels.size())
        throw DimensionMismatch("roc_auc: scores and labels differ in length");
    EvalReport report;
    for (const bool l : labels) (l ? report.n_pos : report.n_neg)++;
    if (report.n_pos == 0 || report.n_neg == 0)
        throw SingleClass("roc_auc: both classes required");

    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return scores[i] < scores[j]; });

    // Average ranks across ties, accumulate positive ranks.
    double pos_rank_sum = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // ranks are 1-based
        for (std::size_t k = i; k < j; ++k)
            if (labels[order[k]]) pos_rank_sum += avg_rank;
        i = j;
    }
    const double np = static_cast<double>(report.n_pos);
    const double nn = static_cast<double>(report.n_neg);
    report.auc = (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);

    // ROC: sweep thresholds over distinct scores, highest first.
    report.roc_points.push_back({0.0, 0.0});
    std::uint64_t tp = 0, fp = 0;
    for (std::size_t i = n; i > 0;) {
        std::size_t j = i;
        while (j > 0 && scores[order[j - 1]] == scores[order[i - 1]]) --j;
        for (std::size_t k = j; k < i; ++k)
            (labels[order[k]] ? tp : fp)++;
        report.roc_points.push_back(
            {static_cast<double>(fp) / nn, static_cast<double>(tp) / np});
        i = j;
    }
    return report;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0) || !(b > 0)) throw NonFinite("incomplete beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_upper_tail(double t, double df) {
    if (std::isinf(t)) return t > 0 ? 0.0 : 1.0;
    const double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    return t >= 0 ? tail : 1.0 - tail;
}

double f_upper_tail(double f, double df1, double df2) {
    if (f <= 0.0) return 1.0;
    if (std::isinf(f)) return 0.0;
    return regularized_incomplete_beta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f));
}

double student_t_critical(double df, double upper_p) {
    return solve_upper_tail(upper_p, 0.0, 8.0,
                            [df](double t) { return student_t_upper_tail(t, df); });
}

double f_critical_value(double df1, double df2, double upper_p) {
    return solve_upper_tail(upper_p, 0.0, 8.0,
                            [&](double f) { return f_upper_tail(f, df1, df2); });
}

}  // namespace docq
