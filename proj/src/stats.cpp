#include "metasel/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace metasel {

double mean(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 200;
    constexpr double kEps = 3.0e-14;
    constexpr double kFpMin = 1.0e-300;

    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double reg_incomplete_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete beta: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    double ln_beta = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                     a * std::log(x) + b * std::log(1.0 - x);
    double front = std::exp(ln_beta);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double t_test_p_two_sided(double t, double dof) {
    if (dof <= 0.0) return 1.0;
    double x = dof / (dof + t * t);
    return reg_incomplete_beta(dof / 2.0, 0.5, x);
}

PairedTTest paired_t_test(const std::vector<double>& xs, const std::vector<double>& ys) {
    PairedTTest r;
    if (xs.size() != ys.size() || xs.size() < 2) return r;
    std::vector<double> deltas(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) deltas[i] = xs[i] - ys[i];
    double sd = sample_std(deltas);
    if (sd == 0.0) return r;
    r.dof = static_cast<double>(xs.size() - 1);
    r.t = mean(deltas) / (sd / std::sqrt(static_cast<double>(xs.size())));
    r.p = t_test_p_two_sided(r.t, r.dof);
    r.valid = true;
    return r;
}

double chi2_p_one_dof(double statistic) {
    if (statistic <= 0.0) return 1.0;
    return std::erfc(std::sqrt(statistic / 2.0));
}

Chi2Result chi2_2x2(uint64_t a_success, uint64_t a_failure,
                    uint64_t b_success, uint64_t b_failure) {
    Chi2Result r;
    double n = static_cast<double>(a_success + a_failure + b_success + b_failure);
    if (n == 0.0) return r;
    double row_a = static_cast<double>(a_success + a_failure);
    double row_b = static_cast<double>(b_success + b_failure);
    double col_s = static_cast<double>(a_success + b_success);
    double col_f = static_cast<double>(a_failure + b_failure);
    if (row_a == 0.0 || row_b == 0.0 || col_s == 0.0 || col_f == 0.0) {
        // a degenerate margin: statistic defined as 0, test not meaningful
        r.statistic = 0.0;
        r.p = 1.0;
        r.valid = false;
        return r;
    }
    double obs[2][2] = {{static_cast<double>(a_success), static_cast<double>(a_failure)},
                        {static_cast<double>(b_success), static_cast<double>(b_failure)}};
    double rows[2] = {row_a, row_b};
    double cols[2] = {col_s, col_f};
    double stat = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            double expected = rows[i] * cols[j] / n;
            double diff = obs[i][j] - expected;
            stat += diff * diff / expected;
        }
    r.statistic = stat;
    r.p = chi2_p_one_dof(stat);
    r.valid = true;
    return r;
}

}  // namespace metasel
