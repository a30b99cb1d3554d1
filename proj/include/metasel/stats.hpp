#pragma once

#include <cstdint>
#include <vector>

namespace metasel {

double mean(const std::vector<double>& xs);
double sample_std(const std::vector<double>& xs);  // n-1 denominator

// Regularized incomplete beta function I_x(a, b).
double reg_incomplete_beta(double a, double b, double x);

// Two-sided p-value of Student's t with `dof` degrees of freedom.
double t_test_p_two_sided(double t, double dof);

struct PairedTTest {
    double t = 0.0;
    double p = 1.0;     // two-sided
    double dof = 0.0;
    bool valid = false; // false when fewer than 2 pairs or zero variance
};

// Paired t-test over per-pair deltas xs - ys.
PairedTTest paired_t_test(const std::vector<double>& xs, const std::vector<double>& ys);

// Survival function of chi-squared with 1 degree of freedom.
double chi2_p_one_dof(double statistic);

struct Chi2Result {
    double statistic = 0.0;
    double p = 1.0;
    bool valid = false;  // false when an expected cell is zero
};

// Pearson chi-squared (no continuity correction) on the 2x2 table
// [[a_success, a_failure], [b_success, b_failure]].
Chi2Result chi2_2x2(uint64_t a_success, uint64_t a_failure,
                    uint64_t b_success, uint64_t b_failure);

}  // namespace metasel
