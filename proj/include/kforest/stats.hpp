#pragma once

#include <cstddef>
#include <vector>

namespace kforest {

double mean(const std::vector<double>& xs);

/** Sample standard deviation with the n-1 denominator. */
double sample_stddev(const std::vector<double>& xs);

/** Regularized incomplete beta I_x(a, b); absolute error well under 1e-6. */
double regularized_incomplete_beta(double a, double b, double x);

/** Two-sided tail probability of Student's t with `df` degrees of freedom. */
double student_t_two_sided_p(double t, int df);

struct TTestResult {
    double t = 0.0;
    double p = 1.0;
    std::size_t samples = 0;
};

/**
 * Paired t-test on equal-length samples: t = mean(d) / (sd(d) / sqrt(n)) over
 * the differences d = xs - ys, two-sided p with n-1 degrees of freedom.
 * Throws DegenerateSampleError when the differences have zero variance.
 */
TTestResult paired_t_test(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace kforest
