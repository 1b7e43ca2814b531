#include "kforest/stats.hpp"

#include <cmath>
#include <string>

#include "kforest/errors.hpp"

namespace kforest {

namespace {

/** Continued fraction for the incomplete beta, modified Lentz form. */
double beta_fraction(double a, double b, double x) {
    constexpr double kTiny = 1e-30;
    constexpr double kTol = 1e-12;
    constexpr int kMaxRounds = 300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxRounds; ++m) {
        const int m2 = 2 * m;
        double coeff = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + coeff * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + coeff / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        coeff = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + coeff * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + coeff / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kTol) return h;
    }
    throw ConvergenceError("incomplete beta: continued fraction did not converge");
}

}  // namespace

double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw DegenerateSampleError("mean: empty sample");
    double sum = 0.0;
    for (const double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double sample_stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) throw DegenerateSampleError("sample_stddev: need at least two values");
    const double center = mean(xs);
    double sum_sq = 0.0;
    for (const double x : xs) sum_sq += (x - center) * (x - center);
    return std::sqrt(sum_sq / static_cast<double>(xs.size() - 1));
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw Error("incomplete beta: shape parameters must be positive");
    if (!(x >= 0.0) || !(x <= 1.0)) throw Error("incomplete beta: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    // the fraction converges fast only below the crossover point
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
    return 1.0 - front * beta_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, int df) {
    if (df < 1) throw Error("student t: need at least one degree of freedom");
    const double x = df / (df + t * t);
    return regularized_incomplete_beta(df / 2.0, 0.5, x);
}

TTestResult paired_t_test(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw Error("paired_t_test: sample lengths differ");
    if (xs.size() < 2) throw DegenerateSampleError("paired_t_test: need at least two pairs");
    std::vector<double> diffs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) diffs[i] = xs[i] - ys[i];
    const double center = mean(diffs);
    const double spread = sample_stddev(diffs);
    if (spread == 0.0)
        throw DegenerateSampleError("paired_t_test: differences have zero variance");
    TTestResult r;
    r.samples = xs.size();
    r.t = center / (spread / std::sqrt(static_cast<double>(xs.size())));
    r.p = student_t_two_sided_p(r.t, static_cast<int>(xs.size()) - 1);
    return r;
}

}  // namespace kforest
