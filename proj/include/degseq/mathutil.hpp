#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace degseq {

// log C(n, k); requires 0 <= k <= n.
double log_binomial_coef(std::int64_t n, std::int64_t k);

// log of the Bin(n, p) mass at k, p in (0,1); -inf when k outside [0, n].
double log_binomial_pmf(std::int64_t k, std::int64_t n, double p);

double binomial_pmf(std::int64_t k, std::int64_t n, double p);

// Density of N(mean, sigma^2) at x.
double normal_pdf(double x, double mean, double sigma);

// Standard normal CDF and upper tail (Q-function), via erfc.
double normal_cdf(double z);
double normal_tail(double z);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double regularized_gamma_upper(double a, double x);

// Upper tail of a chi-square distribution with dof degrees of freedom.
double chi_square_tail(double statistic, double dof);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    int cells_used = 0;  // after pooling
};

// Goodness-of-fit of observed counts against expected cell probabilities.
// Cells whose expected count falls below min_expected are pooled together.
ChiSquareResult chi_square_gof(std::span<const std::int64_t> observed,
                               std::span<const double> expected_probs,
                               double min_expected = 5.0);

struct WilsonInterval {
    double lo = 0.0;
    double hi = 1.0;
};

// Wilson score interval for a binomial proportion (default 95%).
WilsonInterval wilson_interval(std::int64_t hits, std::int64_t trials,
                               double z = 1.959963984540054);

// Deterministic pairwise (tree) summation; bit-stable regardless of how the
// caller produced the values.
double pairwise_sum(std::span<const double> values);

// Streaming variant of pairwise_sum: merges equal-sized runs binary-counter
// style, so memory is O(log n) and the reduction tree is input-order fixed.
class PairwiseAccumulator {
public:
    void add(double x);
    double total() const;
    void reset() { levels_.clear(); }

private:
    std::vector<double> levels_;
    std::uint64_t count_ = 0;
};

struct WlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double intercept_se = 0.0;
    int points = 0;
    bool valid = false;
};

// Weighted least squares of y on x with per-point weights 1/Var(y_i).
WlsFit weighted_least_squares(std::span<const double> x, std::span<const double> y,
                              std::span<const double> w);

}  // namespace degseq
