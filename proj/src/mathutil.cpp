#include "degseq/mathutil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace degseq {

double log_binomial_coef(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) throw std::invalid_argument("log_binomial_coef: k outside [0, n]");
    return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
           std::lgamma(double(n - k) + 1.0);
}

double log_binomial_pmf(std::int64_t k, std::int64_t n, double p) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("log_binomial_pmf: p outside (0,1)");
    return log_binomial_coef(n, k) + double(k) * std::log(p) +
           double(n - k) * std::log1p(-p);
}

double binomial_pmf(std::int64_t k, std::int64_t n, double p) {
    if (k < 0 || k > n) return 0.0;
    return std::exp(log_binomial_pmf(k, n, p));
}

double normal_pdf(double x, double mean, double sigma) {
    const double z = (x - mean) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * M_PI));
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

namespace {

// Series expansion for the lower regularized gamma P(a, x); valid for x < a+1.
double gamma_p_series(double a, double x) {
    const int max_iter = 1000;
    const double eps = 1e-15;
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < max_iter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * eps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for the upper regularized gamma Q(a, x); x >= a+1.
double gamma_q_cf(double a, double x) {
    const int max_iter = 1000;
    const double eps = 1e-15;
    const double fpmin = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= max_iter; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_upper(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("regularized_gamma_upper: bad args");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_tail(double statistic, double dof) {
    if (statistic <= 0.0) return 1.0;
    return regularized_gamma_upper(0.5 * dof, 0.5 * statistic);
}

ChiSquareResult chi_square_gof(std::span<const std::int64_t> observed,
                               std::span<const double> expected_probs,
                               double min_expected) {
    if (observed.size() != expected_probs.size())
        throw std::invalid_argument("chi_square_gof: size mismatch");
    std::int64_t draws = 0;
    for (auto o : observed) draws += o;
    if (draws <= 0) throw std::invalid_argument("chi_square_gof: no observations");

    double stat = 0.0;
    int cells = 0;
    double pooled_exp = 0.0;
    std::int64_t pooled_obs = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double exp_count = expected_probs[i] * double(draws);
        if (exp_count < min_expected) {
            pooled_exp += exp_count;
            pooled_obs += observed[i];
            continue;
        }
        const double diff = double(observed[i]) - exp_count;
        stat += diff * diff / exp_count;
        ++cells;
    }
    if (pooled_exp > 0.0) {
        const double diff = double(pooled_obs) - pooled_exp;
        stat += diff * diff / pooled_exp;
        ++cells;
    }
    ChiSquareResult result;
    result.statistic = stat;
    result.cells_used = cells;
    result.dof = std::max(1, cells - 1);
    result.p_value = chi_square_tail(stat, double(result.dof));
    return result;
}

WilsonInterval wilson_interval(std::int64_t hits, std::int64_t trials, double z) {
    if (trials <= 0 || hits < 0 || hits > trials)
        throw std::invalid_argument("wilson_interval: bad counts");
    const double n = double(trials);
    const double phat = double(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    WilsonInterval w;
    w.lo = std::max(0.0, center - half);
    w.hi = std::min(1.0, center + half);
    return w;
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 16) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

void PairwiseAccumulator::add(double x) {
    // Merge completed runs: bit i of count holds a partial sum of 2^i inputs.
    std::uint64_t c = count_;
    std::size_t level = 0;
    while (c & 1) {
        x += levels_[level];
        c >>= 1;
        ++level;
    }
    if (level == levels_.size())
        levels_.push_back(x);
    else
        levels_[level] = x;
    ++count_;
}

double PairwiseAccumulator::total() const {
    double s = 0.0;
    std::uint64_t c = count_;
    for (std::size_t level = 0; level < levels_.size(); ++level, c >>= 1)
        if (c & 1) s += levels_[level];
    return s;
}

WlsFit weighted_least_squares(std::span<const double> x, std::span<const double> y,
                              std::span<const double> w) {
    if (x.size() != y.size() || x.size() != w.size())
        throw std::invalid_argument("weighted_least_squares: size mismatch");
    WlsFit fit;
    fit.points = int(x.size());
    if (x.size() < 2) return fit;

    double sw = 0.0, swx = 0.0, swy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        swx += w[i] * x[i];
        swy += w[i] * y[i];
    }
    if (!(sw > 0.0)) return fit;
    const double xbar = swx / sw;
    const double ybar = swy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - xbar;
        sxx += w[i] * dx * dx;
        sxy += w[i] * dx * (y[i] - ybar);
    }
    if (!(sxx > 0.0)) return fit;
    fit.slope = sxy / sxx;
    fit.intercept = ybar - fit.slope * xbar;
    // Weights are 1/Var(y_i), so the parameter covariance is (X'WX)^-1.
    fit.slope_se = std::sqrt(1.0 / sxx);
    fit.intercept_se = std::sqrt(1.0 / sw + xbar * xbar / sxx);
    fit.valid = true;
    return fit;
}

}  // namespace degseq
