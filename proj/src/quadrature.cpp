#include "degseq/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "degseq/errors.hpp"

namespace degseq {

namespace {

GaussLegendreRule compute_rule(int order) {
    if (order < 2) throw std::invalid_argument("gauss_legendre_rule: order < 2");
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_order.
        double x = std::cos(M_PI * (double(i) + 0.75) / (double(order) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - double(j) * p2) / (double(j) + 1.0);
            }
            pp = double(order) * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int order) {
    static std::mutex mu;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order) {
    const auto& rule = gauss_legendre_rule(order);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < order; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

AdaptiveResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a,
                                       double b, double rel_tol, int max_levels) {
    if (!(b > a)) {
        AdaptiveResult r;
        r.value = 0.0;
        r.achieved_rel_tol = 0.0;
        return r;
    }
    constexpr int kOrder = 15;
    double prev = gauss_legendre(f, a, b, kOrder);
    double last_rel = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= max_levels; ++level) {
        const std::size_t panels = std::size_t(1) << level;
        const double width = (b - a) / double(panels);
        double cur = 0.0;
        for (std::size_t i = 0; i < panels; ++i) {
            const double lo = a + double(i) * width;
            cur += gauss_legendre(f, lo, lo + width, kOrder);
        }
        const double scale = std::max(std::abs(cur), std::abs(prev));
        const double err = std::abs(cur - prev);
        last_rel = scale == 0.0 ? 0.0 : err / scale;
        if (scale == 0.0 || err <= rel_tol * scale) {
            AdaptiveResult r;
            r.value = cur;
            r.achieved_rel_tol = last_rel;
            r.levels = level;
            return r;
        }
        prev = cur;
    }
    throw quadrature_error("adaptive_gauss_legendre: no convergence after max refinement",
                           last_rel);
}

}  // namespace degseq
