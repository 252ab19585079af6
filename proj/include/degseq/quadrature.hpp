#pragma once

#include <functional>
#include <vector>

namespace degseq {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

// Nodes/weights of the order-point Gauss-Legendre rule on (-1, 1),
// computed by Newton iteration on the Legendre polynomial.
const GaussLegendreRule& gauss_legendre_rule(int order);

// Fixed-rule integral of f over [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b,
                      int order = 15);

struct AdaptiveResult {
    double value = 0.0;
    double achieved_rel_tol = 0.0;
    int levels = 0;
};

// Adaptive composite Gauss-Legendre: level L splits [a, b] into 2^L equal
// panels. Refinement stops once two successive levels agree to rel_tol;
// throws quadrature_error after max_levels without convergence.
AdaptiveResult adaptive_gauss_legendre(const std::function<double(double)>& f, double a,
                                       double b, double rel_tol = 1e-9,
                                       int max_levels = 20);

}  // namespace degseq
