#include "degseq/samplers.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "degseq/errors.hpp"
#include "degseq/mathutil.hpp"

namespace degseq {

namespace {

// CDF inversion, walking the recurrence from 0. Cost grows with n*p, so this
// path is reserved for small means.
std::int64_t binomial_inversion(std::int64_t n, double p, Xoshiro256& rng) {
    const double q = 1.0 - p;
    const double ratio = p / q;
    double pmf = std::exp(double(n) * std::log1p(-p));
    double cdf = pmf;
    const double u = rng.uniform01();
    std::int64_t x = 0;
    while (u > cdf && x < n) {
        ++x;
        pmf *= ratio * double(n - x + 1) / double(x);
        cdf += pmf;
    }
    return x;
}

// Transformed rejection with squeeze (Hormann's BTRS), valid for
// n * min(p, q) >= 10; exact, no normal approximation.
std::int64_t binomial_btrs(std::int64_t n, double p, Xoshiro256& rng) {
    const double q = 1.0 - p;
    const double np = double(n) * p;
    const double spq = std::sqrt(np * q);
    const double b = 1.15 + 2.53 * spq;
    const double a = -0.0873 + 0.0248 * b + 0.01 * p;
    const double c = np + 0.5;
    const double v_r = 0.92 - 4.2 / b;
    const double u_rv_r = 0.86 * v_r;
    const double alpha = (2.83 + 5.1 / b) * spq;
    const double lpq = std::log(p / q);
    const auto m = std::int64_t((double(n) + 1.0) * p);
    const double h = std::lgamma(double(m) + 1.0) + std::lgamma(double(n - m) + 1.0);

    while (true) {
        double v = rng.uniform01();
        double u;
        if (v <= u_rv_r) {
            u = v / v_r - 0.43;
            return std::int64_t(std::floor((2.0 * a / (0.5 - std::abs(u)) + b) * u + c));
        }
        if (v >= v_r) {
            u = rng.uniform01() - 0.5;
        } else {
            u = v / v_r - 0.93;
            u = (u < 0 ? -0.5 : 0.5) - u;
            v = rng.uniform01() * v_r;
        }
        const double us = 0.5 - std::abs(u);
        const auto k = std::int64_t(std::floor((2.0 * a / us + b) * u + c));
        if (k < 0 || k > n) continue;
        v = v * alpha / (a / (us * us) + b);
        if (std::log(v) <= h - std::lgamma(double(k) + 1.0) - std::lgamma(double(n - k) + 1.0) +
                               double(k - m) * lpq)
            return k;
    }
}

}  // namespace

std::int64_t sample_binomial(std::int64_t n, double p, Xoshiro256& rng) {
    if (n < 0 || !(p > 0.0 && p < 1.0))
        throw std::invalid_argument("sample_binomial: need n >= 0 and p in (0,1)");
    if (n == 0) return 0;
    const bool flip = p > 0.5;
    const double ps = flip ? 1.0 - p : p;
    std::int64_t x;
    if (double(n) * ps < 30.0)
        x = binomial_inversion(n, ps, rng);
    else
        x = binomial_btrs(n, ps, rng);
    return flip ? n - x : x;
}

DegreeSequence sample_binomial_sequence(const ModelParams& params, std::size_t graph_index,
                                        Xoshiro256& rng) {
    const double p = params.p(graph_index);
    DegreeSequence d(std::size_t(params.n()));
    for (auto& v : d) v = int(sample_binomial(params.n() - 1, p, rng));
    return d;
}

DegreeSequence sample_even_sum_sequence(const ModelParams& params, std::size_t graph_index,
                                        Xoshiro256& rng, int* attempts_out) {
    int attempts = 0;
    while (true) {
        ++attempts;
        DegreeSequence d = sample_binomial_sequence(params, graph_index, rng);
        if (degree_sum(d) % 2 == 0) {
            if (attempts_out) *attempts_out = attempts;
            return d;
        }
    }
}

int sample_sum_conditioned_entry(int per_entry_trials, int remaining_entries,
                                 std::int64_t remaining_sum, Xoshiro256& rng) {
    assert(remaining_entries >= 1);
    const std::int64_t n1 = per_entry_trials;
    const std::int64_t rest = std::int64_t(remaining_entries - 1) * n1;
    if (remaining_sum < 0 || remaining_sum > n1 + rest)
        throw std::logic_error("sample_sum_conditioned_entry: infeasible remaining sum");
    if (remaining_entries == 1) return int(remaining_sum);

    const std::int64_t a_min = std::max<std::int64_t>(0, remaining_sum - rest);
    const std::int64_t a_max = std::min<std::int64_t>(n1, remaining_sum);
    // P(a) = C(n1, a) C(rest, s - a) / C(n1 + rest, s): walk the ratio
    // recurrence upward from a_min until the CDF crosses u.
    double pmf = std::exp(log_binomial_coef(n1, a_min) +
                          log_binomial_coef(rest, remaining_sum - a_min) -
                          log_binomial_coef(n1 + rest, remaining_sum));
    double cdf = pmf;
    const double u = rng.uniform01();
    std::int64_t a = a_min;
    while (u > cdf && a < a_max) {
        const double step = (double(n1 - a) / double(a + 1)) *
                            (double(remaining_sum - a) /
                             double(rest - remaining_sum + a + 1));
        pmf *= step;
        ++a;
        cdf += pmf;
    }
    return int(a);
}

DegreeSequence sample_weighted_even_sum_sequence(const ModelParams& params,
                                                 std::size_t graph_index, Xoshiro256& rng) {
    const int n = params.n();
    const std::int64_t half = sample_binomial(params.pair_count(), params.p(graph_index), rng);
    std::int64_t remaining = 2 * half;
    DegreeSequence d(std::size_t(n), 0);
    for (int j = 0; j < n; ++j) {
        const int v = sample_sum_conditioned_entry(n - 1, n - j, remaining, rng);
        d[std::size_t(j)] = v;
        remaining -= v;
    }
    assert(remaining == 0);
    return d;
}

DegreeSequence sample_integrated_sequence(const ModelParams& params, std::size_t graph_index,
                                          Xoshiro256& rng, double* p_prime_out) {
    const double p = params.p(graph_index);
    const double sigma = parameter_noise_sigma(params, graph_index);
    const double accept_mass = truncated_normal_mass(p, sigma);
    if (accept_mass < 1e-6)
        throw config_error("sample_integrated_sequence: truncated-normal acceptance below 1e-6");
    double p_prime = 0.0;
    while (true) {
        // Box-Muller pair; the second coordinate is discarded to keep the
        // stream layout simple.
        const double u1 = rng.uniform01_open_low();
        const double u2 = rng.uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        p_prime = p + sigma * z;
        if (p_prime > 0.0 && p_prime < 1.0) break;
    }
    if (p_prime_out) *p_prime_out = p_prime;
    const ModelParams noisy(params.n(), {p_prime});
    return sample_even_sum_sequence(noisy, 0, rng);
}

namespace {

// Decode flat upper-triangle slot t into its vertex pair.
inline void decode_pair(std::int64_t t, int n, int& u, int& v) {
    // Row u starts at base(u) = u*n - u(u+1)/2.
    double uf = (2.0 * n - 1.0 - std::sqrt((2.0 * n - 1.0) * (2.0 * n - 1.0) - 8.0 * double(t))) / 2.0;
    int ui = int(uf);
    auto base = [n](std::int64_t row) { return row * n - row * (row + 1) / 2; };
    while (ui > 0 && base(ui) > t) --ui;
    while (base(ui + 1) <= t) ++ui;
    u = ui;
    v = int(t - base(ui)) + ui + 1;
}

constexpr double kSparseEdgeThreshold = 0.01;

}  // namespace

DegreeSequence sample_graph_degree_sequence(const ModelParams& params, std::size_t graph_index,
                                            Xoshiro256& rng) {
    const int n = params.n();
    const double p = params.p(graph_index);
    DegreeSequence d(std::size_t(n), 0);
    if (p < kSparseEdgeThreshold) {
        // Geometric jumps between present edges; expected work O(N p).
        const double log_q = std::log1p(-p);
        const std::int64_t pairs = params.pair_count();
        std::int64_t t = -1;
        while (true) {
            const double u = rng.uniform01_open_low();
            t += 1 + std::int64_t(std::floor(std::log(u) / log_q));
            if (t >= pairs) break;
            int a = 0, b = 0;
            decode_pair(t, n, a, b);
            ++d[std::size_t(a)];
            ++d[std::size_t(b)];
        }
        return d;
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) {
                ++d[std::size_t(u)];
                ++d[std::size_t(v)];
            }
    return d;
}

LabeledGraph sample_graph(const ModelParams& params, std::size_t graph_index, Xoshiro256& rng) {
    const int n = params.n();
    const double p = params.p(graph_index);
    LabeledGraph g(n);
    if (p < kSparseEdgeThreshold) {
        const double log_q = std::log1p(-p);
        const std::int64_t pairs = params.pair_count();
        std::int64_t t = -1;
        while (true) {
            const double u = rng.uniform01_open_low();
            t += 1 + std::int64_t(std::floor(std::log(u) / log_q));
            if (t >= pairs) break;
            int a = 0, b = 0;
            decode_pair(t, n, a, b);
            g.set_edge(a, b, true);
        }
        return g;
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.set_edge(u, v, true);
    return g;
}

Xoshiro256 sampler_stream(const SamplerConfig& cfg, std::size_t graph_index,
                          std::uint64_t draw_index) {
    return substream(cfg.seed, {std::uint64_t(cfg.params.n()), std::uint64_t(cfg.model),
                                std::uint64_t(graph_index), draw_index});
}

DegreeSequence sample_component(const SamplerConfig& cfg, std::size_t graph_index,
                                std::uint64_t draw_index) {
    Xoshiro256 rng = sampler_stream(cfg, graph_index, draw_index);
    switch (cfg.model) {
        case Model::B: return sample_binomial_sequence(cfg.params, graph_index, rng);
        case Model::E: return sample_even_sum_sequence(cfg.params, graph_index, rng);
        case Model::Eprime:
            return sample_weighted_even_sum_sequence(cfg.params, graph_index, rng);
        case Model::I: return sample_integrated_sequence(cfg.params, graph_index, rng);
        case Model::D: return sample_graph_degree_sequence(cfg.params, graph_index, rng);
    }
    throw std::invalid_argument("sample_component: unknown model");
}

MultiSequence sample_multi(const SamplerConfig& cfg, std::uint64_t draw_index) {
    MultiSequence out;
    out.reserve(cfg.params.k());
    for (std::size_t i = 0; i < cfg.params.k(); ++i)
        out.push_back(sample_component(cfg, i, draw_index));
    return out;
}

std::vector<LabeledGraph> sample_multi_graphs(const SamplerConfig& cfg,
                                              std::uint64_t draw_index,
                                              MultiSequence* degrees_out) {
    if (cfg.model != Model::D)
        throw std::invalid_argument("sample_multi_graphs: only the D model yields graphs");
    std::vector<LabeledGraph> graphs;
    graphs.reserve(cfg.params.k());
    if (degrees_out) degrees_out->clear();
    for (std::size_t i = 0; i < cfg.params.k(); ++i) {
        Xoshiro256 rng = sampler_stream(cfg, i, draw_index);
        graphs.push_back(sample_graph(cfg.params, i, rng));
        if (degrees_out) degrees_out->push_back(graphs.back().degree_sequence());
    }
    return graphs;
}

}  // namespace degseq
