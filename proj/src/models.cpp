#include "degseq/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "degseq/errors.hpp"
#include "degseq/mathutil.hpp"
#include "degseq/quadrature.hpp"

namespace degseq {

std::string model_name(Model m) {
    switch (m) {
        case Model::B: return "B";
        case Model::E: return "E";
        case Model::I: return "I";
        case Model::Eprime: return "Eprime";
        case Model::D: return "D";
    }
    return "?";
}

Model parse_model(const std::string& name) {
    if (name == "B") return Model::B;
    if (name == "E") return Model::E;
    if (name == "I") return Model::I;
    if (name == "Eprime" || name == "E'" || name == "Ep") return Model::Eprime;
    if (name == "D") return Model::D;
    throw std::invalid_argument("unknown model tag: " + name);
}

ModelParams::ModelParams(int n, std::vector<double> p) : n_(n), p_(std::move(p)) {
    if (n_ < 2) throw std::invalid_argument("ModelParams: n must be >= 2");
    if (p_.empty()) throw std::invalid_argument("ModelParams: need at least one edge probability");
    for (double pi : p_)
        if (!(pi > 0.0 && pi < 1.0))
            throw std::invalid_argument("ModelParams: every p must lie in (0,1)");
    pair_count_ = std::int64_t(n_) * (n_ - 1) / 2;
}

double ModelParams::p(std::size_t graph_index) const {
    if (graph_index >= p_.size())
        throw std::invalid_argument("ModelParams: graph index out of range");
    return p_[graph_index];
}

void validate_sequence(int n, const DegreeSequence& d) {
    if (int(d.size()) != n)
        throw std::invalid_argument("degree sequence length does not match n");
    for (int v : d)
        if (v < 0 || v >= n)
            throw std::invalid_argument("degree sequence entry outside [0, n-1]");
}

void validate_multi(const ModelParams& params, const MultiSequence& dvec) {
    if (dvec.size() != params.k())
        throw std::invalid_argument("multi-sequence component count does not match k");
    for (const auto& d : dvec) validate_sequence(params.n(), d);
}

std::int64_t degree_sum(const DegreeSequence& d) {
    std::int64_t m = 0;
    for (int v : d) m += v;
    return m;
}

bool has_even_sum(const DegreeSequence& d) { return degree_sum(d) % 2 == 0; }

SequenceStats sequence_stats(const DegreeSequence& d, Gamma2Variant variant) {
    const int n = int(d.size());
    if (n < 2) throw std::invalid_argument("sequence_stats: need n >= 2");
    SequenceStats s;
    s.degree_sum = degree_sum(d);
    s.even_sum = s.degree_sum % 2 == 0;
    const double two_pairs = double(n) * double(n - 1);  // 2N
    s.lambda = double(s.degree_sum) / two_pairs;
    const double center = variant == Gamma2Variant::AsPrinted
                              ? double(s.degree_sum)
                              : double(s.degree_sum) / double(n);
    double acc = 0.0;
    for (int v : d) {
        const double dev = double(v) - center;
        acc += dev * dev;
    }
    s.gamma2 = acc / (double(n - 1) * double(n - 1));
    return s;
}

LogProb binomial_seq_prob(const ModelParams& params, std::size_t graph_index,
                          const DegreeSequence& d) {
    validate_sequence(params.n(), d);
    const double p = params.p(graph_index);
    double log_sum = 0.0;
    for (int v : d) log_sum += log_binomial_pmf(v, params.n() - 1, p);
    return LogProb::from_log(log_sum);
}

double even_odd_gap_term(const ModelParams& params, std::size_t graph_index) {
    const double gap = std::abs(params.q(graph_index) - params.p(graph_index));
    if (gap == 0.0) return 0.0;
    const double t = 2.0 * double(params.pair_count()) * std::log(gap);
    // Below exp(-700) the term cannot move 1 + t at double precision.
    if (t < -700.0) return 0.0;
    return std::exp(t);
}

LogProb even_sum_prob(const ModelParams& params, std::size_t graph_index,
                      const DegreeSequence& d) {
    validate_sequence(params.n(), d);
    if (!has_even_sum(d)) return LogProb::zero();
    const LogProb base = binomial_seq_prob(params, graph_index, d);
    const double log_norm = std::log1p(even_odd_gap_term(params, graph_index));
    return LogProb::from_log(std::log(2.0) + base.log() - log_norm);
}

std::vector<LogProb> compute_sum_distribution(const ModelParams& params,
                                              std::size_t graph_index) {
    const std::int64_t total = 2 * params.pair_count();  // n(n-1)
    const double p = params.p(graph_index);
    std::vector<LogProb> dist(std::size_t(total) + 1);
    for (std::int64_t m = 0; m <= total; ++m)
        dist[std::size_t(m)] = LogProb::from_log(log_binomial_pmf(m, total, p));
    return dist;
}

LogProb even_sum_level_prob(const ModelParams& params, std::size_t graph_index,
                            std::int64_t m) {
    const std::int64_t total = 2 * params.pair_count();
    if (m < 0 || m > total || m % 2 != 0) return LogProb::zero();
    const double log_b = log_binomial_pmf(m, total, params.p(graph_index));
    const double log_norm = std::log1p(even_odd_gap_term(params, graph_index));
    return LogProb::from_log(std::log(2.0) + log_b - log_norm);
}

LogProb weighted_even_sum_prob(const ModelParams& params, std::size_t graph_index,
                               const DegreeSequence& d) {
    validate_sequence(params.n(), d);
    if (!has_even_sum(d)) return LogProb::zero();
    const std::int64_t m = degree_sum(d);
    const double p = params.p(graph_index);
    // P_E' = P_E * b(m/2; N, p) / P_E(S_m); the restriction normalizers cancel,
    // leaving P_B(d) * b(m/2; N, p) / b(m; 2N, p).
    const double log_b_half = log_binomial_pmf(m / 2, params.pair_count(), p);
    const double log_level = log_binomial_pmf(m, 2 * params.pair_count(), p);
    const LogProb base = binomial_seq_prob(params, graph_index, d);
    return LogProb::from_log(base.log() + log_b_half - log_level);
}

double truncated_normal_mass(double mean, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("truncated_normal_mass: sigma <= 0");
    return normal_cdf((1.0 - mean) / sigma) - normal_cdf((0.0 - mean) / sigma);
}

double parameter_noise_sigma(const ModelParams& params, std::size_t graph_index) {
    const double p = params.p(graph_index);
    return std::sqrt(p * (1.0 - p) / (2.0 * double(params.pair_count())));
}

double truncated_normal_V(const ModelParams& params, std::size_t graph_index) {
    return truncated_normal_mass(params.p(graph_index),
                                 parameter_noise_sigma(params, graph_index));
}

EventMassPolynomial EventMassPolynomial::from_points(
    int n, const std::vector<DegreeSequence>& points) {
    EventMassPolynomial poly;
    poly.total_trials = std::int64_t(n) * (n - 1);
    poly.coeff.assign(std::size_t(poly.total_trials) + 1, 0.0);
    for (const auto& d : points) {
        validate_sequence(n, d);
        if (!has_even_sum(d)) continue;
        double log_coef = 0.0;
        for (int v : d) log_coef += log_binomial_coef(n - 1, v);
        poly.coeff[std::size_t(degree_sum(d))] += std::exp(log_coef);
    }
    return poly;
}

double EventMassPolynomial::binomial_mass(double x) const {
    // sum_m coeff[m] x^m (1-x)^{2N-m}; powers built in-place, no allocation.
    constexpr std::size_t kMaxTerms = 160;
    double xpow[kMaxTerms];
    if (coeff.size() > kMaxTerms)
        throw std::invalid_argument("EventMassPolynomial: degree sum range too large");
    const double y = 1.0 - x;
    double xp = 1.0;
    for (std::size_t m = 0; m < coeff.size(); ++m) {
        xpow[m] = xp;
        xp *= x;
    }
    double sum = 0.0;
    double yp = 1.0;
    for (std::size_t m = coeff.size(); m-- > 0;) {
        sum += coeff[m] * xpow[m] * yp;
        yp *= y;
    }
    return sum;
}

double EventMassPolynomial::even_sum_mass(double x) const {
    const double gap = std::abs(1.0 - 2.0 * x);
    double term = 0.0;
    if (gap > 0.0) {
        const double t = double(total_trials) * std::log(gap);
        term = t < -700.0 ? 0.0 : std::exp(t);
    }
    return 2.0 * binomial_mass(x) / (1.0 + term);
}

bool EventMassPolynomial::empty() const {
    for (double c : coeff)
        if (c != 0.0) return false;
    return true;
}

namespace {

LogProb integrate_even_event(const ModelParams& params, std::size_t graph_index,
                             const std::function<double(double)>& even_mass) {
    const double p = params.p(graph_index);
    const double sigma = parameter_noise_sigma(params, graph_index);
    const double lo = std::max(0.0, p - 12.0 * sigma);
    const double hi = std::min(1.0, p + 12.0 * sigma);
    const double v = truncated_normal_V(params, graph_index);
    auto integrand = [&](double x) { return normal_pdf(x, p, sigma) * even_mass(x); };
    const AdaptiveResult res = adaptive_gauss_legendre(integrand, lo, hi, 1e-9, 20);
    if (res.value <= 0.0) return LogProb::zero();
    return LogProb::from_linear(res.value / v);
}

}  // namespace

LogProb integrated_event_prob(const ModelParams& params, std::size_t graph_index,
                              const std::vector<DegreeSequence>& event_points) {
    const auto poly = EventMassPolynomial::from_points(params.n(), event_points);
    if (poly.empty()) return LogProb::zero();
    return integrate_even_event(params, graph_index,
                                [&](double x) { return poly.even_sum_mass(x); });
}

LogProb integrated_event_prob(const ModelParams& params, std::size_t graph_index,
                              const std::function<bool(const DegreeSequence&)>& indicator) {
    if (!sequence_enumeration_feasible(params.n()))
        throw capacity_error("integrated_event_prob: n too large to enumerate the event");
    std::vector<DegreeSequence> points;
    for_each_sequence(params.n(), [&](const DegreeSequence& d) {
        if (indicator(d)) points.push_back(d);
    });
    return integrated_event_prob(params, graph_index, points);
}

LogProb integrated_event_prob(const ModelParams& params, std::size_t graph_index,
                              const std::function<double(double)>& even_sum_event_prob) {
    return integrate_even_event(params, graph_index, even_sum_event_prob);
}

LogProb product_prob(Model model, const ModelParams& params, const MultiSequence& dvec) {
    validate_multi(params, dvec);
    LogProb result = LogProb::one();
    for (std::size_t i = 0; i < dvec.size(); ++i) {
        LogProb component;
        switch (model) {
            case Model::B: component = binomial_seq_prob(params, i, dvec[i]); break;
            case Model::E: component = even_sum_prob(params, i, dvec[i]); break;
            case Model::Eprime: component = weighted_even_sum_prob(params, i, dvec[i]); break;
            default:
                throw std::invalid_argument("product_prob: model must be B, E, or E'");
        }
        result *= component;
        if (result.is_zero()) return result;
    }
    return result;
}

IdentitySides multi_even_sum_identity(const ModelParams& params,
                                      const std::vector<MultiSequence>& event) {
    PairwiseAccumulator lhs_acc, rhs_acc;
    for (const auto& dvec : event) {
        const LogProb lhs_term = product_prob(Model::E, params, dvec);
        if (!lhs_term.is_zero()) lhs_acc.add(lhs_term.linear());
        bool all_even = true;
        for (const auto& d : dvec)
            if (!has_even_sum(d)) all_even = false;
        if (all_even) rhs_acc.add(product_prob(Model::B, params, dvec).linear());
    }
    double log_norm = 0.0;
    for (std::size_t i = 0; i < params.k(); ++i)
        log_norm += std::log1p(even_odd_gap_term(params, i));
    IdentitySides sides;
    sides.lhs = LogProb::from_linear(lhs_acc.total());
    const double rhs_sum = rhs_acc.total();
    sides.rhs = rhs_sum > 0.0
                    ? LogProb::from_log(double(params.k()) * std::log(2.0) +
                                        std::log(rhs_sum) - log_norm)
                    : LogProb::zero();
    return sides;
}

double dp_ratio_formula(const ModelParams& params, const MultiSequence& dvec,
                        Gamma2Variant variant) {
    validate_multi(params, dvec);
    double sum = 0.0;
    for (const auto& d : dvec) {
        const SequenceStats s = sequence_stats(d, variant);
        if (!s.even_sum)
            throw std::invalid_argument("dp_ratio_formula: component has odd degree sum");
        if (s.lambda <= 0.0 || s.lambda >= 1.0)
            throw degenerate_input_error("dp_ratio_formula: lambda in {0,1} is singular");
        const double denom = s.lambda * (1.0 - s.lambda);
        const double r = s.gamma2 / denom;
        sum += r * r;
    }
    return std::exp(0.25 * (double(params.k()) - sum));
}

AcceptabilityReport acceptability_check(const ModelParams& params) {
    AcceptabilityReport report;
    const double n = double(params.n());
    const double logn = std::log(n);
    report.all_plausible = true;
    for (std::size_t i = 0; i < params.k(); ++i) {
        const double p = params.p(i);
        const double q = params.q(i);
        GraphRegimeReport g;
        g.pq_lower_proxy = p * q * n * n / logn;
        g.pq_upper_proxy = p * q * std::sqrt(n);
        g.p_lower_proxy = p * n / logn;
        g.p_upper_proxy = p * std::sqrt(n);
        g.above_lower = g.p_lower_proxy >= 1.0;
        g.below_upper = g.p_upper_proxy <= 1.0;
        g.plausible = g.above_lower && g.below_upper;
        report.all_plausible = report.all_plausible && g.plausible;
        report.graphs.push_back(g);
    }
    return report;
}

std::string AcceptabilityReport::summary() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        const auto& g = graphs[i];
        out << "graph " << i << ": pq*n^2/log n = " << g.pq_lower_proxy
            << ", pq*sqrt(n) = " << g.pq_upper_proxy << ", p*n/log n = " << g.p_lower_proxy
            << ", p*sqrt(n) = " << g.p_upper_proxy << " -> "
            << (g.plausible ? "plausible"
                            : (!g.above_lower ? "below regime" : "outside regime (p too large)"));
        if (i + 1 < graphs.size()) out << "\n";
    }
    return out.str();
}

bool sequence_enumeration_feasible(int n) {
    // n^n <= 1e7 keeps the exact suites fast.
    double size = 1.0;
    for (int i = 0; i < n; ++i) {
        size *= double(n);
        if (size > 2e7) return false;
    }
    return true;
}

void for_each_sequence(int n, const std::function<void(const DegreeSequence&)>& visit) {
    if (!sequence_enumeration_feasible(n))
        throw capacity_error("for_each_sequence: n^n exceeds the enumeration cutoff");
    DegreeSequence d(std::size_t(n), 0);
    while (true) {
        visit(d);
        int pos = n - 1;
        while (pos >= 0 && d[std::size_t(pos)] == n - 1) {
            d[std::size_t(pos)] = 0;
            --pos;
        }
        if (pos < 0) return;
        ++d[std::size_t(pos)];
    }
}

std::vector<DegreeSequence> enumerate_even_sequences(int n) {
    std::vector<DegreeSequence> out;
    for_each_sequence(n, [&](const DegreeSequence& d) {
        if (has_even_sum(d)) out.push_back(d);
    });
    return out;
}

}  // namespace degseq
