#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "degseq/logprob.hpp"

namespace degseq {

// The five degree-sequence measures.
enum class Model { B, E, I, Eprime, D };

std::string model_name(Model m);
Model parse_model(const std::string& name);

// A point of {0,...,n-1}^n: candidate degree sequence of an n-vertex graph.
using DegreeSequence = std::vector<int>;

// k-tuple of degree sequences, one per graph.
using MultiSequence = std::vector<DegreeSequence>;

// Shared parameters: vertex count n and one edge probability per graph.
class ModelParams {
public:
    ModelParams(int n, std::vector<double> p);

    int n() const { return n_; }
    std::size_t k() const { return p_.size(); }
    std::int64_t pair_count() const { return pair_count_; }  // N = n(n-1)/2
    double p(std::size_t graph_index) const;
    double q(std::size_t graph_index) const { return 1.0 - p(graph_index); }
    const std::vector<double>& p_all() const { return p_; }

private:
    int n_;
    std::int64_t pair_count_;
    std::vector<double> p_;
};

// Throws std::invalid_argument unless d is a valid point of I_n.
void validate_sequence(int n, const DegreeSequence& d);
void validate_multi(const ModelParams& params, const MultiSequence& dvec);

std::int64_t degree_sum(const DegreeSequence& d);
bool has_even_sum(const DegreeSequence& d);

// Which centering to use in the second-moment statistic. AsPrinted subtracts
// the whole degree sum from each entry; MeanCentered subtracts the mean.
enum class Gamma2Variant { AsPrinted, MeanCentered };

struct SequenceStats {
    std::int64_t degree_sum = 0;
    double lambda = 0.0;   // degree_sum / 2N
    double gamma2 = 0.0;   // per the selected variant
    bool even_sum = false;
};

SequenceStats sequence_stats(const DegreeSequence& d,
                             Gamma2Variant variant = Gamma2Variant::AsPrinted);

// --- Single-graph measures -------------------------------------------------

// B model: n independent Bin(n-1, p_i) entries.
LogProb binomial_seq_prob(const ModelParams& params, std::size_t graph_index,
                          const DegreeSequence& d);

// E model: B restricted to even-sum sequences, via the closed-form normalizer
// (1 + (q-p)^{2N}) / 2.
LogProb even_sum_prob(const ModelParams& params, std::size_t graph_index,
                      const DegreeSequence& d);

// E' model: E reweighted uniformly on each level set so that half the degree
// sum is Bin(N, p_i).
LogProb weighted_even_sum_prob(const ModelParams& params, std::size_t graph_index,
                               const DegreeSequence& d);

// (q - p)^{2N} in linear space; exactly 0 once 2N*log|q-p| < -700.
double even_odd_gap_term(const ModelParams& params, std::size_t graph_index);

// Law of the degree sum under B: entry m is P(M = m) = b(m; n(n-1), p_i),
// for m in [0, n(n-1)].
std::vector<LogProb> compute_sum_distribution(const ModelParams& params,
                                              std::size_t graph_index);

// P_E(S_m): the even-sum-model mass of the level set {M = m}.
LogProb even_sum_level_prob(const ModelParams& params, std::size_t graph_index,
                            std::int64_t m);

// --- Integrated model ------------------------------------------------------

// Normalizing mass of N(mean, sigma^2) truncated to [0, 1].
double truncated_normal_mass(double mean, double sigma);

// V_{n,p_i}: mass of the graph-i parameter noise distribution inside [0, 1].
double truncated_normal_V(const ModelParams& params, std::size_t graph_index);

// Standard deviation of the parameter noise: sqrt(p q / 2N).
double parameter_noise_sigma(const ModelParams& params, std::size_t graph_index);

// Compressed form of an even-sum event A for evaluating P_{B,x}(A) as a
// function of x: P_{B,x}(A) = sum_m coeff[m] x^m (1-x)^{2N-m}, where
// coeff[m] adds prod_j C(n-1, d_j) over the even-sum points of A with M = m.
struct EventMassPolynomial {
    std::int64_t total_trials = 0;  // n(n-1) = 2N
    std::vector<double> coeff;      // indexed by degree sum m

    static EventMassPolynomial from_points(int n, const std::vector<DegreeSequence>& points);

    // P_{B,x}(A) for parameter x in (0,1).
    double binomial_mass(double x) const;
    // P_{E,x}(A): the restriction of the above to even-sum sequences.
    double even_sum_mass(double x) const;
    bool empty() const;
};

// I model event probability: (1/V) Int_0^1 phi(x; p, pq/2N) P_{E,x}(A) dx
// by adaptive quadrature over the +-12 sigma window clipped to [0,1].
// The event is given as an explicit point list (odd-sum points contribute 0).
LogProb integrated_event_prob(const ModelParams& params, std::size_t graph_index,
                              const std::vector<DegreeSequence>& event_points);

// Same, with the event supplied as a predicate; enumerates I_n, so n is
// limited by the enumeration cutoff.
LogProb integrated_event_prob(const ModelParams& params, std::size_t graph_index,
                              const std::function<bool(const DegreeSequence&)>& indicator);

// Same, with P_{E,x}(A) supplied in closed form by the caller.
LogProb integrated_event_prob(const ModelParams& params, std::size_t graph_index,
                              const std::function<double(double)>& even_sum_event_prob);

// --- k-fold products --------------------------------------------------------

// Product measure over the k components; model must be B, E, or E'.
LogProb product_prob(Model model, const ModelParams& params, const MultiSequence& dvec);

// Both sides of the k-fold even-sum restriction identity over an explicit
// event: lhs sums per-component E probabilities, rhs rescales the summed B
// probability by 2^k / prod(1 + (q_i-p_i)^{2N}).
struct IdentitySides {
    LogProb lhs;
    LogProb rhs;
};
IdentitySides multi_even_sum_identity(const ModelParams& params,
                                      const std::vector<MultiSequence>& event);

// Leading-order predicted ratio P_D / P_E' from per-component statistics:
// exp{ (k - sum_i gamma2_i^2 / (lambda_i (1-lambda_i))^2) / 4 }.
double dp_ratio_formula(const ModelParams& params, const MultiSequence& dvec,
                        Gamma2Variant variant = Gamma2Variant::AsPrinted);

// --- Parameter-regime advisory ----------------------------------------------

struct GraphRegimeReport {
    double pq_lower_proxy = 0.0;  // p q n^2 / log n   (want >> n)
    double pq_upper_proxy = 0.0;  // p q sqrt(n)       (want << 1)
    double p_lower_proxy = 0.0;   // p n / log n       (want >> 1)
    double p_upper_proxy = 0.0;   // p sqrt(n)         (want << 1)
    bool above_lower = false;
    bool below_upper = false;
    bool plausible = false;
};

struct AcceptabilityReport {
    std::vector<GraphRegimeReport> graphs;
    bool all_plausible = false;
    std::string summary() const;
};

// Finite-n proxies for the asymptotic parameter-range conditions. Purely
// advisory: a single n cannot decide an asymptotic statement.
AcceptabilityReport acceptability_check(const ModelParams& params);

// --- Enumeration helpers ----------------------------------------------------

// Full-I_n enumeration is allowed while n^n stays under this cap.
bool sequence_enumeration_feasible(int n);

// Visit every point of I_n in lexicographic order.
void for_each_sequence(int n, const std::function<void(const DegreeSequence&)>& visit);

// All even-sum points of I_n, lexicographically sorted.
std::vector<DegreeSequence> enumerate_even_sequences(int n);

}  // namespace degseq
