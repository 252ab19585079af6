#pragma once

#include <cstdint>
#include <vector>

#include "degseq/graph.hpp"
#include "degseq/models.hpp"
#include "degseq/rng.hpp"

namespace degseq {

// Exact Bin(n, p) draw: CDF inversion when n*min(p,q) is small, transformed
// rejection otherwise. Never uses a normal approximation.
std::int64_t sample_binomial(std::int64_t n, double p, Xoshiro256& rng);

// One draw of each single-graph model, advancing the supplied stream.
DegreeSequence sample_binomial_sequence(const ModelParams& params, std::size_t graph_index,
                                        Xoshiro256& rng);

// Rejection against the binomial model until the degree sum is even.
// attempts_out, when set, receives the number of proposals consumed.
DegreeSequence sample_even_sum_sequence(const ModelParams& params, std::size_t graph_index,
                                        Xoshiro256& rng, int* attempts_out = nullptr);

// Two-stage exact draw from the weighted even-sum model: the half degree sum
// comes from Bin(N, p), then entries are filled by sequential conditional
// draws given the remaining sum.
DegreeSequence sample_weighted_even_sum_sequence(const ModelParams& params,
                                                 std::size_t graph_index, Xoshiro256& rng);

// Truncated-normal parameter draw followed by an even-sum draw at that
// parameter. p_prime_out, when set, receives the noisy parameter.
DegreeSequence sample_integrated_sequence(const ModelParams& params, std::size_t graph_index,
                                          Xoshiro256& rng, double* p_prime_out = nullptr);

// One entry of the sum-conditioned sequential draw: the first of
// remaining_entries iid Bin(per_entry_trials, p) variables conditioned on
// their total being remaining_sum. The law does not depend on p.
int sample_sum_conditioned_entry(int per_entry_trials, int remaining_entries,
                                 std::int64_t remaining_sum, Xoshiro256& rng);

// G(n, p) degree sequence without materializing the adjacency: per-pair
// Bernoulli sweep, or geometric skips over the pair slots when p is sparse.
DegreeSequence sample_graph_degree_sequence(const ModelParams& params, std::size_t graph_index,
                                            Xoshiro256& rng);

// G(n, p) with adjacency retained (exact isomorphism checks need it).
LabeledGraph sample_graph(const ModelParams& params, std::size_t graph_index, Xoshiro256& rng);

struct SamplerConfig {
    std::uint64_t seed = 0;
    Model model = Model::B;
    ModelParams params;
};

// Substream for one (graph, draw) cell; every draw is independent of every
// other and reproducible in isolation.
Xoshiro256 sampler_stream(const SamplerConfig& cfg, std::size_t graph_index,
                          std::uint64_t draw_index);

// One component of the multi-sequence draw identified by draw_index.
DegreeSequence sample_component(const SamplerConfig& cfg, std::size_t graph_index,
                                std::uint64_t draw_index);

// All k components; component i uses its own substream.
MultiSequence sample_multi(const SamplerConfig& cfg, std::uint64_t draw_index);

// D-model draw returning graphs (and, optionally, their degree sequences).
std::vector<LabeledGraph> sample_multi_graphs(const SamplerConfig& cfg,
                                              std::uint64_t draw_index,
                                              MultiSequence* degrees_out = nullptr);

}  // namespace degseq
