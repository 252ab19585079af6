#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "degseq/models.hpp"

namespace degseq {

// Simple undirected labeled graph on n vertices. Edges live in a flat bitset
// over the N = n(n-1)/2 vertex pairs, indexed in row-major upper-triangle
// order.
class LabeledGraph {
public:
    explicit LabeledGraph(int n);

    // Graph from the low N bits of mask (small-n enumeration).
    static LabeledGraph from_edge_mask(int n, std::uint64_t mask);

    // Edge-list text: one "u v" pair per line, 0-indexed.
    static LabeledGraph from_edge_list(int n, std::istream& in);
    void to_edge_list(std::ostream& out) const;

    int vertex_count() const { return n_; }
    std::int64_t pair_count() const { return std::int64_t(n_) * (n_ - 1) / 2; }

    bool has_edge(int u, int v) const;
    void set_edge(int u, int v, bool present);

    int degree(int v) const { return degrees_[std::size_t(v)]; }
    const DegreeSequence& degree_sequence() const { return degrees_; }
    int edge_count() const { return edge_count_; }

    // Image of this graph under the vertex permutation perm (perm[v] is the
    // new label of v).
    LabeledGraph relabeled(const std::vector<int>& perm) const;

    bool operator==(const LabeledGraph& other) const;

    // Flat pair slot of {u, v}, u != v.
    std::int64_t pair_index(int u, int v) const;

private:
    int n_;
    int edge_count_ = 0;
    std::vector<std::uint64_t> bits_;
    DegreeSequence degrees_;
};

}  // namespace degseq
