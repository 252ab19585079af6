#include "degseq/graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace degseq {

LabeledGraph::LabeledGraph(int n) : n_(n), degrees_(std::size_t(n), 0) {
    if (n < 1) throw std::invalid_argument("LabeledGraph: n must be >= 1");
    bits_.assign(std::size_t((pair_count() + 63) / 64), 0);
}

std::int64_t LabeledGraph::pair_index(int u, int v) const {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::invalid_argument("pair_index: bad vertex pair");
    if (u > v) std::swap(u, v);
    return std::int64_t(u) * n_ - std::int64_t(u) * (u + 1) / 2 + (v - u - 1);
}

bool LabeledGraph::has_edge(int u, int v) const {
    const std::int64_t idx = pair_index(u, v);
    return (bits_[std::size_t(idx >> 6)] >> (idx & 63)) & 1u;
}

void LabeledGraph::set_edge(int u, int v, bool present) {
    const std::int64_t idx = pair_index(u, v);
    const std::uint64_t bit = std::uint64_t(1) << (idx & 63);
    std::uint64_t& word = bits_[std::size_t(idx >> 6)];
    const bool had = word & bit;
    if (had == present) return;
    if (present) {
        word |= bit;
        ++edge_count_;
        ++degrees_[std::size_t(u)];
        ++degrees_[std::size_t(v)];
    } else {
        word &= ~bit;
        --edge_count_;
        --degrees_[std::size_t(u)];
        --degrees_[std::size_t(v)];
    }
}

LabeledGraph LabeledGraph::from_edge_mask(int n, std::uint64_t mask) {
    LabeledGraph g(n);
    if (g.pair_count() > 63) throw std::invalid_argument("from_edge_mask: n too large for mask");
    std::int64_t idx = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++idx)
            if ((mask >> idx) & 1u) g.set_edge(u, v, true);
    return g;
}

LabeledGraph LabeledGraph::from_edge_list(int n, std::istream& in) {
    LabeledGraph g(n);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        int u = 0, v = 0;
        if (!(row >> u >> v)) throw std::invalid_argument("from_edge_list: malformed line: " + line);
        g.set_edge(u, v, true);
    }
    return g;
}

void LabeledGraph::to_edge_list(std::ostream& out) const {
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (has_edge(u, v)) out << u << " " << v << "\n";
}

LabeledGraph LabeledGraph::relabeled(const std::vector<int>& perm) const {
    if (int(perm.size()) != n_) throw std::invalid_argument("relabeled: bad permutation size");
    LabeledGraph g(n_);
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (has_edge(u, v)) g.set_edge(perm[std::size_t(u)], perm[std::size_t(v)], true);
    return g;
}

bool LabeledGraph::operator==(const LabeledGraph& other) const {
    return n_ == other.n_ && bits_ == other.bits_;
}

}  // namespace degseq
