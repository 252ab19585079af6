#include "degseq/iso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "degseq/errors.hpp"

namespace degseq {

BorelSet::BorelSet(std::vector<Interval> intervals) {
    for (const auto& iv : intervals)
        if (iv.hi != kUnbounded && iv.hi < iv.lo)
            throw std::invalid_argument("BorelSet: interval with hi < lo");
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (const auto& iv : intervals) {
        if (!intervals_.empty()) {
            Interval& last = intervals_.back();
            // Merge overlapping or adjacent integer intervals.
            if (last.hi == kUnbounded) break;
            if (iv.lo <= last.hi + 1) {
                last.hi = std::max(last.hi, iv.hi);
                continue;
            }
        }
        intervals_.push_back(iv);
    }
}

BorelSet BorelSet::half_line(std::int64_t lo) { return BorelSet({{lo, kUnbounded}}); }

BorelSet BorelSet::closed(std::int64_t lo, std::int64_t hi) { return BorelSet({{lo, hi}}); }

bool BorelSet::contains(std::int64_t x) const {
    for (const auto& iv : intervals_) {
        if (x < iv.lo) return false;
        if (iv.hi == kUnbounded || x <= iv.hi) return true;
    }
    return false;
}

int degree_count(const DegreeSequence& d, const BorelSet& set) {
    int count = 0;
    for (int v : d)
        if (set.contains(v)) ++count;
    return count;
}

int degree_count(const LabeledGraph& g, const BorelSet& set) {
    return degree_count(g.degree_sequence(), set);
}

namespace {

// Backtracking mapper: vertices of a are assigned in order to unused vertices
// of b with the same degree; adjacency against the mapped prefix must match
// exactly at each step.
bool extend_mapping(const LabeledGraph& a, const LabeledGraph& b, std::vector<int>& map,
                    std::vector<bool>& used, int next) {
    const int n = a.vertex_count();
    if (next == n) return true;
    for (int cand = 0; cand < n; ++cand) {
        if (used[std::size_t(cand)]) continue;
        if (b.degree(cand) != a.degree(next)) continue;
        bool consistent = true;
        for (int prev = 0; prev < next; ++prev) {
            if (a.has_edge(prev, next) != b.has_edge(map[std::size_t(prev)], cand)) {
                consistent = false;
                break;
            }
        }
        if (!consistent) continue;
        map[std::size_t(next)] = cand;
        used[std::size_t(cand)] = true;
        if (extend_mapping(a, b, map, used, next + 1)) return true;
        used[std::size_t(cand)] = false;
    }
    return false;
}

}  // namespace

bool is_isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
    if (a.vertex_count() != b.vertex_count()) return false;
    const int n = a.vertex_count();
    if (n > 10) throw capacity_error("is_isomorphic: exact search limited to n <= 10");
    if (a.edge_count() != b.edge_count()) return false;
    DegreeSequence da = a.degree_sequence();
    DegreeSequence db = b.degree_sequence();
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    std::vector<int> map(std::size_t(n), -1);
    std::vector<bool> used(std::size_t(n), false);
    return extend_mapping(a, b, map, used, 0);
}

bool iso_invariance_check(const LabeledGraph& a, const LabeledGraph& b,
                          const std::vector<BorelSet>& sets) {
    for (const auto& set : sets)
        if (degree_count(a, set) != degree_count(b, set)) return false;
    return true;
}

BorelSet fingerprint_threshold_set(const ModelParams& params) {
    double min_p = 1.0;
    for (std::size_t i = 0; i < params.k(); ++i) min_p = std::min(min_p, params.p(i));
    const auto lo = std::int64_t(std::floor(double(params.n()) * min_p));
    return BorelSet::half_line(std::max<std::int64_t>(0, lo));
}

bool collision_event(const MultiSequence& dvec, const BorelSet& set, CollisionMode mode) {
    if (dvec.size() < 2)
        throw std::invalid_argument("collision_event: need at least two components");
    std::vector<int> counts;
    counts.reserve(dvec.size());
    for (const auto& d : dvec) counts.push_back(degree_count(d, set));
    if (mode == CollisionMode::All) {
        for (std::size_t i = 1; i < counts.size(); ++i)
            if (counts[i] != counts[0]) return false;
        return true;
    }
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::size_t j = i + 1; j < counts.size(); ++j)
            if (counts[i] == counts[j]) return true;
    return false;
}

}  // namespace degseq
