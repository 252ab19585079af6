#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "degseq/graph.hpp"
#include "degseq/models.hpp"

namespace degseq {

// Finite union of closed integer intervals on the degree axis. Degrees are
// integers, so interval unions capture every set a degree-count statistic can
// distinguish. An upper bound of kUnbounded means a half-line.
class BorelSet {
public:
    static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

    struct Interval {
        std::int64_t lo;
        std::int64_t hi;  // inclusive; kUnbounded for a half-line
    };

    BorelSet() = default;
    explicit BorelSet(std::vector<Interval> intervals);  // normalizes

    static BorelSet half_line(std::int64_t lo);
    static BorelSet closed(std::int64_t lo, std::int64_t hi);

    bool contains(std::int64_t x) const;
    const std::vector<Interval>& intervals() const { return intervals_; }
    bool empty() const { return intervals_.empty(); }

private:
    std::vector<Interval> intervals_;  // disjoint, sorted
};

// Number of entries of d that land in B.
int degree_count(const DegreeSequence& d, const BorelSet& set);
// Number of vertices of g whose degree lands in B.
int degree_count(const LabeledGraph& g, const BorelSet& set);

// Exact isomorphism decision by degree-partitioned backtracking. Only
// feasible at small n; throws capacity_error beyond n = 10.
bool is_isomorphic(const LabeledGraph& a, const LabeledGraph& b);

// True iff the degree-count statistic agrees on every supplied set. Holds
// whenever the graphs are isomorphic; the converse can fail.
bool iso_invariance_check(const LabeledGraph& a, const LabeledGraph& b,
                          const std::vector<BorelSet>& sets);

// The half-line [floor(n * min_i p_i), +inf) used as the collision
// fingerprint set.
BorelSet fingerprint_threshold_set(const ModelParams& params);

enum class CollisionMode { AnyPair, All };

// Whether the degree-count values of the components collide: some pair equal
// (AnyPair) or all pairwise equal (All). Requires k >= 2.
bool collision_event(const MultiSequence& dvec, const BorelSet& set, CollisionMode mode);

}  // namespace degseq
