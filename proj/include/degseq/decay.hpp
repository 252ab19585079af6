#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "degseq/iso.hpp"
#include "degseq/mathutil.hpp"
#include "degseq/models.hpp"

namespace degseq {

// Rule mapping a vertex count to the per-graph edge probabilities.
struct PRule {
    enum class Kind { PowerLaw, LogOverN, Fixed };
    Kind kind = Kind::PowerLaw;
    double c = 1.0;      // PowerLaw: p = c * n^-beta; LogOverN: p = c * log n / n
    double beta = 0.7;
    std::vector<double> fixed;  // Fixed: one value, or one per graph

    std::vector<double> p_for(int n, int k) const;
    std::string describe() const;
};

struct EventSpec {
    enum class Kind { FbPairCollision, FbAllCollision, SumThreshold, OddSum };
    Kind kind = Kind::FbPairCollision;
    // SumThreshold / OddSum target component:
    int graph_index = 0;
    // SumThreshold comparison against M(d_i):
    enum class Cmp { Ge, Le, Eq };
    Cmp cmp = Cmp::Ge;
    std::int64_t value = 0;

    std::string name() const;
};

struct ExperimentPlan {
    std::vector<int> n_grid;
    PRule p_rule;
    int k = 1;
    std::vector<EventSpec> events;
    std::int64_t replicates = 0;
    std::uint64_t seed = 0;
    std::vector<Model> models;
    bool allow_outside_regime = false;

    void validate() const;  // throws std::invalid_argument
};

struct CellResult {
    Model model;
    int n = 0;
    std::string event;
    std::int64_t replicates = 0;
    std::int64_t hits = 0;
    double phat = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    bool zero_hit = false;  // upper limit is the rule-of-three bound
};

struct ModelFit {
    Model model;
    std::string event;
    WlsFit fit;
    int cells_used = 0;
    bool degenerate = false;  // no usable cells at all
};

struct SlopeGap {
    Model model_a;
    Model model_b;
    std::string event;
    double gap = 0.0;       // slope_a - slope_b
    double joint_se = 0.0;  // sqrt(se_a^2 + se_b^2)
    bool valid = false;
};

struct DecayReport {
    std::vector<CellResult> cells;
    std::vector<ModelFit> fits;
    std::vector<SlopeGap> gaps;
    std::vector<std::string> warnings;

    // RFC-4180-style CSV, header row, LF line endings:
    // model,n,event,replicates,hits,phat,ci_lo,ci_hi
    std::string to_csv() const;

    const ModelFit* find_fit(Model model, const std::string& event) const;
};

// Monte Carlo estimation of every (model, n, event) cell plus weighted
// power-law fits of log phat against log n. Replicates run on independent
// substreams; thread count never changes the result.
DecayReport run_plan(const ExperimentPlan& plan, int threads = 0);

// Largest mass of the Bin(n, alpha) distribution (evaluated at the mode and
// its neighbors).
double max_binomial_mode(std::int64_t n, double alpha);

struct CollisionBoundRow {
    Model model;
    int n = 0;
    std::int64_t replicates = 0;
    std::int64_t collision_hits = 0;
    double collision_phat = 0.0;
    double bound = 0.0;   // C(k,2) * max_i max_binomial_mode(n, alpha_i)
    double ratio = 0.0;   // collision_phat / bound
    std::optional<double> iso_phat;  // exact-isomorphism frequency, D model, n <= 10
    std::vector<double> alphas;
};

struct CollisionBoundReport {
    std::vector<CollisionBoundRow> rows;
    std::vector<std::string> warnings;
};

// Pairwise-collision probabilities against the binomial-mode bound; at n <= 10
// under the D model, also the exact-isomorphism frequency on sampled tuples.
CollisionBoundReport collision_bound_check(const ExperimentPlan& plan, int threads = 0);

// Worker count resolution: explicit argument, else DEGSEQ_THREADS, else
// hardware concurrency.
int resolve_thread_count(int requested);

}  // namespace degseq
