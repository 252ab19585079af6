#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "degseq/decay.hpp"
#include "degseq/mathutil.hpp"
#include "degseq/models.hpp"
#include "degseq/oracle.hpp"

using namespace degseq;

namespace {

ExperimentPlan base_plan() {
    ExperimentPlan plan;
    plan.n_grid = {6, 10};
    plan.p_rule.kind = PRule::Kind::Fixed;
    plan.p_rule.fixed = {0.3};
    plan.k = 1;
    plan.replicates = 20000;
    plan.seed = 424242;
    plan.models = {Model::B};
    plan.allow_outside_regime = true;
    EventSpec odd;
    odd.kind = EventSpec::Kind::OddSum;
    plan.events = {odd};
    return plan;
}

}  // namespace

TEST_CASE("plan validation") {
    ExperimentPlan plan = base_plan();
    CHECK_NOTHROW(plan.validate());

    ExperimentPlan bad = base_plan();
    bad.n_grid = {10, 6};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = base_plan();
    bad.replicates = 50;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = base_plan();
    bad.events[0].kind = EventSpec::Kind::FbPairCollision;  // k = 1
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = base_plan();
    bad.events.clear();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("odd-sum calibration event: estimates sit on the closed form") {
    const ExperimentPlan plan = base_plan();
    const DecayReport report = run_plan(plan, 1);
    REQUIRE(report.cells.size() == 2);
    for (const auto& cell : report.cells) {
        const ModelParams params(cell.n, {0.3});
        const double truth = (1.0 - even_odd_gap_term(params, 0)) / 2.0;
        const double se = std::sqrt(truth * (1.0 - truth) / double(cell.replicates));
        CAPTURE(cell.n);
        CHECK(std::abs(cell.phat - truth) <= 4.0 * se);
        CHECK(cell.ci_lo <= cell.phat);
        CHECK(cell.ci_hi >= cell.phat);
    }
    // Probability is flat in n, so the fitted slope hovers near zero.
    REQUIRE(report.fits.size() == 1);
    REQUIRE(report.fits[0].fit.valid);
    CHECK(std::abs(report.fits[0].fit.slope) <= 0.02 + 4.0 * report.fits[0].fit.slope_se);
}

TEST_CASE("sum-threshold calibration against the Bin(n(n-1), p) tail") {
    ExperimentPlan plan = base_plan();
    plan.n_grid = {4};
    EventSpec tail;
    tail.kind = EventSpec::Kind::SumThreshold;
    tail.cmp = EventSpec::Cmp::Ge;
    tail.value = 6;
    plan.events = {tail};
    const DecayReport report = run_plan(plan, 1);
    REQUIRE(report.cells.size() == 1);
    double truth = 0.0;
    for (std::int64_t m = 6; m <= 12; ++m) truth += binomial_pmf(m, 12, 0.3);
    CHECK(truth == doctest::Approx(0.11784873886199998).epsilon(1e-12));
    const double se = std::sqrt(truth * (1.0 - truth) / double(plan.replicates));
    CHECK(std::abs(report.cells[0].phat - truth) <= 4.0 * se);
}

TEST_CASE("impossible events produce rule-of-three cells and no fit") {
    ExperimentPlan plan = base_plan();
    EventSpec never;
    never.kind = EventSpec::Kind::SumThreshold;
    never.cmp = EventSpec::Cmp::Ge;
    never.value = 1000000;  // above n(n-1) for the whole grid
    plan.events = {never};
    const DecayReport report = run_plan(plan, 1);
    for (const auto& cell : report.cells) {
        CHECK(cell.hits == 0);
        CHECK(cell.zero_hit);
        CHECK(cell.phat == 0.0);
        CHECK(cell.ci_lo == 0.0);
        CHECK(cell.ci_hi == doctest::Approx(3.0 / double(cell.replicates)));
    }
    REQUIRE(report.fits.size() == 1);
    CHECK(report.fits[0].degenerate);
    CHECK_FALSE(report.fits[0].fit.valid);
    CHECK_FALSE(report.warnings.empty());
}

TEST_CASE("reports are reproducible and thread-count independent") {
    ExperimentPlan plan = base_plan();
    plan.n_grid = {6, 8};
    plan.models = {Model::B, Model::D};
    EventSpec ge;
    ge.kind = EventSpec::Kind::SumThreshold;
    ge.cmp = EventSpec::Cmp::Ge;
    ge.value = 10;
    plan.events = {ge};
    plan.replicates = 5000;
    const std::string csv_one = run_plan(plan, 1).to_csv();
    const std::string csv_again = run_plan(plan, 1).to_csv();
    const std::string csv_three = run_plan(plan, 3).to_csv();
    const std::string csv_eight = run_plan(plan, 8).to_csv();
    CHECK(csv_one == csv_again);
    CHECK(csv_one == csv_three);
    CHECK(csv_one == csv_eight);
    CHECK(csv_one.substr(0, csv_one.find('\n')) ==
          "model,n,event,replicates,hits,phat,ci_lo,ci_hi");
}

TEST_CASE("every model matches its exact event probability at n = 4") {
    // Event M(d) = 6 at n = 4, p = 0.3; exact masses from the closed forms
    // and the brute-force D table.
    const int n = 4;
    const double p = 0.3;
    const ModelParams params(n, {p});
    std::vector<DegreeSequence> event;
    for (const auto& d : enumerate_even_sequences(n))
        if (degree_sum(d) == 6) event.push_back(d);

    ExperimentPlan plan;
    plan.n_grid = {n};
    plan.p_rule.kind = PRule::Kind::Fixed;
    plan.p_rule.fixed = {p};
    plan.k = 1;
    plan.replicates = 40000;
    plan.seed = 777;
    plan.models = {Model::B, Model::E, Model::Eprime, Model::I, Model::D};
    plan.allow_outside_regime = true;
    EventSpec eq;
    eq.kind = EventSpec::Kind::SumThreshold;
    eq.cmp = EventSpec::Cmp::Eq;
    eq.value = 6;
    plan.events = {eq};
    const DecayReport report = run_plan(plan, 2);

    for (const auto& cell : report.cells) {
        double truth = 0.0;
        if (cell.model == Model::I)
            truth = integrated_event_prob(params, 0, event).linear();
        else
            truth = exact_event_prob(cell.model, params, 0, event).linear();
        const double se = std::sqrt(truth * (1.0 - truth) / double(cell.replicates));
        CAPTURE(model_name(cell.model));
        CHECK(std::abs(cell.phat - truth) <= 4.0 * se);
    }
}

TEST_CASE("binomial mode maxima") {
    CHECK(max_binomial_mode(1, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(max_binomial_mode(100, 0.5) ==
          doctest::Approx(0.07958923738717875).epsilon(1e-12));
    // Local limit: sqrt(n) b(mode) -> 1/sqrt(2 pi a (1-a)).
    CHECK(std::sqrt(1e4) * max_binomial_mode(10000, 0.5) ==
          doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(0.01));
    CHECK_THROWS_AS(max_binomial_mode(10, 0.0), std::invalid_argument);
    // The mode mass always dominates its neighborhood.
    for (double alpha : {0.17, 0.5, 0.83})
        for (std::int64_t n : {7, 64, 1001}) {
            const double peak = max_binomial_mode(n, alpha);
            for (std::int64_t x = 0; x <= n; ++x)
                CHECK(binomial_pmf(x, n, alpha) <= peak + 1e-15);
        }
}

TEST_CASE("collision bound check at exhaustive scale") {
    ExperimentPlan plan;
    plan.n_grid = {6};
    plan.p_rule.kind = PRule::Kind::Fixed;
    plan.p_rule.fixed = {0.5};
    plan.k = 2;
    plan.replicates = 4000;
    plan.seed = 31337;
    plan.models = {Model::B, Model::D};
    plan.allow_outside_regime = true;
    EventSpec ev;
    ev.kind = EventSpec::Kind::FbPairCollision;
    plan.events = {ev};

    const CollisionBoundReport report = collision_bound_check(plan, 2);
    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows) {
        CHECK(row.bound > 0.0);
        CHECK(row.collision_phat >= 0.0);
        CHECK(row.collision_phat <= 1.0);
        CHECK(row.alphas.size() == 2);
        if (row.model == Model::D) {
            REQUIRE(row.iso_phat.has_value());
            CHECK(*row.iso_phat > 0.0);  // p = 0.5 at n = 6 collides often
            // Isomorphism implies equal degree counts for every set.
            CHECK(*row.iso_phat <= row.collision_phat + 1e-12);
        } else {
            CHECK_FALSE(row.iso_phat.has_value());
        }
    }
}

TEST_CASE("outside-regime plans emit advisory warnings but still run") {
    ExperimentPlan plan = base_plan();
    plan.p_rule.fixed = {0.5};  // p sqrt(n) > 1 across the grid
    plan.allow_outside_regime = false;
    const DecayReport report = run_plan(plan, 1);
    CHECK_FALSE(report.warnings.empty());
    CHECK_FALSE(report.cells.empty());

    plan.allow_outside_regime = true;
    CHECK(run_plan(plan, 1).warnings.empty());
}

TEST_CASE("collision estimates are non-increasing in n up to CI overlap") {
    ExperimentPlan plan;
    plan.n_grid = {32, 64, 128};
    plan.p_rule.kind = PRule::Kind::PowerLaw;
    plan.p_rule.beta = 0.7;
    plan.k = 2;
    plan.replicates = 20000;
    plan.seed = 99;
    plan.models = {Model::B};
    plan.allow_outside_regime = true;
    EventSpec ev;
    ev.kind = EventSpec::Kind::FbPairCollision;
    plan.events = {ev};
    const DecayReport report = run_plan(plan, 1);
    REQUIRE(report.cells.size() == 3);
    for (std::size_t i = 0; i + 1 < report.cells.size(); ++i) {
        const auto& a = report.cells[i];
        const auto& b = report.cells[i + 1];
        const bool decreasing = b.phat <= a.phat;
        const bool ci_overlap = b.ci_lo <= a.ci_hi;
        CHECK((decreasing || ci_overlap));
    }
}

TEST_CASE("pairwise collision stays under the binomial-mode bound in regime") {
    ExperimentPlan plan;
    plan.n_grid = {256, 512};
    plan.p_rule.kind = PRule::Kind::PowerLaw;
    plan.p_rule.beta = 0.7;
    plan.k = 2;
    plan.replicates = 30000;
    plan.seed = 4096;
    plan.models = {Model::B};
    plan.allow_outside_regime = true;
    EventSpec ev;
    ev.kind = EventSpec::Kind::FbPairCollision;
    plan.events = {ev};
    const CollisionBoundReport report = collision_bound_check(plan, 1);
    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows) {
        // Under B the collision mass is around 1/sqrt(2) of the mode bound;
        // the Wilson upper limit must stay below the bound itself.
        const WilsonInterval ci = wilson_interval(row.collision_hits, row.replicates);
        CAPTURE(row.n);
        CHECK(ci.hi <= row.bound);
        CHECK(row.ratio > 0.3);
        CHECK(row.ratio <= 1.0);
    }
}

namespace {

// Exhaustive isomorphism-class census on 6 vertices: canonical form of each
// of the 2^15 edge masks is the minimum relabeled mask over all 720 vertex
// permutations.
double exact_iso_pair_probability_n6_half() {
    const int n = 6;
    const int pairs = 15;
    // slot <-> pair tables
    int slot_u[15], slot_v[15];
    int slot_of[6][6];
    int s = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++s) {
            slot_u[s] = u;
            slot_v[s] = v;
            slot_of[u][v] = slot_of[v][u] = s;
        }
    // all permutations as slot maps
    std::vector<std::array<int, 15>> slot_maps;
    std::array<int, 6> perm = {0, 1, 2, 3, 4, 5};
    do {
        std::array<int, 15> map;
        for (int t = 0; t < pairs; ++t)
            map[std::size_t(t)] = slot_of[perm[std::size_t(slot_u[t])]]
                                         [perm[std::size_t(slot_v[t])]];
        slot_maps.push_back(map);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::map<std::uint32_t, std::uint32_t> class_sizes;
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
        std::uint32_t canon = mask;
        for (const auto& map : slot_maps) {
            std::uint32_t image = 0;
            std::uint32_t bits = mask;
            while (bits) {
                const int t = __builtin_ctz(bits);
                bits &= bits - 1;
                image |= 1u << map[std::size_t(t)];
            }
            canon = std::min(canon, image);
        }
        ++class_sizes[canon];
    }
    // At p = 1/2 every labeled graph has mass 2^-15, so
    // P[iso pair] = sum over classes of (size / 2^15)^2.
    double prob = 0.0;
    for (const auto& [canon, size] : class_sizes) {
        const double mass = double(size) / double(1u << pairs);
        prob += mass * mass;
    }
    return prob;
}

}  // namespace

TEST_CASE("sampled isomorphism frequency matches the exhaustive class census") {
    const double exact = exact_iso_pair_probability_n6_half();
    CHECK(exact > 0.0);
    CHECK(exact < 1.0);

    ExperimentPlan plan;
    plan.n_grid = {6};
    plan.p_rule.kind = PRule::Kind::Fixed;
    plan.p_rule.fixed = {0.5};
    plan.k = 2;
    plan.replicates = 40000;
    plan.seed = 60006;
    plan.models = {Model::D};
    plan.allow_outside_regime = true;
    EventSpec ev;
    ev.kind = EventSpec::Kind::FbPairCollision;
    plan.events = {ev};
    const CollisionBoundReport report = collision_bound_check(plan, 1);
    REQUIRE(report.rows.size() == 1);
    REQUIRE(report.rows[0].iso_phat.has_value());
    const double phat = *report.rows[0].iso_phat;
    const double se = std::sqrt(exact * (1.0 - exact) / double(plan.replicates));
    CHECK(phat > 0.0);
    CHECK(std::abs(phat - exact) <= 4.0 * se);
}

TEST_CASE("thread count resolution") {
    CHECK(resolve_thread_count(5) == 5);
    CHECK(resolve_thread_count(0) >= 1);
}
