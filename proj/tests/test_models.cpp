#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "degseq/errors.hpp"
#include "degseq/mathutil.hpp"
#include "degseq/models.hpp"

using namespace degseq;

namespace {

// log of the exact rational product of Bin(3, 0.3) masses for one sequence;
// everything stays in integer arithmetic until the final division.
double exact_log_prob_n4_p03(const DegreeSequence& d) {
    auto choose3 = [](int k) { return k == 0 || k == 3 ? 1ULL : 3ULL; };
    unsigned long long num = 1;
    for (int v : d) {
        num *= choose3(v);
        for (int i = 0; i < v; ++i) num *= 3ULL;
        for (int i = 0; i < 3 - v; ++i) num *= 7ULL;
    }
    return std::log(double(num)) - 12.0 * std::log(10.0);
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(ModelParams(1, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(4, {}), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(4, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(4, {1.0}), std::invalid_argument);
    const ModelParams params(5, {0.3, 0.6});
    CHECK(params.pair_count() == 10);
    CHECK(params.k() == 2);
    CHECK(params.q(1) == doctest::Approx(0.4));
    CHECK_THROWS_AS(params.p(2), std::invalid_argument);
    CHECK_THROWS_AS(validate_sequence(3, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(validate_sequence(3, {0, 1, 3}), std::invalid_argument);
}

TEST_CASE("sequence stats") {
    const DegreeSequence d = {1, 2, 0, 3};
    const SequenceStats s = sequence_stats(d);
    CHECK(s.degree_sum == 6);
    CHECK(s.even_sum);
    CHECK(s.lambda == doctest::Approx(6.0 / 12.0));
    // As printed: deviations from the whole sum 6.
    CHECK(s.gamma2 == doctest::Approx((25.0 + 16.0 + 36.0 + 9.0) / 9.0).epsilon(1e-14));
    const SequenceStats sm = sequence_stats(d, Gamma2Variant::MeanCentered);
    // Mean 1.5: deviations -0.5, 0.5, -1.5, 1.5.
    CHECK(sm.gamma2 == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
    CHECK_FALSE(sequence_stats({1, 0, 0}).even_sum);
}

TEST_CASE("binomial model probabilities") {
    const ModelParams p2(2, {0.5});
    CHECK(binomial_seq_prob(p2, 0, {1, 1}).log() == doctest::Approx(std::log(0.25)).epsilon(1e-12));

    const ModelParams p3(3, {0.3});
    CHECK(binomial_seq_prob(p3, 0, {0, 0, 0}).log() ==
          doctest::Approx(6.0 * std::log(0.7)).epsilon(1e-12));

    const ModelParams p4(4, {0.3});
    const DegreeSequence d = {1, 2, 0, 3};
    CHECK(binomial_seq_prob(p4, 0, d).log() ==
          doctest::Approx(exact_log_prob_n4_p03(d)).epsilon(1e-12));
    CHECK_THROWS_AS(binomial_seq_prob(p4, 0, {1, 2, 0}), std::invalid_argument);
}

TEST_CASE("even-sum model: restriction closed form") {
    const ModelParams p2a(2, {0.7});
    CHECK(even_sum_prob(p2a, 0, {1, 0}).is_zero());

    const ModelParams p2b(2, {0.5});
    CHECK(even_sum_prob(p2b, 0, {1, 1}).log() == doctest::Approx(std::log(0.5)).epsilon(1e-12));

    const ModelParams p2c(2, {0.3});
    // Restriction oracle on E_2 = {(0,0),(1,1)}: q^2 / (p^2 + q^2).
    CHECK(even_sum_prob(p2c, 0, {0, 0}).linear() ==
          doctest::Approx(0.49 / 0.58).epsilon(1e-12));
    CHECK(even_sum_prob(p2c, 0, {0, 0}).log() ==
          doctest::Approx(std::log(0.8448275862068966)).epsilon(1e-12));
}

TEST_CASE("even-sum normalization over the enumerated space") {
    for (int n : {2, 3, 4, 5}) {
        for (double p : {0.1, 0.5, 0.9}) {
            const ModelParams params(n, {p});
            PairwiseAccumulator total;
            for (const auto& d : enumerate_even_sequences(n))
                total.add(even_sum_prob(params, 0, d).linear());
            CHECK(total.total() == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("weighted even-sum model") {
    for (double p : {0.2, 0.5, 0.8}) {
        const ModelParams params(2, {p});
        // Level sets at n=2 are single points, so the reweighting pins them
        // to the Bin(1, p) masses.
        CHECK(weighted_even_sum_prob(params, 0, {1, 1}).log() ==
              doctest::Approx(std::log(p)).epsilon(1e-12));
        CHECK(weighted_even_sum_prob(params, 0, {0, 0}).log() ==
              doctest::Approx(std::log(1.0 - p)).epsilon(1e-12));
        CHECK(weighted_even_sum_prob(params, 0, {1, 0}).is_zero());
    }

    // Enumerated S_4 mass at n=4 equals the Bin(N, p) mass at 2.
    const ModelParams p4(4, {0.3});
    PairwiseAccumulator level;
    for (const auto& d : enumerate_even_sequences(4))
        if (degree_sum(d) == 4) level.add(weighted_even_sum_prob(p4, 0, d).linear());
    CHECK(level.total() == doctest::Approx(0.324135).epsilon(1e-12));

    // Full normalization.
    PairwiseAccumulator total;
    for (const auto& d : enumerate_even_sequences(4))
        total.add(weighted_even_sum_prob(p4, 0, d).linear());
    CHECK(total.total() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("degree-sum distribution") {
    const ModelParams p2(2, {0.5});
    const auto dist2 = compute_sum_distribution(p2, 0);
    REQUIRE(dist2.size() == 3);
    CHECK(dist2[0].linear() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(dist2[1].linear() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dist2[2].linear() == doctest::Approx(0.25).epsilon(1e-12));

    const ModelParams p3(3, {0.3});
    CHECK(compute_sum_distribution(p3, 0)[0].linear() ==
          doctest::Approx(std::pow(0.7, 6)).epsilon(1e-12));

    const ModelParams p4(4, {0.3});
    const auto dist4 = compute_sum_distribution(p4, 0);
    PairwiseAccumulator total;
    for (const auto& mass : dist4) total.add(mass.linear());
    CHECK(total.total() == doctest::Approx(1.0).epsilon(1e-12));

    // Even-level mass equals restriction of the sum law.
    const double norm = 1.0 + even_odd_gap_term(p4, 0);
    CHECK(even_sum_level_prob(p4, 0, 4).linear() ==
          doctest::Approx(2.0 * dist4[4].linear() / norm).epsilon(1e-12));
    CHECK(even_sum_level_prob(p4, 0, 5).is_zero());
}

TEST_CASE("truncated normal mass") {
    // sigma = 0.5 around 0.5: the unit interval spans one sigma each way.
    CHECK(truncated_normal_mass(0.5, 0.5) ==
          doctest::Approx(0.6826894921370859).epsilon(1e-12));
    const ModelParams big(100, {0.5});
    CHECK(truncated_normal_V(big, 0) == doctest::Approx(1.0).epsilon(1e-12));
    for (int n : {2, 3, 10}) {
        for (double p : {0.05, 0.4, 0.95}) {
            const ModelParams params(n, {p});
            const double v = truncated_normal_V(params, 0);
            CHECK(v > 0.0);
            CHECK(v <= 1.0 + 1e-15);
        }
    }
}

TEST_CASE("integrated model: full space and empty event") {
    for (int n : {2, 3, 4}) {
        for (double p : {0.2, 0.5, 0.8}) {
            const ModelParams params(n, {p});
            const auto full = enumerate_even_sequences(n);
            CHECK(integrated_event_prob(params, 0, full).linear() ==
                  doctest::Approx(1.0).epsilon(1e-8));
        }
    }
    const ModelParams params(3, {0.4});
    CHECK(integrated_event_prob(params, 0, std::vector<DegreeSequence>{}).is_zero());
    // Odd-sum points carry no mass in any even-sum-based model.
    CHECK(integrated_event_prob(params, 0, std::vector<DegreeSequence>{{1, 0, 0}}).is_zero());
}

TEST_CASE("integrated model vs an independent Monte Carlo of the construction") {
    // Event {M = 0} at n=4, p=0.2. The oracle draws the noisy parameter with
    // the standard-library generator and evaluates the closed-form
    // restriction mass 2 (1-x)^12 / (1 + (1-2x)^12) -- no library code shared
    // with the quadrature path.
    const ModelParams params(4, {0.2});
    const double sigma = std::sqrt(0.2 * 0.8 / 12.0);
    std::mt19937_64 gen(987654321);
    std::normal_distribution<double> noise(0.2, sigma);
    const std::int64_t draws = 1000000;
    double sum = 0.0, sum_sq = 0.0;
    for (std::int64_t i = 0; i < draws; ++i) {
        double x;
        do {
            x = noise(gen);
        } while (!(x > 0.0 && x < 1.0));
        const double mass = 2.0 * std::pow(1.0 - x, 12) / (1.0 + std::pow(1.0 - 2.0 * x, 12));
        sum += mass;
        sum_sq += mass * mass;
    }
    const double mc = sum / double(draws);
    const double se = std::sqrt((sum_sq / double(draws) - mc * mc) / double(draws));
    const double quad =
        integrated_event_prob(params, 0, std::vector<DegreeSequence>{{0, 0, 0, 0}}).linear();
    CHECK(std::abs(quad - mc) <= 3.0 * se);
}

TEST_CASE("event polynomial compresses explicit events exactly") {
    const ModelParams params(4, {0.35});
    const auto even = enumerate_even_sequences(4);
    const auto poly = EventMassPolynomial::from_points(4, even);
    // Against a directly summed P_{B,x}(E_n) at several x values.
    for (double x : {0.1, 0.35, 0.77}) {
        const ModelParams at_x(4, {x});
        PairwiseAccumulator acc;
        for (const auto& d : even) acc.add(binomial_seq_prob(at_x, 0, d).linear());
        CHECK(poly.binomial_mass(x) == doctest::Approx(acc.total()).epsilon(1e-12));
    }
}

TEST_CASE("product measures") {
    const ModelParams params(2, {0.5, 0.5});
    const MultiSequence both = {{1, 1}, {1, 1}};
    CHECK(product_prob(Model::B, params, both).log() ==
          doctest::Approx(std::log(0.0625)).epsilon(1e-12));
    const MultiSequence odd = {{1, 1}, {1, 0}};
    CHECK(product_prob(Model::E, params, odd).is_zero());
    CHECK_THROWS_AS(product_prob(Model::D, params, both), std::invalid_argument);

    // k = 1 reduces to the single-graph measures.
    const ModelParams single(4, {0.3});
    const DegreeSequence d = {1, 2, 0, 1};
    CHECK(product_prob(Model::B, single, {d}).log() ==
          doctest::Approx(binomial_seq_prob(single, 0, d).log()).epsilon(1e-14));
    CHECK(product_prob(Model::E, single, {d}).log() ==
          doctest::Approx(even_sum_prob(single, 0, d).log()).epsilon(1e-14));
    CHECK(product_prob(Model::Eprime, single, {d}).log() ==
          doctest::Approx(weighted_even_sum_prob(single, 0, d).log()).epsilon(1e-14));
}

TEST_CASE("k-fold even-sum identity over the full product space") {
    const ModelParams params(3, {0.3, 0.6});
    const auto even = enumerate_even_sequences(3);
    std::vector<MultiSequence> full;
    for (const auto& a : even)
        for (const auto& b : even) full.push_back({a, b});
    const auto sides = multi_even_sum_identity(params, full);
    CHECK(sides.lhs.log() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(sides.rhs.log() == doctest::Approx(0.0).epsilon(1e-10));

    const auto empty = multi_even_sum_identity(params, {});
    CHECK(empty.lhs.is_zero());
    CHECK(empty.rhs.is_zero());

    // Single even point at k = 1 collapses to the single-graph restriction.
    const ModelParams single(3, {0.3});
    const DegreeSequence d = {1, 1, 0};
    const auto point = multi_even_sum_identity(single, {{d}});
    CHECK(point.lhs.log() == doctest::Approx(even_sum_prob(single, 0, d).log()).epsilon(1e-12));
    CHECK(point.rhs.log() == doctest::Approx(point.lhs.log()).epsilon(1e-12));
}

TEST_CASE("predicted D-to-E' ratio") {
    const ModelParams params(4, {0.4});
    // (1,1,1,1): lambda = 1/3; as-printed gamma2 = 4*(1-4)^2/9 = 4.
    const double lambda = 1.0 / 3.0;
    const double gamma2 = 4.0;
    const double r = gamma2 / (lambda * (1.0 - lambda));
    const double expected = std::exp(0.25 * (1.0 - r * r));
    CHECK(dp_ratio_formula(params, {{1, 1, 1, 1}}) ==
          doctest::Approx(expected).epsilon(1e-12));
    // Mean-centered: constant sequence has gamma2 = 0, so the ratio is e^{k/4}.
    CHECK(dp_ratio_formula(params, {{1, 1, 1, 1}}, Gamma2Variant::MeanCentered) ==
          doctest::Approx(std::exp(0.25)).epsilon(1e-12));

    CHECK_THROWS_AS(dp_ratio_formula(params, {{0, 0, 0, 0}}), degenerate_input_error);
    CHECK_THROWS_AS(dp_ratio_formula(params, {{1, 0, 0, 0}}), std::invalid_argument);
}

TEST_CASE("acceptability advisory") {
    // p = n^{-0.7} at n = 10^4 sits inside both finite-n proxies.
    const double p_regime = std::pow(1e4, -0.7);
    const auto in_range = acceptability_check(ModelParams(10000, {p_regime}));
    REQUIRE(in_range.graphs.size() == 1);
    CHECK(in_range.graphs[0].plausible);
    CHECK(in_range.graphs[0].p_lower_proxy == doctest::Approx(1.7207759197297257).epsilon(1e-9));
    CHECK(in_range.graphs[0].p_upper_proxy == doctest::Approx(0.1584893192461114).epsilon(1e-9));

    // Constant p: the upper proxy explodes.
    const auto too_dense = acceptability_check(ModelParams(10000, {0.5}));
    CHECK_FALSE(too_dense.graphs[0].below_upper);
    CHECK_FALSE(too_dense.graphs[0].plausible);

    // p = 1/n^2: below the lower proxy.
    const auto too_sparse = acceptability_check(ModelParams(100, {1e-4}));
    CHECK_FALSE(too_sparse.graphs[0].above_lower);
    CHECK_FALSE(too_sparse.graphs[0].plausible);
    CHECK(too_sparse.summary().find("below regime") != std::string::npos);
}

TEST_CASE("monotonicity of measures on nested events") {
    const ModelParams params(3, {0.35});
    const auto even = enumerate_even_sequences(3);
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<DegreeSequence> small, big;
        for (const auto& d : even) {
            const bool in_big = std::uniform_int_distribution<int>(0, 1)(gen) == 1;
            if (in_big) {
                big.push_back(d);
                if (std::uniform_int_distribution<int>(0, 1)(gen) == 1) small.push_back(d);
            }
        }
        for (Model model : {Model::B, Model::E, Model::Eprime}) {
            PairwiseAccumulator ps, pb;
            for (const auto& d : small)
                ps.add(product_prob(model, params, {d}).linear());
            for (const auto& d : big) pb.add(product_prob(model, params, {d}).linear());
            CHECK(ps.total() <= pb.total() + 1e-14);
        }
    }
}

TEST_CASE("enumeration helpers") {
    int count = 0;
    for_each_sequence(3, [&](const DegreeSequence&) { ++count; });
    CHECK(count == 27);
    CHECK(enumerate_even_sequences(3).size() == 14);
    CHECK(sequence_enumeration_feasible(7));
    CHECK_FALSE(sequence_enumeration_feasible(9));
    CHECK_THROWS_AS(for_each_sequence(9, [](const DegreeSequence&) {}), capacity_error);
}
