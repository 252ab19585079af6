#include "degseq/decay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "degseq/samplers.hpp"

namespace degseq {

std::vector<double> PRule::p_for(int n, int k) const {
    double p = 0.0;
    switch (kind) {
        case Kind::PowerLaw: p = c * std::pow(double(n), -beta); break;
        case Kind::LogOverN: p = c * std::log(double(n)) / double(n); break;
        case Kind::Fixed: {
            if (fixed.size() == std::size_t(k)) return fixed;
            if (fixed.size() == 1) return std::vector<double>(std::size_t(k), fixed[0]);
            throw std::invalid_argument("PRule: fixed rule needs 1 or k values");
        }
    }
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("PRule: rule leaves (0,1) at n = " + std::to_string(n));
    return std::vector<double>(std::size_t(k), p);
}

std::string PRule::describe() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::PowerLaw: out << c << "*n^-" << beta; break;
        case Kind::LogOverN: out << c << "*log(n)/n"; break;
        case Kind::Fixed: {
            out << "fixed(";
            for (std::size_t i = 0; i < fixed.size(); ++i) out << (i ? "," : "") << fixed[i];
            out << ")";
            break;
        }
    }
    return out.str();
}

std::string EventSpec::name() const {
    switch (kind) {
        case Kind::FbPairCollision: return "fb_pair_collision";
        case Kind::FbAllCollision: return "fb_all_collision";
        case Kind::OddSum: return "odd_sum_g" + std::to_string(graph_index);
        case Kind::SumThreshold: {
            const char* op = cmp == Cmp::Ge ? "ge" : (cmp == Cmp::Le ? "le" : "eq");
            return "sum_g" + std::to_string(graph_index) + "_" + op + "_" +
                   std::to_string(value);
        }
    }
    return "?";
}

void ExperimentPlan::validate() const {
    if (n_grid.empty()) throw std::invalid_argument("plan: empty n grid");
    for (std::size_t i = 0; i + 1 < n_grid.size(); ++i)
        if (n_grid[i] >= n_grid[i + 1])
            throw std::invalid_argument("plan: n grid must be strictly increasing");
    if (n_grid.front() < 2) throw std::invalid_argument("plan: n must be >= 2");
    if (k < 1) throw std::invalid_argument("plan: k must be >= 1");
    if (events.empty()) throw std::invalid_argument("plan: need at least one event");
    if (replicates < 100) throw std::invalid_argument("plan: need at least 100 replicates");
    if (models.empty()) throw std::invalid_argument("plan: need at least one model");
    for (const auto& ev : events) {
        if (ev.graph_index < 0 || ev.graph_index >= k)
            throw std::invalid_argument("plan: event graph index outside [0, k)");
        if ((ev.kind == EventSpec::Kind::FbPairCollision ||
             ev.kind == EventSpec::Kind::FbAllCollision) &&
            k < 2)
            throw std::invalid_argument("plan: collision events need k >= 2");
    }
    // Every rule must be evaluable across the grid.
    for (int n : n_grid) (void)p_rule.p_for(n, k);
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DEGSEQ_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

namespace {

bool evaluate_event(const EventSpec& ev, const MultiSequence& dvec, const BorelSet& fingerprint) {
    switch (ev.kind) {
        case EventSpec::Kind::FbPairCollision:
            return collision_event(dvec, fingerprint, CollisionMode::AnyPair);
        case EventSpec::Kind::FbAllCollision:
            return collision_event(dvec, fingerprint, CollisionMode::All);
        case EventSpec::Kind::OddSum:
            return degree_sum(dvec[std::size_t(ev.graph_index)]) % 2 != 0;
        case EventSpec::Kind::SumThreshold: {
            const std::int64_t m = degree_sum(dvec[std::size_t(ev.graph_index)]);
            switch (ev.cmp) {
                case EventSpec::Cmp::Ge: return m >= ev.value;
                case EventSpec::Cmp::Le: return m <= ev.value;
                case EventSpec::Cmp::Eq: return m == ev.value;
            }
            return false;
        }
    }
    return false;
}

// Hit counts for every event over the replicate range, split across threads.
// Each replicate is keyed by its index alone, so the partition cannot change
// the tally.
std::vector<std::int64_t> count_event_hits(const SamplerConfig& cfg,
                                           const std::vector<EventSpec>& events,
                                           const BorelSet& fingerprint,
                                           std::int64_t replicates, int threads) {
    const std::size_t n_events = events.size();
    std::vector<std::vector<std::int64_t>> per_thread(
        std::size_t(threads), std::vector<std::int64_t>(n_events, 0));

    auto worker = [&](int t) {
        auto& local = per_thread[std::size_t(t)];
        for (std::int64_t r = t; r < replicates; r += threads) {
            const MultiSequence dvec = sample_multi(cfg, std::uint64_t(r));
            for (std::size_t e = 0; e < n_events; ++e)
                if (evaluate_event(events[e], dvec, fingerprint)) ++local[e];
        }
    };

    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    std::vector<std::int64_t> hits(n_events, 0);
    for (const auto& local : per_thread)
        for (std::size_t e = 0; e < n_events; ++e) hits[e] += local[e];
    return hits;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

constexpr std::int64_t kMinHitsForFit = 10;

}  // namespace

std::string DecayReport::to_csv() const {
    std::ostringstream out;
    out << "model,n,event,replicates,hits,phat,ci_lo,ci_hi\n";
    for (const auto& cell : cells) {
        out << model_name(cell.model) << "," << cell.n << "," << cell.event << ","
            << cell.replicates << "," << cell.hits << "," << format_double(cell.phat) << ","
            << format_double(cell.ci_lo) << "," << format_double(cell.ci_hi) << "\n";
    }
    return out.str();
}

const ModelFit* DecayReport::find_fit(Model model, const std::string& event) const {
    for (const auto& f : fits)
        if (f.model == model && f.event == event) return &f;
    return nullptr;
}

DecayReport run_plan(const ExperimentPlan& plan, int threads) {
    plan.validate();
    const int workers = resolve_thread_count(threads);
    DecayReport report;

    for (int n : plan.n_grid) {
        const ModelParams params(n, plan.p_rule.p_for(n, plan.k));
        const AcceptabilityReport accept = acceptability_check(params);
        if (!accept.all_plausible && !plan.allow_outside_regime)
            report.warnings.push_back("n=" + std::to_string(n) +
                                      ": parameter regime advisory failed\n" + accept.summary());
        const BorelSet fingerprint = fingerprint_threshold_set(params);
        for (Model model : plan.models) {
            const SamplerConfig cfg{plan.seed, model, params};
            const auto hits =
                count_event_hits(cfg, plan.events, fingerprint, plan.replicates, workers);
            for (std::size_t e = 0; e < plan.events.size(); ++e) {
                CellResult cell;
                cell.model = model;
                cell.n = n;
                cell.event = plan.events[e].name();
                cell.replicates = plan.replicates;
                cell.hits = hits[e];
                cell.phat = double(cell.hits) / double(cell.replicates);
                if (cell.hits == 0) {
                    cell.zero_hit = true;
                    cell.ci_lo = 0.0;
                    cell.ci_hi = std::min(1.0, 3.0 / double(cell.replicates));
                } else {
                    const WilsonInterval w = wilson_interval(cell.hits, cell.replicates);
                    cell.ci_lo = w.lo;
                    cell.ci_hi = w.hi;
                }
                report.cells.push_back(cell);
            }
        }
    }

    // Weighted log-log fits per (model, event); delta-method weights
    // 1/Var(log phat) = hits / (1 - phat). Cells with under 10 hits are left
    // out of the fit.
    for (Model model : plan.models) {
        for (const auto& ev : plan.events) {
            const std::string name = ev.name();
            std::vector<double> x, y, w;
            for (const auto& cell : report.cells) {
                if (cell.model != model || cell.event != name) continue;
                if (cell.hits < kMinHitsForFit) continue;
                x.push_back(std::log(double(cell.n)));
                y.push_back(std::log(cell.phat));
                w.push_back(double(cell.hits) / std::max(1e-12, 1.0 - cell.phat));
            }
            ModelFit fit;
            fit.model = model;
            fit.event = name;
            fit.cells_used = int(x.size());
            fit.degenerate = x.empty();
            if (x.size() >= 2) fit.fit = weighted_least_squares(x, y, w);
            report.fits.push_back(fit);
            if (fit.degenerate)
                report.warnings.push_back("no usable cells for fit: model " +
                                          model_name(model) + ", event " + name);
        }
    }

    // Cross-model slope gaps per event.
    for (const auto& ev : plan.events) {
        const std::string name = ev.name();
        for (std::size_t a = 0; a < plan.models.size(); ++a)
            for (std::size_t b = a + 1; b < plan.models.size(); ++b) {
                const ModelFit* fa = report.find_fit(plan.models[a], name);
                const ModelFit* fb = report.find_fit(plan.models[b], name);
                SlopeGap gap;
                gap.model_a = plan.models[a];
                gap.model_b = plan.models[b];
                gap.event = name;
                if (fa && fb && fa->fit.valid && fb->fit.valid) {
                    gap.gap = fa->fit.slope - fb->fit.slope;
                    gap.joint_se = std::sqrt(fa->fit.slope_se * fa->fit.slope_se +
                                             fb->fit.slope_se * fb->fit.slope_se);
                    gap.valid = true;
                }
                report.gaps.push_back(gap);
            }
    }
    return report;
}

double max_binomial_mode(std::int64_t n, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("max_binomial_mode: alpha outside (0,1)");
    if (n < 1) throw std::invalid_argument("max_binomial_mode: n must be >= 1");
    const auto mode = std::int64_t(std::floor((double(n) + 1.0) * alpha));
    double best = 0.0;
    for (std::int64_t x = std::max<std::int64_t>(0, mode - 1);
         x <= std::min<std::int64_t>(n, mode + 1); ++x)
        best = std::max(best, binomial_pmf(x, n, alpha));
    return best;
}

CollisionBoundReport collision_bound_check(const ExperimentPlan& plan, int threads) {
    if (plan.k < 2)
        throw std::invalid_argument("collision_bound_check: needs k >= 2");
    ExperimentPlan collision_plan = plan;
    collision_plan.events = {EventSpec{}};  // pairwise collision
    collision_plan.validate();
    const int workers = resolve_thread_count(threads);

    CollisionBoundReport report;
    const double pairs = double(plan.k) * double(plan.k - 1) / 2.0;
    for (int n : plan.n_grid) {
        const ModelParams params(n, plan.p_rule.p_for(n, plan.k));
        const BorelSet fingerprint = fingerprint_threshold_set(params);

        // alpha_i = P(Bin(n-1, p_i) in B_n), computed exactly from the pmf.
        std::vector<double> alphas;
        for (std::size_t i = 0; i < params.k(); ++i) {
            double alpha = 0.0;
            for (int x = 0; x < n; ++x)
                if (fingerprint.contains(x)) alpha += binomial_pmf(x, n - 1, params.p(i));
            alphas.push_back(std::min(1.0 - 1e-15, std::max(1e-15, alpha)));
        }
        double bound = 0.0;
        for (double alpha : alphas)
            bound = std::max(bound, max_binomial_mode(n, alpha));
        bound *= pairs;

        for (Model model : plan.models) {
            CollisionBoundRow row;
            row.model = model;
            row.n = n;
            row.replicates = plan.replicates;
            row.alphas = alphas;
            row.bound = bound;
            const SamplerConfig cfg{plan.seed, model, params};
            row.collision_hits = count_event_hits(cfg, collision_plan.events, fingerprint,
                                                  plan.replicates, workers)[0];
            row.collision_phat = double(row.collision_hits) / double(plan.replicates);
            row.ratio = bound > 0.0 ? row.collision_phat / bound : 0.0;

            // Exact isomorphism frequency on sampled graph tuples (D only;
            // the decider is exponential beyond small n).
            if (model == Model::D && n <= 10) {
                std::int64_t iso_hits = 0;
                for (std::int64_t r = 0; r < plan.replicates; ++r) {
                    const auto graphs = sample_multi_graphs(cfg, std::uint64_t(r));
                    bool found = false;
                    for (std::size_t i = 0; i < graphs.size() && !found; ++i)
                        for (std::size_t j = i + 1; j < graphs.size() && !found; ++j)
                            if (is_isomorphic(graphs[i], graphs[j])) found = true;
                    if (found) ++iso_hits;
                }
                row.iso_phat = double(iso_hits) / double(plan.replicates);
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

}  // namespace degseq
