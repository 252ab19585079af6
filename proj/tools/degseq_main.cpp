// Command-line front end: exact identity verification, plan-driven Monte
// Carlo experiments, and raw sampling.
//
// Exit codes: 0 success, 2 usage/validation error, 3 I/O failure.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "degseq/decay.hpp"
#include "degseq/errors.hpp"
#include "degseq/models.hpp"
#include "degseq/oracle.hpp"
#include "degseq/plan.hpp"
#include "degseq/samplers.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

std::vector<double> parse_p_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("empty probability list");
    return out;
}

int cmd_verify(int n, int k, const std::string& p_text) {
    const std::vector<double> p = parse_p_list(p_text);
    if (k != 0 && std::size_t(k) != p.size()) {
        std::cerr << "error: --k disagrees with the number of probabilities\n";
        return kExitUsage;
    }
    if (n > 5 || p.size() > 2) {
        std::cerr << "error: verify is an exhaustive check; it requires n <= 5 and k <= 2\n";
        return kExitUsage;
    }
    const degseq::ModelParams params(n, p);
    const degseq::IdentityReport report = degseq::verify_identity_suite(params);
    std::cout << "identity suite at n=" << n << ", p=" << p_text << "\n"
              << report.to_string() << "\n";
    return report.pass ? kExitOk : 1;
}

int cmd_run(const std::string& plan_path, int threads) {
    const degseq::PlanFile plan_file = degseq::load_plan_file(plan_path);
    const degseq::DecayReport report = degseq::run_plan(plan_file.plan, threads);
    for (const auto& warning : report.warnings) std::cerr << "warning: " << warning << "\n";

    std::string json;
    if (plan_file.mode == "collision_bound") {
        const degseq::CollisionBoundReport bound =
            degseq::collision_bound_check(plan_file.plan, threads);
        json = degseq::report_summary_json(plan_file, report, &bound);
    } else {
        json = degseq::report_summary_json(plan_file, report);
    }
    degseq::write_text_file(plan_file.csv_out, report.to_csv());
    degseq::write_text_file(plan_file.json_out, json);
    std::cout << "wrote " << plan_file.csv_out << " and " << plan_file.json_out << "\n";
    return kExitOk;
}

int cmd_sample(const std::string& model_text, int n, double p, std::int64_t count,
               std::uint64_t seed) {
    const degseq::Model model = degseq::parse_model(model_text);
    const degseq::ModelParams params(n, {p});
    const degseq::SamplerConfig cfg{seed, model, params};
    for (std::int64_t r = 0; r < count; ++r) {
        const degseq::DegreeSequence d = degseq::sample_component(cfg, 0, std::uint64_t(r));
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (j) std::cout << " ";
            std::cout << d[j];
        }
        std::cout << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"degree-sequence models: exact identities, samplers, and decay experiments"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run the exact identity suite at small n");
    int verify_n = 4;
    int verify_k = 0;
    std::string verify_p = "0.3";
    verify->add_option("--n", verify_n, "vertex count (<= 5)")->required();
    verify->add_option("--k", verify_k, "graph count (<= 2); default from --p");
    verify->add_option("--p", verify_p, "comma-separated edge probabilities")->required();

    auto* run = app.add_subcommand("run", "execute a JSON experiment plan");
    std::string plan_path;
    int threads = 0;
    run->add_option("plan", plan_path, "path to the plan file")->required();
    run->add_option("--threads", threads,
                    "worker cap (default: DEGSEQ_THREADS or hardware)");

    auto* sample = app.add_subcommand("sample", "print seeded draws, one sequence per line");
    std::string sample_model = "B";
    int sample_n = 0;
    double sample_p = 0.0;
    std::int64_t sample_count = 1;
    std::uint64_t sample_seed = 0;
    sample->add_option("--model", sample_model, "B, E, I, Eprime, or D")->required();
    sample->add_option("--n", sample_n, "vertex count")->required();
    sample->add_option("--p", sample_p, "edge probability")->required();
    sample->add_option("--count", sample_count, "number of draws")->required();
    sample->add_option("--seed", sample_seed, "RNG seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(verify_n, verify_k, verify_p);
        if (run->parsed()) return cmd_run(plan_path, threads);
        if (sample->parsed())
            return cmd_sample(sample_model, sample_n, sample_p, sample_count, sample_seed);
    } catch (const degseq::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const degseq::plan_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const degseq::capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
