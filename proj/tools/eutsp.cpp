// eutsp: command-line front end for generation, single runs, oracles,
// batch experiments and mutation statistics.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eutsp/errors.hpp"
#include "eutsp/experiment.hpp"
#include "eutsp/instance.hpp"
#include "eutsp/oracle.hpp"
#include "eutsp/search.hpp"
#include "eutsp/tour.hpp"

namespace {

using namespace eutsp;

constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

struct GenerateArgs {
    std::string family;
    int n = 0, h = 0, k = 0, m = 0;
    std::uint64_t seed = 0;
    std::string out;
};

struct SolveArgs {
    std::string instance;
    std::string algorithm = "rls";
    std::int64_t budget = 1'000'000;
    std::uint64_t seed = 0;
    int mu = 1, lambda = 1;
    std::string mutation = "two_opt";
    std::string optimum = "auto";
};

struct OracleArgs {
    std::string instance;
    std::string method = "auto";
    std::string tour_out;
};

struct ExperimentArgs {
    std::string config;
    std::string out;
    int threads = -1;
};

struct StatsArgs {
    int n = 6;
    std::int64_t samples = 1'000'000;
    std::uint64_t seed = 0;
};

void report_instance(const Instance& instance, std::ostream& out) {
    const InstanceMetrics& metrics = instance.metrics();
    out << "n=" << instance.size() << " k=" << instance.inner_count()
        << " m=" << instance.grid_size() << " epsilon=" << format_double(metrics.epsilon)
        << " gamma=" << format_double(metrics.gamma) << '\n';
}

int cmd_generate(const GenerateArgs& a) {
    const Family family = parse_family(a.family);
    const auto need = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    need(a.m > 0, "--m is required");
    std::optional<Instance> instance;
    switch (family) {
        case Family::grid:
            need(a.n > 0, "--n is required for family grid");
            instance = generate_grid(a.n, a.m, a.seed);
            break;
        case Family::convex:
            need(a.n > 0, "--n is required for family convex");
            instance = generate_convex(a.n, a.m, a.seed);
            break;
        case Family::inner:
            need(a.h > 0, "--h is required for family inner");
            instance = generate_with_inner(a.h, a.k, a.m, a.seed);
            break;
    }
    if (a.out.empty()) {
        write_instance(*instance, std::cout);
        report_instance(*instance, std::cerr);
    } else {
        write_instance(*instance, std::filesystem::path(a.out));
        report_instance(*instance, std::cout);
    }
    return 0;
}

int cmd_solve(const SolveArgs& a) {
    const Instance instance = read_instance(std::filesystem::path(a.instance));
    AlgorithmParams params;
    params.algorithm = parse_algorithm(a.algorithm);
    params.mu = a.mu;
    params.lambda = a.lambda;
    params.mutation = parse_mutation_kind(a.mutation);
    params.budget = a.budget;
    if (params.mu < 1 || params.lambda < 1) throw std::invalid_argument("--mu and --lambda must be >= 1");
    if (params.budget < 1) throw std::invalid_argument("--budget must be >= 1");

    std::optional<double> optimum;
    if (a.optimum == "auto") {
        optimum = optimum_length_for(instance);
    } else if (a.optimum != "none") {
        throw std::invalid_argument("--optimum expects auto or none");
    }
    const std::string id = std::filesystem::path(a.instance).stem().string();
    const RunRecord record = run_single(instance, id, params, a.seed, optimum);
    std::cout << run_record_header() << '\n';
    write_run_record(record, std::cout);
    return 0;
}

int cmd_oracle(const OracleArgs& a) {
    const Instance instance = read_instance(std::filesystem::path(a.instance));
    std::optional<OracleResult> result;
    if (a.method == "auto") {
        result = strongest_oracle(instance);
        if (!result) throw TooLarge("no oracle accepts an instance of this size");
    } else {
        switch (parse_oracle_method(a.method)) {
            case OracleMethod::brute: result = brute_force_optimum(instance); break;
            case OracleMethod::held_karp: result = held_karp_optimum(instance); break;
            case OracleMethod::hull_order: result = hull_order_optimum(instance); break;
        }
    }
    std::cout << "method=" << to_string(result->method)
              << " optimum=" << format_double(result->optimum_value) << '\n';
    if (a.tour_out.empty()) {
        write_tour(result->optimum_tour, std::cout);
    } else {
        write_tour(result->optimum_tour, std::filesystem::path(a.tour_out));
    }
    return 0;
}

int cmd_experiment(const ExperimentArgs& a) {
    ExperimentConfig config = read_experiment_config(a.config);
    if (!a.out.empty()) config.out = a.out;
    if (a.threads >= 0) config.threads = a.threads;
    const std::vector<RunRecord> records = run_experiment(config);

    const auto emit = [&](std::ostream& csv, std::ostream& summary) {
        csv << run_record_header() << '\n';
        for (const RunRecord& r : records) write_run_record(r, csv);
        write_summary(summarize(records), summary);
    };
    if (config.out.empty()) {
        emit(std::cout, std::cerr);
    } else {
        std::ofstream csv(config.out, std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + config.out);
        emit(csv, std::cout);
    }
    return 0;
}

int cmd_mutation_stats(const StatsArgs& a) {
    if (a.samples < 100'000) throw std::invalid_argument("--samples must be >= 100000");
    if (a.n < 3) throw std::invalid_argument("--n must be >= 3");
    write_mutation_stats(mutation_stats(a.n, a.samples, a.seed), std::cout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euclidean TSP laboratory: randomized search heuristics and exact oracles"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Generate an instance file");
    // --h names the hull size here, so help keeps only its long form.
    generate->set_help_flag("--help", "Print this help message and exit");
    generate->add_option("--family", gen.family, "grid, convex or inner")->required();
    generate->add_option("--n", gen.n, "number of points (grid, convex)");
    generate->add_option("--h", gen.h, "hull points (inner)");
    generate->add_option("--k", gen.k, "inner points (inner)");
    generate->add_option("--m", gen.m, "grid side")->required();
    generate->add_option("--seed", gen.seed, "generator seed");
    generate->add_option("--out", gen.out, "instance file; stdout if omitted");

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run RLS or the EA once and print a CSV record");
    solve_cmd->add_option("--instance", solve.instance)->required();
    solve_cmd->add_option("--algorithm", solve.algorithm, "rls or ea");
    solve_cmd->add_option("--budget", solve.budget, "maximum generations");
    solve_cmd->add_option("--seed", solve.seed);
    solve_cmd->add_option("--mu", solve.mu);
    solve_cmd->add_option("--lambda", solve.lambda);
    solve_cmd->add_option("--mutation", solve.mutation, "two_opt or mixed");
    solve_cmd->add_option("--optimum", solve.optimum, "auto (strongest oracle) or none");

    OracleArgs orc;
    auto* oracle = app.add_subcommand("oracle", "Compute the exact optimum");
    oracle->add_option("--instance", orc.instance)->required();
    oracle->add_option("--method", orc.method, "brute, held_karp, hull_order or auto");
    oracle->add_option("--tour-out", orc.tour_out, "tour file; stdout if omitted");

    ExperimentArgs exp;
    auto* experiment = app.add_subcommand("experiment", "Run a batch experiment from a config file");
    experiment->add_option("--config", exp.config)->required();
    experiment->add_option("--out", exp.out, "CSV path, overrides the config");
    experiment->add_option("--threads", exp.threads, "worker threads, overrides the config");

    StatsArgs st;
    auto* stats = app.add_subcommand("mutation-stats", "Check mutation distributions");
    stats->add_option("--n", st.n);
    stats->add_option("--samples", st.samples);
    stats->add_option("--seed", st.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*generate) return cmd_generate(gen);
        if (*solve_cmd) return cmd_solve(solve);
        if (*oracle) return cmd_oracle(orc);
        if (*experiment) return cmd_experiment(exp);
        if (*stats) return cmd_mutation_stats(st);
    } catch (const GenerationExhausted& e) {
        std::cerr << "error: GenerationExhausted: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const TooLarge& e) {
        std::cerr << "error: TooLarge: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
