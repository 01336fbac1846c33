#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eutsp/instance.hpp"
#include "eutsp/search.hpp"

namespace eutsp {

enum class Family { grid, convex, inner };
enum class Algorithm { rls, ea };

std::string_view to_string(Family family) noexcept;
std::string_view to_string(Algorithm algorithm) noexcept;
Family parse_family(std::string_view text);
Algorithm parse_algorithm(std::string_view text);

/// Everything a single run needs besides the instance and the seed.
struct AlgorithmParams {
    Algorithm algorithm = Algorithm::rls;
    int mu = 1;
    int lambda = 1;
    MutationKind mutation = MutationKind::two_opt;
    std::int64_t budget = 1'000'000;
};

/// One CSV row. RLS rows report mu = lambda = 1 and mutation "inversion".
struct RunRecord {
    std::string instance_id;
    std::size_t n = 0;
    int k = 0;
    int m = 0;
    double epsilon = 0.0;
    double gamma = 0.0;
    Algorithm algorithm = Algorithm::rls;
    int mu = 1;
    int lambda = 1;
    std::string mutation;
    std::uint64_t seed = 0;
    std::int64_t generations = 0;
    std::int64_t fitness_evals = 0;
    std::int64_t alpha_steps = 0;
    std::int64_t beta_steps = 0;
    bool reached_optimum = false;
    bool reached_local_optimum = false;
    double final_length = 0.0;
    std::optional<double> optimum_length;
};

/// Column names in output order.
std::string_view run_record_header();
void write_run_record(const RunRecord& record, std::ostream& out);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// Runs one RLS or EA run and fills a record.
RunRecord run_single(const Instance& instance, const std::string& instance_id,
                     const AlgorithmParams& params, std::uint64_t seed,
                     std::optional<double> optimum);

/// Optimum length from the strongest oracle that accepts the instance.
std::optional<double> optimum_length_for(const Instance& instance);

struct ExperimentConfig {
    Family family = Family::convex;
    std::vector<int> n;          ///< grid and convex
    std::vector<int> h;          ///< inner
    std::vector<int> k;          ///< inner
    int m = 0;
    AlgorithmParams params;
    /// Several kinds give paired runs on the same instance and seed.
    std::vector<MutationKind> mutations{MutationKind::two_opt};
    int runs = 1;
    std::uint64_t base_seed = 0;
    std::string out;
    int threads = 0;             ///< 0 means one per hardware thread
    bool use_oracle = true;
};

/// Parses flat `key = value` text. `#` starts a comment; list values are
/// comma-separated. Errors are ParseError carrying the 1-based line.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig read_experiment_config(const std::filesystem::path& path);

/// Records ordered by cell, then run index, then mutation kind. Run i uses
/// seed base_seed + i for both the instance and the algorithm.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

struct SummaryRow {
    std::size_t n = 0;
    int k = 0;
    std::string mutation;
    int runs = 0;
    int optimum_hits = 0;
    double median_generations = 0.0;
    double mean_generations = 0.0;
    double median_alpha_steps = 0.0;
    double median_beta_steps = 0.0;
};

/// One row per (n, k, mutation) cell, in first-appearance order.
std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records);
void write_summary(const std::vector<SummaryRow>& rows, std::ostream& out);

double median(std::vector<double> values);

struct MutationStats {
    int n = 0;
    std::int64_t samples = 0;
    double p_one = 0.0;            ///< exactly one inversion
    double p_two = 0.0;            ///< exactly two
    double p_four = 0.0;           ///< exactly four
    double mixed_inversion_branch = 0.0;
    std::int64_t single_samples = 0;
    double chi_square = 0.0;
    int chi_df = 0;
    double chi_p_value = 0.0;
    double chi_critical = 0.0;     ///< at significance 0.001
};

/// Samples `samples` 2-opt mutations and `samples` mixed mutations. The
/// chi-square statistic covers the pairs chosen by single-inversion 2-opt
/// mutations.
MutationStats mutation_stats(int n, std::int64_t samples, std::uint64_t seed);
void write_mutation_stats(const MutationStats& stats, std::ostream& out);

}  // namespace eutsp
