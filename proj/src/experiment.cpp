#include "eutsp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "eutsp/errors.hpp"
#include "eutsp/oracle.hpp"

namespace eutsp {

std::string_view to_string(Family family) noexcept {
    switch (family) {
        case Family::grid: return "grid";
        case Family::convex: return "convex";
        case Family::inner: return "inner";
    }
    return "?";
}

std::string_view to_string(Algorithm algorithm) noexcept {
    return algorithm == Algorithm::rls ? "rls" : "ea";
}

Family parse_family(std::string_view text) {
    if (text == "grid") return Family::grid;
    if (text == "convex") return Family::convex;
    if (text == "inner") return Family::inner;
    throw std::invalid_argument("unknown family '" + std::string(text) +
                                "' (expected grid, convex or inner)");
}

Algorithm parse_algorithm(std::string_view text) {
    if (text == "rls") return Algorithm::rls;
    if (text == "ea") return Algorithm::ea;
    throw std::invalid_argument("unknown algorithm '" + std::string(text) +
                                "' (expected rls or ea)");
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string_view run_record_header() {
    return "instance_id,n,k,m,epsilon,gamma,algorithm,mu,lambda,mutation,seed,generations,"
           "fitness_evals,alpha_steps,beta_steps,reached_optimum,reached_local_optimum,"
           "final_length,optimum_length";
}

void write_run_record(const RunRecord& r, std::ostream& out) {
    const auto flag = [](bool b) { return b ? "true" : "false"; };
    out << r.instance_id << ',' << r.n << ',' << r.k << ',' << r.m << ','
        << format_double(r.epsilon) << ',' << format_double(r.gamma) << ','
        << to_string(r.algorithm) << ',' << r.mu << ',' << r.lambda << ',' << r.mutation << ','
        << r.seed << ',' << r.generations << ',' << r.fitness_evals << ',' << r.alpha_steps << ','
        << r.beta_steps << ',' << flag(r.reached_optimum) << ','
        << flag(r.reached_local_optimum) << ',' << format_double(r.final_length) << ',';
    if (r.optimum_length) out << format_double(*r.optimum_length);
    out << '\n';
}

RunRecord run_single(const Instance& instance, const std::string& instance_id,
                     const AlgorithmParams& params, std::uint64_t seed,
                     std::optional<double> optimum) {
    const InstanceMetrics& metrics = instance.metrics();
    RunRecord r;
    r.instance_id = instance_id;
    r.n = instance.size();
    r.k = instance.inner_count();
    r.m = instance.grid_size();
    r.epsilon = metrics.epsilon;
    r.gamma = metrics.gamma;
    r.algorithm = params.algorithm;
    r.seed = seed;
    r.optimum_length = optimum;

    Trajectory traj;
    if (params.algorithm == Algorithm::rls) {
        RlsConfig cfg;
        cfg.budget = params.budget;
        cfg.seed = seed;
        cfg.optimum = optimum;
        cfg.record_series = false;
        traj = run_rls(instance, cfg);
        r.mu = 1;
        r.lambda = 1;
        r.mutation = "inversion";
    } else {
        EAConfig cfg;
        cfg.mu = params.mu;
        cfg.lambda = params.lambda;
        cfg.mutation.kind = params.mutation;
        cfg.max_generations = params.budget;
        cfg.seed = seed;
        cfg.record_series = false;
        traj = run_ea(instance, cfg, optimum);
        r.mu = params.mu;
        r.lambda = params.lambda;
        r.mutation = std::string(to_string(params.mutation));
    }
    r.generations = traj.generations;
    r.fitness_evals = traj.fitness_evals;
    r.alpha_steps = traj.alpha_steps;
    r.beta_steps = traj.beta_steps;
    r.reached_optimum = traj.reached_optimum;
    r.reached_local_optimum = traj.reached_local_optimum;
    r.final_length = traj.final_length;
    return r;
}

std::optional<double> optimum_length_for(const Instance& instance) {
    if (auto result = strongest_oracle(instance)) return result->optimum_value;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Config

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view text, std::string_view key, int line) {
    T value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || text.empty()) {
        throw ParseError("'" + std::string(key) + "' expects an integer, got '" +
                             std::string(text) + "'",
                         line);
    }
    return value;
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> items;
    while (true) {
        const auto comma = text.find(',');
        items.push_back(trim(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return items;
}

template <class T>
std::vector<T> parse_list(std::string_view text, std::string_view key, int line) {
    std::vector<T> values;
    for (std::string_view item : split_list(text)) values.push_back(parse_number<T>(item, key, line));
    return values;
}

template <class F>
auto with_line(int line, F&& parse) {
    try {
        return parse();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line);
    }
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
    ExperimentConfig cfg;
    std::map<std::string, int> seen;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view text = raw;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line);
        const std::string key(trim(text.substr(0, eq)));
        const std::string_view value = trim(text.substr(eq + 1));
        if (key.empty()) throw ParseError("missing key before '='", line);
        if (value.empty()) throw ParseError("missing value for '" + key + "'", line);
        if (!seen.emplace(key, line).second) {
            throw ParseError("duplicate key '" + key + "' (first set on line " +
                                 std::to_string(seen[key]) + ")",
                             line);
        }

        if (key == "family") {
            cfg.family = with_line(line, [&] { return parse_family(value); });
        } else if (key == "n") {
            cfg.n = parse_list<int>(value, key, line);
        } else if (key == "h") {
            cfg.h = parse_list<int>(value, key, line);
        } else if (key == "k") {
            cfg.k = parse_list<int>(value, key, line);
        } else if (key == "m") {
            cfg.m = parse_number<int>(value, key, line);
        } else if (key == "algorithm") {
            cfg.params.algorithm = with_line(line, [&] { return parse_algorithm(value); });
        } else if (key == "mu") {
            cfg.params.mu = parse_number<int>(value, key, line);
        } else if (key == "lambda") {
            cfg.params.lambda = parse_number<int>(value, key, line);
        } else if (key == "mutation") {
            cfg.mutations.clear();
            for (std::string_view item : split_list(value)) {
                cfg.mutations.push_back(with_line(line, [&] { return parse_mutation_kind(item); }));
            }
        } else if (key == "budget") {
            cfg.params.budget = parse_number<std::int64_t>(value, key, line);
        } else if (key == "runs") {
            cfg.runs = parse_number<int>(value, key, line);
        } else if (key == "base_seed") {
            cfg.base_seed = parse_number<std::uint64_t>(value, key, line);
        } else if (key == "out") {
            cfg.out = std::string(value);
        } else if (key == "threads") {
            cfg.threads = parse_number<int>(value, key, line);
        } else if (key == "oracle") {
            if (value == "auto") {
                cfg.use_oracle = true;
            } else if (value == "none") {
                cfg.use_oracle = false;
            } else {
                throw ParseError("'oracle' expects auto or none", line);
            }
        } else {
            throw ParseError("unknown key '" + key + "'", line);
        }
    }

    const auto at = [&](const char* key) {
        const auto it = seen.find(key);
        return it == seen.end() ? line : it->second;
    };
    const auto require = [&](bool ok, const char* key, const std::string& message) {
        if (!ok) throw ParseError(message, at(key));
    };
    require(seen.count("family") == 1, "family", "missing required key 'family'");
    require(seen.count("m") == 1, "m", "missing required key 'm'");
    require(cfg.m >= 3, "m", "'m' must be >= 3");
    if (cfg.family == Family::inner) {
        require(!cfg.h.empty(), "h", "family inner needs 'h'");
        require(!cfg.k.empty(), "k", "family inner needs 'k'");
        require(cfg.n.empty(), "n", "family inner takes 'h' and 'k', not 'n'");
        for (int v : cfg.h) require(v >= 3, "h", "'h' values must be >= 3");
        for (int v : cfg.k) require(v >= 0, "k", "'k' values must be >= 0");
    } else {
        require(!cfg.n.empty(), "n", "family " + std::string(to_string(cfg.family)) + " needs 'n'");
        require(cfg.h.empty() && cfg.k.empty(), "h",
                "'h' and 'k' apply only to family inner");
        for (int v : cfg.n) require(v >= 3, "n", "'n' values must be >= 3");
    }
    require(cfg.runs >= 1, "runs", "'runs' must be >= 1");
    require(cfg.params.mu >= 1, "mu", "'mu' must be >= 1");
    require(cfg.params.lambda >= 1, "lambda", "'lambda' must be >= 1");
    require(cfg.params.budget >= 1, "budget", "'budget' must be >= 1");
    require(cfg.threads >= 0, "threads", "'threads' must be >= 0");
    return cfg;
}

ExperimentConfig read_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path.string());
    return parse_experiment_config(in);
}

// ---------------------------------------------------------------------------
// Runner

namespace {

/// Runs body(0..count-1) on up to `threads` workers. The first exception
/// thrown by any index is rethrown after all workers stop.
template <class Body>
void parallel_for(std::size_t count, int threads, Body&& body) {
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
}

struct Cell {
    int size = 0;   // n, or h for family inner
    int inner = 0;  // k for family inner
};

struct PreparedInstance {
    std::optional<Instance> instance;
    std::string id;
    std::optional<double> optimum;
    std::uint64_t seed = 0;
};

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
    std::vector<Cell> cells;
    if (config.family == Family::inner) {
        for (int h : config.h) {
            for (int k : config.k) cells.push_back({h, k});
        }
    } else {
        for (int n : config.n) cells.push_back({n, 0});
    }
    const auto runs = static_cast<std::size_t>(config.runs);

    std::vector<PreparedInstance> prepared(cells.size() * runs);
    parallel_for(prepared.size(), config.threads, [&](std::size_t index) {
        const Cell& cell = cells[index / runs];
        PreparedInstance& p = prepared[index];
        p.seed = config.base_seed + index % runs;
        std::ostringstream id;
        id << to_string(config.family);
        switch (config.family) {
            case Family::grid:
                p.instance = generate_grid(cell.size, config.m, p.seed);
                id << "_n" << cell.size;
                break;
            case Family::convex:
                p.instance = generate_convex(cell.size, config.m, p.seed);
                id << "_n" << cell.size;
                break;
            case Family::inner:
                p.instance = generate_with_inner(cell.size, cell.inner, config.m, p.seed);
                id << "_h" << cell.size << "_k" << cell.inner;
                break;
        }
        id << "_m" << config.m << "_s" << p.seed;
        p.id = id.str();
        p.instance->metrics();
        if (config.use_oracle) p.optimum = optimum_length_for(*p.instance);
    });

    const std::size_t kinds = config.params.algorithm == Algorithm::ea ? config.mutations.size() : 1;
    std::vector<RunRecord> records(prepared.size() * kinds);
    parallel_for(records.size(), config.threads, [&](std::size_t index) {
        const PreparedInstance& p = prepared[index / kinds];
        AlgorithmParams params = config.params;
        params.mutation = config.mutations[index % kinds];
        records[index] = run_single(*p.instance, p.id, params, p.seed, p.optimum);
    });
    return records;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
    struct Group {
        SummaryRow row;
        std::vector<double> generations, alpha, beta;
    };
    std::vector<Group> groups;
    for (const RunRecord& r : records) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
            return g.row.n == r.n && g.row.k == r.k && g.row.mutation == r.mutation;
        });
        if (it == groups.end()) {
            groups.push_back({});
            it = groups.end() - 1;
            it->row.n = r.n;
            it->row.k = r.k;
            it->row.mutation = r.mutation;
        }
        ++it->row.runs;
        if (r.reached_optimum) ++it->row.optimum_hits;
        it->generations.push_back(static_cast<double>(r.generations));
        it->alpha.push_back(static_cast<double>(r.alpha_steps));
        it->beta.push_back(static_cast<double>(r.beta_steps));
    }
    std::vector<SummaryRow> rows;
    for (Group& g : groups) {
        g.row.mean_generations =
            std::accumulate(g.generations.begin(), g.generations.end(), 0.0) /
            static_cast<double>(g.generations.size());
        g.row.median_generations = median(g.generations);
        g.row.median_alpha_steps = median(g.alpha);
        g.row.median_beta_steps = median(g.beta);
        rows.push_back(g.row);
    }
    return rows;
}

void write_summary(const std::vector<SummaryRow>& rows, std::ostream& out) {
    out << "n,k,mutation,runs,optimum_hits,median_generations,mean_generations,"
           "median_alpha_steps,median_beta_steps\n";
    for (const SummaryRow& r : rows) {
        out << r.n << ',' << r.k << ',' << r.mutation << ',' << r.runs << ',' << r.optimum_hits
            << ',' << format_double(r.median_generations) << ','
            << format_double(r.mean_generations) << ',' << format_double(r.median_alpha_steps)
            << ',' << format_double(r.median_beta_steps) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Mutation statistics

MutationStats mutation_stats(int n, std::int64_t samples, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("mutation-stats needs n >= 3");
    if (samples < 1) throw std::invalid_argument("mutation-stats needs samples >= 1");
    MutationStats stats;
    stats.n = n;
    stats.samples = samples;
    Rng rng(seed);
    RandomMoves moves(rng);
    std::vector<int> labels(static_cast<std::size_t>(n));

    // pair (i, j) with i < j maps to a row-major upper-triangle index
    const auto pair_index = [n](Inversion inv) {
        const int i = inv.i - 1;
        const int j = inv.j - 1;
        return static_cast<std::size_t>(i * n - i * (i + 1) / 2 + (j - i - 1));
    };
    const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::vector<std::int64_t> counts(pairs, 0);
    std::int64_t one = 0, two = 0, four = 0;
    MutationTrace trace;
    for (std::int64_t s = 0; s < samples; ++s) {
        std::iota(labels.begin(), labels.end(), 1);
        two_opt_mutation_in_place(std::span<int>(labels), moves, &trace);
        if (trace.moves == 1) {
            ++one;
            ++counts[pair_index(*trace.first_inversion)];
        } else if (trace.moves == 2) {
            ++two;
        } else if (trace.moves == 4) {
            ++four;
        }
    }
    std::int64_t inversion_branch = 0;
    for (std::int64_t s = 0; s < samples; ++s) {
        std::iota(labels.begin(), labels.end(), 1);
        mixed_mutation_in_place(std::span<int>(labels), moves, &trace);
        if (!trace.used_jumps) ++inversion_branch;
    }

    const auto total = static_cast<double>(samples);
    stats.p_one = static_cast<double>(one) / total;
    stats.p_two = static_cast<double>(two) / total;
    stats.p_four = static_cast<double>(four) / total;
    stats.mixed_inversion_branch = static_cast<double>(inversion_branch) / total;
    stats.single_samples = one;

    const double expected = static_cast<double>(one) / static_cast<double>(pairs);
    for (std::int64_t c : counts) {
        const double diff = static_cast<double>(c) - expected;
        stats.chi_square += diff * diff / expected;
    }
    stats.chi_df = static_cast<int>(pairs) - 1;
    const boost::math::chi_squared dist(stats.chi_df);
    stats.chi_p_value = boost::math::cdf(boost::math::complement(dist, stats.chi_square));
    stats.chi_critical = boost::math::quantile(boost::math::complement(dist, 0.001));
    return stats;
}

void write_mutation_stats(const MutationStats& s, std::ostream& out) {
    const double e_inv = std::exp(-1.0);
    const auto row = [&](std::string_view name, double target, double observed) {
        out << name << ',' << format_double(target) << ',' << format_double(observed) << ','
            << format_double(std::abs(observed - target)) << '\n';
    };
    out << "statistic,target,observed,abs_deviation\n";
    row("p_one_inversion", e_inv, s.p_one);
    row("p_two_inversions", e_inv, s.p_two);
    row("p_four_inversions", e_inv / 6.0, s.p_four);
    row("mixed_inversion_branch", 0.5, s.mixed_inversion_branch);
    out << "chi_square," << format_double(s.chi_critical) << ',' << format_double(s.chi_square)
        << ",\n";
    out << "# n=" << s.n << " samples=" << s.samples << " single_inversion_samples="
        << s.single_samples << " df=" << s.chi_df << " p_value=" << format_double(s.chi_p_value)
        << " uniform_at_0.001=" << (s.chi_square <= s.chi_critical ? "pass" : "fail") << '\n';
}

}  // namespace eutsp
