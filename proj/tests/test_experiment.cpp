#include <doctest.h>

#include <charconv>
#include <sstream>

#include "eutsp/errors.hpp"
#include "eutsp/experiment.hpp"
#include "helpers.hpp"

using namespace eutsp;

namespace {

int error_line(const std::string& text) {
    std::istringstream in(text);
    try {
        parse_experiment_config(in);
    } catch (const ParseError& e) {
        return e.line;
    }
    return -1;
}

std::string csv(const std::vector<RunRecord>& records) {
    std::ostringstream out;
    out << run_record_header() << '\n';
    for (const RunRecord& r : records) write_run_record(r, out);
    return out.str();
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("shortest round-trip doubles") {
    CHECK(format_double(4.0) == "4");
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
    for (double v : {1e-300, 123456.789, 2.5e17, 0.30000000000000004}) {
        const std::string s = format_double(v);
        double back = 0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
}

TEST_CASE("config parsing") {
    std::istringstream in(
        "# convex sweep\n"
        "family = convex\n"
        "n = 8, 16 , 32   # three sizes\n"
        "m = 1024\n"
        "\n"
        "algorithm = ea\n"
        "mu = 2\nlambda = 3\n"
        "mutation = two_opt, mixed\n"
        "budget = 5000\nruns = 20\nbase_seed = 7\nout = x.csv\nthreads = 2\noracle = none\n");
    const ExperimentConfig c = parse_experiment_config(in);
    CHECK(c.family == Family::convex);
    CHECK(c.n == std::vector<int>{8, 16, 32});
    CHECK(c.m == 1024);
    CHECK(c.params.algorithm == Algorithm::ea);
    CHECK(c.params.mu == 2);
    CHECK(c.params.lambda == 3);
    CHECK(c.mutations == std::vector<MutationKind>{MutationKind::two_opt, MutationKind::mixed});
    CHECK(c.params.budget == 5000);
    CHECK(c.runs == 20);
    CHECK(c.base_seed == 7);
    CHECK(c.out == "x.csv");
    CHECK(c.threads == 2);
    CHECK_FALSE(c.use_oracle);
}

TEST_CASE("config errors carry line numbers") {
    CHECK(error_line("family = convex\nn = 8\nsize = 3\nm = 64\n") == 3);
    CHECK(error_line("family = convex\nn 8\n") == 2);
    CHECK(error_line("family = convex\nn = 8\nm = 64\nn = 9\n") == 4);
    CHECK(error_line("family = convex\nn = 8, x\nm = 64\n") == 2);
    CHECK(error_line("family = hexagon\n") == 1);
    CHECK(error_line("family = convex\nm = 64\nmutation = swap\nn = 5\n") == 3);
    CHECK(error_line("n = 8\nm = 64\n") > 0);
    CHECK(error_line("family = inner\nm = 64\nh = 5\n") > 0);
    CHECK(error_line("family = convex\nn = 8\nm = 64\nruns = 0\n") == 4);
    CHECK(error_line("family = convex\nn = 8\nm = 64\noracle = maybe\n") == 4);
}

TEST_CASE("experiment rows, seeds and accounting") {
    ExperimentConfig c;
    c.family = Family::convex;
    c.n = {8, 16};
    c.m = 1024;
    c.runs = 3;
    c.base_seed = 40;
    c.params.budget = 1'000'000;
    c.threads = 1;
    const auto records = run_experiment(c);
    REQUIRE(records.size() == 6);
    CHECK(records[0].instance_id == "convex_n8_m1024_s40");
    CHECK(records[2].seed == 42);
    CHECK(records[3].n == 16);
    for (const RunRecord& r : records) {
        CHECK(r.fitness_evals == 1 + r.generations);
        CHECK(r.reached_optimum);
        CHECK(r.optimum_length.has_value());
        CHECK(r.final_length == *r.optimum_length);
        CHECK(r.alpha_steps + r.beta_steps == r.generations);
        CHECK(r.mutation == "inversion");
    }
    c.threads = 3;
    CHECK(csv(run_experiment(c)) == csv(records));

    const auto summary = summarize(records);
    REQUIRE(summary.size() == 2);
    CHECK(summary[0].runs == 3);
    CHECK(summary[0].optimum_hits == 3);
}

TEST_CASE("paired EA runs share instance and seed") {
    ExperimentConfig c;
    c.family = Family::inner;
    c.h = {6};
    c.k = {2};
    c.m = 256;
    c.runs = 2;
    c.params.algorithm = Algorithm::ea;
    c.params.mu = 2;
    c.params.lambda = 4;
    c.params.budget = 100000;
    c.mutations = {MutationKind::two_opt, MutationKind::mixed};
    c.threads = 1;
    const auto records = run_experiment(c);
    REQUIRE(records.size() == 4);
    CHECK(records[0].instance_id == records[1].instance_id);
    CHECK(records[0].seed == records[1].seed);
    CHECK(records[0].mutation == "two_opt");
    CHECK(records[1].mutation == "mixed");
    for (const RunRecord& r : records) CHECK(r.fitness_evals == 2 + 4 * r.generations);
    const auto summary = summarize(records);
    REQUIRE(summary.size() == 2);
    CHECK(summary[1].mutation == "mixed");
}

TEST_CASE("record formatting") {
    RunRecord r;
    r.instance_id = "sq";
    r.n = 4;
    r.final_length = 4.0;
    r.mutation = "inversion";
    std::ostringstream out;
    write_run_record(r, out);
    CHECK(out.str() == "sq,4,0,0,0,0,rls,1,1,inversion,0,0,0,0,0,false,false,4,\n");
    CHECK(median({3, 1, 2}) == 2);
    CHECK(median({4, 1, 2, 3}) == 2.5);
}

TEST_CASE("mutation statistics") {
    const MutationStats s = mutation_stats(6, 200000, 1);
    CHECK(s.chi_df == 14);
    CHECK(s.chi_critical == doctest::Approx(36.12327).epsilon(1e-6));
    CHECK(std::abs(s.p_one - std::exp(-1.0)) < 0.01);
    CHECK(std::abs(s.mixed_inversion_branch - 0.5) < 0.01);
    CHECK(s.single_samples > 0);
    std::ostringstream out;
    write_mutation_stats(s, out);
    CHECK(out.str().rfind("statistic,target,observed,abs_deviation\n", 0) == 0);
}

}  // TEST_SUITE
