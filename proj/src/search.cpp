#include "eutsp/search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace eutsp {

std::string_view to_string(MutationKind kind) noexcept {
    return kind == MutationKind::two_opt ? "two_opt" : "mixed";
}

MutationKind parse_mutation_kind(std::string_view text) {
    if (text == "two_opt") return MutationKind::two_opt;
    if (text == "mixed") return MutationKind::mixed;
    throw std::invalid_argument("unknown mutation '" + std::string(text) +
                                "' (expected two_opt or mixed)");
}

std::string_view to_string(SearchState state) noexcept {
    switch (state) {
        case SearchState::alpha: return "alpha";
        case SearchState::beta: return "beta";
        case SearchState::optimal: return "optimal";
    }
    return "?";
}

Tour random_tour(std::size_t n, Rng& rng) {
    Tour tour = Tour::identity(n);
    rng.shuffle(std::span<int>(tour.mutable_labels()));
    return tour;
}

SearchState classify_state(const Instance& instance, const Tour& tour,
                           std::optional<double> optimum) {
    if (optimum && matches_optimum(tour_length(instance, tour), *optimum)) {
        return SearchState::optimal;
    }
    return is_intersection_free(instance, tour) ? SearchState::beta : SearchState::alpha;
}

namespace {

void count_state(Trajectory& traj, SearchState state) {
    if (state == SearchState::alpha) {
        ++traj.alpha_steps;
    } else {
        ++traj.beta_steps;
    }
}

SearchState classify_known(bool crossing_free, double length, std::optional<double> optimum) {
    if (optimum && matches_optimum(length, *optimum)) return SearchState::optimal;
    return crossing_free ? SearchState::beta : SearchState::alpha;
}

}  // namespace

Trajectory run_rls(const Instance& instance, const RlsConfig& config) {
    if (config.budget < 0) throw std::invalid_argument("RLS budget must be >= 0");
    const std::size_t n = instance.size();
    Rng rng(config.seed);

    Tour current = config.start ? *config.start : random_tour(n, rng);
    if (current.size() != n) throw std::invalid_argument("start tour does not match instance");

    double length = tour_length(instance, current);
    bool crossing_free = is_intersection_free(instance, current);
    SearchState state = classify_known(crossing_free, length, config.optimum);

    Trajectory traj;
    if (config.record_series) traj.best_fitness_series.push_back({0, length});

    const auto scan_period = static_cast<std::int64_t>(n * n);
    std::int64_t next_scan = scan_period;
    std::int64_t last_change = 0;
    std::int64_t generation = 0;
    bool absorbed = false;

    while (true) {
        if (state == SearchState::optimal) {
            traj.reached_optimum = true;
            break;
        }
        if (generation >= config.budget) break;
        if (generation == next_scan) {
            next_scan += scan_period;
            if (!first_non_worsening_inversion(instance, current)) {
                absorbed = true;
                break;
            }
        }

        count_state(traj, state);
        const Inversion inv = random_inversion(rng, static_cast<int>(n));
        ++generation;
        if (is_cycle_preserving(n, inv)) {
            invert_in_place(current.mutable_labels(), inv);
            continue;
        }
        const double delta = inversion_delta(instance, current, inv);
        if (delta <= 0.0) {
            invert_in_place(current.mutable_labels(), inv);
            length = tour_length(instance, current);
            crossing_free = is_intersection_free(instance, current);
            state = classify_known(crossing_free, length, config.optimum);
            last_change = generation;
            if (config.record_series && length < traj.best_fitness_series.back().fitness) {
                traj.best_fitness_series.push_back({generation, length});
            }
        }
    }

    traj.generations = generation;
    traj.fitness_evals = 1 + generation;
    traj.reached_local_optimum = absorbed || is_two_opt_local_optimum(instance, current);
    if (traj.reached_local_optimum) traj.local_optimum_generation = last_change;
    traj.final_length = length;
    traj.final_tour = std::move(current);
    return traj;
}

namespace {

struct Individual {
    Tour tour;
    double fitness = 0.0;
    std::uint64_t birth = 0;
    bool offspring = false;
};

bool fitter(const Individual& a, const Individual& b) {
    if (a.fitness != b.fitness) return a.fitness < b.fitness;
    if (a.offspring != b.offspring) return a.offspring;
    return a.birth < b.birth;
}

}  // namespace

Trajectory run_ea(const Instance& instance, const EAConfig& config,
                  std::optional<double> optimum) {
    if (config.mu < 1 || config.lambda < 1) throw std::invalid_argument("mu and lambda must be >= 1");
    if (config.max_generations < 0) throw std::invalid_argument("generation budget must be >= 0");
    const std::size_t n = instance.size();
    const auto mu = static_cast<std::size_t>(config.mu);
    const auto lambda = static_cast<std::size_t>(config.lambda);
    Rng rng(config.seed);
    RandomMoves moves(rng);

    std::uint64_t births = 0;
    std::vector<Individual> population;
    population.reserve(mu + lambda);
    for (std::size_t p = 0; p < mu; ++p) {
        Individual ind{random_tour(n, rng), 0.0, births++, false};
        ind.fitness = tour_length(instance, ind.tour);
        population.push_back(std::move(ind));
    }
    std::stable_sort(population.begin(), population.end(), fitter);

    Trajectory traj;
    if (config.record_series) traj.best_fitness_series.push_back({0, population[0].fitness});

    // The crossing test is the expensive part of classification; redo it only
    // when a different individual becomes the best.
    std::uint64_t classified_birth = population[0].birth;
    bool best_crossing_free = is_intersection_free(instance, population[0].tour);

    std::int64_t generation = 0;
    while (true) {
        const Individual& best = population[0];
        if (best.birth != classified_birth) {
            classified_birth = best.birth;
            best_crossing_free = is_intersection_free(instance, best.tour);
        }
        const SearchState state = classify_known(best_crossing_free, best.fitness, optimum);
        if (state == SearchState::optimal) {
            traj.reached_optimum = true;
            break;
        }
        if (generation >= config.max_generations) break;
        count_state(traj, state);

        for (std::size_t o = 0; o < lambda; ++o) {
            const auto parent = static_cast<std::size_t>(rng.below(mu));
            Individual child{population[parent].tour, 0.0, births++, true};
            if (config.mutation.kind == MutationKind::two_opt) {
                two_opt_mutation_in_place(std::span<int>(child.tour.mutable_labels()), moves);
            } else {
                mixed_mutation_in_place(std::span<int>(child.tour.mutable_labels()), moves);
            }
            child.fitness = tour_length(instance, child.tour);
            population.push_back(std::move(child));
        }
        std::stable_sort(population.begin(), population.end(), fitter);
        population.resize(mu);
        for (Individual& ind : population) ind.offspring = false;
        ++generation;

        if (config.record_series && population[0].fitness < traj.best_fitness_series.back().fitness) {
            traj.best_fitness_series.push_back({generation, population[0].fitness});
        }
    }

    traj.generations = generation;
    traj.fitness_evals = static_cast<std::int64_t>(mu) +
                         static_cast<std::int64_t>(lambda) * generation;
    traj.final_length = population[0].fitness;
    traj.final_tour = std::move(population[0].tour);
    return traj;
}

}  // namespace eutsp
