#include "gwofs/optimizer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gwofs/parallel.hpp"

namespace gwofs {

namespace {

constexpr double two_pi = 6.28318530717958647692;

void append_number(std::string& out, double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, ptr);
}

FeatureMask rebinarize(const Position& pos, const OptimizerConfig& config, Rng& rng) {
    return binarize(pos, config.binarize_mode, rng);
}

// Lower scalar wins; slot index breaks exact ties so results do not depend on
// evaluation order.
bool better(const std::vector<SearchAgent>& pop, std::size_t a, std::size_t b) {
    if (pop[a].fitness.scalar != pop[b].fitness.scalar)
        return pop[a].fitness.scalar < pop[b].fitness.scalar;
    return a < b;
}

std::vector<std::size_t> elite_slots_of(const std::vector<SearchAgent>& pop, std::size_t count) {
    std::vector<std::size_t> slots(pop.size());
    std::iota(slots.begin(), slots.end(), std::size_t{0});
    std::sort(slots.begin(), slots.end(),
              [&](std::size_t a, std::size_t b) { return better(pop, a, b); });
    slots.resize(std::min(count, pop.size()));
    std::sort(slots.begin(), slots.end());
    return slots;
}

void evaluate_stale(std::vector<SearchAgent>& pop, const FitnessEvaluator& evaluator,
                    unsigned threads) {
    std::vector<std::size_t> stale;
    for (std::size_t i = 0; i < pop.size(); ++i)
        if (!pop[i].evaluated) stale.push_back(i);
    parallel_for(stale.size(), threads, [&](std::size_t s) {
        SearchAgent& agent = pop[stale[s]];
        agent.fitness = evaluator(agent.mask);
        agent.evaluated = true;
    });
}

}  // namespace

void OptimizerConfig::validate() const {
    if (population < 2) throw std::invalid_argument("optimizer: population must be >= 2");
    if (elitism >= population)
        throw std::invalid_argument("optimizer: elitism must be smaller than the population");
    auto probability = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!probability(crossover_rate))
        throw std::invalid_argument("optimizer: crossover_rate must lie in [0, 1]");
    if (mutation_rate >= 0.0 && !probability(mutation_rate))
        throw std::invalid_argument("optimizer: mutation_rate must lie in [0, 1]");
    if (!probability(ga_fraction))
        throw std::invalid_argument("optimizer: ga_fraction must lie in [0, 1]");
}

std::string ConvergenceLog::to_csv() const {
    std::string out = "iteration,best_fitness,mean_fitness,best_feature_count\n";
    for (const auto& e : entries) {
        out += std::to_string(e.iteration);
        out += ',';
        append_number(out, e.best_fitness);
        out += ',';
        append_number(out, e.mean_fitness);
        out += ',';
        out += std::to_string(e.best_feature_count);
        out += '\n';
    }
    return out;
}

std::vector<SearchAgent> make_population(std::size_t d, const OptimizerConfig& config, Rng& rng) {
    config.validate();
    std::vector<SearchAgent> population(config.population);
    for (auto& agent : population) {
        agent.position.coords.resize(d);
        for (double& v : agent.position.coords) v = rng.uniform01();
        agent.mask = rebinarize(agent.position, config, rng);
    }
    return population;
}

std::vector<SearchAgent> initialize(const FitnessEvaluator& evaluator, std::size_t d,
                                    const OptimizerConfig& config, Rng& rng) {
    auto population = make_population(d, config, rng);
    evaluate_stale(population, evaluator, config.threads);
    return population;
}

double encircle_step(double x, double target, double A, double C) {
    return target - A * std::abs(C * target - x);
}

double spiral_step(double x, double x_best, double b, double l) {
    return std::abs(x_best - x) * std::exp(b * l) * std::cos(two_pi * l) + x_best;
}

SearchAgent woa_update(const SearchAgent& agent, const SearchAgent& best,
                       const std::vector<SearchAgent>& peers, std::size_t t, std::size_t T,
                       const OptimizerConfig& config, Rng& rng) {
    if (T < 1) throw std::invalid_argument("woa_update: total iterations must be >= 1");
    const double a = 2.0 * (1.0 - static_cast<double>(t) / static_cast<double>(T));
    const double r1 = rng.uniform01();
    const double r2 = rng.uniform01();
    const double p = rng.uniform01();
    const double l = rng.uniform(-1.0, 1.0);
    const double A = 2.0 * a * r1 - a;
    const double C = 2.0 * r2;

    SearchAgent next = agent;
    if (p < 0.5) {
        const Position& target = std::abs(A) < 1.0
                                     ? best.position
                                     : peers[rng.index(peers.size())].position;
        for (std::size_t j = 0; j < next.position.size(); ++j)
            next.position.coords[j] = encircle_step(agent.position.coords[j], target.coords[j], A, C);
    } else {
        for (std::size_t j = 0; j < next.position.size(); ++j)
            next.position.coords[j] =
                spiral_step(agent.position.coords[j], best.position.coords[j], config.spiral_b, l);
    }
    next.position.clamp01();
    next.mask = rebinarize(next.position, config, rng);
    next.evaluated = false;
    return next;
}

void uniform_crossover(Position& a, Position& b, Rng& rng) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (rng.uniform01() < 0.5) std::swap(a.coords[j], b.coords[j]);
}

void mutate(Position& p, double rate, Rng& rng) {
    for (double& v : p.coords)
        if (rng.uniform01() < rate) v = rng.uniform01();
}

void ga_step(std::vector<SearchAgent>& population, const std::vector<std::size_t>& elite_slots,
             const OptimizerConfig& config, Rng& rng) {
    if (population.size() < 2) throw std::invalid_argument("ga_step: population must be >= 2");
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < population.size(); ++i)
        if (std::find(elite_slots.begin(), elite_slots.end(), i) == elite_slots.end())
            candidates.push_back(i);
    if (candidates.size() < 2) return;

    auto target = static_cast<std::size_t>(
        std::llround(config.ga_fraction * static_cast<double>(population.size())));
    target = std::min(target, candidates.size());
    const std::size_t pairs = target / 2;
    if (pairs == 0) return;

    const double mutation = config.resolved_mutation_rate(population[0].position.size());
    auto tournament = [&]() {
        std::size_t a = candidates[rng.index(candidates.size())];
        std::size_t b = candidates[rng.index(candidates.size())];
        return better(population, a, b) ? a : b;
    };

    for (std::size_t pair = 0; pair < pairs; ++pair) {
        std::size_t ia = tournament();
        std::size_t ib = tournament();
        Position child_a = population[ia].position;
        Position child_b = population[ib].position;
        if (rng.uniform01() < config.crossover_rate) uniform_crossover(child_a, child_b, rng);
        mutate(child_a, mutation, rng);
        mutate(child_b, mutation, rng);

        population[ia].position = std::move(child_a);
        population[ia].mask = rebinarize(population[ia].position, config, rng);
        population[ia].evaluated = false;
        population[ib].position = std::move(child_b);
        population[ib].mask = rebinarize(population[ib].position, config, rng);
        population[ib].evaluated = false;
    }
}

RunResult optimize(const FitnessEvaluator& evaluator, std::size_t d,
                   const OptimizerConfig& config) {
    config.validate();
    Rng init_rng = Rng::derive(config.seed, stream::init);
    std::vector<SearchAgent> population = initialize(evaluator, d, config, init_rng);

    auto log_state = [&](std::vector<ConvergenceEntry>& entries, std::size_t iteration,
                         const SearchAgent& best) {
        double sum = 0;
        for (const auto& agent : population) sum += agent.fitness.scalar;
        entries.push_back({iteration, best.fitness.scalar,
                           sum / static_cast<double>(population.size()),
                           best.mask.selected_count()});
    };

    SearchAgent best = population[elite_slots_of(population, 1).front()];
    ConvergenceLog log;
    log_state(log.entries, 0, best);

    for (std::size_t t = 1; t <= config.iterations; ++t) {
        const std::vector<std::size_t> elites = elite_slots_of(population, config.elitism);
        if (config.enable_woa) {
            for (std::size_t i = 0; i < population.size(); ++i) {
                if (std::find(elites.begin(), elites.end(), i) != elites.end()) continue;
                Rng agent_rng = Rng::derive(config.seed, stream::woa, t, i);
                population[i] =
                    woa_update(population[i], best, population, t, config.iterations, config,
                               agent_rng);
            }
        }
        if (config.ga_fraction > 0.0) {
            Rng ga_rng = Rng::derive(config.seed, stream::ga, t);
            ga_step(population, elites, config, ga_rng);
        }
        evaluate_stale(population, evaluator, config.threads);

        std::size_t champion = elite_slots_of(population, 1).front();
        if (population[champion].fitness.scalar < best.fitness.scalar)
            best = population[champion];
        log_state(log.entries, t, best);
    }
    return {std::move(best), std::move(log)};
}

RunResult optimize(const EncodedDataset& data, const OptimizerConfig& config) {
    FitnessEvaluator evaluator(data, config.protocol);
    return optimize(evaluator, data.feature_count(), config);
}

}  // namespace gwofs
