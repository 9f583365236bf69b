#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwofs/fitness.hpp"
#include "gwofs/mask.hpp"
#include "gwofs/rng.hpp"

namespace gwofs {

// One whale: a continuous position, its binarized mask, and the fitness of
// the most recently evaluated mask. After a position update `evaluated` is
// false and `fitness` keeps the previous value, which tournament selection
// uses until the next evaluation sweep.
struct SearchAgent {
    Position position;
    FeatureMask mask;
    FitnessValue fitness;
    bool evaluated = false;
};

struct OptimizerConfig {
    std::size_t population = 100;
    std::size_t iterations = 100;
    double spiral_b = 1.0;         // logarithmic-spiral shape constant
    double crossover_rate = 0.8;
    double mutation_rate = -1.0;   // per-coordinate; < 0 means 1/d, resolved at run time
    double ga_fraction = 0.5;      // share of the population bred each iteration
    std::size_t elitism = 1;
    std::uint64_t seed = 1;
    BinarizeMode binarize_mode = BinarizeMode::Threshold;
    EvalProtocol protocol;
    bool enable_woa = true;        // off = genetic operators only (baseline mode)
    unsigned threads = 0;          // fitness evaluation workers; 0 = hardware default

    double resolved_mutation_rate(std::size_t d) const {
        return mutation_rate < 0 ? 1.0 / static_cast<double>(d) : mutation_rate;
    }
    void validate() const;
};

// Per-iteration trace: best-so-far scalar fitness, population mean, and the
// feature count of the best-so-far mask. Entry 0 describes the initialized
// population, so a run of T iterations logs T+1 entries and the best series
// is non-increasing.
struct ConvergenceEntry {
    std::size_t iteration;
    double best_fitness;
    double mean_fitness;
    std::size_t best_feature_count;
};

struct ConvergenceLog {
    std::vector<ConvergenceEntry> entries;
    std::string to_csv() const;  // header: iteration,best_fitness,mean_fitness,best_feature_count
};

struct RunResult {
    SearchAgent best;
    ConvergenceLog log;
};

// Uniform random positions in [0,1]^d with their masks; fitness not yet evaluated.
std::vector<SearchAgent> make_population(std::size_t d, const OptimizerConfig& config, Rng& rng);

// make_population + a full fitness sweep.
std::vector<SearchAgent> initialize(const FitnessEvaluator& evaluator, std::size_t d,
                                    const OptimizerConfig& config, Rng& rng);

// Single whale move. Draw order from `rng`: r1, r2, p, l, then the peer index
// when exploring, then any binarization draws. With a = 2(1 - t/T):
//   p < 0.5, |A| < 1:  x' = x_best - A * |C*x_best - x|      (encircle)
//   p < 0.5, |A| >= 1: same with a uniformly drawn peer       (explore)
//   p >= 0.5:          x' = |x_best - x| * e^(b l) cos(2 pi l) + x_best  (spiral)
// Coordinates are clamped to [0,1]; the result carries the stale fitness,
// unevaluated.
SearchAgent woa_update(const SearchAgent& agent, const SearchAgent& best,
                       const std::vector<SearchAgent>& peers, std::size_t t, std::size_t T,
                       const OptimizerConfig& config, Rng& rng);

// Spiral/encircle steps exposed for direct testing.
double encircle_step(double x, double target, double A, double C);
double spiral_step(double x, double x_best, double b, double l);

// Uniform crossover on positions (per-coordinate swap with probability 0.5)
// and uniform-redraw mutation.
void uniform_crossover(Position& a, Position& b, Rng& rng);
void mutate(Position& p, double rate, Rng& rng);

// One genetic pass: binary tournaments on scalar fitness (lower wins, ties to
// the lower slot) select ga_fraction of the population among non-elite slots;
// winners are paired, crossed over with probability crossover_rate, mutated,
// and the offspring replace their parents' slots with fitness left stale.
void ga_step(std::vector<SearchAgent>& population, const std::vector<std::size_t>& elite_slots,
             const OptimizerConfig& config, Rng& rng);

// Full search loop: whale updates on non-elite agents, genetic step, fitness
// sweep (parallel across agents, deterministic), elitist best tracking, and
// convergence logging. The evaluator overload scores masks with the
// evaluator's own protocol; config.protocol only matters for the dataset
// overload, which builds the evaluator.
RunResult optimize(const FitnessEvaluator& evaluator, std::size_t d, const OptimizerConfig& config);
RunResult optimize(const EncodedDataset& data, const OptimizerConfig& config);

}  // namespace gwofs
