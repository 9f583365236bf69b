#pragma once

#include <cstdint>
#include <vector>

#include "gwofs/dataset.hpp"
#include "gwofs/mask.hpp"

namespace gwofs {

// Two-objective fitness of a feature mask, scalarized for minimization:
//   f1 = selected features / total features
//   f2 = classification error rate (FP+FN)/(P+N) on a fixed holdout
//   scalar = alpha * f2 + (1 - alpha) * f1
struct FitnessValue {
    double f1 = 0;
    double f2 = 0;
    double scalar = 0;
};

// How a mask is scored: one stratified holdout split of the training data,
// fixed per run via eval_seed so every mask is scored on the same rows and
// fitness values stay comparable across the whole search.
struct EvalProtocol {
    double holdout_fraction = 0.3;  // fraction of rows held out for scoring
    std::uint64_t eval_seed = 0;    // 0 lets the experiment harness derive one from the run seed
    int k = 5;
    double alpha = 0.99;
};

// Precomputes the protocol split once; operator() is pure and thread-safe,
// so a population can be scored concurrently. An all-zero mask short-circuits
// to the penalty value (f1 = 0, f2 = 1, scalar = 1) without touching the
// classifier.
class FitnessEvaluator {
public:
    FitnessEvaluator(const EncodedDataset& train, const EvalProtocol& protocol);

    FitnessValue operator()(const FeatureMask& mask) const;

    const EvalProtocol& protocol() const { return protocol_; }
    std::size_t feature_count() const { return fit_part_.feature_count(); }
    // Row indices (into the dataset the evaluator was built from) of the two
    // halves of the inner split, for holdout-disjointness bookkeeping.
    const std::vector<std::size_t>& fit_indices() const { return fit_indices_; }
    const std::vector<std::size_t>& eval_indices() const { return eval_indices_; }

private:
    EvalProtocol protocol_;
    EncodedDataset fit_part_;
    EncodedDataset eval_part_;
    std::vector<std::size_t> fit_indices_;
    std::vector<std::size_t> eval_indices_;
};

// One-shot form of the evaluator.
FitnessValue evaluate(const FeatureMask& mask, const EncodedDataset& train,
                      const EvalProtocol& protocol);

}  // namespace gwofs
