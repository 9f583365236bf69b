#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwofs/metrics.hpp"
#include "gwofs/optimizer.hpp"

namespace gwofs {

struct BaselineToggles {
    bool all_features = true;  // KNN on every feature, no selection
    bool woa_only = false;     // whale updates without the genetic step
    bool ga_only = false;      // genetic step only, whale updates disabled
};

struct ExperimentConfig {
    std::string train_path;
    std::string test_path;  // empty: carve a final holdout out of the training file
    std::string out_dir;
    OptimizerConfig optimizer;
    double final_holdout_fraction = 0.3;
    BaselineToggles baselines;
    ClassLabel positive_class = ClassLabel::Attack;
};

struct BaselineRow {
    std::string name;
    MetricsReport metrics;
    std::size_t feature_count;
};

struct ExperimentResult {
    RunResult run;
    MetricsReport test_metrics;           // final model on the held-out test rows
    std::vector<BaselineRow> baselines;   // main method first, then enabled baselines
    std::vector<std::string> artifacts;   // paths written under out_dir
};

// Full pipeline: ingest + encode, carve the final test holdout (disjoint from
// the fitness holdout by construction, re-checked by index bookkeeping), run
// the search, evaluate the selected subset on the test rows, run baselines,
// and write convergence.csv, selected_features.txt, metrics.json,
// baselines.csv and run_manifest.json into out_dir. Every output is a pure
// function of the manifest and the input file bytes.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes a stratified n-row subsample of a record file, deterministic per
// seed; the output is a permutation (never grouped by class).
void subsample(const std::string& in_path, std::size_t n, std::uint64_t seed,
               const std::string& out_path);

std::string baselines_csv(const std::vector<BaselineRow>& rows);

}  // namespace gwofs
