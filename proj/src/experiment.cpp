#include "gwofs/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>
#include <zlib.h>

#include "gwofs/knn.hpp"
#include "gwofs/parallel.hpp"

namespace gwofs {

namespace {

namespace fs = std::filesystem;

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string file_crc32(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    uLong crc = crc32(0L, Z_NULL, 0);
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0)
        crc = crc32(crc, reinterpret_cast<const Bytef*>(buf),
                    static_cast<uInt>(in.gcount()));
    char hex[16];
    std::snprintf(hex, sizeof(hex), "%08lx", static_cast<unsigned long>(crc));
    return hex;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

MetricsReport evaluate_on_test(const EncodedDataset& train, const EncodedDataset& test,
                               const FeatureMask& mask, int k, ClassLabel positive,
                               unsigned threads) {
    KnnModel model = KnnModel::fit(train, mask, k);
    std::vector<std::vector<double>> queries;
    queries.reserve(test.size());
    for (const auto& row : test.rows) queries.push_back(apply_mask(mask, row));
    std::vector<ClassLabel> predicted = model.predict_batch(queries, threads);
    return report(confusion(predicted, test.labels, positive));
}

nlohmann::json manifest_json(const ExperimentConfig& config) {
    const OptimizerConfig& opt = config.optimizer;
    nlohmann::json doc;
    doc["train"] = {{"path", config.train_path}, {"crc32", file_crc32(config.train_path)}};
    if (config.test_path.empty())
        doc["test"] = nullptr;
    else
        doc["test"] = {{"path", config.test_path}, {"crc32", file_crc32(config.test_path)}};
    doc["out_dir"] = config.out_dir;
    doc["final_holdout_fraction"] = config.final_holdout_fraction;
    doc["positive_class"] = to_string(config.positive_class);
    doc["baselines"] = {{"all_features", config.baselines.all_features},
                        {"woa_only", config.baselines.woa_only},
                        {"ga_only", config.baselines.ga_only}};
    doc["optimizer"] = {{"population", opt.population},
                        {"iterations", opt.iterations},
                        {"spiral_b", opt.spiral_b},
                        {"crossover_rate", opt.crossover_rate},
                        {"mutation_rate", opt.mutation_rate},
                        {"ga_fraction", opt.ga_fraction},
                        {"elitism", opt.elitism},
                        {"seed", opt.seed},
                        {"binarize_mode", to_string(opt.binarize_mode)},
                        {"enable_woa", opt.enable_woa},
                        {"threads", opt.threads}};
    doc["protocol"] = {{"holdout_fraction", opt.protocol.holdout_fraction},
                       {"eval_seed", opt.protocol.eval_seed},
                       {"k", opt.protocol.k},
                       {"alpha", opt.protocol.alpha}};
    return doc;
}

std::string selected_features_text(const FeatureMask& mask, const FeatureSchema& schema) {
    std::string out = mask.to_string();
    out += '\n';
    for (std::size_t j = 0; j < mask.size(); ++j) {
        if (!mask.test(j)) continue;
        out += std::to_string(j + 1);
        out += '\t';
        out += schema.names[j];
        out += '\n';
    }
    return out;
}

}  // namespace

std::string baselines_csv(const std::vector<BaselineRow>& rows) {
    std::string out = "name,accuracy,sensitivity,precision,f_measure,feature_count\n";
    for (const auto& row : rows) {
        out += row.name;
        out += ',';
        out += format_number(row.metrics.accuracy);
        out += ',';
        out += format_number(row.metrics.sensitivity);
        out += ',';
        out += format_number(row.metrics.precision);
        out += ',';
        out += format_number(row.metrics.f_measure);
        out += ',';
        out += std::to_string(row.feature_count);
        out += '\n';
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.out_dir.empty()) throw std::invalid_argument("run_experiment: no output directory");
    config.optimizer.validate();

    OptimizerConfig opt = config.optimizer;
    if (opt.protocol.eval_seed == 0)
        opt.protocol.eval_seed = Rng::derive(opt.seed, stream::proto).raw();

    std::vector<ConnectionRecord> train_records = parse_kdd_file(config.train_path);
    EncodedDataset full_train = encode(train_records);

    EncodedDataset fitness_train;
    EncodedDataset final_test;
    std::vector<std::size_t> train_source_indices;  // original row of each fitness_train row
    if (config.test_path.empty()) {
        std::uint64_t holdout_seed = Rng::derive(opt.seed, stream::holdout).raw();
        SplitResult split =
            stratified_split(full_train, 1.0 - config.final_holdout_fraction, holdout_seed);
        fitness_train = std::move(split.first);
        final_test = std::move(split.second);
        train_source_indices = std::move(split.first_indices);

        // The fitness holdout lives inside the first part, so it cannot meet
        // the final test rows; keep the explicit check anyway.
        std::set<std::size_t> test_rows(split.second_indices.begin(), split.second_indices.end());
        for (std::size_t i : train_source_indices)
            if (test_rows.count(i))
                throw std::logic_error("run_experiment: fitness and test holdouts overlap");
    } else {
        fitness_train = std::move(full_train);
        std::vector<ConnectionRecord> test_records = parse_kdd_file(config.test_path);
        final_test = encode(test_records, fitness_train.schema, fitness_train.bounds);
    }

    FitnessEvaluator evaluator(fitness_train, opt.protocol);
    RunResult result = optimize(evaluator, fitness_train.feature_count(), opt);

    const int k = opt.protocol.k;
    MetricsReport test_metrics =
        evaluate_on_test(fitness_train, final_test, result.best.mask, k, config.positive_class,
                         opt.threads);

    std::vector<BaselineRow> rows;
    rows.push_back({"woa_ga_knn", test_metrics, result.best.mask.selected_count()});
    if (config.baselines.all_features) {
        FeatureMask full_mask = FeatureMask::all_ones(fitness_train.feature_count());
        rows.push_back({"all_features_knn",
                        evaluate_on_test(fitness_train, final_test, full_mask, k,
                                         config.positive_class, opt.threads),
                        full_mask.selected_count()});
    }
    if (config.baselines.woa_only) {
        OptimizerConfig woa = opt;
        woa.ga_fraction = 0.0;
        RunResult r = optimize(evaluator, fitness_train.feature_count(), woa);
        rows.push_back({"woa_only_knn",
                        evaluate_on_test(fitness_train, final_test, r.best.mask, k,
                                         config.positive_class, opt.threads),
                        r.best.mask.selected_count()});
    }
    if (config.baselines.ga_only) {
        OptimizerConfig ga = opt;
        ga.enable_woa = false;
        ga.ga_fraction = 1.0;
        RunResult r = optimize(evaluator, fitness_train.feature_count(), ga);
        rows.push_back({"ga_only_knn",
                        evaluate_on_test(fitness_train, final_test, r.best.mask, k,
                                         config.positive_class, opt.threads),
                        r.best.mask.selected_count()});
    }

    fs::create_directories(config.out_dir);
    ExperimentResult out{std::move(result), std::move(test_metrics), std::move(rows), {}};
    auto emit = [&](const char* name, const std::string& text) {
        fs::path path = fs::path(config.out_dir) / name;
        write_text(path, text);
        out.artifacts.push_back(path.string());
    };
    emit("convergence.csv", out.run.log.to_csv());
    emit("selected_features.txt",
         selected_features_text(out.run.best.mask, fitness_train.schema));
    emit("metrics.json", metrics_json(out.test_metrics));
    emit("baselines.csv", baselines_csv(out.baselines));

    nlohmann::json manifest = manifest_json(config);
    manifest["protocol"]["eval_seed_resolved"] = opt.protocol.eval_seed;
    manifest["optimizer"]["mutation_rate_resolved"] =
        opt.resolved_mutation_rate(fitness_train.feature_count());
    emit("run_manifest.json", manifest.dump(2) + "\n");
    return out;
}

void subsample(const std::string& in_path, std::size_t n, std::uint64_t seed,
               const std::string& out_path) {
    if (n < 4) throw std::invalid_argument("subsample: n must be >= 4");
    std::vector<ConnectionRecord> records = parse_kdd_file(in_path);
    if (n > records.size())
        throw std::invalid_argument("subsample: requested " + std::to_string(n) + " rows, file has " +
                                    std::to_string(records.size()));

    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < records.size(); ++i)
        by_class[records[i].label == "normal" ? 0 : 1].push_back(i);

    const double scale = static_cast<double>(n) / static_cast<double>(records.size());
    std::size_t take[2];
    take[0] = std::min(by_class[0].size(),
                       static_cast<std::size_t>(std::llround(scale * by_class[0].size())));
    take[1] = n - take[0];
    if (take[1] > by_class[1].size()) {
        take[0] += take[1] - by_class[1].size();
        take[1] = by_class[1].size();
    }

    std::vector<std::size_t> chosen;
    for (int c = 0; c < 2; ++c) {
        auto& idx = by_class[c];
        Rng rng = Rng::derive(seed, stream::subsample, static_cast<std::uint64_t>(c));
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[rng.index(i)]);
        chosen.insert(chosen.end(), idx.begin(), idx.begin() + take[c]);
    }
    Rng rng = Rng::derive(seed, stream::subsample, 2);
    for (std::size_t i = chosen.size(); i > 1; --i)
        std::swap(chosen[i - 1], chosen[rng.index(i)]);

    std::vector<ConnectionRecord> out;
    out.reserve(chosen.size());
    for (std::size_t i : chosen) out.push_back(records[i]);
    write_kdd_file(out, out_path);
}

}  // namespace gwofs
