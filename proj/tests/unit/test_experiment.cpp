#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "gwofs/experiment.hpp"

using namespace gwofs;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
    fs::path dir = fs::temp_directory_path() / "gwofs_experiment_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

ExperimentConfig small_config(const std::string& train, const std::string& out) {
    ExperimentConfig config;
    config.train_path = train;
    config.out_dir = out;
    config.optimizer.population = 8;
    config.optimizer.iterations = 6;
    config.optimizer.seed = 3;
    config.optimizer.threads = 2;
    return config;
}

}  // namespace

TEST_CASE("run_experiment writes the full artifact set") {
    fs::path dir = work_dir();
    std::string train = (dir / "train.csv").string();
    write_kdd_file(generate_kdd_like(500, 21), train);

    ExperimentConfig config = small_config(train, (dir / "run1").string());
    ExperimentResult result = run_experiment(config);

    for (const char* name : {"convergence.csv", "selected_features.txt", "metrics.json",
                             "baselines.csv", "run_manifest.json"})
        CHECK(fs::exists(dir / "run1" / name));

    // convergence log: header + iterations+1 rows
    std::string csv = slurp(dir / "run1" / "convergence.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 7);

    // subset report: a bit string then one line per selected feature name
    std::istringstream features(slurp(dir / "run1" / "selected_features.txt"));
    std::string bits;
    std::getline(features, bits);
    CHECK(bits.size() == kdd_feature_count);
    std::size_t names = 0;
    for (std::string line; std::getline(features, line);)
        if (!line.empty()) ++names;
    CHECK(names == result.run.best.mask.selected_count());
    CHECK(names < kdd_feature_count);  // strictly fewer than all features

    // baseline table includes the all-features row
    std::string baselines = slurp(dir / "run1" / "baselines.csv");
    CHECK(baselines.find("woa_ga_knn") != std::string::npos);
    CHECK(baselines.find("all_features_knn") != std::string::npos);
    CHECK(baselines.find(",41\n") != std::string::npos);

    CHECK(result.test_metrics.accuracy > 0.5);
}

TEST_CASE("two runs from one manifest are byte-identical") {
    fs::path dir = work_dir();
    std::string train = (dir / "train2.csv").string();
    write_kdd_file(generate_kdd_like(400, 8), train);

    ExperimentConfig config = small_config(train, (dir / "run_a").string());
    run_experiment(config);
    config.out_dir = (dir / "run_b").string();
    run_experiment(config);
    config.out_dir = (dir / "run_c").string();
    config.optimizer.threads = 1;  // worker count must not leak into results
    run_experiment(config);

    for (const char* name : {"convergence.csv", "selected_features.txt", "metrics.json",
                             "baselines.csv"}) {
        CHECK(slurp(dir / "run_a" / name) == slurp(dir / "run_b" / name));
        CHECK(slurp(dir / "run_a" / name) == slurp(dir / "run_c" / name));
    }
    // manifests differ only in the output directory
    std::string manifest_a = slurp(dir / "run_a" / "run_manifest.json");
    std::string manifest_b = slurp(dir / "run_b" / "run_manifest.json");
    auto pos = manifest_b.find("run_b");
    REQUIRE(pos != std::string::npos);
    manifest_b.replace(pos, 5, "run_a");
    CHECK(manifest_a == manifest_b);
}

TEST_CASE("explicit test file skips the holdout carve") {
    fs::path dir = work_dir();
    std::string train = (dir / "train3.csv").string();
    std::string test = (dir / "test3.csv").string();
    write_kdd_file(generate_kdd_like(400, 31), train);
    write_kdd_file(generate_kdd_like(150, 32), test);

    ExperimentConfig config = small_config(train, (dir / "run3").string());
    config.test_path = test;
    ExperimentResult result = run_experiment(config);
    // all 150 test rows are evaluated
    CHECK(result.test_metrics.cm.total() == 150);
}

TEST_CASE("missing input fails with an exception") {
    ExperimentConfig config = small_config("/nonexistent/path.csv", (work_dir() / "x").string());
    CHECK_THROWS(run_experiment(config));
}

TEST_CASE("subsample keeps the class ratio and is reproducible") {
    fs::path dir = work_dir();
    std::string full = (dir / "full.csv").string();
    write_kdd_file(generate_kdd_like(1000, 77), full);
    auto records = parse_kdd_file(full);
    auto normals = static_cast<double>(
        std::count_if(records.begin(), records.end(),
                      [](const ConnectionRecord& r) { return r.label == "normal"; }));

    std::string out_a = (dir / "sub_a.csv").string();
    std::string out_b = (dir / "sub_b.csv").string();
    subsample(full, 250, 5, out_a);
    subsample(full, 250, 5, out_b);
    CHECK(slurp(out_a) == slurp(out_b));

    auto sub = parse_kdd_file(out_a);
    REQUIRE(sub.size() == 250);
    auto sub_normals = static_cast<double>(
        std::count_if(sub.begin(), sub.end(),
                      [](const ConnectionRecord& r) { return r.label == "normal"; }));
    CHECK(std::abs(sub_normals - 0.25 * normals) <= 1.0);
}

TEST_CASE("subsampling every row yields a permutation") {
    fs::path dir = work_dir();
    std::string full = (dir / "tiny.csv").string();
    write_kdd_file(generate_kdd_like(60, 3), full);
    std::string out = (dir / "perm.csv").string();
    subsample(full, 60, 9, out);

    auto original = parse_kdd_file(full);
    auto permuted = parse_kdd_file(out);
    REQUIRE(permuted.size() == original.size());
    CHECK(original != permuted);  // shuffled, not a straight copy

    std::multiset<std::string> a, b;
    for (const auto& r : original) a.insert(to_kdd_line(r));
    for (const auto& r : permuted) b.insert(to_kdd_line(r));
    CHECK(a == b);

    CHECK_THROWS(subsample(full, 61, 9, out));
    CHECK_THROWS(subsample(full, 2, 9, out));
}
