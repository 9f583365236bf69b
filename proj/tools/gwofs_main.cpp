#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gwofs/dataset.hpp"
#include "gwofs/experiment.hpp"

namespace {

// Config files are plain "key = value" lines (# starts a comment); keys match
// the long option names. Values only apply to options not given on the
// command line.
std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::map<std::string, std::string> values;
    std::string line;
    std::size_t line_number = 0;
    auto trim = [](std::string s) {
        auto begin = s.find_first_not_of(" \t");
        auto end = s.find_last_not_of(" \t\r");
        return begin == std::string::npos ? std::string() : s.substr(begin, end - begin + 1);
    };
    while (std::getline(in, line)) {
        ++line_number;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_number) +
                                     ": expected key = value");
        values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return values;
}

void apply_config_defaults(CLI::App& app, const std::map<std::string, std::string>& values) {
    for (const auto& [key, value] : values) {
        CLI::Option* opt = app.get_option_no_throw("--" + key);
        if (opt == nullptr) throw std::runtime_error("config file: unknown key '" + key + "'");
        if (opt->count() > 0) continue;  // command line wins
        opt->add_result(value);
        opt->run_callback();
    }
}

gwofs::BaselineToggles parse_baselines(const std::string& text) {
    gwofs::BaselineToggles toggles{false, false, false};
    if (text == "none") return toggles;
    if (text == "all") return {true, true, true};
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "all_features")
            toggles.all_features = true;
        else if (item == "woa_only")
            toggles.woa_only = true;
        else if (item == "ga_only")
            toggles.ga_only = true;
        else
            throw std::runtime_error("unknown baseline '" + item +
                                     "' (expected all_features, woa_only, ga_only, all or none)");
    }
    return toggles;
}

int run_command(const std::string& train, const std::string& test, const std::string& out_dir,
                const gwofs::OptimizerConfig& opt, double final_holdout,
                const std::string& baselines, const std::string& positive) {
    gwofs::ExperimentConfig config;
    config.train_path = train;
    config.test_path = test;
    config.out_dir = out_dir;
    config.optimizer = opt;
    config.final_holdout_fraction = final_holdout;
    config.baselines = parse_baselines(baselines);
    if (positive == "attack")
        config.positive_class = gwofs::ClassLabel::Attack;
    else if (positive == "normal")
        config.positive_class = gwofs::ClassLabel::Normal;
    else
        throw std::runtime_error("positive class must be 'attack' or 'normal'");

    gwofs::ExperimentResult result = gwofs::run_experiment(config);
    const auto& log = result.run.log.entries;
    std::cout << "best fitness " << result.run.best.fitness.scalar << " (error "
              << result.run.best.fitness.f2 << "), " << result.run.best.mask.selected_count()
              << "/" << result.run.best.mask.size() << " features after " << log.back().iteration
              << " iterations\n";
    std::cout << "test accuracy " << result.test_metrics.accuracy << ", F-measure "
              << result.test_metrics.f_measure << "\n";
    for (const auto& path : result.artifacts) std::cout << "wrote " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature selection for connection-record intrusion detection: a whale/genetic "
                 "hybrid search over feature masks scored by a KNN classifier."};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run the full selection + evaluation pipeline");
    std::string train, test, out_dir = "out", config_path, baselines = "all_features";
    std::string binarize = "threshold", positive = "attack";
    gwofs::OptimizerConfig opt;
    double final_holdout = 0.3;
    run->add_option("--train", train, "Training data file (text or gzip)");
    run->add_option("--test", test, "Optional test data file; default carves a holdout from train");
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();
    run->add_option("--pop", opt.population, "Population size")->capture_default_str();
    run->add_option("--iters", opt.iterations, "Iterations")->capture_default_str();
    run->add_option("--k", opt.protocol.k, "KNN neighbor count")->capture_default_str();
    run->add_option("--alpha", opt.protocol.alpha, "Weight of the error objective")
        ->capture_default_str();
    run->add_option("--crossover", opt.crossover_rate, "Crossover probability")
        ->capture_default_str();
    run->add_option("--mutation", opt.mutation_rate,
                    "Per-coordinate mutation probability (default 1/41)");
    run->add_option("--ga-fraction", opt.ga_fraction, "Population share bred per iteration")
        ->capture_default_str();
    run->add_option("--binarize", binarize, "Mask binarization: threshold or sigmoid")
        ->capture_default_str();
    run->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
    run->add_option("--threads", opt.threads, "Fitness evaluation workers (0 = hardware)")
        ->capture_default_str();
    run->add_option("--holdout", final_holdout, "Final test holdout fraction when --test is absent")
        ->capture_default_str();
    run->add_option("--baseline", baselines,
                    "Baselines: all, none, or a comma list of all_features,woa_only,ga_only")
        ->capture_default_str();
    run->add_option("--positive", positive, "Positive class for reports: attack or normal")
        ->capture_default_str();
    run->add_option("--config", config_path, "Key = value config file; flags override it");

    // subsample
    auto* sub = app.add_subcommand("subsample", "Write a stratified subsample of a record file");
    std::string sub_in, sub_out;
    std::size_t sub_n = 0;
    std::uint64_t sub_seed = 1;
    sub->add_option("--in", sub_in, "Input file (text or gzip)")->required();
    sub->add_option("--n", sub_n, "Rows to keep")->required();
    sub->add_option("--seed", sub_seed, "Random seed")->capture_default_str();
    sub->add_option("--out", sub_out, "Output file")->required();

    // synth
    auto* synth = app.add_subcommand(
        "synth", "Write a synthetic connection-record file for experiments and demos");
    std::string synth_out;
    std::size_t synth_n = 5000;
    std::uint64_t synth_seed = 1;
    synth->add_option("--n", synth_n, "Rows to generate")->capture_default_str();
    synth->add_option("--seed", synth_seed, "Random seed")->capture_default_str();
    synth->add_option("--out", synth_out, "Output file")->required();

    try {
        app.parse(argc, argv);
        if (run->parsed()) {
            if (!config_path.empty()) apply_config_defaults(*run, load_config_file(config_path));
            if (train.empty()) throw std::runtime_error("run: --train is required");
            opt.binarize_mode = gwofs::binarize_mode_from_string(binarize);
            return run_command(train, test, out_dir, opt, final_holdout, baselines, positive);
        }
        if (sub->parsed()) {
            gwofs::subsample(sub_in, sub_n, sub_seed, sub_out);
            std::cout << "wrote " << sub_out << "\n";
            return 0;
        }
        if (synth->parsed()) {
            gwofs::write_kdd_file(gwofs::generate_kdd_like(synth_n, synth_seed), synth_out);
            std::cout << "wrote " << synth_out << "\n";
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
