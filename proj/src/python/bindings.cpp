#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gwofs/dataset.hpp"
#include "gwofs/experiment.hpp"
#include "gwofs/knn.hpp"
#include "gwofs/metrics.hpp"
#include "gwofs/optimizer.hpp"

namespace py = pybind11;
using namespace gwofs;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Whale/genetic hybrid feature selection with KNN scoring for "
              "connection-record intrusion detection";

    py::enum_<ClassLabel>(m, "ClassLabel")
        .value("Normal", ClassLabel::Normal)
        .value("Attack", ClassLabel::Attack);

    py::enum_<BinarizeMode>(m, "BinarizeMode")
        .value("Threshold", BinarizeMode::Threshold)
        .value("SigmoidStochastic", BinarizeMode::SigmoidStochastic);

    py::class_<FeatureSchema>(m, "FeatureSchema")
        .def_readonly("names", &FeatureSchema::names)
        .def_readonly("category_tables", &FeatureSchema::category_tables)
        .def("__len__", &FeatureSchema::size);

    py::class_<ConnectionRecord>(m, "ConnectionRecord")
        .def(py::init<>())
        .def_readwrite("features", &ConnectionRecord::features)
        .def_readwrite("label", &ConnectionRecord::label);

    py::class_<EncodedDataset>(m, "EncodedDataset")
        .def_readonly("rows", &EncodedDataset::rows)
        .def_readonly("labels", &EncodedDataset::labels)
        .def_readonly("schema", &EncodedDataset::schema)
        .def_readonly("bounds", &EncodedDataset::bounds)
        .def("__len__", &EncodedDataset::size)
        .def_property_readonly("feature_count", &EncodedDataset::feature_count);

    py::class_<FeatureMask>(m, "FeatureMask")
        .def(py::init([](const std::string& bits) { return FeatureMask::from_string(bits); }))
        .def_static("all_ones", &FeatureMask::all_ones)
        .def("__len__", &FeatureMask::size)
        .def("selected_count", &FeatureMask::selected_count)
        .def("selected_indices", &FeatureMask::selected_indices)
        .def("selected_names", &FeatureMask::selected_names)
        .def("__str__", &FeatureMask::to_string)
        .def("__eq__", [](const FeatureMask& a, const FeatureMask& b) { return a == b; });

    py::class_<Position>(m, "Position")
        .def(py::init([](std::vector<double> coords) { return Position{std::move(coords)}; }))
        .def_readwrite("coords", &Position::coords);

    m.def("parse_kdd_file", &parse_kdd_file, py::arg("path"));
    m.def("parse_kdd", [](const std::string& text) {
        std::istringstream in(text);
        return parse_kdd(in);
    });
    m.def("to_kdd_line", &to_kdd_line);
    m.def("write_kdd_file", &write_kdd_file, py::arg("records"), py::arg("path"));
    m.def("encode", py::overload_cast<const std::vector<ConnectionRecord>&>(&encode));
    m.def("encode",
          py::overload_cast<const std::vector<ConnectionRecord>&, const FeatureSchema&,
                            const NormalizationBounds&>(&encode),
          py::arg("records"), py::arg("schema"), py::arg("bounds"));
    m.def(
        "stratified_split",
        [](const EncodedDataset& data, double fraction, std::uint64_t seed) {
            SplitResult s = stratified_split(data, fraction, seed);
            return py::make_tuple(std::move(s.first), std::move(s.second));
        },
        py::arg("data"), py::arg("fraction"), py::arg("seed"));
    m.def("generate_synthetic", &generate_synthetic, py::arg("n"), py::arg("d"),
          py::arg("informative"), py::arg("noise_sd"), py::arg("seed"));
    m.def("generate_kdd_like", &generate_kdd_like, py::arg("n"), py::arg("seed"));
    m.def("to_records", &to_records);

    m.def(
        "binarize",
        [](const Position& pos, BinarizeMode mode, std::uint64_t seed) {
            Rng rng(seed);
            return binarize(pos, mode, rng);
        },
        py::arg("position"), py::arg("mode") = BinarizeMode::Threshold, py::arg("seed") = 0);
    m.def("apply_mask", &apply_mask, py::arg("mask"), py::arg("row"));

    py::class_<KnnModel>(m, "KnnModel")
        .def_static("fit", &KnnModel::fit, py::arg("data"), py::arg("mask"), py::arg("k"))
        .def("predict",
             [](const KnnModel& model, const std::vector<double>& query) {
                 return model.predict(query);
             })
        .def("predict_batch", &KnnModel::predict_batch, py::arg("queries"), py::arg("threads") = 1)
        .def_property_readonly("instance_count", &KnnModel::instance_count)
        .def_property_readonly("dimension", &KnnModel::dimension);

    py::class_<FitnessValue>(m, "FitnessValue")
        .def_readonly("f1", &FitnessValue::f1)
        .def_readonly("f2", &FitnessValue::f2)
        .def_readonly("scalar", &FitnessValue::scalar);

    py::class_<EvalProtocol>(m, "EvalProtocol")
        .def(py::init<>())
        .def_readwrite("holdout_fraction", &EvalProtocol::holdout_fraction)
        .def_readwrite("eval_seed", &EvalProtocol::eval_seed)
        .def_readwrite("k", &EvalProtocol::k)
        .def_readwrite("alpha", &EvalProtocol::alpha);

    m.def("evaluate", &evaluate, py::arg("mask"), py::arg("train"), py::arg("protocol"));

    py::class_<OptimizerConfig>(m, "OptimizerConfig")
        .def(py::init<>())
        .def_readwrite("population", &OptimizerConfig::population)
        .def_readwrite("iterations", &OptimizerConfig::iterations)
        .def_readwrite("spiral_b", &OptimizerConfig::spiral_b)
        .def_readwrite("crossover_rate", &OptimizerConfig::crossover_rate)
        .def_readwrite("mutation_rate", &OptimizerConfig::mutation_rate)
        .def_readwrite("ga_fraction", &OptimizerConfig::ga_fraction)
        .def_readwrite("elitism", &OptimizerConfig::elitism)
        .def_readwrite("seed", &OptimizerConfig::seed)
        .def_readwrite("binarize_mode", &OptimizerConfig::binarize_mode)
        .def_readwrite("protocol", &OptimizerConfig::protocol)
        .def_readwrite("enable_woa", &OptimizerConfig::enable_woa)
        .def_readwrite("threads", &OptimizerConfig::threads);

    py::class_<SearchAgent>(m, "SearchAgent")
        .def_readonly("position", &SearchAgent::position)
        .def_readonly("mask", &SearchAgent::mask)
        .def_readonly("fitness", &SearchAgent::fitness);

    py::class_<ConvergenceEntry>(m, "ConvergenceEntry")
        .def_readonly("iteration", &ConvergenceEntry::iteration)
        .def_readonly("best_fitness", &ConvergenceEntry::best_fitness)
        .def_readonly("mean_fitness", &ConvergenceEntry::mean_fitness)
        .def_readonly("best_feature_count", &ConvergenceEntry::best_feature_count);

    py::class_<ConvergenceLog>(m, "ConvergenceLog")
        .def_readonly("entries", &ConvergenceLog::entries)
        .def("to_csv", &ConvergenceLog::to_csv);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("best", &RunResult::best)
        .def_readonly("log", &RunResult::log);

    m.def("optimize",
          py::overload_cast<const EncodedDataset&, const OptimizerConfig&>(&optimize),
          py::arg("data"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
        .def(py::init([](std::uint64_t tp, std::uint64_t fp, std::uint64_t tn, std::uint64_t fn) {
                 return ConfusionMatrix{tp, fp, tn, fn, ClassLabel::Attack};
             }),
             py::arg("tp"), py::arg("fp"), py::arg("tn"), py::arg("fn"))
        .def_readonly("tp", &ConfusionMatrix::tp)
        .def_readonly("fp", &ConfusionMatrix::fp)
        .def_readonly("tn", &ConfusionMatrix::tn)
        .def_readonly("fn", &ConfusionMatrix::fn);

    m.def("confusion", &confusion, py::arg("predicted"), py::arg("actual"),
          py::arg("positive_class") = ClassLabel::Attack);
    m.def("error_rate", &error_rate);
    m.def("accuracy", &accuracy);
    m.def("sensitivity", &sensitivity);
    m.def("precision", &precision);
    m.def("f_measure", &f_measure);

    py::class_<MetricsReport>(m, "MetricsReport")
        .def_readonly("accuracy", &MetricsReport::accuracy)
        .def_readonly("sensitivity", &MetricsReport::sensitivity)
        .def_readonly("precision", &MetricsReport::precision)
        .def_readonly("f_measure", &MetricsReport::f_measure)
        .def_readonly("warnings", &MetricsReport::warnings);
    m.def("report", &report);
    m.def("metrics_json", &metrics_json);

    py::class_<BaselineToggles>(m, "BaselineToggles")
        .def(py::init<>())
        .def_readwrite("all_features", &BaselineToggles::all_features)
        .def_readwrite("woa_only", &BaselineToggles::woa_only)
        .def_readwrite("ga_only", &BaselineToggles::ga_only);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("train_path", &ExperimentConfig::train_path)
        .def_readwrite("test_path", &ExperimentConfig::test_path)
        .def_readwrite("out_dir", &ExperimentConfig::out_dir)
        .def_readwrite("optimizer", &ExperimentConfig::optimizer)
        .def_readwrite("final_holdout_fraction", &ExperimentConfig::final_holdout_fraction)
        .def_readwrite("baselines", &ExperimentConfig::baselines)
        .def_readwrite("positive_class", &ExperimentConfig::positive_class);

    py::class_<BaselineRow>(m, "BaselineRow")
        .def_readonly("name", &BaselineRow::name)
        .def_readonly("metrics", &BaselineRow::metrics)
        .def_readonly("feature_count", &BaselineRow::feature_count);

    py::class_<ExperimentResult>(m, "ExperimentResult")
        .def_readonly("run", &ExperimentResult::run)
        .def_readonly("test_metrics", &ExperimentResult::test_metrics)
        .def_readonly("baselines", &ExperimentResult::baselines)
        .def_readonly("artifacts", &ExperimentResult::artifacts);

    m.def("run_experiment", &run_experiment, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("subsample", &subsample, py::arg("in_path"), py::arg("n"), py::arg("seed"),
          py::arg("out_path"));
}
