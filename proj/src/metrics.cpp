#include "gwofs/metrics.hpp"

#include <stdexcept>

#include <json.hpp>

namespace gwofs {

ConfusionMatrix confusion(const std::vector<ClassLabel>& predicted,
                          const std::vector<ClassLabel>& actual, ClassLabel positive_class) {
    if (predicted.empty()) throw std::invalid_argument("confusion: empty prediction list");
    if (predicted.size() != actual.size())
        throw std::invalid_argument("confusion: predicted and actual lengths differ");
    ConfusionMatrix cm;
    cm.positive_class = positive_class;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        bool actual_pos = actual[i] == positive_class;
        bool pred_pos = predicted[i] == positive_class;
        if (actual_pos)
            pred_pos ? ++cm.tp : ++cm.fn;
        else
            pred_pos ? ++cm.fp : ++cm.tn;
    }
    return cm;
}

double error_rate(const ConfusionMatrix& cm) {
    return static_cast<double>(cm.fp + cm.fn) / static_cast<double>(cm.total());
}

double accuracy(const ConfusionMatrix& cm) {
    if (cm.total() == 0) return 0.0;
    // 1 - error rather than (tp+tn)/total: algebraically identical, and the
    // complement identity with error_rate is then exact in floating point.
    return 1.0 - error_rate(cm);
}

double sensitivity(const ConfusionMatrix& cm) {
    std::uint64_t den = cm.tp + cm.fn;
    return den == 0 ? 0.0 : static_cast<double>(cm.tp) / static_cast<double>(den);
}

double precision(const ConfusionMatrix& cm) {
    std::uint64_t den = cm.tp + cm.fp;
    return den == 0 ? 0.0 : static_cast<double>(cm.tp) / static_cast<double>(den);
}

double f_measure(const ConfusionMatrix& cm) {
    double p = precision(cm);
    double s = sensitivity(cm);
    return p + s == 0.0 ? 0.0 : 2.0 * p * s / (p + s);
}

MetricsReport report(const ConfusionMatrix& cm) {
    MetricsReport r;
    r.cm = cm;
    r.accuracy = accuracy(cm);
    r.sensitivity = sensitivity(cm);
    r.precision = precision(cm);
    r.f_measure = f_measure(cm);
    if (cm.total() == 0) r.warnings.push_back("accuracy");
    if (cm.tp + cm.fn == 0) r.warnings.push_back("sensitivity");
    if (cm.tp + cm.fp == 0) r.warnings.push_back("precision");
    if (precision(cm) + sensitivity(cm) == 0.0) r.warnings.push_back("f_measure");
    return r;
}

std::string metrics_json(const MetricsReport& r) {
    nlohmann::json doc;
    doc["tp"] = r.cm.tp;
    doc["fp"] = r.cm.fp;
    doc["tn"] = r.cm.tn;
    doc["fn"] = r.cm.fn;
    doc["accuracy"] = r.accuracy;
    doc["sensitivity"] = r.sensitivity;
    doc["precision"] = r.precision;
    doc["f_measure"] = r.f_measure;
    doc["positive_class"] = to_string(r.cm.positive_class);
    doc["warnings"] = r.warnings;
    return doc.dump(2) + "\n";
}

}  // namespace gwofs
