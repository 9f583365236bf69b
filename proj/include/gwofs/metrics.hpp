#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwofs/dataset.hpp"

namespace gwofs {

struct ConfusionMatrix {
    std::uint64_t tp = 0, fp = 0, tn = 0, fn = 0;
    ClassLabel positive_class = ClassLabel::Attack;

    std::uint64_t positives() const { return tp + fn; }  // P
    std::uint64_t negatives() const { return fp + tn; }  // N
    std::uint64_t total() const { return tp + fp + tn + fn; }
};

ConfusionMatrix confusion(const std::vector<ClassLabel>& predicted,
                          const std::vector<ClassLabel>& actual, ClassLabel positive_class);

// (FP+FN)/(P+N); shared by the fitness error objective and accuracy so that
// accuracy + error_rate == 1 holds exactly in floating point.
double error_rate(const ConfusionMatrix& cm);

// Zero denominators yield 0 rather than an error; report() records which
// metrics were degenerate so batch reports never abort.
double accuracy(const ConfusionMatrix& cm);
double sensitivity(const ConfusionMatrix& cm);
double precision(const ConfusionMatrix& cm);
double f_measure(const ConfusionMatrix& cm);

struct MetricsReport {
    ConfusionMatrix cm;
    double accuracy = 0, sensitivity = 0, precision = 0, f_measure = 0;
    std::vector<std::string> warnings;  // names of metrics with a zero denominator
};

MetricsReport report(const ConfusionMatrix& cm);

// JSON document with tp/fp/tn/fn, the four metrics, positive_class and warnings.
std::string metrics_json(const MetricsReport& r);

}  // namespace gwofs
