#include <doctest.h>

#include "gwofs/metrics.hpp"
#include "gwofs/rng.hpp"

using namespace gwofs;

namespace {
const ClassLabel A = ClassLabel::Attack;
const ClassLabel N = ClassLabel::Normal;
}  // namespace

TEST_CASE("confusion cell assignment") {
    // hand enumeration of the four cases
    ConfusionMatrix cm = confusion({A, N, A, N}, {A, A, N, N}, A);
    CHECK(cm.tp == 1);
    CHECK(cm.fn == 1);
    CHECK(cm.fp == 1);
    CHECK(cm.tn == 1);
    CHECK(cm.positives() == 2);
    CHECK(cm.negatives() == 2);

    ConfusionMatrix perfect = confusion({A, N, A}, {A, N, A}, A);
    CHECK(perfect.fp == 0);
    CHECK(perfect.fn == 0);

    ConfusionMatrix flipped = confusion({N, A, N}, {A, N, A}, A);
    CHECK(flipped.tp == 0);
    CHECK(flipped.tn == 0);

    CHECK_THROWS(confusion({}, {}, A));
    CHECK_THROWS(confusion({A}, {A, N}, A));
}

TEST_CASE("metric values on hand-computed matrices") {
    ConfusionMatrix cm{1, 1, 1, 1, A};
    CHECK(accuracy(cm) == doctest::Approx(0.5));
    CHECK(sensitivity(cm) == doctest::Approx(0.5));
    CHECK(precision(cm) == doctest::Approx(0.5));
    CHECK(f_measure(cm) == doctest::Approx(0.5));

    ConfusionMatrix perfect{10, 0, 5, 0, A};
    CHECK(accuracy(perfect) == 1.0);
    CHECK(sensitivity(perfect) == 1.0);
    CHECK(precision(perfect) == 1.0);
    CHECK(f_measure(perfect) == 1.0);
}

TEST_CASE("accuracy and the error objective are exact complements") {
    Rng rng(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        ConfusionMatrix cm{rng.index(1000000), rng.index(1000000), rng.index(1000000),
                           rng.index(1000000), A};
        if (cm.total() == 0) continue;
        CHECK(accuracy(cm) + error_rate(cm) == 1.0);  // exact, not approximate
    }
}

TEST_CASE("f_measure is the harmonic mean of precision and sensitivity") {
    Rng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        ConfusionMatrix cm{1 + rng.index(10000), rng.index(10000), rng.index(10000),
                           rng.index(10000), A};
        double p = precision(cm);
        double s = sensitivity(cm);
        if (p == 0.0 || s == 0.0) continue;
        double harmonic = 2.0 / (1.0 / p + 1.0 / s);
        CHECK(std::abs(f_measure(cm) - harmonic) < 1e-12);
    }
}

TEST_CASE("all metrics stay in [0,1]") {
    Rng rng(55);
    for (int trial = 0; trial < 1000; ++trial) {
        ConfusionMatrix cm{rng.index(100), rng.index(100), rng.index(100), rng.index(100), A};
        if (cm.total() == 0) continue;
        for (double v : {accuracy(cm), sensitivity(cm), precision(cm), f_measure(cm)}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("swapping the positive class transposes the matrix and keeps accuracy") {
    std::vector<ClassLabel> predicted = {A, A, N, N, A, N, A};
    std::vector<ClassLabel> actual = {A, N, N, A, A, N, N};
    ConfusionMatrix pos_attack = confusion(predicted, actual, A);
    ConfusionMatrix pos_normal = confusion(predicted, actual, N);
    CHECK(pos_attack.tp == pos_normal.tn);
    CHECK(pos_attack.fn == pos_normal.fp);
    CHECK(pos_attack.fp == pos_normal.fn);
    CHECK(pos_attack.tn == pos_normal.tp);
    CHECK(accuracy(pos_attack) == accuracy(pos_normal));
}

TEST_CASE("zero denominators warn instead of throwing") {
    ConfusionMatrix no_positives{0, 0, 5, 0, A};  // tp+fn == 0 and tp+fp == 0
    CHECK(sensitivity(no_positives) == 0.0);
    CHECK(precision(no_positives) == 0.0);
    CHECK(f_measure(no_positives) == 0.0);

    MetricsReport r = report(no_positives);
    CHECK(r.accuracy == 1.0);
    REQUIRE(r.warnings.size() == 3);
    CHECK(r.warnings[0] == "sensitivity");
    CHECK(r.warnings[1] == "precision");
    CHECK(r.warnings[2] == "f_measure");
}

TEST_CASE("metrics serialize to json") {
    MetricsReport r = report(ConfusionMatrix{8, 1, 9, 2, A});
    std::string doc = metrics_json(r);
    CHECK(doc.find("\"tp\": 8") != std::string::npos);
    CHECK(doc.find("\"positive_class\": \"Attack\"") != std::string::npos);
    CHECK(doc.find("\"accuracy\"") != std::string::npos);
    CHECK(doc.find("\"warnings\"") != std::string::npos);
}
