#include "gwofs/fitness.hpp"

#include <stdexcept>

#include "gwofs/knn.hpp"
#include "gwofs/metrics.hpp"

namespace gwofs {

FitnessEvaluator::FitnessEvaluator(const EncodedDataset& train, const EvalProtocol& protocol)
    : protocol_(protocol) {
    if (!(protocol.holdout_fraction > 0.0 && protocol.holdout_fraction < 1.0))
        throw std::invalid_argument("fitness: holdout_fraction must lie in (0, 1)");
    if (!(protocol.alpha >= 0.0 && protocol.alpha <= 1.0))
        throw std::invalid_argument("fitness: alpha must lie in [0, 1]");
    if (train.count(ClassLabel::Normal) == 0 || train.count(ClassLabel::Attack) == 0)
        throw std::runtime_error("fitness: training data must contain both classes");

    SplitResult split =
        stratified_split(train, 1.0 - protocol.holdout_fraction, protocol.eval_seed);
    fit_part_ = std::move(split.first);
    eval_part_ = std::move(split.second);
    fit_indices_ = std::move(split.first_indices);
    eval_indices_ = std::move(split.second_indices);

    for (const EncodedDataset* part : {&fit_part_, &eval_part_})
        if (part->count(ClassLabel::Normal) == 0 || part->count(ClassLabel::Attack) == 0)
            throw std::runtime_error("fitness: protocol split left a part without both classes");
    if (static_cast<std::size_t>(protocol.k) > fit_part_.size())
        throw std::runtime_error("fitness: k exceeds the rows available to the inner classifier");
}

FitnessValue FitnessEvaluator::operator()(const FeatureMask& mask) const {
    if (mask.size() != fit_part_.feature_count())
        throw std::invalid_argument("fitness: mask length does not match dataset");

    const double d = static_cast<double>(mask.size());
    if (!mask.any()) return {0.0, 1.0, 1.0};  // penalty for selecting nothing

    KnnModel model = KnnModel::fit(fit_part_, mask, protocol_.k);
    std::vector<ClassLabel> predicted;
    predicted.reserve(eval_part_.size());
    for (const auto& row : eval_part_.rows) predicted.push_back(model.predict(apply_mask(mask, row)));

    ConfusionMatrix cm = confusion(predicted, eval_part_.labels, ClassLabel::Attack);
    FitnessValue value;
    value.f1 = static_cast<double>(mask.selected_count()) / d;
    value.f2 = error_rate(cm);
    value.scalar = protocol_.alpha * value.f2 + (1.0 - protocol_.alpha) * value.f1;
    return value;
}

FitnessValue evaluate(const FeatureMask& mask, const EncodedDataset& train,
                      const EvalProtocol& protocol) {
    return FitnessEvaluator(train, protocol)(mask);
}

}  // namespace gwofs
