#pragma once

#include <span>
#include <vector>

#include "gwofs/dataset.hpp"
#include "gwofs/mask.hpp"

namespace gwofs {

// Instance-based k-nearest-neighbor classifier over masked rows. Training
// stores the masked rows verbatim; prediction is a deterministic linear scan:
// the k smallest squared Euclidean distances vote by majority, distance ties
// at the k-boundary resolve toward the lower training-row index, and vote
// ties (possible for even k) resolve toward Attack. A fitted model is
// immutable and predict() is safe to call concurrently.
class KnnModel {
public:
    static KnnModel fit(const EncodedDataset& data, const FeatureMask& mask, int k);

    ClassLabel predict(std::span<const double> query) const;
    std::vector<ClassLabel> predict_batch(const std::vector<std::vector<double>>& queries,
                                          unsigned threads = 1) const;

    std::size_t instance_count() const { return labels_.size(); }
    std::size_t dimension() const { return dim_; }
    int k() const { return k_; }
    std::span<const double> instance(std::size_t i) const {
        return {flat_rows_.data() + i * dim_, dim_};
    }
    ClassLabel label(std::size_t i) const { return labels_[i]; }

private:
    std::vector<double> flat_rows_;  // row-major, instance_count x dim
    std::vector<ClassLabel> labels_;
    std::size_t dim_ = 0;
    int k_ = 0;
};

}  // namespace gwofs
