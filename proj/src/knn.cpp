#include "gwofs/knn.hpp"

#include <algorithm>
#include <stdexcept>

#include "gwofs/parallel.hpp"

namespace gwofs {

KnnModel KnnModel::fit(const EncodedDataset& data, const FeatureMask& mask, int k) {
    if (data.size() == 0) throw std::invalid_argument("knn: empty training data");
    if (mask.size() != data.feature_count())
        throw std::invalid_argument("knn: mask length does not match dataset");
    if (!mask.any()) throw std::invalid_argument("knn: mask selects no features");
    if (k < 1) throw std::invalid_argument("knn: k must be positive");
    if (static_cast<std::size_t>(k) > data.size())
        throw std::invalid_argument("knn: k exceeds the number of training rows");

    KnnModel model;
    model.k_ = k;
    model.dim_ = mask.selected_count();
    model.labels_ = data.labels;
    model.flat_rows_.reserve(data.size() * model.dim_);
    for (const auto& row : data.rows) {
        for (std::size_t j = 0; j < row.size(); ++j)
            if (mask.test(j)) model.flat_rows_.push_back(row[j]);
    }
    return model;
}

ClassLabel KnnModel::predict(std::span<const double> query) const {
    if (query.size() != dim_)
        throw std::invalid_argument("knn: query length " + std::to_string(query.size()) +
                                    " does not match model dimension " + std::to_string(dim_));
    const std::size_t n = labels_.size();
    std::vector<std::pair<double, std::size_t>> dist(n);
    const double* row = flat_rows_.data();
    for (std::size_t i = 0; i < n; ++i, row += dim_) {
        double sum = 0;
        for (std::size_t j = 0; j < dim_; ++j) {
            double diff = row[j] - query[j];
            sum += diff * diff;
        }
        dist[i] = {sum, i};
    }
    // The pair order (distance, index) makes the k-set unique when distances tie.
    auto kth = dist.begin() + (k_ - 1);
    std::nth_element(dist.begin(), kth, dist.end());
    int attack_votes = 0;
    for (int i = 0; i < k_; ++i)
        if (labels_[dist[static_cast<std::size_t>(i)].second] == ClassLabel::Attack) ++attack_votes;
    return 2 * attack_votes >= k_ ? ClassLabel::Attack : ClassLabel::Normal;
}

std::vector<ClassLabel> KnnModel::predict_batch(const std::vector<std::vector<double>>& queries,
                                                unsigned threads) const {
    std::vector<ClassLabel> out(queries.size());
    parallel_for(queries.size(), threads, [&](std::size_t i) { out[i] = predict(queries[i]); });
    return out;
}

}  // namespace gwofs
