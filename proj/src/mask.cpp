#include "gwofs/mask.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gwofs/dataset.hpp"

namespace gwofs {

FeatureMask FeatureMask::all_ones(std::size_t d) {
    return FeatureMask(std::vector<std::uint8_t>(d, 1));
}

FeatureMask FeatureMask::from_string(const std::string& text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("mask string must contain only '0' and '1'");
        bits.push_back(c == '1' ? 1 : 0);
    }
    return FeatureMask(std::move(bits));
}

std::size_t FeatureMask::selected_count() const {
    return std::accumulate(bits_.begin(), bits_.end(), std::size_t{0});
}

std::vector<std::size_t> FeatureMask::selected_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < bits_.size(); ++j)
        if (bits_[j]) idx.push_back(j);
    return idx;
}

std::string FeatureMask::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s += b ? '1' : '0';
    return s;
}

std::vector<std::string> FeatureMask::selected_names(const FeatureSchema& schema) const {
    if (schema.size() != bits_.size())
        throw std::invalid_argument("mask length does not match schema");
    std::vector<std::string> names;
    for (std::size_t j = 0; j < bits_.size(); ++j)
        if (bits_[j]) names.push_back(schema.names[j]);
    return names;
}

void Position::clamp01() {
    for (double& v : coords) v = std::clamp(v, 0.0, 1.0);
}

const char* to_string(BinarizeMode mode) {
    return mode == BinarizeMode::Threshold ? "threshold" : "sigmoid";
}

BinarizeMode binarize_mode_from_string(const std::string& text) {
    if (text == "threshold") return BinarizeMode::Threshold;
    if (text == "sigmoid") return BinarizeMode::SigmoidStochastic;
    throw std::invalid_argument("unknown binarize mode '" + text + "'");
}

double sigmoid(double v) {
    return 1.0 / (1.0 + std::exp(-v));
}

FeatureMask binarize(const Position& pos) {
    std::vector<std::uint8_t> bits(pos.size());
    for (std::size_t j = 0; j < pos.size(); ++j) bits[j] = pos.coords[j] >= 0.5 ? 1 : 0;
    return FeatureMask(std::move(bits));
}

FeatureMask binarize(const Position& pos, BinarizeMode mode, Rng& rng) {
    if (mode == BinarizeMode::Threshold) return binarize(pos);
    std::vector<std::uint8_t> bits(pos.size());
    for (std::size_t j = 0; j < pos.size(); ++j)
        bits[j] = rng.uniform01() < sigmoid(pos.coords[j]) ? 1 : 0;
    return FeatureMask(std::move(bits));
}

std::vector<double> apply_mask(const FeatureMask& mask, const std::vector<double>& row) {
    if (mask.size() != row.size())
        throw std::invalid_argument("apply_mask: mask length " + std::to_string(mask.size()) +
                                    " does not match row length " + std::to_string(row.size()));
    std::vector<double> out;
    out.reserve(mask.selected_count());
    for (std::size_t j = 0; j < row.size(); ++j)
        if (mask.test(j)) out.push_back(row[j]);
    return out;
}

}  // namespace gwofs
