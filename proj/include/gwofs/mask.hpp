#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwofs/rng.hpp"

namespace gwofs {

struct FeatureSchema;

// Binary feature subset: bit j = 1 means feature j is kept.
class FeatureMask {
public:
    FeatureMask() = default;
    explicit FeatureMask(std::size_t d) : bits_(d, 0) {}
    explicit FeatureMask(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

    static FeatureMask all_ones(std::size_t d);
    static FeatureMask from_string(const std::string& text);  // one '0'/'1' per feature

    std::size_t size() const { return bits_.size(); }
    bool test(std::size_t j) const { return bits_[j] != 0; }
    void set(std::size_t j, bool on) { bits_[j] = on ? 1 : 0; }
    std::size_t selected_count() const;
    bool any() const { return selected_count() > 0; }

    std::vector<std::size_t> selected_indices() const;
    std::string to_string() const;
    // Names of the selected features, for subset reports.
    std::vector<std::string> selected_names(const FeatureSchema& schema) const;

    const std::vector<std::uint8_t>& bits() const { return bits_; }
    bool operator==(const FeatureMask&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

// Continuous search position; every coordinate lives in [0, 1].
struct Position {
    std::vector<double> coords;

    std::size_t size() const { return coords.size(); }
    void clamp01();
};

enum class BinarizeMode : std::uint8_t {
    Threshold,          // bit = coord >= 0.5, deterministic
    SigmoidStochastic,  // bit = (u < 1/(1+exp(-coord))) with u drawn from the stream
};

const char* to_string(BinarizeMode mode);
BinarizeMode binarize_mode_from_string(const std::string& text);

double sigmoid(double v);

FeatureMask binarize(const Position& pos);  // threshold mode
FeatureMask binarize(const Position& pos, BinarizeMode mode, Rng& rng);

// Keeps exactly the coordinates with bit = 1, preserving their order.
std::vector<double> apply_mask(const FeatureMask& mask, const std::vector<double>& row);

}  // namespace gwofs
