#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gwofs {

enum class ClassLabel : std::uint8_t { Normal = 0, Attack = 1 };

inline const char* to_string(ClassLabel c) {
    return c == ClassLabel::Normal ? "Normal" : "Attack";
}

enum class FeatureKind : std::uint8_t { Numeric, Categorical };

// One raw connection record: the 41 feature fields exactly as read from the
// file, plus the label token with any trailing period already stripped.
struct ConnectionRecord {
    std::vector<std::string> features;
    std::string label;

    bool operator==(const ConnectionRecord&) const = default;
};

inline constexpr std::size_t kdd_feature_count = 41;

// Names, kinds and (after ingestion) the categorical token tables of the
// feature columns. Features are resolved by name, not by any published
// numbering, because printed orderings of this dataset disagree with the
// distributed files.
struct FeatureSchema {
    std::vector<std::string> names;
    std::vector<FeatureKind> kinds;
    std::vector<std::vector<std::string>> category_tables;  // empty for numeric features

    std::size_t size() const { return names.size(); }
    // Index of a named feature, or npos.
    std::size_t index_of(const std::string& name) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// The canonical 41-feature connection schema (duration, protocol_type, ...,
// dst_host_srv_rerror_rate). Category tables start empty and are filled by
// encoding.
const FeatureSchema& kdd_schema();

// Per-feature (min, max) pair recorded from the data the encoding was fitted on.
using NormalizationBounds = std::vector<std::pair<double, double>>;

// Numerically encoded dataset: rows hold values in [0, 1], labels are binary.
// Immutable after construction by convention; safe to share across threads.
struct EncodedDataset {
    std::vector<std::vector<double>> rows;
    std::vector<ClassLabel> labels;
    FeatureSchema schema;
    NormalizationBounds bounds;

    std::size_t size() const { return rows.size(); }
    std::size_t feature_count() const { return schema.size(); }
    std::size_t count(ClassLabel c) const;
};

struct ParseError : std::runtime_error {
    ParseError(std::size_t line_number, const std::string& what);
    std::size_t line;
};

// Parses comma-separated connection records: 41 feature fields plus a label,
// one record per non-empty line. A trailing period after the label and extra
// trailing fields (as in some derived file formats) are tolerated. Numeric
// fields are validated against the canonical schema; offending lines raise
// ParseError with the line number and feature name.
std::vector<ConnectionRecord> parse_kdd(std::istream& in);

// File variant; transparently inflates gzip input (detected by magic bytes).
std::vector<ConnectionRecord> parse_kdd_file(const std::string& path);

// Serializes a record back to its file form, label with trailing period.
std::string to_kdd_line(const ConnectionRecord& rec);
void write_kdd_file(const std::vector<ConnectionRecord>& records, const std::string& path);

// Fits an encoding on `records`: categorical tokens become ordinal codes in
// first-appearance order, then every column is min-max normalized into [0, 1]
// (constant columns encode to 0). Labels: "normal" -> Normal, anything else
// -> Attack.
EncodedDataset encode(const std::vector<ConnectionRecord>& records);

// Applies a previously fitted encoding (schema tables + bounds) to new
// records, e.g. a test file. Categorical tokens missing from the fitted
// tables map to the reserved code one past the table end; normalized values
// are clipped into [0, 1].
EncodedDataset encode(const std::vector<ConnectionRecord>& records, const FeatureSchema& schema,
                      const NormalizationBounds& bounds);

struct SplitResult {
    EncodedDataset first;
    EncodedDataset second;
    // Original row indices of each part, ascending.
    std::vector<std::size_t> first_indices;
    std::vector<std::size_t> second_indices;
};

// Deterministic stratified partition: per class, a seeded Fisher-Yates
// shuffle selects round(fraction * class_count) rows for the first part.
// Rows keep their original relative order inside each part and both parts
// share the input's schema and normalization bounds.
SplitResult stratified_split(const EncodedDataset& data, double fraction, std::uint64_t seed);

// Two Gaussian class clusters that differ only along the `informative`
// dimensions: the class mean vectors sit 4 noise_sd apart (at least 0.4),
// with the gap split evenly across the informative dimensions. Values are
// clipped to [0, 1]; classes are balanced; fully deterministic per seed.
EncodedDataset generate_synthetic(std::size_t n, std::size_t d,
                                  const std::vector<std::size_t>& informative, double noise_sd,
                                  std::uint64_t seed);

// Converts encoded rows back to records (numbers printed in shortest
// round-trip form, labels "normal"/"attack") so synthetic data can be written
// in the connection-record file format.
std::vector<ConnectionRecord> to_records(const EncodedDataset& data);

// Desk-scale stand-in for the real connection data: records in the canonical
// 41-column format with class-dependent protocol/service/flag tokens, a block
// of informative counters and rates, redundant copies, pure-noise columns, a
// constant column and a small rate of mislabeled rows. Roughly 20% of rows
// are normal. Intended for tests and demos where the published capture file
// is not at hand.
std::vector<ConnectionRecord> generate_kdd_like(std::size_t n, std::uint64_t seed);

}  // namespace gwofs
