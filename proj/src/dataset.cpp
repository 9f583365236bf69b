#include "gwofs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include <zlib.h>

#include "gwofs/rng.hpp"

namespace gwofs {

namespace {

const char* const kdd_names[kdd_feature_count] = {
    "duration", "protocol_type", "service", "flag", "src_bytes", "dst_bytes", "land",
    "wrong_fragment", "urgent", "hot", "num_failed_logins", "logged_in", "num_compromised",
    "root_shell", "su_attempted", "num_root", "num_file_creations", "num_shells",
    "num_access_files", "num_outbound_cmds", "is_host_login", "is_guest_login", "count",
    "srv_count", "serror_rate", "srv_serror_rate", "rerror_rate", "srv_rerror_rate",
    "same_srv_rate", "diff_srv_rate", "srv_diff_host_rate", "dst_host_count",
    "dst_host_srv_count", "dst_host_same_srv_rate", "dst_host_diff_srv_rate",
    "dst_host_same_src_port_rate", "dst_host_srv_diff_host_rate", "dst_host_serror_rate",
    "dst_host_srv_serror_rate", "dst_host_rerror_rate", "dst_host_srv_rerror_rate"};

// protocol_type, service and flag are the symbolic columns; everything else
// (including the 0/1 indicator columns) is numeric.
constexpr std::size_t categorical_columns[] = {1, 2, 3};

bool is_categorical_column(std::size_t j) {
    return j == 1 || j == 2 || j == 3;
}

bool parse_double(const std::string& token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

double require_double(const std::string& token, const std::string& feature_name) {
    double v;
    if (!parse_double(token, v))
        throw std::runtime_error("feature '" + feature_name + "' expects a numeric value, got '" +
                                 token + "'");
    return v;
}

// Reads the whole file, inflating it first when it starts with the gzip magic.
std::string read_file_auto(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (raw.size() < 2 || static_cast<unsigned char>(raw[0]) != 0x1f ||
        static_cast<unsigned char>(raw[1]) != 0x8b)
        return raw;

    z_stream zs{};
    if (inflateInit2(&zs, 15 + 16) != Z_OK) throw std::runtime_error("zlib init failed");
    std::string out;
    zs.next_in = reinterpret_cast<Bytef*>(raw.data());
    zs.avail_in = static_cast<uInt>(raw.size());
    char chunk[1 << 16];
    int rc = Z_OK;
    do {
        zs.next_out = reinterpret_cast<Bytef*>(chunk);
        zs.avail_out = sizeof(chunk);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw std::runtime_error("gzip decompression failed for '" + path + "'");
        }
        out.append(chunk, sizeof(chunk) - zs.avail_out);
    } while (rc != Z_STREAM_END && (zs.avail_in > 0 || zs.avail_out == 0));
    inflateEnd(&zs);
    if (rc != Z_STREAM_END) throw std::runtime_error("truncated gzip stream in '" + path + "'");
    return out;
}

}  // namespace

std::size_t FeatureSchema::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    return npos;
}

const FeatureSchema& kdd_schema() {
    static const FeatureSchema schema = [] {
        FeatureSchema s;
        s.names.assign(kdd_names, kdd_names + kdd_feature_count);
        s.kinds.assign(kdd_feature_count, FeatureKind::Numeric);
        s.category_tables.resize(kdd_feature_count);
        for (std::size_t j : categorical_columns) s.kinds[j] = FeatureKind::Categorical;
        return s;
    }();
    return schema;
}

std::size_t EncodedDataset::count(ClassLabel c) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), c));
}

ParseError::ParseError(std::size_t line_number, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
      line(line_number) {}

std::vector<ConnectionRecord> parse_kdd(std::istream& in) {
    const FeatureSchema& schema = kdd_schema();
    std::vector<ConnectionRecord> records;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() < kdd_feature_count + 1)
            throw ParseError(line_number, "expected at least " +
                                              std::to_string(kdd_feature_count + 1) +
                                              " comma-separated fields, got " +
                                              std::to_string(fields.size()));

        ConnectionRecord rec;
        rec.features.assign(fields.begin(), fields.begin() + kdd_feature_count);
        rec.label = fields[kdd_feature_count];
        if (!rec.label.empty() && rec.label.back() == '.') rec.label.pop_back();
        if (rec.label.empty()) throw ParseError(line_number, "empty label");

        for (std::size_t j = 0; j < kdd_feature_count; ++j) {
            if (schema.kinds[j] != FeatureKind::Numeric) continue;
            double v;
            if (!parse_double(rec.features[j], v))
                throw ParseError(line_number, "feature '" + schema.names[j] +
                                                  "' expects a numeric value, got '" +
                                                  rec.features[j] + "'");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<ConnectionRecord> parse_kdd_file(const std::string& path) {
    std::istringstream stream(read_file_auto(path));
    return parse_kdd(stream);
}

std::string to_kdd_line(const ConnectionRecord& rec) {
    std::string out;
    for (const auto& f : rec.features) {
        out += f;
        out += ',';
    }
    out += rec.label;
    out += '.';
    return out;
}

void write_kdd_file(const std::vector<ConnectionRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    for (const auto& rec : records) {
        out << to_kdd_line(rec) << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

namespace {

ClassLabel label_of(const std::string& token) {
    return token == "normal" ? ClassLabel::Normal : ClassLabel::Attack;
}

EncodedDataset encode_impl(const std::vector<ConnectionRecord>& records, FeatureSchema schema,
                           const NormalizationBounds* fitted_bounds) {
    if (records.empty()) throw std::invalid_argument("encode: empty record list");
    const std::size_t d = schema.size();
    for (const auto& rec : records)
        if (rec.features.size() != d)
            throw std::invalid_argument("encode: record with " +
                                        std::to_string(rec.features.size()) + " features, expected " +
                                        std::to_string(d));

    const bool fitting = fitted_bounds == nullptr;

    // Token -> code lookup per categorical column. When fitting without a
    // pre-populated table, codes are assigned in first-appearance order.
    std::vector<std::map<std::string, double>> code_maps(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (schema.kinds[j] != FeatureKind::Categorical) continue;
        auto& table = schema.category_tables[j];
        if (fitting && table.empty()) {
            for (const auto& rec : records) {
                const std::string& tok = rec.features[j];
                if (code_maps[j].emplace(tok, static_cast<double>(table.size())).second)
                    table.push_back(tok);
            }
        } else {
            for (std::size_t c = 0; c < table.size(); ++c)
                code_maps[j].emplace(table[c], static_cast<double>(c));
        }
        if (table.empty())
            throw std::invalid_argument("encode: categorical feature '" + schema.names[j] +
                                        "' has an empty category table");
    }

    EncodedDataset out;
    out.rows.resize(records.size(), std::vector<double>(d));
    out.labels.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        for (std::size_t j = 0; j < d; ++j) {
            if (schema.kinds[j] == FeatureKind::Categorical) {
                auto it = code_maps[j].find(rec.features[j]);
                // Unseen token: reserved "other" bucket one past the table.
                out.rows[i][j] = it != code_maps[j].end()
                                     ? it->second
                                     : static_cast<double>(schema.category_tables[j].size());
            } else {
                out.rows[i][j] = require_double(rec.features[j], schema.names[j]);
            }
        }
        out.labels.push_back(label_of(rec.label));
    }

    NormalizationBounds bounds;
    if (fitting) {
        bounds.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            double lo = out.rows[0][j], hi = out.rows[0][j];
            for (const auto& row : out.rows) {
                lo = std::min(lo, row[j]);
                hi = std::max(hi, row[j]);
            }
            bounds[j] = {lo, hi};
        }
    } else {
        bounds = *fitted_bounds;
        if (bounds.size() != d)
            throw std::invalid_argument("encode: bounds size does not match schema");
    }

    for (auto& row : out.rows) {
        for (std::size_t j = 0; j < d; ++j) {
            auto [lo, hi] = bounds[j];
            double v = hi > lo ? (row[j] - lo) / (hi - lo) : 0.0;
            row[j] = std::clamp(v, 0.0, 1.0);
        }
    }

    out.schema = std::move(schema);
    out.bounds = std::move(bounds);
    return out;
}

}  // namespace

EncodedDataset encode(const std::vector<ConnectionRecord>& records) {
    return encode_impl(records, kdd_schema(), nullptr);
}

EncodedDataset encode(const std::vector<ConnectionRecord>& records, const FeatureSchema& schema,
                      const NormalizationBounds& bounds) {
    return encode_impl(records, schema, &bounds);
}

SplitResult stratified_split(const EncodedDataset& data, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::invalid_argument("stratified_split: fraction must lie in (0, 1)");
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < data.size(); ++i)
        by_class[static_cast<std::size_t>(data.labels[i])].push_back(i);
    for (int c = 0; c < 2; ++c)
        if (by_class[c].size() < 2)
            throw std::runtime_error(std::string("stratified_split: class ") +
                                     to_string(static_cast<ClassLabel>(c)) +
                                     " has fewer than 2 rows");

    std::vector<std::size_t> first_idx, second_idx;
    for (int c = 0; c < 2; ++c) {
        auto& idx = by_class[c];
        Rng rng = Rng::derive(seed, stream::split, static_cast<std::uint64_t>(c));
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[rng.index(i)]);
        auto take = static_cast<std::size_t>(
            std::llround(fraction * static_cast<double>(idx.size())));
        first_idx.insert(first_idx.end(), idx.begin(), idx.begin() + take);
        second_idx.insert(second_idx.end(), idx.begin() + take, idx.end());
    }
    std::sort(first_idx.begin(), first_idx.end());
    std::sort(second_idx.begin(), second_idx.end());

    auto gather = [&](const std::vector<std::size_t>& idx) {
        EncodedDataset part;
        part.schema = data.schema;
        part.bounds = data.bounds;
        part.rows.reserve(idx.size());
        part.labels.reserve(idx.size());
        for (std::size_t i : idx) {
            part.rows.push_back(data.rows[i]);
            part.labels.push_back(data.labels[i]);
        }
        return part;
    };
    SplitResult result;
    result.first = gather(first_idx);
    result.second = gather(second_idx);
    result.first_indices = std::move(first_idx);
    result.second_indices = std::move(second_idx);
    return result;
}

EncodedDataset generate_synthetic(std::size_t n, std::size_t d,
                                  const std::vector<std::size_t>& informative, double noise_sd,
                                  std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("generate_synthetic: n must be >= 4");
    if (informative.empty())
        throw std::invalid_argument("generate_synthetic: informative feature list is empty");
    for (std::size_t j : informative)
        if (j >= d) throw std::invalid_argument("generate_synthetic: informative index out of range");
    if (!(noise_sd >= 0.0) || noise_sd > 0.25)
        throw std::invalid_argument(
            "generate_synthetic: noise_sd must lie in [0, 0.25] so a 4-sigma class gap fits in "
            "[0, 1]");

    // The 4-sigma gap between the class mean vectors is split evenly across
    // the informative dimensions, so each one carries a partial signal and
    // recovering the whole set is what drives the error down.
    const double separation = std::max(0.4, 4.0 * noise_sd);
    const double per_dim = separation / std::sqrt(static_cast<double>(informative.size()));
    const double mean_normal = 0.5 - per_dim / 2.0;
    const double mean_attack = 0.5 + per_dim / 2.0;
    std::vector<bool> is_informative(d, false);
    for (std::size_t j : informative) is_informative[j] = true;

    EncodedDataset out;
    out.schema.names.reserve(d);
    for (std::size_t j = 0; j < d; ++j) out.schema.names.push_back("f" + std::to_string(j + 1));
    out.schema.kinds.assign(d, FeatureKind::Numeric);
    out.schema.category_tables.resize(d);
    out.bounds.assign(d, {0.0, 1.0});

    Rng rng = Rng::derive(seed, stream::synth);
    const std::size_t n_normal = (n + 1) / 2;
    out.rows.resize(n, std::vector<double>(d));
    out.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool normal = i < n_normal;
        out.labels.push_back(normal ? ClassLabel::Normal : ClassLabel::Attack);
        for (std::size_t j = 0; j < d; ++j) {
            double mean = is_informative[j] ? (normal ? mean_normal : mean_attack) : 0.5;
            out.rows[i][j] = std::clamp(mean + noise_sd * rng.gauss(), 0.0, 1.0);
        }
    }
    return out;
}

std::vector<ConnectionRecord> to_records(const EncodedDataset& data) {
    std::vector<ConnectionRecord> records;
    records.reserve(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        ConnectionRecord rec;
        rec.features.reserve(data.feature_count());
        for (double v : data.rows[i]) rec.features.push_back(format_double(v));
        rec.label = data.labels[i] == ClassLabel::Normal ? "normal" : "attack";
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace gwofs
