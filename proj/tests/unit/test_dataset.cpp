#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <zlib.h>

#include "gwofs/dataset.hpp"
#include "gwofs/knn.hpp"
#include "gwofs/rng.hpp"

using namespace gwofs;

namespace {

// A valid 41-field line: categorical tokens in columns 2-4, numbers elsewhere.
std::string make_line(const std::string& label, double scale = 1.0) {
    std::ostringstream out;
    for (std::size_t j = 0; j < kdd_feature_count; ++j) {
        if (j == 1)
            out << "tcp";
        else if (j == 2)
            out << "http";
        else if (j == 3)
            out << "SF";
        else
            out << scale * static_cast<double>(j);
        out << ',';
    }
    out << label;
    return out.str();
}

std::vector<ConnectionRecord> parse_text(const std::string& text) {
    std::istringstream in(text);
    return parse_kdd(in);
}

ConnectionRecord numeric_record(const std::vector<double>& values, const std::string& label) {
    // Pads with zeros to 41 fields; values fill the leading numeric columns
    // after the three categorical ones.
    ConnectionRecord rec;
    rec.features.assign(kdd_feature_count, "0");
    rec.features[1] = "tcp";
    rec.features[2] = "http";
    rec.features[3] = "SF";
    std::size_t col = 4;
    for (double v : values) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", v);
        rec.features[col++] = buf;
    }
    rec.label = label;
    return rec;
}

}  // namespace

TEST_CASE("parse_kdd basic forms") {
    auto records = parse_text(make_line("normal.") + "\n");
    REQUIRE(records.size() == 1);
    CHECK(records[0].label == "normal");
    CHECK(records[0].features.size() == kdd_feature_count);
    CHECK(records[0].features[0] == "0");

    CHECK(parse_text("").empty());
    CHECK(parse_text("\n  \n\n").empty());

    // label without trailing period, CRLF line ending
    auto rec2 = parse_text(make_line("smurf") + "\r\n");
    CHECK(rec2[0].label == "smurf");

    // extra trailing fields (derived formats carry a difficulty column)
    auto rec3 = parse_text(make_line("neptune.") + ",21\n");
    CHECK(rec3[0].label == "neptune");
}

TEST_CASE("parse_kdd error diagnostics") {
    CHECK_THROWS_AS(parse_text("1,2,3\n"), ParseError);
    try {
        parse_text(make_line("normal.") + "\n1,2,3\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }

    // non-numeric token in a numeric column names the feature
    std::string bad = make_line("normal.");
    auto pos = bad.find("4,5,");  // src_bytes=4 in the constructed line
    bad.replace(pos, 1, "oops");
    try {
        parse_text(bad + "\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("src_bytes") != std::string::npos);
    }

    CHECK_THROWS(parse_text(make_line("") + "\n"));  // empty label
}

TEST_CASE("parse/serialize round trip") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        ConnectionRecord rec;
        for (std::size_t j = 0; j < kdd_feature_count; ++j) {
            if (j == 1 || j == 2 || j == 3) {
                rec.features.push_back("tok" + std::to_string(rng.index(5)));
            } else {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.4g", rng.uniform(0, 1e4));
                rec.features.push_back(buf);
            }
        }
        rec.label = trial % 2 ? "normal" : "teardrop";
        auto back = parse_text(to_kdd_line(rec) + "\n");
        REQUIRE(back.size() == 1);
        CHECK(back[0] == rec);
    }
}

TEST_CASE("parse_kdd_file reads gzip transparently") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "gwofs_gz_test";
    fs::create_directories(dir);
    std::string path = (dir / "tiny.csv.gz").string();
    gzFile gz = gzopen(path.c_str(), "wb");
    REQUIRE(gz != nullptr);
    std::string content = make_line("normal.") + "\n" + make_line("smurf.") + "\n";
    gzwrite(gz, content.data(), static_cast<unsigned>(content.size()));
    gzclose(gz);

    auto records = parse_kdd_file(path);
    REQUIRE(records.size() == 2);
    CHECK(records[0].label == "normal");
    CHECK(records[1].label == "smurf");
}

TEST_CASE("encode min-max endpoints and constant columns") {
    std::vector<ConnectionRecord> records = {
        numeric_record({0, 7}, "normal"),
        numeric_record({5, 7}, "smurf"),
        numeric_record({10, 7}, "normal"),
    };
    EncodedDataset data = encode(records);
    // column 4 holds {0,5,10}; column 5 holds {7,7,7}
    CHECK(data.rows[0][4] == doctest::Approx(0.0));
    CHECK(data.rows[1][4] == doctest::Approx(0.5));
    CHECK(data.rows[2][4] == doctest::Approx(1.0));
    for (int i = 0; i < 3; ++i) CHECK(data.rows[i][5] == 0.0);

    CHECK(data.labels == std::vector<ClassLabel>{ClassLabel::Normal, ClassLabel::Attack,
                                                 ClassLabel::Normal});
    CHECK_THROWS(encode({}));
}

TEST_CASE("encode categorical tables and the unseen-token bucket") {
    std::vector<ConnectionRecord> records = {
        numeric_record({1}, "normal"),
        numeric_record({2}, "smurf"),
        numeric_record({3}, "normal"),
    };
    records[0].features[1] = "tcp";
    records[1].features[1] = "udp";
    records[2].features[1] = "tcp";
    EncodedDataset train = encode(records);
    std::size_t proto = train.schema.index_of("protocol_type");
    REQUIRE(proto == 1);
    CHECK(train.schema.category_tables[1] == std::vector<std::string>{"tcp", "udp"});
    CHECK(train.rows[0][1] == 0.0);  // code 0 of {0,1}
    CHECK(train.rows[1][1] == 1.0);

    // Applying the fitted encoding: unseen token goes to the bucket one past
    // the table and is then clipped into [0,1] by the training bounds.
    auto test_records = records;
    test_records[0].features[1] = "icmp";
    EncodedDataset test = encode(test_records, train.schema, train.bounds);
    CHECK(test.rows[0][1] == 1.0);  // code 2 clipped by bounds (0,1) -> 1
    CHECK(test.rows[1][1] == 1.0);
    for (const auto& row : test.rows)
        for (double v : row) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
}

TEST_CASE("encode is deterministic") {
    auto records = generate_kdd_like(200, 5);
    EncodedDataset a = encode(records);
    EncodedDataset b = encode(records);
    CHECK(a.rows == b.rows);
    CHECK(a.labels == b.labels);
    CHECK(a.bounds == b.bounds);
}

TEST_CASE("stratified_split exact counts") {
    std::vector<ConnectionRecord> records;
    for (int i = 0; i < 50; ++i) records.push_back(numeric_record({double(i)}, "normal"));
    for (int i = 0; i < 50; ++i) records.push_back(numeric_record({double(i)}, "smurf"));
    EncodedDataset data = encode(records);

    SplitResult split = stratified_split(data, 0.7, 42);
    CHECK(split.first.size() == 70);
    CHECK(split.second.size() == 30);
    CHECK(split.first.count(ClassLabel::Normal) == 35);
    CHECK(split.first.count(ClassLabel::Attack) == 35);
    CHECK(split.second.count(ClassLabel::Normal) == 15);
    CHECK(split.second.count(ClassLabel::Attack) == 15);

    // determinism
    SplitResult again = stratified_split(data, 0.7, 42);
    CHECK(split.first_indices == again.first_indices);
    CHECK(split.first.rows == again.first.rows);

    // parts share the parent bounds
    CHECK(split.first.bounds == data.bounds);
    CHECK(split.second.bounds == split.first.bounds);
}

TEST_CASE("stratified_split matches the documented shuffle") {
    // 10 rows, 6 normal / 4 attack, fraction 0.5 -> parts of 3+2 and 3+2.
    std::vector<ConnectionRecord> records;
    for (int i = 0; i < 6; ++i) records.push_back(numeric_record({double(i)}, "normal"));
    for (int i = 0; i < 4; ++i) records.push_back(numeric_record({double(i)}, "portsweep"));
    EncodedDataset data = encode(records);

    const std::uint64_t seed = 7;
    SplitResult split = stratified_split(data, 0.5, seed);
    CHECK(split.first.count(ClassLabel::Normal) == 3);
    CHECK(split.first.count(ClassLabel::Attack) == 2);
    CHECK(split.second.count(ClassLabel::Normal) == 3);
    CHECK(split.second.count(ClassLabel::Attack) == 2);

    // Re-enact the documented procedure: per class, Fisher-Yates over the
    // class's row indices with the derived stream, first round(f*n) rows go
    // to the first part, parts sorted ascending.
    std::vector<std::size_t> expect_first, expect_second;
    std::vector<std::vector<std::size_t>> by_class = {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9}};
    for (int c = 0; c < 2; ++c) {
        auto idx = by_class[c];
        Rng rng = Rng::derive(seed, stream::split, static_cast<std::uint64_t>(c));
        for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng.index(i)]);
        std::size_t take = static_cast<std::size_t>(std::llround(0.5 * double(idx.size())));
        expect_first.insert(expect_first.end(), idx.begin(), idx.begin() + take);
        expect_second.insert(expect_second.end(), idx.begin() + take, idx.end());
    }
    std::sort(expect_first.begin(), expect_first.end());
    std::sort(expect_second.begin(), expect_second.end());
    CHECK(split.first_indices == expect_first);
    CHECK(split.second_indices == expect_second);
}

TEST_CASE("stratified_split properties over random data") {
    auto records = generate_kdd_like(333, 17);
    EncodedDataset data = encode(records);
    for (double fraction : {0.3, 0.5, 0.8}) {
        SplitResult split = stratified_split(data, fraction, 3);
        CHECK(split.first.size() + split.second.size() == data.size());
        for (ClassLabel c : {ClassLabel::Normal, ClassLabel::Attack}) {
            double expected = fraction * static_cast<double>(data.count(c));
            CHECK(std::abs(static_cast<double>(split.first.count(c)) - expected) <= 1.0);
        }
        // union of parts == input (by indices)
        std::vector<std::size_t> all = split.first_indices;
        all.insert(all.end(), split.second_indices.begin(), split.second_indices.end());
        std::sort(all.begin(), all.end());
        for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i] == i);
    }
}

TEST_CASE("stratified_split rejects starved classes") {
    std::vector<ConnectionRecord> records = {numeric_record({1}, "normal"),
                                             numeric_record({2}, "normal"),
                                             numeric_record({3}, "normal")};
    CHECK_THROWS(stratified_split(encode(records), 0.5, 1));  // no attack rows
    records.push_back(numeric_record({4}, "smurf"));
    CHECK_THROWS(stratified_split(encode(records), 0.5, 1));  // one attack row
}

TEST_CASE("generate_synthetic separates classes along informative dimensions") {
    EncodedDataset data = generate_synthetic(60, 8, {1, 4}, 1e-9, 3);
    REQUIRE(data.size() == 60);
    CHECK(data.count(ClassLabel::Normal) == 30);

    // noise ~ 0: leave-one-out 1-NN labels every point correctly
    FeatureMask all = FeatureMask::all_ones(8);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        EncodedDataset rest = data;
        rest.rows.erase(rest.rows.begin() + static_cast<std::ptrdiff_t>(i));
        rest.labels.erase(rest.labels.begin() + static_cast<std::ptrdiff_t>(i));
        KnnModel model = KnnModel::fit(rest, all, 1);
        if (model.predict(data.rows[i]) == data.labels[i]) ++correct;
    }
    CHECK(correct == data.size());
}

TEST_CASE("generate_synthetic carries no signal outside informative dimensions") {
    EncodedDataset data = generate_synthetic(400, 10, {0, 1}, 0.1, 11);
    SplitResult split = stratified_split(data, 0.5, 2);
    FeatureMask mask(10);
    for (std::size_t j = 2; j < 10; ++j) mask.set(j, true);  // informative masked OUT

    KnnModel model = KnnModel::fit(split.first, mask, 5);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < split.second.size(); ++i)
        if (model.predict(apply_mask(mask, split.second.rows[i])) == split.second.labels[i])
            ++correct;
    double acc = static_cast<double>(correct) / static_cast<double>(split.second.size());
    CHECK(acc == doctest::Approx(0.5).epsilon(0.2));  // 0.5 +/- 0.1
}

TEST_CASE("generate_synthetic determinism and validation") {
    EncodedDataset a = generate_synthetic(50, 6, {0}, 0.05, 9);
    EncodedDataset b = generate_synthetic(50, 6, {0}, 0.05, 9);
    CHECK(a.rows == b.rows);
    CHECK(a.labels == b.labels);

    CHECK_THROWS(generate_synthetic(50, 6, {}, 0.05, 9));
    CHECK_THROWS(generate_synthetic(2, 6, {0}, 0.05, 9));
    CHECK_THROWS(generate_synthetic(50, 6, {7}, 0.05, 9));
    CHECK_THROWS(generate_synthetic(50, 6, {0}, 0.3, 9));

    for (const auto& row : a.rows)
        for (double v : row) CHECK((v >= 0.0 && v <= 1.0));
}

TEST_CASE("synthetic data serializes in the record file format") {
    EncodedDataset data = generate_synthetic(20, 5, {0}, 0.1, 4);
    auto records = to_records(data);
    REQUIRE(records.size() == 20);
    CHECK(records.front().label == "normal");
    CHECK(records.back().label == "attack");
    std::string line = to_kdd_line(records[0]);
    CHECK(line.back() == '.');
}
