#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "gwofs/dataset.hpp"
#include "gwofs/rng.hpp"

namespace gwofs {

namespace {

// Traffic archetypes. The two flood types are blatant (saturated counters,
// characteristic protocol/flag patterns); "probe" rows mimic normal traffic
// and are only separable through a handful of low-amplitude columns, which is
// what makes feature selection matter on this data. A block of dst_host_*
// columns carries class-independent noise.
enum class Traffic { Normal, IcmpFlood, SynFlood, Probe, HttpBurst };

constexpr double normal_fraction = 0.20;
constexpr double mislabel_rate = 0.008;

const char* attack_name(Traffic t) {
    switch (t) {
        case Traffic::IcmpFlood: return "smurf";
        case Traffic::SynFlood: return "neptune";
        case Traffic::Probe: return "satan";
        default: return "back";
    }
}

std::string fmt_int(double v) {
    return std::to_string(static_cast<long long>(std::llround(v)));
}

std::string fmt_rate(double v) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%.2f", std::clamp(v, 0.0, 1.0));
    return buf;
}

const char* pick(Rng& rng, std::initializer_list<const char*> tokens,
                 std::initializer_list<double> weights) {
    double total = 0;
    for (double w : weights) total += w;
    double x = rng.uniform01() * total;
    auto tok = tokens.begin();
    for (double w : weights) {
        x -= w;
        if (x < 0) return *tok;
        ++tok;
    }
    return *(tokens.end() - 1);
}

}  // namespace

std::vector<ConnectionRecord> generate_kdd_like(std::size_t n, std::uint64_t seed) {
    Rng rng = Rng::derive(seed, stream::synth, /*variant=*/1);
    auto uni = [&](double a, double b) { return rng.uniform(a, b); };
    auto uint_in = [&](long a, long b) {
        return static_cast<double>(a) + static_cast<double>(rng.index(static_cast<std::size_t>(b - a + 1)));
    };
    auto bern = [&](double p) { return rng.uniform01() < p; };
    auto lognorm = [&](double median, double sigma) { return median * std::exp(sigma * rng.gauss()); };

    std::vector<ConnectionRecord> records;
    records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Traffic type;
        if (bern(normal_fraction)) {
            type = Traffic::Normal;
        } else {
            double x = rng.uniform01();
            type = x < 0.36   ? Traffic::IcmpFlood
                   : x < 0.68 ? Traffic::SynFlood
                   : x < 0.92 ? Traffic::Probe
                              : Traffic::HttpBurst;
        }
        const bool normal = type == Traffic::Normal;

        double duration = 0, src_bytes = 0, dst_bytes = 0;
        const char* protocol;
        const char* service;
        const char* flag = "SF";
        double logged_in = 0, hot = 0, count = 0, srv_count = 0;
        double serror = 0, rerror = 0, same_srv = 1, port_rate = 0;
        double dh_srv_count = 0, dh_same_srv = 1;

        switch (type) {
            case Traffic::Normal: {
                protocol = pick(rng, {"tcp", "udp", "icmp"}, {0.70, 0.22, 0.08});
                service = pick(rng, {"http", "smtp", "ftp_data", "domain_u", "telnet", "other"},
                               {0.45, 0.15, 0.12, 0.15, 0.05, 0.08});
                flag = pick(rng, {"SF", "REJ", "RSTR"}, {0.93, 0.04, 0.03});
                duration = bern(0.55) ? 0 : lognorm(12, 1.4);
                src_bytes = lognorm(250, 1.1);
                dst_bytes = bern(0.2) ? 0 : lognorm(1500, 1.3);
                logged_in = bern(0.60);
                hot = bern(0.70) ? 0 : uint_in(1, 4);
                count = uint_in(1, 40);
                srv_count = std::max(1.0, count * uni(0.5, 1.0));
                serror = uni(0, 0.10);
                rerror = uni(0, 0.30);
                same_srv = uni(0.70, 1.0);
                port_rate = uni(0.0, 0.75);
                dh_srv_count = uint_in(40, 255);
                dh_same_srv = uni(0.6, 1.0);
                break;
            }
            case Traffic::IcmpFlood: {
                protocol = "icmp";
                service = "ecr_i";
                src_bytes = 1032 + uint_in(-8, 8);
                count = uint_in(350, 511);
                srv_count = count;
                serror = uni(0, 0.05);
                same_srv = 1.0;
                port_rate = uni(0.9, 1.0);
                dh_srv_count = 255;
                dh_same_srv = 1.0;
                break;
            }
            case Traffic::SynFlood: {
                protocol = "tcp";
                service = bern(0.8) ? "private" : "other";
                flag = pick(rng, {"S0", "REJ", "RSTR"}, {0.82, 0.12, 0.06});
                count = uint_in(120, 511);
                srv_count = std::max(1.0, count * uni(0.02, 0.25));
                serror = uni(0.78, 1.0);
                same_srv = uni(0.0, 0.18);
                port_rate = uni(0.0, 1.0);
                dh_srv_count = uint_in(0, 25);
                dh_same_srv = uni(0.0, 0.2);
                break;
            }
            case Traffic::Probe: {
                // Shadows normal traffic on the loud columns; differs on hot,
                // rerror, same-source-port rate and a shifted service mix.
                protocol = pick(rng, {"tcp", "udp", "icmp"}, {0.62, 0.22, 0.16});
                service = pick(rng,
                               {"http", "smtp", "ftp_data", "domain_u", "telnet", "other", "private"},
                               {0.22, 0.10, 0.10, 0.10, 0.16, 0.16, 0.16});
                flag = pick(rng, {"SF", "REJ", "RSTR"}, {0.72, 0.18, 0.10});
                duration = bern(0.5) ? 0 : lognorm(10, 1.4);
                src_bytes = lognorm(180, 1.0);
                dst_bytes = bern(0.40) ? 0 : lognorm(900, 1.2);
                logged_in = bern(0.30);
                hot = bern(0.15) ? 0 : uint_in(2, 6);
                count = uint_in(1, 60);
                srv_count = std::max(1.0, count * uni(0.4, 1.0));
                serror = uni(0, 0.35);
                rerror = uni(0.25, 0.8);
                same_srv = uni(0.5, 0.95);
                port_rate = uni(0.55, 1.0);
                dh_srv_count = uint_in(20, 220);
                dh_same_srv = uni(0.5, 0.95);
                break;
            }
            case Traffic::HttpBurst: {
                protocol = "tcp";
                service = "http";
                duration = lognorm(3, 0.8);
                src_bytes = 54000 + uint_in(-2500, 2500);
                dst_bytes = lognorm(8000, 0.5);
                logged_in = 1;
                hot = uint_in(0, 2);
                count = uint_in(3, 60);
                srv_count = count;
                serror = uni(0, 0.05);
                rerror = uni(0, 0.05);
                same_srv = 1.0;
                port_rate = uni(0.0, 0.6);
                dh_srv_count = uint_in(100, 255);
                dh_same_srv = uni(0.8, 1.0);
                break;
            }
        }

        ConnectionRecord rec;
        rec.features.resize(kdd_feature_count);
        auto put = [&](std::size_t j, std::string v) { rec.features[j] = std::move(v); };

        put(0, fmt_int(duration));
        put(1, protocol);
        put(2, service);
        put(3, flag);
        put(4, fmt_int(src_bytes));
        put(5, fmt_int(dst_bytes));
        put(6, bern(0.001) ? "1" : "0");                              // land
        put(7, bern(0.004) ? fmt_int(uint_in(1, 3)) : "0");           // wrong_fragment
        put(8, bern(0.002) ? "1" : "0");                              // urgent
        put(9, fmt_int(hot));
        put(10, bern(0.03) ? fmt_int(uint_in(1, 4)) : "0");           // num_failed_logins
        put(11, fmt_int(logged_in));
        put(12, bern(0.05) ? fmt_int(uint_in(1, 20)) : "0");          // num_compromised
        put(13, bern(0.01) ? "1" : "0");                              // root_shell
        put(14, bern(0.005) ? fmt_int(uint_in(1, 2)) : "0");          // su_attempted
        put(15, bern(0.04) ? fmt_int(uint_in(1, 12)) : "0");          // num_root
        put(16, bern(0.07) ? fmt_int(uint_in(1, 8)) : "0");           // num_file_creations
        put(17, bern(0.01) ? "1" : "0");                              // num_shells
        put(18, bern(0.05) ? fmt_int(uint_in(1, 3)) : "0");           // num_access_files
        put(19, "0");                                                 // num_outbound_cmds: constant
        put(20, "0");                                                 // is_host_login
        put(21, bern(0.05) ? "1" : "0");                              // is_guest_login
        put(22, fmt_int(std::min(count, 511.0)));
        put(23, fmt_int(std::min(srv_count, 511.0)));
        put(24, fmt_rate(serror));
        put(25, fmt_rate(serror + uni(-0.05, 0.05)));
        put(26, fmt_rate(rerror));
        put(27, fmt_rate(rerror + uni(-0.05, 0.05)));
        put(28, fmt_rate(same_srv));
        put(29, fmt_rate(1.0 - same_srv + uni(-0.05, 0.05)));
        put(30, fmt_rate(uni(0, 1)));                                 // srv_diff_host_rate: noise
        put(31, fmt_int(uint_in(0, 255)));                            // dst_host_count: noise
        put(32, fmt_int(dh_srv_count));
        put(33, fmt_rate(dh_same_srv + uni(-0.05, 0.05)));
        put(34, fmt_rate(uni(0, 1)));                                 // dst_host_diff_srv_rate: noise
        put(35, fmt_rate(port_rate));
        put(36, fmt_rate(uni(0, 1)));                                 // dst_host_srv_diff_host_rate: noise
        put(37, fmt_rate(uni(0, 1)));                                 // dst_host_serror_rate: noise
        put(38, fmt_rate(uni(0, 1)));                                 // dst_host_srv_serror_rate: noise
        put(39, fmt_rate(uni(0, 1)));                                 // dst_host_rerror_rate: noise
        put(40, fmt_rate(uni(0, 1)));                                 // dst_host_srv_rerror_rate: noise

        bool mislabeled = bern(mislabel_rate);
        bool label_normal = normal != mislabeled;
        rec.label = label_normal ? "normal" : attack_name(normal ? Traffic::Probe : type);
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace gwofs
