#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "majscope/accel.hpp"
#include "majscope/arrayfile.hpp"
#include "majscope/encoding.hpp"
#include "majscope/lbdemo.hpp"
#include "majscope/oracle.hpp"

namespace {

using namespace majscope;

constexpr int kExitParse = 2;
constexpr int kExitBadTau = 3;
constexpr int kExitIo = 4;
constexpr int kExitRange = 5;
constexpr int kExitTauPrime = 6;

struct Exit {
    int code;
    std::string message;
};

Rational parse_tau(const std::string& s) {
    Rational r;
    try {
        r = Rational::parse(s);
    } catch (const std::exception&) {
        throw Exit{kExitParse, "threshold must be NUM/DEN: " + s};
    }
    if (!r.valid_threshold()) throw Exit{kExitBadTau, "threshold must satisfy 0 < NUM/DEN < 1"};
    return r;
}

std::pair<uint64_t, uint64_t> parse_range(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw Exit{kExitParse, "range must be I:J"};
    try {
        return {std::stoull(s.substr(0, colon)), std::stoull(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw Exit{kExitParse, "range must be I:J"};
    }
}

double log1ptau(uint64_t n, const Rational& tau) {
    return std::log(double(n)) / std::log1p(double(tau.num) / double(tau.den));
}

void print_space_report(const MajorityEncoding& e, const PieceIndex* accel, size_t stream_bytes,
                        bool gamma_ids) {
    uint32_t max_level = 0;
    for (const auto& p : e.pairs()) max_level = std::max(max_level, p.level);
    std::printf("n=%" PRIu64 " tau=%s pairs=%zu\n", e.size(), e.tau().str().c_str(),
                e.pairs().size());
    if (!e.pairs().empty()) {
        for (uint32_t l = 0; l <= max_level; ++l) {
            uint64_t pairs = 0, runs = 0, cover_bits = 0, occ_bits = 0;
            for (const auto& p : e.pairs()) {
                if (p.level != l) continue;
                ++pairs;
                runs += p.cover_runs();
                cover_bits += std::visit([](const auto& c) { return c.bit_size(); }, p.cover);
                occ_bits += p.occ.bit_size();
            }
            if (pairs)
                std::printf("level %u: pairs=%" PRIu64 " runs=%" PRIu64 " cover_bits=%" PRIu64
                            " occ_bits=%" PRIu64 "\n",
                            l, pairs, runs, cover_bits, occ_bits);
        }
    }
    uint64_t m_ones = 0;
    for (const auto& p : e.pairs()) m_ones += p.occ.ones();
    std::printf("m_ones_total=%" PRIu64 "\n", m_ones);
    uint64_t core = e.bit_size();
    std::printf("core_bits=%" PRIu64 " bits_per_n=%.2f\n", core,
                e.size() ? double(core) / double(e.size()) : 0.0);
    if (accel)
        std::printf("accel_bits=%" PRIu64 "\n", accel->bit_size(gamma_ids));
    if (e.size()) {
        std::printf("pair_bound=%.2f\n", 2.0 * log1ptau(e.size(), e.tau()) + 1.0);
    }
    std::printf("stream_bytes=%zu\n", stream_bytes);
}

int cmd_build(const std::string& input, const std::string& tau_str, const std::string& out,
              bool accel, bool multi, bool gamma_ids, bool numeric) {
    Rational tau = parse_tau(tau_str);
    ArrayFile arr;
    try {
        arr = load_array(input, numeric);
    } catch (const std::exception& ex) {
        throw Exit{kExitIo, ex.what()};
    }

    std::vector<uint8_t> bytes;
    if (multi) {
        MultiEncoding me = MultiEncoding::build(arr.values, tau);
        bytes = me.serialize();
        std::printf("n=%zu tau=%s structures=%zu\n", arr.values.size(), tau.str().c_str(),
                    me.structures().size());
        for (const auto& e : me.structures())
            std::printf("tau''=%s pairs=%zu core_bits=%" PRIu64 "\n", e.tau().str().c_str(),
                        e.pairs().size(), e.bit_size());
        std::printf("stream_bytes=%zu\n", bytes.size());
    } else {
        CoalescedLayout layout;
        MajorityEncoding e = MajorityEncoding::build_with_layout(arr.values, tau, layout);
        if (accel) {
            PieceIndex pi = PieceIndex::build(e, layout);
            bytes = serialize_with_accel(e, pi, gamma_ids);
            print_space_report(e, &pi, bytes.size(), gamma_ids);
        } else {
            bytes = e.serialize();
            print_space_report(e, nullptr, bytes.size(), false);
        }
    }
    try {
        write_file(out, bytes);
    } catch (const std::exception& ex) {
        throw Exit{kExitIo, ex.what()};
    }
    return 0;
}

int cmd_query(const std::string& index, const std::string& range_str,
              const std::string& tp_str, bool all_positions, bool no_accel) {
    Rational tp = parse_tau(tp_str);
    auto [i, j] = parse_range(range_str);

    std::vector<uint8_t> bytes;
    try {
        bytes = read_file(index);
    } catch (const std::exception& ex) {
        throw Exit{kExitIo, ex.what()};
    }

    const MajorityEncoding* enc = nullptr;
    LoadedEncoding loaded;
    MultiEncoding multi;
    try {
        if (bytes.size() >= 4 && std::memcmp(bytes.data(), "RMJM", 4) == 0) {
            multi = MultiEncoding::deserialize(bytes);
            if (tp < multi.tau())
                throw Exit{kExitTauPrime, "tau' below the index's build threshold"};
            enc = &multi.structure_for(tp);
        } else {
            loaded = load_encoding(bytes);
            enc = &loaded.encoding;
        }
    } catch (const format_error& ex) {
        throw Exit{kExitIo, ex.what()};
    }

    if (i < 1 || j > enc->size() || i > j) throw Exit{kExitRange, "range out of bounds"};
    if (tp < enc->tau()) throw Exit{kExitTauPrime, "tau' below the index's build threshold"};

    QueryAnswer ans = loaded.accel && !no_accel ? query_fast(*enc, *loaded.accel, i, j, tp)
                                                : enc->query(i, j, tp);
    for (const Hit& h : ans.hits) {
        if (all_positions) {
            std::string positions;
            for (uint64_t t = 1; t <= h.count; ++t) {
                if (t > 1) positions += ',';
                positions += std::to_string(enc->report(h, t));
            }
            std::printf("pos=%s count=%" PRIu64 "\n", positions.c_str(), h.count);
        } else {
            std::printf("pos=%" PRIu64 " count=%" PRIu64 "\n", enc->report(h, 1), h.count);
        }
    }
    return 0;
}

int cmd_stats(const std::string& index) {
    std::vector<uint8_t> bytes;
    try {
        bytes = read_file(index);
    } catch (const std::exception& ex) {
        throw Exit{kExitIo, ex.what()};
    }
    try {
        if (bytes.size() >= 4 && std::memcmp(bytes.data(), "RMJM", 4) == 0) {
            MultiEncoding me = MultiEncoding::deserialize(bytes);
            std::printf("bundle tau=%s structures=%zu\n", me.tau().str().c_str(),
                        me.structures().size());
            for (const auto& e : me.structures()) print_space_report(e, nullptr, 0, false);
        } else {
            LoadedEncoding loaded = load_encoding(bytes);
            print_space_report(loaded.encoding, loaded.accel ? &*loaded.accel : nullptr,
                               bytes.size(), false);
        }
    } catch (const format_error& ex) {
        throw Exit{kExitIo, ex.what()};
    }
    return 0;
}

int cmd_bench(const std::string& input, const std::string& tau_str, uint64_t queries,
              bool accel, uint64_t seed, unsigned threads, bool no_timing, bool numeric) {
    Rational tau = parse_tau(tau_str);
    ArrayFile arr;
    try {
        arr = load_array(input, numeric);
    } catch (const std::exception& ex) {
        throw Exit{kExitIo, ex.what()};
    }
    if (arr.values.empty()) throw Exit{kExitIo, "empty input array"};

    CoalescedLayout layout;
    MajorityEncoding e = MajorityEncoding::build_with_layout(arr.values, tau, layout);
    PieceIndex pi;
    if (accel) pi = PieceIndex::build(e, layout);

    uint64_t n = e.size();
    struct Row {
        uint64_t len, probes, hits, ns;
    };
    std::vector<Row> rows(queries);

    auto run = [&](uint64_t q) {
        // per-query generator keyed on seed and index: rows do not depend on
        // the thread layout
        std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + q);
        uint64_t i = rng() % n + 1;
        uint64_t j = i + rng() % (n - i + 1);
        auto t0 = std::chrono::steady_clock::now();
        QueryAnswer ans = accel ? query_fast(e, pi, i, j, e.tau()) : e.query(i, j, e.tau());
        auto t1 = std::chrono::steady_clock::now();
        uint64_t ns =
            no_timing
                ? 0
                : uint64_t(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
        rows[q] = {j - i + 1, ans.probes, ans.hits.size(), ns};
    };

    if (threads <= 1) {
        for (uint64_t q = 0; q < queries; ++q) run(q);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (uint64_t q = t; q < queries; q += threads) run(q);
            });
        for (auto& th : pool) th.join();
    }

    std::printf("query_len,probes,hits,ns_per_query\n");
    for (const Row& r : rows)
        std::printf("%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 "\n", r.len, r.probes, r.hits,
                    r.ns);
    return 0;
}

int cmd_lbdemo(const std::string& perm_str, uint64_t k, uint64_t m, uint64_t seed,
               bool use_encoding) {
    std::vector<std::vector<std::int64_t>> perms;
    if (!perm_str.empty()) {
        std::istringstream in(perm_str);
        std::vector<std::int64_t> p;
        std::int64_t v;
        while (in >> v) p.push_back(v);
        if (p.empty() || p.size() % 3 != 0)
            throw Exit{kExitParse, "permutation size must be a positive multiple of 3"};
        perms.push_back(std::move(p));
    } else {
        if (k < 1 || m < 1) throw Exit{kExitParse, "need --perm or both --k and --m"};
        std::mt19937_64 rng(seed);
        for (uint64_t t = 0; t < m; ++t) {
            std::vector<std::int64_t> p(3 * k);
            for (uint64_t v = 0; v < 3 * k; ++v) p[v] = std::int64_t(v + 1);
            std::shuffle(p.begin(), p.end(), rng);
            perms.push_back(std::move(p));
        }
    }

    PermutationCode code;
    try {
        code = encode_perms(perms);
    } catch (const std::exception& ex) {
        throw Exit{kExitParse, ex.what()};
    }

    uint64_t issued = 0;
    CountingFn counter;
    MajorityEncoding enc;
    if (use_encoding) {
        enc = MajorityEncoding::build(code.array, code.tau);
        counter = [&](uint64_t lo, uint64_t hi) {
            ++issued;
            return uint64_t(enc.query(lo, hi, code.tau).hits.size());
        };
    } else {
        counter = [&](uint64_t lo, uint64_t hi) {
            ++issued;
            return oracle_count(code.array, lo, hi, code.tau);
        };
    }

    auto recovered = decode_perms(code.k, code.m, counter);
    bool ok = recovered == perms;
    for (const auto& p : recovered) {
        std::string line;
        for (std::int64_t v : p) {
            if (!line.empty()) line += ' ';
            line += std::to_string(v);
        }
        std::printf("recovered %s\n", line.c_str());
    }
    std::printf("n=%zu tau=%s queries=%" PRIu64 " roundtrip=%s\n", code.array.size(),
                code.tau.str().c_str(), issued, ok ? "ok" : "MISMATCH");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"space-optimal encodings for range majority queries"};
    app.require_subcommand(1);

    std::string input, out, index, tau_str, tp_str, range_str, perm_str;
    bool accel = false, multi = false, gamma_ids = false, numeric = false;
    bool all_positions = false, no_accel = false, no_timing = false;
    uint64_t queries = 1000, seed = 0, k = 0, m = 0;
    unsigned threads = 1;
    bool use_encoding = false;

    auto* b = app.add_subcommand("build", "build an index from an array file");
    b->add_option("--input", input)->required();
    b->add_option("--tau", tau_str)->required();
    b->add_option("--out", out)->required();
    b->add_flag("--accel", accel);
    auto* multi_opt = b->add_flag("--multi", multi);
    b->add_flag("--gamma-ids", gamma_ids);
    b->add_flag("--numeric", numeric);
    multi_opt->excludes("--accel");

    auto* q = app.add_subcommand("query", "run one majority query against an index");
    q->add_option("--index", index)->required();
    q->add_option("--range", range_str)->required();
    q->add_option("--tau-prime", tp_str)->required();
    q->add_flag("--all-positions", all_positions);
    q->add_flag("--no-accel", no_accel);

    auto* s = app.add_subcommand("stats", "print structure statistics of an index");
    s->add_option("--index", index)->required();

    auto* be = app.add_subcommand("bench", "run random queries, emit CSV");
    be->add_option("--input", input)->required();
    be->add_option("--tau", tau_str)->required();
    be->add_option("--queries", queries);
    be->add_flag("--accel", accel);
    be->add_option("--seed", seed);
    be->add_option("--threads", threads);
    be->add_flag("--no-timing", no_timing);
    be->add_flag("--numeric", numeric);

    auto* lb = app.add_subcommand("lbdemo", "permutation recovery through counting queries");
    lb->add_option("--perm", perm_str);
    lb->add_option("--k", k);
    lb->add_option("--m", m);
    lb->add_option("--seed", seed);
    lb->add_flag("--use-encoding", use_encoding);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (b->parsed()) return cmd_build(input, tau_str, out, accel, multi, gamma_ids, numeric);
        if (q->parsed()) return cmd_query(index, range_str, tp_str, all_positions, no_accel);
        if (s->parsed()) return cmd_stats(index);
        if (be->parsed())
            return cmd_bench(input, tau_str, queries, accel, seed, threads, no_timing, numeric);
        if (lb->parsed()) return cmd_lbdemo(perm_str, k, m, seed, use_encoding);
    } catch (const Exit& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
