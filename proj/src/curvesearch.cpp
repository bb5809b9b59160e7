#include "hmskit/curvesearch.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <random>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace hmskit {

namespace {

uint64_t ipow(uint64_t b, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

constexpr char kMagic[8] = {'H', 'M', 'S', 'K', 'T', 'B', 'L', '1'};

void put_u32(std::ostream &os, uint32_t v) {
    for (int i = 0; i < 4; ++i) os.put(char((v >> (8 * i)) & 0xff));
}
void put_u64(std::ostream &os, uint64_t v) {
    for (int i = 0; i < 8; ++i) os.put(char((v >> (8 * i)) & 0xff));
}
uint64_t get_le(std::istream &is, int bytes) {
    uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) {
        int c = is.get();
        if (c == EOF) throw std::runtime_error("truncated table file");
        v |= uint64_t(uint8_t(c)) << (8 * i);
    }
    return v;
}

} // namespace

uint64_t candidate_count(uint32_t p) { return 2 * ipow(p, 6) + 2 * ipow(p, 5); }

CurveFF candidate(uint32_t p, uint64_t i) {
    const uint64_t p5 = ipow(p, 5), p6 = p5 * p;
    const uint32_t n = smallest_nonresidue(p);
    CurveFF c;
    c.p = p;
    int top;
    uint64_t rest;
    if (i < 2 * p6) {
        top = 6;
        c.f[6] = i / p6 == 0 ? 1 : n;
        rest = i % p6;
    } else {
        i -= 2 * p6;
        if (i >= 2 * p5) throw std::out_of_range("candidate index");
        top = 5;
        c.f[5] = i / p5 == 0 ? 1 : n;
        rest = i % p5;
    }
    for (int k = 0; k < top; ++k) {
        c.f[k] = uint32_t(rest % p);
        rest /= p;
    }
    return c;
}

InvariantTable build_invariant_table(uint32_t p, const TableOptions &opt) {
    if (!is_odd_prime(p) || p > kMaxTablePrime) throw std::invalid_argument("table prime must be an odd prime <= 13");
    const uint64_t N = candidate_count(p);
    unsigned T = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    T = unsigned(std::min<uint64_t>(T, N));
    std::vector<std::unordered_map<uint64_t, std::array<uint8_t, 7>>> parts(T);
    auto work = [&](unsigned t) {
        FiniteField F(p, 1);
        uint64_t lo = N * t / T, hi = N * (t + 1) / T;
        auto &m = parts[t];
        for (uint64_t k = lo; k < hi; ++k) {
            uint64_t i = opt.reverse_order ? N - 1 - k : k;
            CurveFF c = candidate(p, i);
            auto ic = try_igusa_clebsch(c.sextic(F));
            if (!ic) continue;
            uint64_t key = pack_key(canonical_rep(*ic));
            if (m.count(key)) continue;
            std::array<uint8_t, 7> w;
            for (int j = 0; j < 7; ++j) w[j] = uint8_t(c.f[j]);
            m.emplace(key, w);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < T; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto &th : pool) th.join();
    InvariantTable tbl;
    tbl.p = p;
    for (auto &m : parts)
        for (auto &[k, v] : m) tbl.entries.emplace(k, v);
    return tbl;
}

std::optional<CurveFF> curve_from_ic(const IgusaClebschFF &ic, const InvariantTable &tbl) {
    if (ic.I10.is_zero()) return std::nullopt;
    if (ic.I10.p != tbl.p) throw std::invalid_argument("invariants and table over different primes");
    auto it = tbl.entries.find(pack_key(canonical_rep(ic)));
    if (it == tbl.entries.end()) return std::nullopt;
    CurveFF c;
    c.p = tbl.p;
    for (int j = 0; j < 7; ++j) c.f[j] = it->second[j];
    return c;
}

void write_table(const InvariantTable &tbl, const std::string &path) {
    // Written to a sibling temporary and renamed, so concurrent readers never see a partial file.
    std::string tmp = path + ".tmp" + std::to_string(std::random_device{}());
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + path);
        std::vector<uint64_t> keys;
        for (const auto &[k, v] : tbl.entries) keys.push_back(k);
        std::sort(keys.begin(), keys.end());
        os.write(kMagic, 8);
        put_u32(os, tbl.p);
        put_u64(os, keys.size());
        for (uint64_t k : keys) {
            for (int s : {48, 32, 16, 0}) os.put(char((k >> s) & 0xff));
            const auto &w = tbl.entries.at(k);
            os.write(reinterpret_cast<const char *>(w.data()), 7);
        }
        if (!os) throw std::runtime_error("write failed for " + path);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw std::runtime_error("cannot write " + path);
    }
}

InvariantTable read_table(const std::string &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("not an invariant table: " + path);
    InvariantTable tbl;
    tbl.p = uint32_t(get_le(is, 4));
    if (!is_odd_prime(tbl.p) || tbl.p > kMaxTablePrime) throw std::runtime_error("bad prime in table header");
    uint64_t n = get_le(is, 8);
    for (uint64_t r = 0; r < n; ++r) {
        uint64_t key = 0;
        for (int s : {48, 32, 16, 0}) key |= get_le(is, 1) << s;
        std::array<uint8_t, 7> w;
        for (auto &x : w) x = uint8_t(get_le(is, 1));
        tbl.entries.emplace(key, w);
    }
    return tbl;
}

} // namespace hmskit
