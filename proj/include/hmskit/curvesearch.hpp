#pragma once

#include "hmskit/igusa.hpp"
#include "hmskit/rmdetect.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>

namespace hmskit {

struct InvariantTable {
    uint32_t p = 0;
    // pack_key(canonical_rep(invariants)) -> coefficients f0..f6 of the first witness.
    std::unordered_map<uint64_t, std::array<uint8_t, 7>> entries;
    size_t size() const { return entries.size(); }
};

inline constexpr uint32_t kMaxTablePrime = 13;

struct TableOptions {
    bool reverse_order = false;
    unsigned threads = 0; // 0: hardware concurrency
};

// Sextics with f6 in {1, n} and quintics with f5 in {1, n}; first witness per key.
InvariantTable build_invariant_table(uint32_t p, const TableOptions &opt = {});
uint64_t candidate_count(uint32_t p);
// i-th candidate in the fixed enumeration order.
CurveFF candidate(uint32_t p, uint64_t i);

std::optional<CurveFF> curve_from_ic(const IgusaClebschFF &ic, const InvariantTable &tbl);

// Little-endian layout: "HMSKTBL1", u32 p, u64 count, then count records of
// 4 canonical coordinate bytes (I2, I4, I6, I10) and 7 coefficient bytes (f0..f6),
// sorted by key.
void write_table(const InvariantTable &tbl, const std::string &path);
InvariantTable read_table(const std::string &path);

} // namespace hmskit
