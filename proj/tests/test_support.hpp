#pragma once

#include "hmskit/curvesearch.hpp"

#include <filesystem>
#include <string>

namespace hmskit::testing {

// Tables are shared with the CLI's twist-search cache layout: <dir>/table_p<p>.bin.
inline InvariantTable cached_table(uint32_t p) {
    std::filesystem::path dir(HMSKIT_TABLE_DIR);
    std::filesystem::path file = dir / ("table_p" + std::to_string(p) + ".bin");
    if (std::filesystem::exists(file)) return read_table(file.string());
    InvariantTable t = build_invariant_table(p);
    std::filesystem::create_directories(dir);
    write_table(t, file.string());
    return t;
}

} // namespace hmskit::testing
