#pragma once

#include <cstdint>

namespace lo {

// Resource guards.  Every enumeration- or convolution-shaped operation takes
// one of these; the defaults admit arithmetic-progression instances with
// n around 10^3 while keeping runaway inputs from exhausting memory.
struct Limits {
    std::uint64_t support_cap = 10'000'000;  // distinct points in a walk distribution
    std::uint64_t enum_guard = 10'000'000;   // points in a GAP / set enumeration
    std::uint64_t pair_guard = 400'000'000;  // |A|*|B| in set arithmetic
    unsigned rank_cap = 4;                   // max rank for enumeration-based ops
    unsigned embed_rank_cap = 3;             // max input rank for proper embedding
};

} // namespace lo
