// Deterministic instance generators for the named step families and for
// seeded random sweeps.  The generator is splitmix64, fixed so the same spec
// always produces the same word on every platform.
#pragma once

#include <cstdint>
#include <string>

#include "lo/gap.hpp"
#include "lo/word.hpp"

namespace lo {

// portable 64-bit mixing generator
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    // uniform-enough draw in [0, bound); bound > 0
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
    // uniform draw in [lo, hi] inclusive
    long range(long lo_v, long hi_v) {
        return lo_v + static_cast<long>(below(static_cast<std::uint64_t>(hi_v - lo_v + 1)));
    }
};

enum class InstanceKind { AllEqual, Ap, Dissociated, GapSample, RandomBounded };

struct InstanceSpec {
    InstanceKind kind = InstanceKind::Ap;
    std::size_t n = 0;
    Int value = 1;           // AllEqual step value
    Int bound = 1;           // RandomBounded magnitude bound
    Gap gap;                 // GapSample source
    std::uint64_t seed = 0;  // GapSample / RandomBounded
};

Word generate_instance(const InstanceSpec& spec, const Limits& limits = Limits{});

// convenience constructors for the named families
Word all_equal_word(std::size_t n, const Int& value);
Word ap_word(std::size_t n);           // (1, 2, ..., n)
Word dissociated_word(std::size_t n);  // (1, 2, 4, ..., 2^{n-1})

InstanceKind instance_kind_from_string(const std::string& name);
std::string instance_kind_to_string(InstanceKind kind);

} // namespace lo
