#include "lo/instances.hpp"

#include "lo/errors.hpp"

namespace lo {

Word all_equal_word(std::size_t n, const Int& value) {
    Word w;
    w.entries.assign(n, value);
    return w;
}

Word ap_word(std::size_t n) {
    Word w;
    w.entries.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) w.entries.emplace_back(static_cast<long>(i));
    return w;
}

Word dissociated_word(std::size_t n) {
    Word w;
    w.entries.reserve(n);
    Int p = 1;
    for (std::size_t i = 0; i < n; ++i) {
        w.entries.push_back(p);
        p *= 2;
    }
    return w;
}

Word generate_instance(const InstanceSpec& spec, const Limits& limits) {
    switch (spec.kind) {
        case InstanceKind::AllEqual:
            return all_equal_word(spec.n, spec.value);
        case InstanceKind::Ap:
            return ap_word(spec.n);
        case InstanceKind::Dissociated:
            return dissociated_word(spec.n);
        case InstanceKind::GapSample: {
            ElementSet e = enumerate_gap(spec.gap, limits);
            SplitMix64 rng(spec.seed);
            Word w;
            w.entries.reserve(spec.n);
            for (std::size_t i = 0; i < spec.n; ++i)
                w.entries.push_back(e.elems[rng.below(e.size())]);
            return w;
        }
        case InstanceKind::RandomBounded: {
            if (spec.bound < 1) throw DomainError("random instance needs bound >= 1");
            if (!spec.bound.fits_slong_p())
                throw DomainError("random instance bound too large");
            long b = spec.bound.get_si();
            SplitMix64 rng(spec.seed);
            Word w;
            w.entries.reserve(spec.n);
            for (std::size_t i = 0; i < spec.n; ++i) {
                long r = rng.range(-b, b - 1);
                if (r >= 0) ++r;  // skip zero: values in [-b,-1] u [1,b]
                w.entries.emplace_back(r);
            }
            return w;
        }
    }
    throw DomainError("unknown instance kind");
}

InstanceKind instance_kind_from_string(const std::string& name) {
    if (name == "all-equal" || name == "all_equal") return InstanceKind::AllEqual;
    if (name == "ap") return InstanceKind::Ap;
    if (name == "dissociated") return InstanceKind::Dissociated;
    if (name == "gap-sample" || name == "gap_sample") return InstanceKind::GapSample;
    if (name == "random" || name == "random_bounded") return InstanceKind::RandomBounded;
    throw DomainError("unknown instance kind: " + name);
}

std::string instance_kind_to_string(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::AllEqual: return "all_equal";
        case InstanceKind::Ap: return "ap";
        case InstanceKind::Dissociated: return "dissociated";
        case InstanceKind::GapSample: return "gap_sample";
        case InstanceKind::RandomBounded: return "random_bounded";
    }
    return "?";
}

} // namespace lo
