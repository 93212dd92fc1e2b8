#include "lo/walk.hpp"

#include <algorithm>
#include <map>

#include "lo/errors.hpp"

namespace lo {

namespace {

Int count_in(const std::vector<std::pair<Int, Int>>& counts, const Int& x) {
    auto it = std::lower_bound(counts.begin(), counts.end(), x,
                               [](const auto& e, const Int& v) { return e.first < v; });
    if (it != counts.end() && it->first == x) return it->second;
    return 0;
}

bool counts_symmetric(const std::vector<std::pair<Int, Int>>& counts) {
    std::size_t n = counts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& lo_e = counts[i];
        const auto& hi_e = counts[n - 1 - i];
        if (lo_e.first != -hi_e.first || lo_e.second != hi_e.second) return false;
    }
    return true;
}

// One convolution step with a lazy +-step of magnitude |v|.  The input is
// sorted and so are the three shifted copies; a three-pointer merge keeps the
// whole computation linear in the support.
std::vector<std::pair<Int, Int>> convolve_lazy_step(
    const std::vector<std::pair<Int, Int>>& in, const Int& v,
    const Int& side_weight, const Int& stay_weight) {
    Int a = abs_int(v);
    if (a == 0) {
        // all three outcomes collapse onto the same point
        Int w = stay_weight + 2 * side_weight;
        std::vector<std::pair<Int, Int>> out = in;
        for (auto& e : out) e.second *= w;
        return out;
    }

    struct Stream {
        Int shift;
        Int weight;
        std::size_t pos;
        Int key;  // in[pos].first + shift while pos is in range
    };
    std::vector<Stream> streams;
    streams.push_back({-a, side_weight, 0, in.front().first - a});
    if (stay_weight != 0) streams.push_back({Int(0), stay_weight, 0, in.front().first});
    streams.push_back({a, side_weight, 0, in.front().first + a});

    std::vector<std::pair<Int, Int>> out;
    out.reserve(in.size() + 2 * streams.size());
    while (true) {
        const Stream* min_s = nullptr;
        for (const auto& s : streams) {
            if (s.pos >= in.size()) continue;
            if (min_s == nullptr || s.key < min_s->key) min_s = &s;
        }
        if (min_s == nullptr) break;
        Int key = min_s->key;
        Int acc = 0;
        for (auto& s : streams) {
            if (s.pos >= in.size() || s.key != key) continue;
            acc += in[s.pos].second * s.weight;
            ++s.pos;
            if (s.pos < in.size()) s.key = in[s.pos].first + s.shift;
        }
        out.emplace_back(std::move(key), std::move(acc));
    }
    return out;
}

} // namespace

Int Pmf::count_at(const Int& x) const { return count_in(counts, x); }

Int Pmf::total() const {
    Int t = 0;
    for (const auto& e : counts) t += e.second;
    return t;
}

bool Pmf::symmetric() const { return counts_symmetric(counts); }

Int WalkDistribution::count_at(const Int& x) const { return count_in(counts, x); }

bool WalkDistribution::symmetric() const { return counts_symmetric(counts); }

WalkDistribution walk_distribution(const Word& v, const Density& mu, const Limits& limits) {
    WalkDistribution d;
    d.base = 2 * mu.q;
    d.power = v.size();
    d.counts = {{Int(0), Int(1)}};

    Int side = mu.p;                // weight of each of +-1
    Int stay = 2 * (mu.q - mu.p);   // weight of 0
    std::size_t prefix = 0;
    for (const Int& step : v.entries) {
        d.counts = convolve_lazy_step(d.counts, step, side, stay);
        ++prefix;
        if (d.counts.size() > limits.support_cap)
            throw ResourceError("walk support cap exceeded after prefix of length " +
                                std::to_string(prefix));
    }
    return d;
}

ConcentrationResult max_mass(const Pmf& d) {
    if (d.counts.empty()) throw DomainError("max_mass of empty distribution");
    const Int* best = &d.counts.front().second;
    for (const auto& e : d.counts)
        if (e.second > *best) best = &e.second;
    ConcentrationResult r;
    r.value = Rat(*best, d.denom);
    r.value.canonicalize();
    for (const auto& e : d.counts)
        if (e.second == *best) r.witnesses.push_back(e.first);
    return r;
}

ConcentrationResult concentration(const Word& v, const Density& mu, const Limits& limits) {
    return max_mass(walk_distribution(v, mu, limits).as_pmf());
}

Pmf autocorrelation(const std::vector<Int>& sorted_elems) {
    if (sorted_elems.empty()) throw DomainError("autocorrelation of empty set");
    std::map<Int, Int> acc;
    for (const Int& b : sorted_elems)
        for (const Int& b2 : sorted_elems) ++acc[b - b2];
    Pmf d;
    d.denom = Int(sorted_elems.size()) * Int(sorted_elems.size());
    d.counts.assign(acc.begin(), acc.end());
    return d;
}

Pmf convolve(const Pmf& a, const Pmf& b, const Limits& limits) {
    if (Int(a.counts.size()) * Int(b.counts.size()) > Int(limits.pair_guard))
        throw ResourceError("convolution pair guard exceeded");
    std::map<Int, Int> acc;
    for (const auto& ea : a.counts)
        for (const auto& eb : b.counts) acc[ea.first + eb.first] += ea.second * eb.second;
    Pmf d;
    d.denom = a.denom * b.denom;
    d.counts.assign(acc.begin(), acc.end());
    return d;
}

ConcentrationResult generalized_concentration(const Word& v, const Density& mu,
                                              const std::vector<Int>& q_sorted,
                                              const Limits& limits) {
    if (q_sorted.empty()) throw DomainError("generalized concentration over empty set");
    WalkDistribution walk = walk_distribution(v, mu, limits);
    ConcentrationResult r;
    if (q_sorted.size() == 1) {
        r = max_mass(walk.as_pmf());
    } else {
        r = max_mass(convolve(walk.as_pmf(), autocorrelation(q_sorted), limits));
    }
    // crude bound: the point mass never exceeds 1/|Q|
    if (r.value * Rat(q_sorted.size()) > 1)
        throw CheckError("crude bound violated: value " + rat_to_string(r.value) +
                         " over set of size " + std::to_string(q_sorted.size()));
    return r;
}

} // namespace lo
