#pragma once

#include <initializer_list>
#include <vector>

#include "lo/errors.hpp"
#include "lo/numeric.hpp"

namespace lo {

// A finite ordered sequence of integers; the step multiset of a walk.  Order
// is retained only so traces are reproducible -- every probability computed
// from a Word is permutation invariant.
struct Word {
    std::vector<Int> entries;

    Word() = default;
    explicit Word(std::vector<Int> e) : entries(std::move(e)) {}
    Word(std::initializer_list<long> xs) {
        entries.reserve(xs.size());
        for (long x : xs) entries.emplace_back(x);
    }

    std::size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }
    const Int& operator[](std::size_t i) const { return entries[i]; }

    Word concat(const Word& other) const {
        Word w = *this;
        w.entries.insert(w.entries.end(), other.entries.begin(), other.entries.end());
        return w;
    }

    // the word repeated k times
    Word repeated(std::size_t k) const {
        Word w;
        w.entries.reserve(size() * k);
        for (std::size_t i = 0; i < k; ++i)
            w.entries.insert(w.entries.end(), entries.begin(), entries.end());
        return w;
    }

    bool operator==(const Word& o) const { return entries == o.entries; }
};

// Exact step density mu = p/q in (0,1].  The lazy coin is 0 with probability
// 1 - mu and +-1 with probability mu/2 each.
struct Density {
    Int p = 1;
    Int q = 1;

    Density() = default;
    Density(Int num, Int den) : p(std::move(num)), q(std::move(den)) {
        if (q <= 0 || p <= 0) throw DomainError("density must be a positive rational");
        Int g = gcd_int(p, q);
        p /= g;
        q /= g;
        if (p > q) throw DomainError("density exceeds 1: " + p.get_str() + "/" + q.get_str());
    }
    explicit Density(const Rat& r) : Density(r.get_num(), r.get_den()) {}

    Rat value() const { return Rat(p, q); }
    bool at_most_half() const { return 2 * p <= q; }

    // mu / k, exact
    Density divided_by(const Int& k) const { return Density(p, q * k); }

    bool operator==(const Density& o) const { return p == o.p && q == o.q; }
};

} // namespace lo
