// Exact distributions of lazy signed-sum walks over the integers, and the
// (generalized) concentration probabilities derived from them.  Probabilities
// are carried as big-integer counts over a common denominator; nothing in
// this module touches floating point.
#pragma once

#include <utility>
#include <vector>

#include "lo/limits.hpp"
#include "lo/numeric.hpp"
#include "lo/word.hpp"

namespace lo {

// A finitely supported measure with nonnegative big-integer weights over a
// common denominator.  Entries are sorted by value and have positive count.
struct Pmf {
    Int denom = 1;
    std::vector<std::pair<Int, Int>> counts;

    Int count_at(const Int& x) const;
    Int total() const;
    bool symmetric() const;          // count(x) == count(-x) for all x
    std::size_t support_size() const { return counts.size(); }
};

// Distribution of sum(v_i * eta_i) where each eta_i is 0 with probability
// (q-p)/q and +-1 with probability p/(2q).  Counts live over base^power
// with base = 2q and power = n.
struct WalkDistribution {
    Int base = 2;        // 2q
    unsigned long power = 0;  // n
    std::vector<std::pair<Int, Int>> counts;

    Int denominator() const { return ipow(base, power); }
    Int count_at(const Int& x) const;
    bool symmetric() const;
    std::size_t support_size() const { return counts.size(); }
    Pmf as_pmf() const { return Pmf{denominator(), counts}; }
};

// Maximum point mass and the full set of integers attaining it.  By the
// symmetry of the walk the witness set is closed under negation.
struct ConcentrationResult {
    Rat value;
    std::vector<Int> witnesses;  // sorted
};

WalkDistribution walk_distribution(const Word& v, const Density& mu,
                                   const Limits& limits = Limits{});

ConcentrationResult concentration(const Word& v, const Density& mu,
                                  const Limits& limits = Limits{});

// Concentration against a finite nonempty set Q: the maximum over a of
// P(S = a + x - x') with x, x' independent uniform over the distinct
// elements of Q.  Exact; also asserts the crude bound value <= 1/|Q|.
ConcentrationResult generalized_concentration(const Word& v, const Density& mu,
                                              const std::vector<Int>& q_sorted,
                                              const Limits& limits = Limits{});

// distribution of x - x' for x, x' independent uniform on the set
// (elements must be sorted and distinct); denominator |B|^2
Pmf autocorrelation(const std::vector<Int>& sorted_elems);

// full convolution of two exact measures
Pmf convolve(const Pmf& a, const Pmf& b, const Limits& limits = Limits{});

ConcentrationResult max_mass(const Pmf& d);

} // namespace lo
