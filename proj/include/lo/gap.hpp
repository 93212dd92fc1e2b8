// Symmetric generalized arithmetic progressions over the integers:
// enumeration, volume and properness, dilation, extension by one step,
// badness of an element, proper embedding by bounded search, and finite-set
// sum/difference arithmetic.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lo/limits.hpp"
#include "lo/numeric.hpp"
#include "lo/walk.hpp"

namespace lo {

// The set { sum n_i v_i : n_i integer, |n_i| <= N_i }.  Dimensions are exact
// positive rationals (only their floors enter enumeration); steps are
// arbitrary integers, repetition and zero allowed.
struct Gap {
    std::vector<Rat> dims;
    std::vector<Int> steps;

    Gap() = default;
    Gap(std::vector<Rat> d, std::vector<Int> s);

    std::size_t rank() const { return steps.size(); }
    bool operator==(const Gap& o) const { return dims == o.dims && steps == o.steps; }
};

// A finite set of integers, sorted ascending and duplicate free.
struct ElementSet {
    std::vector<Int> elems;

    std::size_t size() const { return elems.size(); }
    bool contains(const Int& x) const;
    bool symmetric() const;
    bool subset_of(const ElementSet& other) const;
};

// volume = prod(2*floor(N_i) + 1): the number of coefficient tuples
Int gap_volume(const Gap& q);

ElementSet enumerate_gap(const Gap& q, const Limits& limits = Limits{});

// enumeration that also records, for each element, the first coefficient
// tuple that produced it (deterministic: odometer order)
struct EnumeratedGap {
    ElementSet set;
    std::vector<std::vector<long>> coords;  // aligned with set.elems
};
EnumeratedGap enumerate_gap_with_coords(const Gap& q, const Limits& limits = Limits{});

struct GapMetrics {
    Int volume;
    bool proper;
    bool t_proper;
};
GapMetrics gap_metrics(const Gap& q, const Rat& t, const Limits& limits = Limits{});

bool is_proper(const Gap& q, const Limits& limits = Limits{});

// same steps, dimensions scaled by t > 0
Gap dilate(const Gap& q, const Rat& t);

// rank d+1 GAP appending dimension k and step x; enumerates to Q + [-k,k]x
Gap extend(const Gap& q, const Int& x, const Int& k);

// x is bad when |Q + [-k,k]x| >= K |Q|: adjoining x genuinely grows the GAP
bool is_bad(const Int& x, const Gap& q, const Int& k, const Rat& bigK,
            const Limits& limits = Limits{});

// faster equivalent of |enumerate(extend(q, x, k))| given enumerate(q)
Int extension_cardinality(const ElementSet& q_set, const Int& x, const Int& k,
                          const Limits& limits = Limits{});

// Proper embedding: find a t-proper GAP q' of rank <= rank(q) containing the
// enumeration of q, with rank <= rank(q) - 1 whenever q was not t-proper.
// Bounded search; every postcondition is re-verified by enumeration before
// returning, and failure is reported (BudgetError), never silent.
struct EmbedResult {
    Gap gap;
    Rat cardinality_ratio;  // |enumerate(result)| / |enumerate(input)|
    bool rank_dropped;
    bool was_t_proper;      // input already t-proper (identity embedding)
};
EmbedResult embed_proper(const Gap& q, const Int& t, const Rat& ratio_budget = Rat(32),
                         const Limits& limits = Limits{});

// plain set arithmetic over sorted element vectors
ElementSet set_sum(const ElementSet& a, const ElementSet& b, const Limits& limits = Limits{});
ElementSet set_difference(const ElementSet& a, const ElementSet& b,
                          const Limits& limits = Limits{});
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
// exact distribution of b - b' for b, b' uniform on the set
Pmf set_autocorrelation(const ElementSet& b);

std::string gap_to_string(const Gap& q);

} // namespace lo
