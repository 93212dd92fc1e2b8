// Independent cross-checks for the exact machinery: brute-force walk
// distributions, quadrature of the characteristic-function identity, signed
// relation counts, the forward concentration bound with an explicit constant,
// intersection/comparison ratio recorders, and the classical-bound and
// progression-dichotomy checkers.  The quadrature is the only floating-point
// code in the library.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lo/gap.hpp"
#include "lo/limits.hpp"
#include "lo/numeric.hpp"
#include "lo/walk.hpp"
#include "lo/word.hpp"

namespace lo {

// one recorded instance of an inequality with an unspecified constant
struct RatioRecord {
    std::string instance;
    Rat lhs;
    Rat rhs;
    Rat ratio;  // lhs / rhs
};

inline RatioRecord make_ratio(std::string instance, Rat lhs, Rat rhs) {
    Rat ratio = lhs / rhs;
    return RatioRecord{std::move(instance), std::move(lhs), std::move(rhs), std::move(ratio)};
}

// exhaustive enumeration over all 3^n step patterns; n <= 12
WalkDistribution brute_distribution(const Word& v, const Density& mu);

// composite trapezoid evaluation of
//   integral_0^1 cos(2 pi a t) * prod_i (1 - mu + mu cos(2 pi v_i t)) dt,
// which equals the point mass P(S = a)
double fourier_quadrature(const Word& v, const Density& mu, const Int& a,
                          unsigned long nodes);

// number of solutions of eps_1 v_{i_1} + ... + eps_{2l} v_{i_2l} = 0 with
// signs in {-1,1} and indices (repetition allowed) in {1..n}
Int halasz_count(const Word& v, unsigned l, const Limits& limits = Limits{});

// exact concentration value with a closed-form fast path: when mu = 1 and the
// entries are super-increasing in absolute value, all 2^n signed sums are
// distinct and the value is 2^{-n} without materializing the support
Rat concentration_value(const Word& v, const Density& mu, const Limits& limits = Limits{});

bool signed_sums_distinct_by_growth(const Word& v);  // the super-increasing test

// Forward bound, explicit-constant form: for v inside a rank-d GAP Q,
//   P_mu(v) >= 1 / (2 |Q_t|)  with  t = ceil(sqrt(2 d mu n)).
// This is a theorem; pass == false indicates a bug.
struct ForwardWitness {
    bool pass;
    Rat p_value;
    Rat bound;
    Int t;
    Int dilate_cardinality;
    RatioRecord record;  // p_value / bound
};
ForwardWitness forward_lo_witness(const Gap& q, const Word& v, const Density& mu,
                                  const Limits& limits = Limits{});

struct ClassicalReport {
    Rat p1;                     // exact P_1(v)
    bool erdos_applicable;      // all entries nonzero
    bool erdos_pass;            // P_1 <= binom(n, floor(n/2)) / 2^n
    bool erdos_equality;
    bool distinct_applicable;   // all entries distinct
    Rat distinct_ratio_sq;      // (P_1 * n^{3/2})^2 = P_1^2 n^3, exact
    Int inverse_k_min;          // least k with P_1 >= k^{-1/2}
    Int nonzero_count;
    Rat nonzero_over_k;         // nonzero_count / inverse_k_min
};
ClassicalReport classical_bounds_check(const Word& v, const Limits& limits = Limits{});

// both exact proof-level inequalities behind the intersection lemma, plus the
// recorded two-sided ratio
struct SandwichReport {
    bool ruzsa_pass;   // |P+Q| |P cap Q| <= |P+P| |Q+Q|
    bool lower_pass;   // |A||B| <= |(A-A) cap (B-B)| |A+B| for half dilates
    Rat two_sided_ratio;  // |P cap Q||P+Q| / (|P||Q|)
    Int p_card, q_card, inter_card, sum_card;
};
SandwichReport sandwich_check(const Gap& p, const Gap& q, const Limits& limits = Limits{});

// both sides of the random-walk comparison inequality
//   P_mu(v v0^[k^2]; Q) <= C * P_mu(v; Q + [-k,k]v0),
// evaluated exactly; the constant is unspecified, so only the ratio is kept
RatioRecord comparison_ratio(const Word& v, const Int& v0, const Int& k, const Gap& q,
                             const Density& mu, const Limits& limits = Limits{});

// Either the concentration probability is far below the relation-count bound,
// or most entries lie in a short symmetric arithmetic progression.
struct DichotomyReport {
    bool branch1;  // P_mu(v) <= c n^{-2l-1/2-delta} R_l
    bool branch2;  // cover found within length and exception budgets
    Rat p_value;
    Int r_l;
    Int ap_step = 0;       // branch 2 progression {j*step : |j| <= half_len}
    Int ap_half_len = 0;
    Int dropped = 0;       // elements left outside the progression
};
DichotomyReport newhalasz_dichotomy(const Word& v, const Density& mu, unsigned l,
                                    const Rat& delta, const Rat& eps, const Rat& c,
                                    const Limits& limits = Limits{});

} // namespace lo
