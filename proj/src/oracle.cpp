#include "lo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lo/errors.hpp"

namespace lo {

WalkDistribution brute_distribution(const Word& v, const Density& mu) {
    if (v.size() > 12)
        throw ResourceError("brute-force enumeration limited to n <= 12, got n = " +
                            std::to_string(v.size()));
    const Int side = mu.p;
    const Int stay = 2 * (mu.q - mu.p);

    // dense accumulation over the reachable span when the steps are small
    Int reach = 0;
    bool fits = true;
    for (const Int& x : v.entries) {
        reach += abs_int(x);
        if (!x.fits_slong_p()) fits = false;
    }
    WalkDistribution d;
    d.base = 2 * mu.q;
    d.power = v.size();

    if (fits && reach <= 1'000'000) {
        const long off = reach.get_si();
        std::vector<long> steps;
        for (const Int& x : v.entries) steps.push_back(x.get_si());
        std::vector<Int> acc(static_cast<std::size_t>(2 * off + 1), Int(0));
        auto rec = [&](auto&& self, std::size_t i, long sum, const Int& weight) -> void {
            if (i == steps.size()) {
                acc[static_cast<std::size_t>(sum + off)] += weight;
                return;
            }
            self(self, i + 1, sum - steps[i], weight * side);
            if (stay != 0) self(self, i + 1, sum, weight * stay);
            self(self, i + 1, sum + steps[i], weight * side);
        };
        rec(rec, 0, 0, Int(1));
        for (long pos = 0; pos <= 2 * off; ++pos)
            if (acc[static_cast<std::size_t>(pos)] != 0)
                d.counts.emplace_back(Int(pos - off), acc[static_cast<std::size_t>(pos)]);
        return d;
    }

    std::map<Int, Int> acc;
    auto rec = [&](auto&& self, std::size_t i, const Int& sum, const Int& weight) -> void {
        if (i == v.size()) {
            acc[sum] += weight;
            return;
        }
        self(self, i + 1, sum - v[i], weight * side);
        if (stay != 0) self(self, i + 1, sum, weight * stay);
        self(self, i + 1, sum + v[i], weight * side);
    };
    rec(rec, 0, Int(0), Int(1));
    d.counts.assign(acc.begin(), acc.end());
    return d;
}

double fourier_quadrature(const Word& v, const Density& mu, const Int& a,
                          unsigned long nodes) {
    if (nodes < 2) throw DomainError("quadrature needs at least two nodes");
    const double mu_d = mu.value().get_d();
    const double a_d = a.get_d();
    std::vector<double> steps;
    steps.reserve(v.size());
    for (const Int& x : v.entries) steps.push_back(x.get_d());

    const double two_pi = 2.0 * 3.14159265358979323846;
    double sum = 0.0;
    for (unsigned long j = 0; j < nodes; ++j) {
        double t = static_cast<double>(j) / static_cast<double>(nodes);
        double f = std::cos(two_pi * a_d * t);
        for (double s : steps) f *= 1.0 - mu_d + mu_d * std::cos(two_pi * s * t);
        sum += f;
    }
    return sum / static_cast<double>(nodes);
}

Int halasz_count(const Word& v, unsigned l, const Limits& limits) {
    if (l < 1) throw DomainError("relation order l must be at least 1");
    Int budget = ipow(Int(v.size()), 2 * l);
    if (budget > Int(limits.pair_guard))
        throw ResourceError("relation count guard exceeded: n^{2l} = " + budget.get_str());
    if (v.empty()) return 0;
    // distribution of one signed pick eps * v_i (mass 2n), convolved l times;
    // the count of vanishing 2l-term combinations is then sum_x N_l(x)^2
    std::map<Int, Int> one;
    for (const Int& x : v.entries) {
        ++one[x];
        ++one[-x];
    }
    std::map<Int, Int> acc = one;
    for (unsigned i = 1; i < l; ++i) {
        std::map<Int, Int> next;
        for (const auto& ea : acc)
            for (const auto& eb : one) next[ea.first + eb.first] += ea.second * eb.second;
        acc = std::move(next);
    }
    Int total = 0;
    for (const auto& e : acc) total += e.second * e.second;
    return total;
}

bool signed_sums_distinct_by_growth(const Word& v) {
    if (v.empty()) return true;
    std::vector<Int> mags;
    mags.reserve(v.size());
    for (const Int& x : v.entries) {
        if (x == 0) return false;
        mags.push_back(abs_int(x));
    }
    std::sort(mags.begin(), mags.end());
    Int prefix = 0;
    for (const Int& m : mags) {
        if (m <= prefix) return false;
        prefix += m;
    }
    return true;
}

Rat concentration_value(const Word& v, const Density& mu, const Limits& limits) {
    if (mu.p == mu.q && signed_sums_distinct_by_growth(v)) {
        // all 2^n signed sums distinct: every point mass equals 2^{-n}
        Rat r(1, ipow(Int(2), v.size()));
        r.canonicalize();
        return r;
    }
    return concentration(v, mu, limits).value;
}

ForwardWitness forward_lo_witness(const Gap& q, const Word& v, const Density& mu,
                                  const Limits& limits) {
    ElementSet base = enumerate_gap(q, limits);
    for (const Int& x : v.entries)
        if (!base.contains(x))
            throw DomainError("forward witness: element " + x.get_str() +
                              " is not in the GAP " + gap_to_string(q));

    Rat two_dmun = Rat(2 * q.rank()) * mu.value() * Rat(v.size());
    Int t = ceil_sqrt(two_dmun);
    Int card = (q.rank() == 0 || t == 0)
                   ? Int(1)
                   : Int(enumerate_gap(dilate(q, Rat(t)), limits).size());

    ForwardWitness w;
    w.t = t;
    w.dilate_cardinality = card;
    w.p_value = concentration(v, mu, limits).value;
    w.bound = Rat(1, 2 * card);
    w.bound.canonicalize();
    w.pass = w.p_value >= w.bound;
    w.record = make_ratio("forward_witness rank=" + std::to_string(q.rank()) +
                              " n=" + std::to_string(v.size()),
                          w.p_value, w.bound);
    return w;
}

ClassicalReport classical_bounds_check(const Word& v, const Limits& limits) {
    ClassicalReport r;
    const std::size_t n = v.size();
    r.p1 = concentration(v, Density(1, 1), limits).value;

    r.nonzero_count = 0;
    for (const Int& x : v.entries)
        if (x != 0) ++r.nonzero_count;

    r.erdos_applicable = (r.nonzero_count == Int(n)) && n > 0;
    Rat central(binomial(n, n / 2), ipow(Int(2), n));
    central.canonicalize();
    r.erdos_pass = !r.erdos_applicable || r.p1 <= central;
    r.erdos_equality = r.erdos_applicable && r.p1 == central;

    std::vector<Int> sorted = v.entries;
    std::sort(sorted.begin(), sorted.end());
    r.distinct_applicable =
        n > 0 && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    r.distinct_ratio_sq = r.distinct_applicable
                              ? Rat(r.p1 * r.p1 * Rat(ipow(Int(n), 3)))
                              : Rat(0);

    // least k with P_1 >= k^{-1/2}, i.e. k >= P_1^{-2}
    Rat inv_sq = Rat(1) / (r.p1 * r.p1);
    r.inverse_k_min = std::max(Int(1), ceil_rat(inv_sq));
    r.nonzero_over_k = Rat(r.nonzero_count, r.inverse_k_min);
    r.nonzero_over_k.canonicalize();
    return r;
}

SandwichReport sandwich_check(const Gap& p, const Gap& q, const Limits& limits) {
    ElementSet ep = enumerate_gap(p, limits);
    ElementSet eq = enumerate_gap(q, limits);
    ElementSet inter = set_intersection(ep, eq);
    ElementSet sum = set_sum(ep, eq, limits);
    ElementSet two_p = set_sum(ep, ep, limits);
    ElementSet two_q = set_sum(eq, eq, limits);

    SandwichReport r;
    r.p_card = ep.size();
    r.q_card = eq.size();
    r.inter_card = inter.size();
    r.sum_card = sum.size();
    r.ruzsa_pass = Int(sum.size()) * Int(inter.size()) <= Int(two_p.size()) * Int(two_q.size());

    ElementSet a = enumerate_gap(dilate(p, Rat(1, 2)), limits);
    ElementSet b = enumerate_gap(dilate(q, Rat(1, 2)), limits);
    ElementSet a_diff = set_difference(a, a, limits);
    ElementSet b_diff = set_difference(b, b, limits);
    ElementSet diff_inter = set_intersection(a_diff, b_diff);
    ElementSet ab_sum = set_sum(a, b, limits);
    r.lower_pass =
        Int(a.size()) * Int(b.size()) <= Int(diff_inter.size()) * Int(ab_sum.size());

    r.two_sided_ratio = Rat(Int(inter.size()) * Int(sum.size()),
                            Int(ep.size()) * Int(eq.size()));
    r.two_sided_ratio.canonicalize();
    return r;
}

RatioRecord comparison_ratio(const Word& v, const Int& v0, const Int& k, const Gap& q,
                             const Density& mu, const Limits& limits) {
    if (k <= 0) throw DomainError("comparison requires k >= 1");
    Word padded = v;
    Int reps = k * k;
    for (Int j = 0; j < reps; ++j) padded.entries.push_back(v0);

    ElementSet q_set = enumerate_gap(q, limits);
    Rat lhs = generalized_concentration(padded, mu, q_set.elems, limits).value;
    ElementSet grown = enumerate_gap(extend(q, v0, k), limits);
    Rat rhs = generalized_concentration(v, mu, grown.elems, limits).value;
    return make_ratio("comparison n=" + std::to_string(v.size()) + " v0=" + v0.get_str() +
                          " k=" + k.get_str(),
                      lhs, rhs);
}

DichotomyReport newhalasz_dichotomy(const Word& v, const Density& mu, unsigned l,
                                    const Rat& delta, const Rat& eps, const Rat& c,
                                    const Limits& limits) {
    if (v.empty()) throw DomainError("dichotomy needs a nonempty word");
    if (delta <= 0 || delta >= Rat(1, 2) || eps <= 0 || eps >= Rat(1, 2))
        throw DomainError("dichotomy requires 0 < delta, eps < 1/2");

    DichotomyReport r;
    const Int n(v.size());
    r.r_l = halasz_count(v, l, limits);
    r.p_value = concentration_value(v, mu, limits);

    // branch 1: P <= c * n^{-2l - 1/2 - delta} * R_l, exactly.
    // exponent as one rational: -( (4l+1)/2 + delta )
    {
        Rat expo = -(Rat(4 * static_cast<long>(l) + 1, 2) + delta);
        long p_num = static_cast<long>(expo.get_num().get_si());
        unsigned long q_den = expo.get_den().get_ui();
        r.branch1 = cmp_rat_pow(r.p_value, c * Rat(r.r_l), n, p_num, q_den) <= 0;
    }

    // branch 2: a symmetric AP of length at most n^{2l+delta+eps} / R_l
    // containing all but n^{1-eps} entries.  Greedy cover: drop the largest
    // magnitudes first, take gcd of what remains.
    {
        Rat budget_exp = Rat(1) - eps;  // in (1/2, 1)
        Int drop_budget = floor_int_pow(n, budget_exp.get_num().get_ui(),
                                        budget_exp.get_den().get_ui());
        std::vector<Int> mags;
        mags.reserve(v.size());
        for (const Int& x : v.entries) mags.push_back(abs_int(x));
        std::sort(mags.begin(), mags.end(), [](const Int& a, const Int& b) { return a > b; });

        Rat len_exp = Rat(2 * static_cast<long>(l)) + delta + eps;
        long le_num = static_cast<long>(len_exp.get_num().get_si());
        unsigned long le_den = len_exp.get_den().get_ui();

        // suffix gcds: retained set after dropping the first `drop` magnitudes
        std::vector<Int> suffix_gcd(mags.size() + 1, Int(0));
        for (std::size_t i = mags.size(); i-- > 0;)
            suffix_gcd[i] = gcd_int(mags[i], suffix_gcd[i + 1]);

        Int max_drop = std::min(drop_budget, Int(mags.size()));
        r.branch2 = false;
        for (Int drop = 0; drop <= max_drop; ++drop) {
            std::size_t start = drop.get_ui();
            Int g = suffix_gcd[start];
            Int half_len, length;
            if (g == 0) {  // every retained element is zero
                half_len = 0;
                length = 1;
            } else {
                half_len = mags[start] / g;
                length = 2 * half_len + 1;
            }
            // length <= n^{2l+delta+eps} R_l^{-1}
            if (cmp_rat_pow(Rat(length * r.r_l), Rat(1), n, le_num, le_den) <= 0) {
                r.branch2 = true;
                r.ap_step = g;
                r.ap_half_len = half_len;
                r.dropped = drop;
                break;
            }
            if (g == 0) break;  // dropping more cannot help
        }
    }
    return r;
}

} // namespace lo
