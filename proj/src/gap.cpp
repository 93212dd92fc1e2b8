#include "lo/gap.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "lo/errors.hpp"

namespace lo {

namespace {

constexpr long kDenseSpanLimit = 1L << 26;  // bits in the dense fast path

std::optional<long> to_long(const Int& x) {
    if (!x.fits_slong_p()) return std::nullopt;
    return x.get_si();
}

// dense bit set over an integer interval, for sumset unions of small-span sets
struct DenseBits {
    long min = 0;
    long nbits = 0;
    std::vector<std::uint64_t> w;

    DenseBits(long min_v, long max_v) : min(min_v), nbits(max_v - min_v + 1) {
        w.assign(static_cast<std::size_t>((nbits + 63) / 64), 0);
    }
    void set(long v) {
        long pos = v - min;
        w[static_cast<std::size_t>(pos >> 6)] |= 1ULL << (pos & 63);
    }
    // OR another bit set in, with its origin placed at integer offset
    void or_shifted(const DenseBits& src, long offset) {
        long delta = (src.min + offset) - min;
        long word_shift = delta >> 6;
        int bit_shift = static_cast<int>(delta & 63);
        for (std::size_t i = 0; i < src.w.size(); ++i) {
            std::uint64_t x = src.w[i];
            if (x == 0) continue;
            std::size_t j = i + static_cast<std::size_t>(word_shift);
            if (bit_shift == 0) {
                w[j] |= x;
            } else {
                w[j] |= x << bit_shift;
                if (j + 1 < w.size()) w[j + 1] |= x >> (64 - bit_shift);
            }
        }
    }
    long popcount() const {
        long c = 0;
        for (std::uint64_t x : w) c += std::popcount(x);
        return c;
    }
    std::vector<Int> to_sorted_elems() const {
        std::vector<Int> out;
        for (long pos = 0; pos < nbits; ++pos)
            if (w[static_cast<std::size_t>(pos >> 6)] >> (pos & 63) & 1)
                out.emplace_back(min + pos);
        return out;
    }
};

std::optional<DenseBits> make_dense(const std::vector<Int>& sorted_elems) {
    if (sorted_elems.empty()) return std::nullopt;
    auto lo_v = to_long(sorted_elems.front());
    auto hi_v = to_long(sorted_elems.back());
    if (!lo_v || !hi_v) return std::nullopt;
    if (std::abs(*lo_v) > (1L << 55) || std::abs(*hi_v) > (1L << 55)) return std::nullopt;
    if (*hi_v - *lo_v + 1 > kDenseSpanLimit) return std::nullopt;
    DenseBits bits(*lo_v, *hi_v);
    for (const Int& e : sorted_elems) bits.set(e.get_si());
    return bits;
}

void sort_unique(std::vector<Int>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

} // namespace

Gap::Gap(std::vector<Rat> d, std::vector<Int> s) : dims(std::move(d)), steps(std::move(s)) {
    if (dims.size() != steps.size())
        throw DomainError("GAP dims and steps must have equal length");
    for (auto& n : dims) {
        n.canonicalize();
        if (n <= 0) throw DomainError("GAP dimensions must be positive");
    }
}

bool ElementSet::contains(const Int& x) const {
    return std::binary_search(elems.begin(), elems.end(), x);
}

bool ElementSet::symmetric() const {
    std::size_t n = elems.size();
    for (std::size_t i = 0; i < n; ++i)
        if (elems[i] != -elems[n - 1 - i]) return false;
    return true;
}

bool ElementSet::subset_of(const ElementSet& other) const {
    return std::includes(other.elems.begin(), other.elems.end(), elems.begin(), elems.end());
}

Int gap_volume(const Gap& q) {
    Int vol = 1;
    for (const Rat& n : q.dims) vol *= 2 * floor_rat(n) + 1;
    return vol;
}

namespace {

void check_enum_guard(const Gap& q, const Limits& limits) {
    if (q.rank() > limits.rank_cap)
        throw ResourceError("GAP rank " + std::to_string(q.rank()) +
                            " exceeds enumeration rank cap " + std::to_string(limits.rank_cap));
    Int vol = gap_volume(q);
    if (vol > Int(limits.enum_guard))
        throw ResourceError("GAP enumeration guard exceeded: volume " + vol.get_str());
}

template <typename Emit>
void enumerate_coeff_boxes(const Gap& q, Emit&& emit) {
    std::size_t d = q.rank();
    std::vector<long> floors(d), coeff(d);
    for (std::size_t i = 0; i < d; ++i) {
        Int f = floor_rat(q.dims[i]);
        floors[i] = f.get_si();  // guarded: volume fits under the guard
        coeff[i] = -floors[i];
    }
    // odometer over the coefficient box, maintaining the partial sum
    Int sum = 0;
    for (std::size_t i = 0; i < d; ++i) sum += Int(coeff[i]) * q.steps[i];
    while (true) {
        emit(sum, coeff);
        std::size_t i = 0;
        while (i < d && coeff[i] == floors[i]) {
            sum -= Int(2 * floors[i]) * q.steps[i];
            coeff[i] = -floors[i];
            ++i;
        }
        if (i == d) break;
        ++coeff[i];
        sum += q.steps[i];
    }
}

} // namespace

ElementSet enumerate_gap(const Gap& q, const Limits& limits) {
    check_enum_guard(q, limits);
    std::vector<Int> vals;
    vals.reserve(gap_volume(q).get_ui());
    enumerate_coeff_boxes(q, [&](const Int& sum, const std::vector<long>&) {
        vals.push_back(sum);
    });
    if (vals.empty()) vals.emplace_back(0);  // rank 0: the empty sum
    sort_unique(vals);
    return ElementSet{std::move(vals)};
}

EnumeratedGap enumerate_gap_with_coords(const Gap& q, const Limits& limits) {
    check_enum_guard(q, limits);
    std::vector<std::pair<Int, std::vector<long>>> all;
    all.reserve(gap_volume(q).get_ui());
    enumerate_coeff_boxes(q, [&](const Int& sum, const std::vector<long>& coeff) {
        all.emplace_back(sum, coeff);
    });
    if (all.empty()) all.emplace_back(Int(0), std::vector<long>{});
    std::stable_sort(all.begin(), all.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    EnumeratedGap out;
    for (auto& e : all) {
        if (!out.set.elems.empty() && out.set.elems.back() == e.first) continue;
        out.set.elems.push_back(e.first);
        out.coords.push_back(std::move(e.second));
    }
    return out;
}

GapMetrics gap_metrics(const Gap& q, const Rat& t, const Limits& limits) {
    GapMetrics m;
    m.volume = gap_volume(q);
    m.proper = Int(enumerate_gap(q, limits).size()) == m.volume;
    if (t == 1) {
        m.t_proper = m.proper;
    } else {
        m.t_proper = is_proper(dilate(q, t), limits);
    }
    return m;
}

bool is_proper(const Gap& q, const Limits& limits) {
    return Int(enumerate_gap(q, limits).size()) == gap_volume(q);
}

Gap dilate(const Gap& q, const Rat& t) {
    if (t <= 0) throw DomainError("dilation factor must be positive");
    Gap out = q;
    for (auto& n : out.dims) {
        n *= t;
        n.canonicalize();
    }
    return out;
}

Gap extend(const Gap& q, const Int& x, const Int& k) {
    if (k <= 0) throw DomainError("extension dimension must be positive");
    Gap out = q;
    out.dims.emplace_back(k);
    out.steps.push_back(x);
    return out;
}

ElementSet set_sum(const ElementSet& a, const ElementSet& b, const Limits& limits) {
    if (a.elems.empty() || b.elems.empty()) return {};
    if (Int(a.size()) * Int(b.size()) > Int(limits.pair_guard))
        throw ResourceError("set arithmetic pair guard exceeded: " +
                            std::to_string(a.size()) + " x " + std::to_string(b.size()));
    auto da = make_dense(a.elems);
    auto db = make_dense(b.elems);
    if (da && db) {
        long span = (da->min + da->nbits - 1 + db->min + db->nbits - 1) - (da->min + db->min) + 1;
        if (span <= kDenseSpanLimit) {
            DenseBits acc(da->min + db->min,
                          da->min + da->nbits - 1 + db->min + db->nbits - 1);
            for (const Int& x : a.elems) acc.or_shifted(*db, x.get_si());
            ElementSet out;
            out.elems = acc.to_sorted_elems();
            if (Int(out.size()) > Int(limits.enum_guard))
                throw ResourceError("set sum exceeds enumeration guard");
            return out;
        }
    }
    std::set<Int> acc;
    for (const Int& x : a.elems)
        for (const Int& y : b.elems) acc.insert(x + y);
    if (Int(acc.size()) > Int(limits.enum_guard))
        throw ResourceError("set sum exceeds enumeration guard");
    ElementSet out;
    out.elems.assign(acc.begin(), acc.end());
    return out;
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b, const Limits& limits) {
    ElementSet neg;
    neg.elems.reserve(b.size());
    for (auto it = b.elems.rbegin(); it != b.elems.rend(); ++it) neg.elems.push_back(-*it);
    return set_sum(a, neg, limits);
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
    ElementSet out;
    std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                          std::back_inserter(out.elems));
    return out;
}

Pmf set_autocorrelation(const ElementSet& b) {
    if (b.elems.empty()) throw DomainError("autocorrelation of empty set");
    return autocorrelation(b.elems);
}

Int extension_cardinality(const ElementSet& q_set, const Int& x, const Int& k,
                          const Limits& limits) {
    ElementSet multiples;
    for (Int j = -k; j <= k; ++j) multiples.elems.push_back(j * x);
    sort_unique(multiples.elems);
    return Int(set_sum(q_set, multiples, limits).size());
}

bool is_bad(const Int& x, const Gap& q, const Int& k, const Rat& bigK, const Limits& limits) {
    ElementSet base = enumerate_gap(q, limits);
    Int extended = extension_cardinality(base, x, k, limits);
    // |Q + [-k,k]x| >= K |Q|, exactly
    return Rat(extended) >= bigK * Rat(base.size());
}

std::string gap_to_string(const Gap& q) {
    std::string s = "{dims: [";
    for (std::size_t i = 0; i < q.dims.size(); ++i) {
        if (i) s += ", ";
        s += rat_to_string(q.dims[i]);
    }
    s += "], steps: [";
    for (std::size_t i = 0; i < q.steps.size(); ++i) {
        if (i) s += ", ";
        s += q.steps[i].get_str();
    }
    return s + "]}";
}

// ---------------------------------------------------------------------------
// proper embedding
// ---------------------------------------------------------------------------

namespace {

// minimal-coefficient solution of n1*w1 + n2*w2 = e; empty when unsolvable
struct PairRep {
    long n1, n2;
};

std::optional<PairRep> solve_pair(const Int& w1, const Int& w2, const Int& e) {
    Int g, x0, y0;
    mpz_gcdext(g.get_mpz_t(), x0.get_mpz_t(), y0.get_mpz_t(), w1.get_mpz_t(), w2.get_mpz_t());
    if (g == 0) {
        if (e != 0) return std::nullopt;
        return PairRep{0, 0};
    }
    if (e % g != 0) return std::nullopt;
    Int scale = e / g;
    Int n1 = x0 * scale, n2 = y0 * scale;
    Int step1 = w2 / g, step2 = w1 / g;  // n1 += t*step1, n2 -= t*step2
    // candidate t values near the minimizers of |n1|, |n2| and their crossing
    std::vector<Int> cands;
    auto add_near = [&](const Rat& t_star) {
        Int t0 = floor_rat(t_star);
        for (int dt = -1; dt <= 2; ++dt) cands.push_back(t0 + dt);
    };
    if (step1 != 0) add_near(Rat(-n1, step1));
    if (step2 != 0) add_near(Rat(n2, step2));
    // crossings |n1 + t s1| = |n2 - t s2| for the four sign combinations
    if (step1 != 0 || step2 != 0) {
        for (int s : {1, -1}) {
            Int den = step1 + s * step2;
            if (den != 0) add_near(Rat(s * n2 - n1, den));
        }
    }
    if (cands.empty()) cands.emplace_back(0);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::optional<PairRep> best;
    Int best_norm;
    for (const Int& t : cands) {
        Int a = n1 + t * step1, b = n2 - t * step2;
        Int norm = std::max(abs_int(a), abs_int(b));
        if (!a.fits_slong_p() || !b.fits_slong_p()) continue;
        if (!best || norm < best_norm) {
            best = PairRep{a.get_si(), b.get_si()};
            best_norm = norm;
        }
    }
    return best;
}

struct Candidate {
    Gap gap;
    Rat ratio;
    std::string failure;
};

} // namespace

EmbedResult embed_proper(const Gap& q, const Int& t, const Rat& ratio_budget,
                         const Limits& limits) {
    if (t <= 0) throw DomainError("embedding dilation parameter must be positive");
    if (q.rank() > limits.embed_rank_cap)
        throw DomainError("embedding limited to rank " + std::to_string(limits.embed_rank_cap) +
                          ", got rank " + std::to_string(q.rank()));
    GapMetrics m = gap_metrics(q, Rat(t), limits);
    if (m.t_proper)
        return EmbedResult{q, Rat(1), false, true};

    ElementSet e = enumerate_gap(q, limits);
    Rat e_size{static_cast<unsigned long>(e.size())};

    auto verified = [&](const Gap& cand, std::string& why) -> std::optional<Rat> {
        ElementSet ce = enumerate_gap(cand, limits);
        if (!e.subset_of(ce)) {
            why = "containment";
            return std::nullopt;
        }
        if (!is_proper(dilate(cand, Rat(t)), limits)) {
            why = "t-properness";
            return std::nullopt;
        }
        Rat ratio = Rat(ce.size()) / e_size;
        if (ratio > ratio_budget) {
            why = "cardinality ratio " + rat_to_string(ratio) + " over budget " +
                  rat_to_string(ratio_budget);
            return std::nullopt;
        }
        return ratio;
    };

    // degenerate: everything collapsed to zero
    if (e.size() == 1 && e.elems[0] == 0) {
        Gap zero;
        return EmbedResult{zero, Rat(1), q.rank() > 0, false};
    }

    std::optional<Candidate> best;

    // rank-1 cover: step = gcd of the enumerated elements, dimension = max/gcd.
    // Rank-1 GAPs with a nonzero step are proper at every dilate.
    {
        Int g = 0;
        for (const Int& x : e.elems) g = gcd_int(g, x);
        Int dim = e.elems.back() / g;  // max element; the set is symmetric
        Gap cover({Rat(dim)}, {g});
        std::string why;
        if (auto ratio = verified(cover, why))
            return EmbedResult{cover, *ratio, q.rank() >= 2, false};
        best = Candidate{cover, Rat(2 * dim + 1) / e_size, why};
    }

    // rank-2 re-coordinatizations by small unimodular-style combinations of
    // the original steps, only useful when a rank drop to 2 is allowed
    if (q.rank() >= 3) {
        std::vector<Int> step_cands;
        for (const Int& s : q.steps)
            if (s != 0) step_cands.push_back(abs_int(s));
        for (std::size_t i = 0; i < q.steps.size(); ++i)
            for (std::size_t j = i + 1; j < q.steps.size(); ++j)
                for (int a = -2; a <= 2; ++a)
                    for (int b = 1; b <= 2; ++b) {
                        Int w = a * q.steps[i] + b * q.steps[j];
                        if (w != 0) step_cands.push_back(abs_int(w));
                    }
        sort_unique(step_cands);
        if (step_cands.size() > 24) step_cands.resize(24);

        for (std::size_t i = 0; i < step_cands.size(); ++i) {
            for (std::size_t j = i + 1; j < step_cands.size(); ++j) {
                const Int& w1 = step_cands[i];
                const Int& w2 = step_cands[j];
                long max1 = 0, max2 = 0;
                bool ok = true;
                for (const Int& x : e.elems) {
                    auto rep = solve_pair(w1, w2, x);
                    if (!rep) {
                        ok = false;
                        break;
                    }
                    max1 = std::max(max1, std::abs(rep->n1));
                    max2 = std::max(max2, std::abs(rep->n2));
                }
                if (!ok || max1 == 0 || max2 == 0) continue;
                Gap cand({Rat(max1), Rat(max2)}, {w1, w2});
                if (gap_volume(cand) > Int(limits.enum_guard)) continue;
                std::string why;
                if (auto ratio = verified(cand, why))
                    return EmbedResult{cand, *ratio, true, false};
                if (!best) best = Candidate{cand, Rat(0), why};
            }
        }
    }

    throw BudgetError("proper embedding search exhausted for " + gap_to_string(q),
                      best ? best->failure : "no candidate produced",
                      best ? gap_to_string(best->gap) : "none");
}

} // namespace lo
