#include "lo/suites.hpp"

#include <algorithm>
#include <cmath>

#include "lo/errors.hpp"
#include "lo/gap.hpp"
#include "lo/instances.hpp"
#include "lo/walk.hpp"

namespace lo {

namespace {

Word random_word(SplitMix64& rng, std::size_t min_n, std::size_t max_n, long bound) {
    Word w;
    std::size_t n = min_n + rng.below(max_n - min_n + 1);
    for (std::size_t i = 0; i < n; ++i) w.entries.emplace_back(rng.range(-bound, bound));
    return w;
}

std::vector<Int> random_set(SplitMix64& rng, std::size_t max_size, long bound) {
    std::vector<Int> q;
    std::size_t target = 1 + rng.below(max_size);
    while (q.size() < target) {
        Int c(rng.range(-bound, bound));
        if (std::find(q.begin(), q.end(), c) == q.end()) q.push_back(c);
    }
    std::sort(q.begin(), q.end());
    return q;
}

Gap random_gap(SplitMix64& rng, unsigned max_rank, long max_dim, long max_step) {
    unsigned rank = 1 + static_cast<unsigned>(rng.below(max_rank));
    std::vector<Rat> dims;
    std::vector<Int> steps;
    for (unsigned i = 0; i < rank; ++i) {
        dims.emplace_back(1 + rng.range(0, max_dim - 1));
        long s = rng.range(-max_step, max_step);
        if (s == 0) s = 1;
        steps.emplace_back(s);
    }
    return Gap(std::move(dims), std::move(steps));
}

Rat gc(const Word& v, const Density& mu, const std::vector<Int>& q) {
    return generalized_concentration(v, mu, q).value;
}

} // namespace

SuiteOutcome oracle_equivalence_suite(std::size_t cases, std::uint64_t seed) {
    SuiteOutcome out;
    out.name = "oracle-equivalence";
    SplitMix64 rng(seed);
    const Density densities[3] = {Density(1, 1), Density(1, 2), Density(1, 3)};
    for (std::size_t c = 0; c < cases; ++c) {
        Word v = random_word(rng, 0, 12, 20);
        const Density& mu = densities[c % 3];
        WalkDistribution fast = walk_distribution(v, mu);
        WalkDistribution brute = brute_distribution(v, mu);
        ++out.cases;
        if (fast.base != brute.base || fast.power != brute.power ||
            fast.counts != brute.counts)
            out.fail("distribution mismatch at case " + std::to_string(c));
    }
    return out;
}

SuiteOutcome fourier_suite(std::size_t cases, std::uint64_t seed) {
    SuiteOutcome out;
    out.name = "fourier";
    SplitMix64 rng(seed);
    const unsigned long nodes = 1ul << 16;
    const Density densities[3] = {Density(1, 1), Density(1, 2), Density(1, 3)};
    for (std::size_t c = 0; c < cases; ++c) {
        Word v = random_word(rng, 1, 8, 10);
        const Density& mu = densities[c % 3];
        WalkDistribution d = walk_distribution(v, mu);
        Int a(rng.range(-10, 10));
        double exact = frac(d.count_at(a), d.denominator()).get_d();
        double approx = fourier_quadrature(v, mu, a, nodes);
        ++out.cases;
        double error = std::abs(approx - exact);
        out.max_abs_error = std::max(out.max_abs_error, error);
        if (error > 1e-9)
            out.fail("quadrature off by " + std::to_string(error) + " at case " +
                     std::to_string(c));
    }
    return out;
}

SuiteOutcome lemma31_suite(std::size_t cases, std::uint64_t seed) {
    SuiteOutcome out;
    out.name = "lemma3.1";
    SplitMix64 rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        // density: any on even cases, at most 1/2 on odd ones so the
        // repetition and block parts always get coverage
        long den = 2 + static_cast<long>(rng.below(7));
        long num_hi = (c % 2 == 0) ? den : den / 2;
        long num = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(num_hi)));
        Density mu(num, den);

        Word v = random_word(rng, 0, 6, 15);
        Word w = random_word(rng, 0, 4, 15);
        std::vector<Int> q = random_set(rng, 5, 20);
        ++out.cases;
        try {
            // (i) permutation invariance
            Word sigma = v;
            if (sigma.size() > 1) {
                std::size_t i = rng.below(sigma.size());
                std::size_t j = rng.below(sigma.size());
                std::swap(sigma.entries[i], sigma.entries[j]);
            }
            if (gc(sigma, mu, q) != gc(v, mu, q)) {
                out.fail("permutation invariance failed at case " + std::to_string(c));
                continue;
            }
            // (ii) concatenation monotonicity
            if (gc(v.concat(w), mu, q) > gc(v, mu, q)) {
                out.fail("concatenation monotonicity failed at case " + std::to_string(c));
                continue;
            }
            // (iii) density comparison at mu' <= mu/4
            Density mu_quarter(mu.p, 4 * mu.q);
            if (gc(v, mu, q) > gc(v, mu_quarter, q)) {
                out.fail("density comparison failed at case " + std::to_string(c));
                continue;
            }
            // crude bound
            if (gc(v, mu, q) * Rat(q.size()) > 1) {
                out.fail("crude bound failed at case " + std::to_string(c));
                continue;
            }
            if (!mu.at_most_half()) continue;
            // (iv) repetition
            unsigned long rep = 2 + static_cast<unsigned long>(rng.below(2));  // k <= 3
            if (gc(v, mu, q) > gc(v.repeated(rep), mu.divided_by(Int(rep)), q)) {
                out.fail("repetition failed at case " + std::to_string(c));
                continue;
            }
            // (v) and (vi) over m <= 3 nonempty blocks
            std::size_t m = 1 + rng.below(3);
            std::vector<Word> blocks;
            for (std::size_t j = 0; j < m; ++j) blocks.push_back(random_word(rng, 1, 3, 15));
            Word whole = v;
            for (const Word& b : blocks) whole = whole.concat(b);
            Rat lhs = gc(whole, mu, q);
            Rat prod(1);
            Rat best(-1);
            for (const Word& b : blocks) {
                Rat r = gc(v.concat(b.repeated(m)), mu, q);
                prod *= r;
                if (r > best) best = r;
            }
            if (rpow(lhs, static_cast<unsigned long>(m)) > prod) {
                out.fail("power-mean bound failed at case " + std::to_string(c));
                continue;
            }
            if (lhs > best) {
                out.fail("block selection failed at case " + std::to_string(c));
                continue;
            }
        } catch (const std::exception& e) {
            out.fail(std::string("exception at case ") + std::to_string(c) + ": " + e.what());
        }
    }
    return out;
}

SuiteOutcome forward_suite(std::size_t cases, std::uint64_t seed) {
    SuiteOutcome out;
    out.name = "forward";
    SplitMix64 rng(seed);
    const Density densities[4] = {Density(1, 1), Density(1, 2), Density(1, 3), Density(1, 4)};
    for (std::size_t c = 0; c < cases; ++c) {
        Gap q = random_gap(rng, 2, 5, 10);
        InstanceSpec spec;
        spec.kind = InstanceKind::GapSample;
        spec.gap = q;
        spec.n = 20 + rng.below(181);  // n <= 200
        spec.seed = rng.next();
        Word v = generate_instance(spec);
        const Density& mu = densities[c % 4];
        ++out.cases;
        ForwardWitness w = forward_lo_witness(q, v, mu);
        if (!w.pass)
            out.fail("forward bound failed at case " + std::to_string(c) + ": P = " +
                     rat_to_string(w.p_value) + " < " + rat_to_string(w.bound));
        out.ratios.push_back(w.record);
    }
    return out;
}

SuiteOutcome sandwich_suite(std::size_t cases, std::uint64_t seed) {
    SuiteOutcome out;
    out.name = "sandwich";
    SplitMix64 rng(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        Gap p = random_gap(rng, 3, 8, 9);
        Gap q = random_gap(rng, 3, 8, 9);
        ++out.cases;
        SandwichReport rep = sandwich_check(p, q);
        if (!rep.ruzsa_pass)
            out.fail("triangle-side inequality failed at case " + std::to_string(c));
        if (!rep.lower_pass)
            out.fail("lower-side inequality failed at case " + std::to_string(c));
        out.ratios.push_back(make_ratio("pair " + std::to_string(c),
                                        Rat(rep.inter_card * rep.sum_card),
                                        Rat(rep.p_card * rep.q_card)));
    }
    return out;
}

SuiteOutcome halasz_suite(std::size_t cases, std::uint64_t seed) {
    SuiteOutcome out;
    out.name = "halasz";
    SplitMix64 rng(seed);

    // invariance under permutations and sign flips
    for (std::size_t c = 0; c < cases; ++c) {
        Word v = random_word(rng, 1, 8, 9);
        unsigned l = 1 + static_cast<unsigned>(rng.below(2));
        Int base = halasz_count(v, l);
        Word mangled = v;
        mangled.entries[rng.below(mangled.size())] *= -1;
        std::reverse(mangled.entries.begin(), mangled.entries.end());
        ++out.cases;
        if (halasz_count(mangled, l) != base)
            out.fail("relation count not invariant at case " + std::to_string(c));
    }

    // all-equal words maximize the count among words of the same length
    {
        Int best = halasz_count(all_equal_word(4, 1), 1);
        ++out.cases;
        for (long a = 1; a <= 3 && out.failures == 0; ++a)
            for (long b = 1; b <= 3; ++b)
                for (long cc = 1; cc <= 3; ++cc)
                    for (long d = 1; d <= 3; ++d)
                        if (halasz_count(Word{a, b, cc, d}, 1) > best) {
                            out.fail("all-equal word is not maximal");
                            break;
                        }
    }

    // ratio trend of P * n^{2l+1/2} / R_l over the progression family, l = 1,
    // squared to stay rational: P^2 n^5 / R^2 within 4x of the n = 10 baseline
    Rat baseline;
    for (std::size_t n = 10; n <= 50; ++n) {
        Word v = ap_word(n);
        Rat p = concentration(v, Density(1, 1)).value;
        Int r = halasz_count(v, 1);
        Rat ratio_sq = p * p * Rat(ipow(Int(n), 5)) / Rat(r * r);
        if (n == 10) baseline = ratio_sq;
        ++out.cases;
        if (ratio_sq > 4 * baseline)
            out.fail("relation-count ratio drifted at n = " + std::to_string(n));
        out.ratios.push_back(make_ratio("ap n=" + std::to_string(n) + " ratio_sq",
                                        ratio_sq, baseline));
    }
    return out;
}

SuiteOutcome classical_suite(std::size_t n_from, std::size_t n_to) {
    SuiteOutcome out;
    out.name = "classical";

    // central binomial equality on all-equal words
    for (std::size_t n : {6ul, 10ul, 13ul}) {
        ClassicalReport r = classical_bounds_check(all_equal_word(n, 7));
        ++out.cases;
        if (!r.erdos_pass || !r.erdos_equality)
            out.fail("all-equal equality failed at n = " + std::to_string(n));
    }
    // a zero entry gates the bound off
    {
        ClassicalReport r = classical_bounds_check(Word{0, 1, 2, 3});
        ++out.cases;
        if (r.erdos_applicable) out.fail("zero entry not detected");
    }

    // distinct-entries ratio trend over the progression family, squared form
    Rat baseline;
    for (std::size_t n = n_from; n <= n_to; ++n) {
        ClassicalReport r = classical_bounds_check(ap_word(n));
        ++out.cases;
        if (!r.erdos_pass) out.fail("order bound failed at n = " + std::to_string(n));
        if (!r.distinct_applicable) out.fail("progression not seen as distinct");
        if (n == n_from) baseline = r.distinct_ratio_sq;
        if (r.distinct_ratio_sq > 4 * baseline)
            out.fail("distinct ratio drifted at n = " + std::to_string(n));
        out.ratios.push_back(make_ratio("ap n=" + std::to_string(n) + " (P n^1.5)^2",
                                        r.distinct_ratio_sq, baseline));
    }

    // zero-padded words: large concentration forces a small inverse scale k,
    // and the nonzero count per unit k is recorded for the sweep
    for (std::size_t m : {4ul, 9ul, 16ul}) {
        Word v = all_equal_word(30 - m, 0);
        for (std::size_t i = 0; i < m; ++i) v.entries.emplace_back(7);
        ClassicalReport r = classical_bounds_check(v);
        ++out.cases;
        if (r.erdos_applicable) out.fail("zero padding not detected");
        out.ratios.push_back(make_ratio("zeros with " + std::to_string(m) +
                                            " nonzero: count/k_min",
                                        r.nonzero_over_k, Rat(1)));
    }
    return out;
}

SuiteOutcome comparison_suite(std::size_t n_from, std::size_t n_to) {
    SuiteOutcome out;
    out.name = "comparison";
    Gap q({Rat(2)}, {Int(1)});
    Rat baseline;
    for (std::size_t n = n_from; n <= n_to; ++n) {
        RatioRecord rec = comparison_ratio(ap_word(n), 1, 2, q, Density(1, 2));
        ++out.cases;
        if (n == n_from) baseline = rec.ratio;
        if (rec.ratio > 2 * baseline)
            out.fail("comparison ratio drifted at n = " + std::to_string(n));
        rec.instance = "ap n=" + std::to_string(n);
        out.ratios.push_back(rec);
    }
    return out;
}

SuiteOutcome dichotomy_suite() {
    SuiteOutcome out;
    out.name = "dichotomy";
    const Rat delta(2, 5), eps(1, 10), c(1, 4);
    for (std::size_t n : {20ul, 40ul}) {
        {
            DichotomyReport r = newhalasz_dichotomy(ap_word(n), Density(1, 1), 1, delta, eps, c);
            ++out.cases;
            if (!r.branch2)
                out.fail("progression instance missed the structural branch at n = " +
                         std::to_string(n));
        }
        {
            DichotomyReport r =
                newhalasz_dichotomy(dissociated_word(n), Density(1, 1), 1, delta, eps, c);
            ++out.cases;
            if (!r.branch1)
                out.fail("dissociated instance missed the concentration branch at n = " +
                         std::to_string(n));
        }
    }
    {
        DichotomyReport r =
            newhalasz_dichotomy(all_equal_word(20, 0), Density(1, 1), 1, delta, eps, c);
        ++out.cases;
        if (!r.branch2) out.fail("zero word missed the trivial progression");
    }
    return out;
}

SuiteOutcome run_suite_by_name(const std::string& name, std::size_t cases,
                               std::uint64_t seed) {
    if (name == "lemma3.1") return lemma31_suite(cases, seed);
    if (name == "sandwich") return sandwich_suite(cases, seed);
    if (name == "forward") return forward_suite(cases, seed);
    if (name == "halasz") return halasz_suite(cases, seed);
    if (name == "classical") return classical_suite(10, 50);
    if (name == "comparison") return comparison_suite(10, 50);
    if (name == "dichotomy") return dichotomy_suite();
    if (name == "oracle") return oracle_equivalence_suite(cases, seed);
    if (name == "fourier") return fourier_suite(cases, seed);
    throw DomainError("unknown verification suite: " + name);
}

} // namespace lo
