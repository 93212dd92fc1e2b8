#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lo/errors.hpp"
#include "lo/gap.hpp"
#include "lo/instances.hpp"

using namespace lo;

namespace {

std::vector<Int> ints(std::initializer_list<long> xs) {
    std::vector<Int> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

Gap make_gap(std::initializer_list<long> dims, std::initializer_list<long> steps) {
    std::vector<Rat> d;
    for (long x : dims) d.emplace_back(x);
    std::vector<Int> s;
    for (long x : steps) s.emplace_back(x);
    return Gap(std::move(d), std::move(s));
}

// random GAP with integer dims, guaranteed proper by construction is not
// attempted; properness is simply measured
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

} // namespace

TEST_CASE("enumeration basics") {
    SUBCASE("rank zero is the single point 0") {
        ElementSet e = enumerate_gap(Gap{});
        CHECK(e.elems == ints({0}));
        CHECK(gap_volume(Gap{}) == 1);
    }
    SUBCASE("rank one") {
        ElementSet e = enumerate_gap(make_gap({2}, {3}));
        CHECK(e.elems == ints({-6, -3, 0, 3, 6}));
    }
    SUBCASE("overlapping rank two") {
        Gap q = make_gap({2, 1}, {1, 2});
        ElementSet e = enumerate_gap(q);
        CHECK(e.elems == ints({-4, -3, -2, -1, 0, 1, 2, 3, 4}));
        CHECK(gap_volume(q) == 15);
        GapMetrics m = gap_metrics(q, 1);
        CHECK(m.volume == 15);
        CHECK_FALSE(m.proper);
    }
    SUBCASE("fractional dimensions only matter through their floors") {
        Gap q({Rat(5, 2)}, {Int(3)});
        GapMetrics m = gap_metrics(q, 1);
        CHECK(m.volume == 5);
        CHECK(m.proper);
        CHECK(m.t_proper);
    }
    SUBCASE("zero step collides everything") {
        Gap q = make_gap({2}, {0});
        GapMetrics m = gap_metrics(q, 1);
        CHECK(m.volume == 5);
        CHECK_FALSE(m.proper);
        CHECK(enumerate_gap(q).elems == ints({0}));
    }
    SUBCASE("guard trips on huge volumes") {
        Limits tight;
        tight.enum_guard = 100;
        CHECK_THROWS_AS(enumerate_gap(make_gap({1000}, {1}), tight), ResourceError);
    }
    SUBCASE("enumerations are symmetric and contain zero") {
        SplitMix64 rng(5);
        for (int c = 0; c < 30; ++c) {
            ElementSet e = enumerate_gap(random_gap(rng, 3, 6, 20));
            CHECK(e.symmetric());
            CHECK(e.contains(0));
        }
    }
}

TEST_CASE("dilation") {
    Gap q = make_gap({2}, {3});
    CHECK(enumerate_gap(dilate(q, Rat(1, 2))).elems == ints({-3, 0, 3}));
    CHECK(dilate(q, 1) == q);
    Gap r = make_gap({4, 6}, {1, 5});
    CHECK(dilate(dilate(r, Rat(1, 2)), 2) == r);
    CHECK_THROWS_AS(dilate(q, Rat(0)), DomainError);
}

TEST_CASE("extension by one step") {
    SUBCASE("from rank zero") {
        Gap q = extend(Gap{}, 5, 2);
        CHECK(enumerate_gap(q).elems == ints({-10, -5, 0, 5, 10}));
    }
    SUBCASE("interval plus a far step") {
        Gap q = extend(make_gap({1}, {1}), 10, 1);
        CHECK(enumerate_gap(q).elems == ints({-11, -10, -9, -1, 0, 1, 9, 10, 11}));
    }
    SUBCASE("zero extension multiplies volume, not the set") {
        Gap base = make_gap({2}, {3});
        Gap q = extend(base, 0, 2);
        CHECK(enumerate_gap(q).elems == enumerate_gap(base).elems);
        CHECK(gap_volume(q) == gap_volume(base) * 5);
    }
    SUBCASE("extension cardinality matches re-enumeration") {
        SplitMix64 rng(6);
        for (int c = 0; c < 25; ++c) {
            Gap q = random_gap(rng, 2, 5, 12);
            Int x(rng.range(-30, 30));
            Int k(1 + rng.range(0, 3));
            Int direct(enumerate_gap(extend(q, x, k)).size());
            CHECK(extension_cardinality(enumerate_gap(q), x, k) == direct);
        }
    }
}

TEST_CASE("badness threshold") {
    SUBCASE("growing from the origin") { CHECK(is_bad(1, Gap{}, 3, 5)); }
    SUBCASE("zero never grows anything") { CHECK_FALSE(is_bad(0, make_gap({3}, {2}), 4, Rat(3, 2))); }
    SUBCASE("aligned step grows too slowly") {
        CHECK_FALSE(is_bad(5, make_gap({5}, {5}), 5, 2));  // 21 < 2 * 11
    }
}

TEST_CASE("set arithmetic") {
    ElementSet a{ints({0, 1})};
    ElementSet b{ints({0, 2})};
    CHECK(set_sum(a, b).elems == ints({0, 1, 2, 3}));
    CHECK(set_difference(a, a).elems == ints({-1, 0, 1}));
    Pmf ac = set_autocorrelation(a);
    CHECK(ac.denom == 4);
    CHECK(ac.count_at(-1) == 1);
    CHECK(ac.count_at(0) == 2);
    CHECK(ac.count_at(1) == 1);

    SUBCASE("dense and exhaustive sumsets agree") {
        SplitMix64 rng(7);
        for (int c = 0; c < 20; ++c) {
            ElementSet x, y;
            for (int i = 0; i < 12; ++i) x.elems.emplace_back(rng.range(-50, 50));
            for (int i = 0; i < 9; ++i) y.elems.emplace_back(rng.range(-50, 50));
            std::sort(x.elems.begin(), x.elems.end());
            x.elems.erase(std::unique(x.elems.begin(), x.elems.end()), x.elems.end());
            std::sort(y.elems.begin(), y.elems.end());
            y.elems.erase(std::unique(y.elems.begin(), y.elems.end()), y.elems.end());
            ElementSet fast = set_sum(x, y);
            std::set<Int> slow;
            for (const Int& p : x.elems)
                for (const Int& q : y.elems) slow.insert(p + q);
            CHECK(fast.elems == std::vector<Int>(slow.begin(), slow.end()));
        }
    }
}

TEST_CASE("volume dominates cardinality, equality iff proper") {
    SplitMix64 rng(8);
    for (int c = 0; c < 40; ++c) {
        Gap q = random_gap(rng, 3, 5, 9);
        Int vol = gap_volume(q);
        Int card(enumerate_gap(q).size());
        CHECK(card <= vol);
        CHECK(is_proper(q) == (card == vol));
    }
}

TEST_CASE("dilate growth of proper GAPs stays within (2t+1)^d") {
    SplitMix64 rng(9);
    int done = 0;
    while (done < 25) {
        Gap q = random_gap(rng, 3, 8, 9);
        if (!is_proper(q)) continue;
        for (long t : {2L, 3L, 4L}) {
            Int lhs(enumerate_gap(dilate(q, Rat(t))).size());
            Int rhs = ipow(Int(2 * t + 1), static_cast<unsigned long>(q.rank())) *
                      Int(enumerate_gap(q).size());
            CHECK(lhs <= rhs);
        }
        ++done;
    }
}

TEST_CASE("intersection-style exact inequalities on random pairs") {
    SplitMix64 rng(10);
    for (int c = 0; c < 25; ++c) {
        Gap p = random_gap(rng, 3, 6, 7);
        Gap q = random_gap(rng, 3, 6, 7);
        ElementSet ep = enumerate_gap(p);
        ElementSet eq = enumerate_gap(q);
        Int lhs = Int(set_sum(ep, eq).size()) * Int(set_intersection(ep, eq).size());
        Int rhs = Int(set_sum(ep, ep).size()) * Int(set_sum(eq, eq).size());
        CHECK(lhs <= rhs);

        ElementSet a = enumerate_gap(dilate(p, Rat(1, 2)));
        ElementSet b = enumerate_gap(dilate(q, Rat(1, 2)));
        Int l2 = Int(a.size()) * Int(b.size());
        Int r2 = Int(set_intersection(set_difference(a, a), set_difference(b, b)).size()) *
                 Int(set_sum(a, b).size());
        CHECK(l2 <= r2);
    }
}

TEST_CASE("proper embedding") {
    SUBCASE("already proper input is returned unchanged") {
        Gap q = make_gap({3}, {4});
        EmbedResult r = embed_proper(q, 2);
        CHECK(r.gap == q);
        CHECK(r.cardinality_ratio == 1);
        CHECK(r.was_t_proper);
    }
    SUBCASE("improper rank two drops to a rank-one cover") {
        Gap q = make_gap({2, 1}, {1, 2});  // cardinality 9, volume 15
        EmbedResult r = embed_proper(q, 1);
        REQUIRE(r.gap.rank() == 1);
        CHECK(r.rank_dropped);
        ElementSet cover = enumerate_gap(r.gap);
        CHECK(enumerate_gap(q).subset_of(cover));
        CHECK(is_proper(r.gap));
        CHECK(r.cardinality_ratio == 1);  // {-4..4} covers exactly
    }
    SUBCASE("degenerate zero GAP collapses to rank zero") {
        Gap q = make_gap({3}, {0});
        EmbedResult r = embed_proper(q, 1);
        CHECK(r.gap.rank() == 0);
    }
    SUBCASE("an impossible ratio budget is a reported failure") {
        Gap q = make_gap({2, 1}, {1, 2});
        try {
            embed_proper(q, 1, Rat(1, 10));
            FAIL("budget error expected");
        } catch (const BudgetError& e) {
            CHECK_FALSE(e.failed_postcondition.empty());
            CHECK_FALSE(e.best_candidate.empty());
        }
    }
    SUBCASE("a wide two-scale improper input needs the rank-two search") {
        // two unit steps collide, and the third lives on a far coarser scale,
        // so a rank-one cover would be a million points wide
        Gap q({Rat(2), Rat(3), Rat(2)}, {Int(1), Int(1), Int(1000000)});
        REQUIRE_FALSE(is_proper(q));
        EmbedResult r = embed_proper(q, 1);
        CHECK(r.gap.rank() == 2);
        CHECK(r.rank_dropped);
        CHECK(enumerate_gap(q).subset_of(enumerate_gap(r.gap)));
        CHECK(is_proper(r.gap));
        CHECK(r.cardinality_ratio <= 32);
    }
    SUBCASE("rank above the embedding cap is rejected") {
        Gap q({Rat(1), Rat(1), Rat(1), Rat(1)}, {Int(1), Int(2), Int(4), Int(8)});
        CHECK_THROWS_AS(embed_proper(q, 1), DomainError);
    }
    SUBCASE("postconditions hold on random improper inputs") {
        SplitMix64 rng(21);
        int done = 0;
        while (done < 20) {
            Gap q = random_gap(rng, 3, 5, 6);
            Int t(1 + rng.range(0, 2));
            bool was_proper = is_proper(dilate(q, Rat(t)));
            EmbedResult r;
            try {
                r = embed_proper(q, t);
            } catch (const BudgetError&) {
                continue;  // reported failure is a legitimate outcome
            }
            CHECK(enumerate_gap(q).subset_of(enumerate_gap(r.gap)));
            CHECK(is_proper(dilate(r.gap, Rat(t))));
            CHECK(r.gap.rank() <= q.rank());
            if (!was_proper) CHECK(r.gap.rank() <= q.rank() - 1);
            ++done;
        }
    }
}
