#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lo/instances.hpp"

using namespace lo;

TEST_CASE("named families") {
    CHECK(ap_word(4) == Word{1, 2, 3, 4});
    CHECK(dissociated_word(4) == Word{1, 2, 4, 8});
    CHECK(all_equal_word(3, 7) == Word{7, 7, 7});
    CHECK(ap_word(0).empty());
}

TEST_CASE("seeded sampling is deterministic and lands inside the source") {
    Gap q({Rat(3), Rat(2)}, {Int(1), Int(7)});
    InstanceSpec spec;
    spec.kind = InstanceKind::GapSample;
    spec.gap = q;
    spec.n = 50;
    spec.seed = 42;
    Word a = generate_instance(spec);
    Word b = generate_instance(spec);
    CHECK(a == b);
    ElementSet e = enumerate_gap(q);
    for (const Int& x : a.entries) CHECK(e.contains(x));
    spec.seed = 43;
    CHECK(!(generate_instance(spec) == a));
}

TEST_CASE("bounded random words avoid zero and respect the bound") {
    InstanceSpec spec;
    spec.kind = InstanceKind::RandomBounded;
    spec.n = 200;
    spec.bound = 9;
    spec.seed = 7;
    Word w = generate_instance(spec);
    CHECK(w.size() == 200);
    for (const Int& x : w.entries) {
        CHECK(x != 0);
        CHECK(abs_int(x) <= 9);
    }
    CHECK(generate_instance(spec) == w);
}

TEST_CASE("kind names round-trip") {
    for (auto k : {InstanceKind::AllEqual, InstanceKind::Ap, InstanceKind::Dissociated,
                   InstanceKind::GapSample, InstanceKind::RandomBounded})
        CHECK(instance_kind_from_string(instance_kind_to_string(k)) == k);
}
