#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pal/rel.hpp"
#include "pal/rng.hpp"
#include "test_util.hpp"

using namespace pal;
namespace tu = test_util;

static Rel turn() { return from_function(Graph::path(2), Graph::path(1), {0, 1, 0}); }

static Rel base_tangled() { // 0 -> {0}, 1 -> {0,1}, 2 -> {1}
    return from_pairs(Graph::path(2), Graph::path(1), {{0, 0}, {0, 1}, {1, 1}, {1, 2}});
}

static Bits make_set(int n, std::initializer_list<int> xs) {
    Bits b(n);
    for (int x : xs) b.set(x);
    return b;
}

TEST_CASE("images and demonic images") {
    Rel t = turn();
    CHECK(image(t, make_set(3, {0, 2})) == make_set(2, {0}));
    CHECK(image(t, Bits(3)) == Bits(2));
    Rel full = full_relation(Graph::path(2), Graph::path(1));
    CHECK(image(full, make_set(3, {1})) == make_set(2, {0, 1}));

    CHECK(demonic_image(t, make_set(3, {0, 2})) == make_set(2, {0}));
    CHECK(demonic_image(t, Bits(3)) == make_set(2, {0, 1})); // vacuous universal
    Rel id2 = identity(Graph::path(2));
    CHECK(demonic_image(id2, make_set(3, {0, 1})) == Bits(3));
}

TEST_CASE("compose examples") {
    Rel t = turn();
    CHECK(compose(t, identity(t.dom)) == t);
    CHECK(compose(identity(t.cod), t) == t);
    CHECK(compose(t, Rel(Graph::path(2), Graph::path(2))) ==
          Rel(Graph::path(2), Graph::path(1)));

    // s: P_2 -> P_2, 0,1 -> 0 and 2 -> 1; then the turn gives 0,0,1
    Rel s = from_function(Graph::path(2), Graph::path(2), {0, 0, 1});
    Rel ts = compose(t, s);
    CHECK(ts == from_function(Graph::path(2), Graph::path(1), {0, 0, 1}));
    CHECK(ts == tu::compose_oracle(t, s));

    CHECK_THROWS(compose(t, t));
}

TEST_CASE("inverse and restrict") {
    Rng rng(0x51a9f00dULL);
    for (int it = 0; it < 50; ++it) {
        Graph dom = tu::random_graph(rng, 1, 6);
        Graph cod = tu::random_graph(rng, 1, 6);
        Rel r = tu::random_rel(rng, dom, cod);
        CHECK(inverse(inverse(r)) == r);
        Bits all_dom(dom.n), all_cod(cod.n);
        for (int i = 0; i < dom.n; ++i) all_dom.set(i);
        for (int i = 0; i < cod.n; ++i) all_cod.set(i);
        CHECK(restrict(r, all_dom, all_cod) == r);
    }
    Rel t = turn();
    Rel cut = restrict(t, make_set(3, {0, 1}), make_set(2, {0, 1}));
    CHECK(cut.pairs() == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
}

TEST_CASE("calculus matches literal oracles on random relations") {
    Rng rng(0xfeedbeefULL);
    for (int it = 0; it < 300; ++it) {
        Graph x = tu::random_graph(rng, 1, 6);
        Graph y = tu::random_graph(rng, 1, 6);
        Graph z = tu::random_graph(rng, 1, 6);
        Rel r = tu::random_rel(rng, x, y);
        Rel s = tu::random_rel(rng, y, z);
        Bits w = tu::random_subset(rng, x.n);
        Bits zz = tu::random_subset(rng, y.n);

        CHECK(image(r, w) == tu::image_oracle(r, w));
        CHECK(preimage(r, zz) == tu::preimage_oracle(r, zz));
        CHECK(demonic_image(r, w) == tu::demonic_image_oracle(r, w));
        CHECK(demonic_preimage(r, zz) == tu::demonic_preimage_oracle(r, zz));
        CHECK(compose(s, r) == tu::compose_oracle(s, r));
        CHECK(demonic_compose(s, r) == tu::demonic_compose_oracle(s, r));
        CHECK(codemonic_compose(s, r) == tu::codemonic_compose_oracle(s, r));

        // demonic composition refines plain composition on non-empty columns
        Rel dc = demonic_compose(s, r);
        CHECK(subrel(dc, compose(s, r)));
    }
}

TEST_CASE("composition is associative") {
    Rng rng(0xabcdef12ULL);
    for (int it = 0; it < 300; ++it) {
        Graph a = tu::random_graph(rng, 1, 6);
        Graph b = tu::random_graph(rng, 1, 6);
        Graph c = tu::random_graph(rng, 1, 6);
        Graph d = tu::random_graph(rng, 1, 6);
        Rel r = tu::random_rel(rng, a, b);
        Rel s = tu::random_rel(rng, b, c);
        Rel t = tu::random_rel(rng, c, d);
        CHECK(compose(compose(t, s), r) == compose(t, compose(s, r)));
    }
}

TEST_CASE("composition preserves morphism class") {
    Rng rng(0x77aa88bbULL);
    int checked = 0;
    while (checked < 200) {
        Rel r = tu::random_path_morphism(rng, (int)rng.range(0, 2), (int)rng.range(1, 4));
        Rel s = tu::random_path_morphism(rng, r.dom.n - 1, (int)rng.range(1, 4));
        // r: A -> B, s: C -> A, so r after s is C -> B
        Rel rs = compose(r, s);
        auto rep_r = check_morphism(r), rep_s = check_morphism(s), rep = check_morphism(rs);
        REQUIRE(rep_r.co_bijective);
        REQUIRE(rep_s.co_bijective);
        CHECK(rep.co_bijective);
        CHECK(rep.edge_preserving);
        ++checked;
    }
}

TEST_CASE("morphism report: identity on P_3") {
    auto rep = check_morphism(identity(Graph::path(3)));
    CHECK(rep.surjective);
    CHECK(rep.co_surjective);
    CHECK(rep.co_injective);
    CHECK(rep.co_bijective);
    CHECK(rep.edge_preserving);
    CHECK(rep.edge_injective);
    CHECK(rep.end_preserving);
    CHECK(rep.is_function);
    CHECK(rep.proper_applicable);
    CHECK(rep.proper);
    // the cod edge {0,1} has no single witness vertex
    CHECK(!rep.edge_witnessing);
}

TEST_CASE("morphism report: turn") {
    auto rep = check_morphism(turn());
    CHECK(rep.co_bijective);
    CHECK(rep.edge_preserving);
    CHECK(rep.edge_injective);
    CHECK(rep.is_function);
    CHECK(!rep.proper); // restriction to {0,1} is still a valid morphism
    CHECK(!rep.end_preserving); // cod end 1 has no end witness
    // the cod edge {0,1} has no single witness vertex here either
    CHECK(!rep.edge_witnessing);
}

TEST_CASE("morphism report: edge-collapsing simple") {
    Rel s = from_function(Graph::path(2), Graph::path(1), {0, 0, 1});
    auto rep = check_morphism(s);
    CHECK(rep.co_bijective);
    CHECK(rep.edge_preserving);
    CHECK(!rep.edge_injective);
    CHECK(rep.end_preserving);
    CHECK(rep.is_function);
}

TEST_CASE("morphism report: membership-style relation") {
    Rel r = base_tangled();
    auto rep = check_morphism(r);
    CHECK(rep.co_bijective);
    CHECK(rep.edge_preserving);
    CHECK(rep.edge_witnessing); // cod edge {0,1} witnessed by dom vertex 1
    CHECK(!rep.is_function);
    CHECK(rep.proper);
    CHECK(rep.end_preserving);
}

TEST_CASE("tangledness of the small cases") {
    CHECK(is_tangled(identity(Graph::path(0))));
    CHECK(!is_tangled(identity(Graph::path(1))));
    CHECK(is_tangled(base_tangled()));
    CHECK(!is_tangled(turn()));

    CHECK(is_tangled_bruteforce(identity(Graph::path(0))));
    CHECK(!is_tangled_bruteforce(identity(Graph::path(1))));
    CHECK(is_tangled_bruteforce(base_tangled()));
    CHECK(!is_tangled_bruteforce(turn()));

    // full relation is not co-injective, so the precondition check fires
    CHECK_THROWS(is_tangled(full_relation(Graph::path(2), Graph::path(1))));
}

TEST_CASE("fast tangledness agrees with the subpath-pair scan") {
    Rng rng(0x0ddba11ULL);
    int tangled_seen = 0;
    for (int it = 0; it < 400; ++it) {
        Rel m = tu::random_path_morphism(rng, (int)rng.range(0, 2), (int)rng.range(1, 5));
        bool fast = is_tangled(m);
        bool brute = is_tangled_bruteforce(m);
        CHECK(fast == brute);
        if (fast) {
            ++tangled_seen;
            CHECK(check_morphism(m).edge_witnessing);
        }
    }
    CHECK(tangled_seen > 0); // the generator does reach tangled composites
}

TEST_CASE("quotient maps are valid morphisms") {
    Rng rng(0x600dcafeULL);
    for (int it = 0; it < 1000; ++it) {
        Graph g = tu::random_graph(rng, 1, 10);
        Partition part;
        part.blocks = (int)rng.range(1, (uint64_t)g.n);
        part.block_of.resize(g.n);
        // force every block non-empty, then scatter the rest
        for (int b = 0; b < part.blocks; ++b) part.block_of[b] = b;
        for (int v = part.blocks; v < g.n; ++v) part.block_of[v] = (int)rng.below(part.blocks);
        REQUIRE(valid_partition(g, part));
        auto qr = quotient_with_map(g, part);
        auto rep = check_morphism(qr.map);
        CHECK(rep.surjective);
        CHECK(rep.edge_preserving);
        CHECK(rep.is_function);
    }
}
