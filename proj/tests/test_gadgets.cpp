#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "bigramsey/classes.hpp"
#include "bigramsey/flim.hpp"
#include "bigramsey/gadgets.hpp"
#include "bigramsey/structures.hpp"

using namespace bigramsey;

namespace {

RelStruct sym_struct(int n, const std::vector<std::pair<int, int>>& edges) {
    RelStruct s;
    s.size = n;
    s.rels.resize(1);
    for (auto [i, j] : edges) {
        s.rels[0].insert({i, j});
        s.rels[0].insert({j, i});
    }
    return s;
}

RelStruct dir_struct(int n, const std::vector<std::pair<int, int>>& arcs) {
    RelStruct s;
    s.size = n;
    s.rels.resize(1);
    for (auto [i, j] : arcs) s.rels[0].insert({i, j});
    return s;
}

}  // namespace

TEST_CASE("gadget sizes are 2m+1 for free and ot, 2m+3 for opo") {
    for (const ClassSpec& c : {make_og(), make_og_k(3), make_oog()}) {
        CAPTURE(class_name(c));
        for (int m = 1; m <= 2; ++m)
            for (const RelStruct& h : enumerate_members(c, m)) {
                Gadget g = build_gadget(h, c);
                CHECK(g.flavor == "free");
                CHECK(g.extended.size == 2 * m + 1);
                CHECK(!g.trivial);
            }
    }
    for (int m = 1; m <= 2; ++m)
        for (const RelStruct& h : enumerate_members(make_ot(), m)) {
            Gadget g = build_gadget(h, make_ot());
            CHECK(g.flavor == "ot");
            CHECK(g.extended.size == 2 * m + 1);
        }
    for (int m = 2; m <= 3; ++m)
        for (const RelStruct& h : enumerate_members(make_opo(), m)) {
            Gadget g = build_gadget(h, make_opo());
            CHECK(g.flavor == "opo");
            CHECK(g.extended.size == 2 * m + 3);
        }
    // the three-element chain gives the 9-vertex instance
    Gadget nine = build_gadget(dir_struct(3, {{0, 1}, {0, 2}, {1, 2}}), make_opo());
    CHECK(nine.extended.size == 9);
    CHECK(nine.hostPositions == std::vector<int>{2, 4, 6});
}

TEST_CASE("the host sits inside the gadget unchanged") {
    for (const ClassSpec& c :
         {make_og(), make_og_k(3), make_oog(), make_ot(), make_opo()}) {
        CAPTURE(class_name(c));
        for (int m = 1; m <= 2; ++m)
            for (const RelStruct& h : enumerate_members(c, m)) {
                Gadget g = build_gadget(h, c);
                CHECK(g.base == h);
                CHECK(induced_substructure(g.extended, g.hostPositions) == h);
                CHECK(membership(g.extended, c));
            }
    }
}

TEST_CASE("free gadgets put the host on the odd positions") {
    Gadget g = build_gadget(sym_struct(1, {}), make_og());
    CHECK(g.hostPositions == std::vector<int>{1});
    CHECK(g.extended == sym_struct(3, {{0, 2}}));

    g = build_gadget(sym_struct(2, {{0, 1}}), make_og());
    CHECK(g.hostPositions == std::vector<int>{1, 3});
    CHECK(g.extended == sym_struct(5, {{0, 2}, {2, 4}, {1, 3}}));

    // a directed class keeps the scaffold chain one-directional
    g = build_gadget(dir_struct(2, {{0, 1}}), make_oog());
    CHECK(g.extended == dir_struct(5, {{0, 2}, {2, 4}, {1, 3}}));
    g = build_gadget(dir_struct(2, {{1, 0}}), make_oog());
    CHECK(g.extended == dir_struct(5, {{0, 2}, {2, 4}, {3, 1}}));
}

TEST_CASE("tournament gadgets orient every scaffold pair") {
    Gadget g = build_gadget(dir_struct(1, {}), make_ot());
    CHECK(g.extended == dir_struct(3, {{0, 2}, {1, 0}, {2, 1}}));

    g = build_gadget(dir_struct(2, {{0, 1}}), make_ot());
    // evens: consecutive forward, the only non-consecutive pair (0,4) backward
    CHECK(g.extended.has(0, 0, 2));
    CHECK(g.extended.has(0, 2, 4));
    CHECK(g.extended.has(0, 4, 0));
    // even-odd always from the larger position to the smaller
    for (int odd : {1, 3})
        for (int even : {0, 2, 4})
            CHECK(g.extended.has(0, std::max(odd, even), std::min(odd, even)));
    CHECK(membership(g.extended, make_ot()));
}

TEST_CASE("partial-order gadgets close their scaffold transitively") {
    // |H| = 1 is the trivial gadget: H-bar is H itself
    Gadget t = build_gadget(dir_struct(1, {}), make_opo());
    CHECK(t.trivial);
    CHECK(t.extended == t.base);
    CHECK(t.hostPositions == std::vector<int>{0});

    // |H| = 2, empty host: scaffold arcs plus the forced composite
    Gadget g = build_gadget(dir_struct(2, {}), make_opo());
    CHECK(g.hostPositions == std::vector<int>{2, 4});
    CHECK(g.extended == dir_struct(7, {{0, 3}, {3, 6}, {1, 5}, {0, 6}}));

    // a host arc joins in without touching the scaffold
    g = build_gadget(dir_struct(2, {{0, 1}}), make_opo());
    CHECK(g.extended == dir_struct(7, {{0, 3}, {3, 6}, {1, 5}, {0, 6}, {2, 4}}));
    CHECK(membership(g.extended, make_opo()));
}

TEST_CASE("gadget builders reject hosts outside the class") {
    CHECK_THROWS_AS(build_gadget(sym_struct(3, {{0, 1}, {0, 2}, {1, 2}}), make_og_k(3)),
                    ClassError);
    CHECK_THROWS_AS(build_gadget_ot(dir_struct(2, {})), ClassError);
    CHECK_THROWS_AS(build_gadget_opo(dir_struct(2, {{1, 0}})), ClassError);
    CHECK_THROWS_AS(build_gadget_free(dir_struct(2, {}), make_ot()), InputError);
}

TEST_CASE("verification confirms the single splitting node abstractly") {
    for (const ClassSpec& c :
         {make_og(), make_og_k(3), make_oog(), make_ot(), make_opo()}) {
        CAPTURE(class_name(c));
        LimitChain chain = build_chain(c, 5);
        for (int m = 1; m <= 2; ++m)
            for (const RelStruct& h : enumerate_members(c, m)) {
                Gadget g = build_gadget(h, c);
                GadgetReport rep = verify_gadget(chain, g, c, 5);
                CAPTURE(struct_key(h));
                CHECK(rep.hostOk);
                CHECK(rep.memberOk);
                CHECK(rep.singleSplit);
                CHECK(rep.ok());
                int wantInternals = g.extended.size >= 2 ? 1 : 0;
                for (const Skeleton& s : rep.enumerated)
                    CHECK(s.internal_count() == wantInternals);
            }
    }
}

TEST_CASE("the raw sweep is conclusive for the smallest gadgets") {
    LimitChain og = build_chain(make_og(), 5);
    Gadget g = build_gadget(sym_struct(1, {}), make_og());
    GadgetReport rep = verify_gadget(og, g, make_og(), 5);
    CHECK(rep.rawRan);
    CHECK(rep.rawCopies == 16774);
    CHECK(rep.rawNonDiagonal == 0);
    CHECK(rep.rawSingleSplit);
    CHECK(rep.note.empty());

    LimitChain ot = build_chain(make_ot(), 5);
    rep = verify_gadget(ot, build_gadget(dir_struct(1, {}), make_ot()), make_ot(), 5);
    CHECK(rep.rawRan);
    CHECK(rep.rawCopies == 774);
    CHECK(rep.rawSingleSplit);

    // the trivial gadget's copies are single branches
    LimitChain opo = build_chain(make_opo(), 5);
    rep = verify_gadget(opo, build_gadget(dir_struct(1, {}), make_opo()), make_opo(), 5);
    CHECK(rep.rawRan);
    CHECK(rep.rawCopies == 120);
    CHECK(rep.rawSingleSplit);
    CHECK(rep.ok());
}

TEST_CASE("five-point gadgets exceed the raw sweep's reach at this depth") {
    LimitChain chain = build_chain(make_og(), 5);
    Gadget g = build_gadget(sym_struct(2, {{0, 1}}), make_og());
    GadgetReport rep = verify_gadget(chain, g, make_og(), 5);
    CHECK(rep.rawRan);
    CHECK(rep.rawCopies == 0);
    CHECK(rep.note == "raw sweep found no copies at this depth");
    CHECK(rep.ok());

    // seven points skip the raw stage entirely
    LimitChain opo = build_chain(make_opo(), 5);
    Gadget seven = build_gadget(dir_struct(2, {}), make_opo());
    rep = verify_gadget(opo, seven, make_opo(), 5);
    CHECK(!rep.rawRan);
    CHECK(rep.ok());
}

TEST_CASE("a starved raw budget is reported, not hidden") {
    LimitChain chain = build_chain(make_og(), 5);
    Gadget g = build_gadget(sym_struct(1, {}), make_og());
    GadgetReport rep = verify_gadget(chain, g, make_og(), 5, 50);
    CHECK(rep.rawRan);
    CHECK(rep.note == "raw scan budget exhausted; partial results");
    CHECK(rep.rawCopies < 16774);
}
