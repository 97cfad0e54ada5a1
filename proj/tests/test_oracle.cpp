#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "bigramsey/classes.hpp"
#include "bigramsey/flim.hpp"
#include "bigramsey/oracle.hpp"
#include "bigramsey/tmax.hpp"
#include "bigramsey/types.hpp"

using namespace bigramsey;

namespace {

RelStruct graph3(bool e01, bool e02, bool e12) {
    RelStruct h;
    h.size = 3;
    h.rels.resize(1);
    auto put = [&](int i, int j, bool e) {
        if (e) {
            h.rels[0].insert({i, j});
            h.rels[0].insert({j, i});
        }
    };
    put(0, 1, e01);
    put(0, 2, e02);
    put(1, 2, e12);
    return h;
}

std::set<std::string> texts(const std::vector<Skeleton>& v) {
    std::set<std::string> out;
    for (const Skeleton& s : v) out.insert(s.text());
    return out;
}

long long choose3(long long n) { return n * (n - 1) * (n - 2) / 6; }

}  // namespace

TEST_CASE("realize returns checkable witnesses for every enumerated type") {
    ClassSpec og = make_og();
    LimitChain chain = build_chain(og, 6);
    for (int n = 1; n <= 3; ++n) {
        for (const RelStruct& h : enumerate_members(og, n)) {
            for (const Skeleton& skel : enumerate_types(h, og)) {
                CAPTURE(skel.text());
                RealizationProblem p{skel, h, og, 6};
                RealizeOutcome out = realize(chain, p);
                REQUIRE(out.witness.has_value());
                const Copy& c = *out.witness;
                REQUIRE(c.size() == n);
                for (const Node& t : c.nodes) CHECK(t.length() == 6);
                if (n >= 2) CHECK(type_of(c) == skel);
                CHECK(induced_structure(chain, c) == h);
            }
        }
    }
}

TEST_CASE("realize is deterministic") {
    ClassSpec og = make_og();
    LimitChain chain = build_chain(og, 6);
    RealizationProblem p{parse_skeleton("(0: l0 (1: l1 l2))"), graph3(1, 1, 0), og, 6};
    RealizeOutcome a = realize(chain, p);
    RealizeOutcome b = realize(chain, p);
    REQUIRE(a.witness.has_value());
    REQUIRE(b.witness.has_value());
    CHECK(a.witness->nodes == b.witness->nodes);
}

TEST_CASE("realize reports the obstruction kind") {
    ClassSpec og = make_og();
    LimitChain chain = build_chain(og, 6);

    // contradictory determination, independent of depth
    RealizationProblem bad{parse_skeleton("(0: l0 (1: l1 l2))"), graph3(1, 0, 1), og, 6};
    RealizeOutcome out = realize(chain, bad);
    CHECK(!out.witness.has_value());
    CHECK(out.failureKind == "determination");
    CHECK(!out.failureDetail.empty());

    // a 5-point children structure no level of this chain contains
    RelStruct p3k2;
    p3k2.size = 5;
    p3k2.rels.resize(1);
    for (auto [i, j] : {std::pair{0, 2}, {2, 4}, {1, 3}}) {
        p3k2.rels[0].insert({i, j});
        p3k2.rels[0].insert({j, i});
    }
    RealizationProblem tall{parse_skeleton("(0: l0 l1 l2 l3 l4)"), p3k2, og, 6};
    out = realize(chain, tall);
    CHECK(!out.witness.has_value());
    CHECK(out.failureKind == "level-exhausted");
    CHECK(!out.failureDetail.empty());

    // leaf count must match the target size
    RealizationProblem mis{parse_skeleton("(0: l0 l1)"), graph3(0, 0, 0), og, 6};
    CHECK_THROWS_AS(realize(chain, mis), InputError);
}

TEST_CASE("backtracking and raw sweeps agree at shallow depth") {
    for (const ClassSpec& c : {make_og(), make_ot()}) {
        CAPTURE(class_name(c));
        LimitChain chain = build_chain(c, 5);
        for (int n = 1; n <= 3; ++n) {
            for (const RelStruct& h : enumerate_members(c, n)) {
                auto back = realized_types(chain, h, c, 5, SweepMode::backtracking);
                auto raw = realized_types(chain, h, c, 5, SweepMode::raw);
                CHECK(texts(back) == texts(raw));
            }
        }
    }
}

TEST_CASE("the triple sweep partitions all sorted triples") {
    LimitChain chain = build_chain(make_og(), 5);
    TripleSweep sweep = sweep_triples(chain, 5);
    CHECK(sweep.triples == choose3(120));
    long long sum = 0;
    for (long long v : sweep.counts) sum += v;
    CHECK(sum == sweep.triples);

    // per-structure totals match the exhaustive scan
    for (const RelStruct& h : enumerate_members(make_og(), 3)) {
        RawScan scan = raw_copies_of(chain, h, 5);
        CHECK(!scan.budgetExhausted);
        CHECK(scan.nonDiagonalSeen == 0);
        long long total = 0;
        for (int skelCase = 0; skelCase < 3; ++skelCase)
            total += sweep.count_for(h, skelCase);
        CHECK(total == scan.copiesSeen);
    }
    CHECK_THROWS_AS(sweep.count_for(graph3(0, 0, 0), 3), InputError);
}

TEST_CASE("sweep cases match realized skeletons") {
    const char* caseText[3] = {"(0: l0 l1 l2)", "(0: l0 (1: l1 l2))",
                               "(0: (1: l0 l1) l2)"};
    LimitChain chain = build_chain(make_og(), 5);
    TripleSweep sweep = sweep_triples(chain, 5);
    for (const RelStruct& h : enumerate_members(make_og(), 3)) {
        auto realized = texts(realized_types(chain, h, make_og(), 5));
        for (int skelCase = 0; skelCase < 3; ++skelCase) {
            CAPTURE(skelCase);
            CHECK((sweep.count_for(h, skelCase) > 0) ==
                  (realized.count(caseText[skelCase]) > 0));
        }
    }
}

TEST_CASE("raw scan caps its copy list and respects its budget") {
    LimitChain chain = build_chain(make_og(), 5);
    RawScan scan = raw_copies_of(chain, graph3(0, 0, 0), 5);
    CHECK(scan.copiesSeen > 10000);
    CHECK(scan.copies.size() == 10000);
    for (const Copy& c : scan.copies) CHECK(induced_structure(chain, c) == graph3(0, 0, 0));

    RawScan tiny = raw_copies_of(chain, graph3(0, 0, 0), 5, 100);
    CHECK(tiny.budgetExhausted);
    CHECK(tiny.copiesSeen <= scan.copiesSeen);
}

TEST_CASE("oracle guards") {
    LimitChain chain = build_chain(make_og(), 5);
    CHECK_THROWS_AS(realized_types(chain, graph3(0, 0, 0), make_og(), 6), InputError);
    CHECK_THROWS_AS(realized_types(chain, graph3(0, 0, 0), make_og(), 7, SweepMode::raw),
                    InputError);  // chain too shallow reported first
    LimitChain deep = build_chain(make_og(), 7);
    CHECK_THROWS_AS(realized_types(deep, graph3(0, 0, 0), make_og(), 7, SweepMode::raw),
                    BudgetError);
    CHECK_THROWS_AS(sweep_triples(deep, 7), BudgetError);
    RelStruct six;
    six.size = 6;
    six.rels.resize(1);
    CHECK_THROWS_AS(raw_copies_of(chain, six, 5), BudgetError);
}

TEST_CASE("cross_check is clean on every small member") {
    for (const ClassSpec& c : {make_og(), make_ot()}) {
        CAPTURE(class_name(c));
        LimitChain chain = build_chain(c, 5);
        for (int n = 1; n <= 3; ++n) {
            for (const RelStruct& h : enumerate_members(c, n)) {
                ComparisonReport rep = cross_check(chain, h, c, 5, true);
                CAPTURE(struct_key(h));
                CHECK(rep.clean());
                CHECK(rep.rawRan);
                CHECK(rep.rawAgrees);
                CHECK(rep.nonDiagonalSeen == 0);
                CHECK(texts(rep.enumerated) == texts(rep.realized));
                CHECK(rep.witnesses.size() == rep.realized.size());
                for (const auto& [text, copy] : rep.witnesses) {
                    CHECK(induced_structure(chain, copy) == h);
                    if (h.size >= 2) CHECK(type_of(copy).text() == text);
                }
            }
        }
    }
}

TEST_CASE("cross_check reports missing realizations honestly") {
    // the single-split type of this 5-point structure needs a level
    // containing it; the depth-6 chain has none
    RelStruct p3k2;
    p3k2.size = 5;
    p3k2.rels.resize(1);
    for (auto [i, j] : {std::pair{0, 2}, {2, 4}, {1, 3}}) {
        p3k2.rels[0].insert({i, j});
        p3k2.rels[0].insert({j, i});
    }
    LimitChain chain = build_chain(make_og(), 6);
    ComparisonReport rep = cross_check(chain, p3k2, make_og(), 6);
    CHECK(!rep.clean());
    CHECK(rep.missing.size() == 1);
    CHECK(rep.extra.empty());
    CHECK(!rep.rawRan);  // |H| > 3: the raw tier cannot run
}

TEST_CASE("cross_check refuses structures outside the class") {
    LimitChain chain = build_chain(make_og_k(3), 5);
    CHECK_THROWS_AS(cross_check(chain, graph3(1, 1, 1), make_og_k(3), 5), ClassError);
}
