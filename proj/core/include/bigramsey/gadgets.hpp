#pragma once

// Gadget constructions: extensions H-bar of a structure H, built so that
// every copy of H-bar in the coding tree branches at a single splitting
// node, plus the verification harness for that property.

#include <string>
#include <vector>

#include "bigramsey/classes.hpp"
#include "bigramsey/flim.hpp"
#include "bigramsey/oracle.hpp"
#include "bigramsey/structures.hpp"
#include "bigramsey/types.hpp"

namespace bigramsey {

struct Gadget {
    RelStruct base;                  // the input H
    RelStruct extended;              // H-bar
    std::vector<int> hostPositions;  // where H sits inside H-bar
    std::string flavor;              // "free" | "ot" | "opo"
    bool trivial = false;            // opo with |H| = 1: H-bar is H itself
};

// Free-amalgamation flavor (og, og_k, oog, forb): size 2m+1, H on the odd
// positions, an R0-chain on the even positions (one direction only when R0
// is not symmetric), nothing else.
Gadget build_gadget_free(const RelStruct& h, const ClassSpec& c);

// Tournament flavor: size 2m+1, H on the odd positions; consecutive evens
// point forward, non-consecutive evens point backward, and each even-odd
// pair points from the larger index to the smaller.
Gadget build_gadget_ot(const RelStruct& h);

// Partial-order flavor: size 2m+3, H on positions v_2..v_{2m}; scaffold
// relations R(v_0,v_3), R(v_{2m-1},v_{2m+2}) and R(v_i,v_{i+4}) for odd
// i <= 2m-3, closed under transitivity.  |H| = 1 yields the trivial gadget.
Gadget build_gadget_opo(const RelStruct& h);

// Flavor dispatch on the class kind.
Gadget build_gadget(const RelStruct& h, const ClassSpec& c);

struct GadgetReport {
    bool hostOk = false;        // H-bar restricted to hostPositions equals H
    bool memberOk = false;      // H-bar is a member of the class
    std::vector<Skeleton> enumerated;  // realizable skeletons of H-bar
    bool singleSplit = false;   // every enumerated skeleton has one internal node
    bool rawRan = false;        // the level sweep below actually ran
    long long rawCopies = 0;    // copies of H-bar found at the sweep level
    long long rawNonDiagonal = 0;
    bool rawSingleSplit = true;  // every swept copy meets at a single node
    std::string note;

    bool ok() const {
        return hostOk && memberOk && singleSplit && (!rawRan || rawSingleSplit);
    }
};

// (a) enumerates the realizable skeletons of g.extended and checks they all
// have exactly one internal node, (b) when depth > 0 and the raw scan is
// feasible (|extended| <= 5, depth <= 5), confirms the property over the
// actual copies at that depth, (c) rechecks the host embedding and class
// membership.  Budget exhaustion is reported in note, partial results kept.
GadgetReport verify_gadget(const LimitChain& chain, const Gadget& g, const ClassSpec& c,
                           int depth, long long rawBudget = 50'000'000);

}  // namespace bigramsey
