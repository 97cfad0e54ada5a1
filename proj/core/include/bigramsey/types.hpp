#pragma once

// Type skeletons and the type count: planar leaf-ordered trees with strictly
// level-ordered internal nodes, the quotient of diagonal copies by strong
// isomorphism, and the constraint check that decides which skeletons a given
// structure can inhabit.

#include <optional>
#include <string>
#include <vector>

#include "bigramsey/classes.hpp"
#include "bigramsey/flim.hpp"
#include "bigramsey/structures.hpp"
#include "bigramsey/tmax.hpp"

namespace bigramsey {

// Planar tree with m ordered leaves l0..l_{m-1} and internal nodes of arity
// >= 2, each internal carrying a distinct rank 0..K-1 (its position in the
// level order).  Ranks extend ancestry: parents rank earlier than children.
// Encoded canonically as  "l<i>"  for leaves and  "(<rank>: child child ...)"
// for internals; equality and ordering are by encoding.
struct Skeleton {
    struct Child {
        bool leaf = true;
        int id = 0;  // leaf index, or internal rank when !leaf
    };

    int leafCount = 0;
    // internals[r] = ordered child list of the internal node of rank r;
    // internals[0] is the root (forced: the root precedes every other
    // internal in the level order).  Empty exactly when leafCount == 1.
    std::vector<std::vector<Child>> internals;

    int internal_count() const { return static_cast<int>(internals.size()); }
    // Leaf indices below an internal node, in planar (ascending) order.
    std::vector<int> leaves_under(int rank) const;
    std::string text() const;

    bool operator==(const Skeleton& o) const { return text() == o.text(); }
    bool operator!=(const Skeleton& o) const { return !(*this == o); }
    bool operator<(const Skeleton& o) const { return text() < o.text(); }
};

// Parses the canonical encoding; throws InputError on grammar or invariant
// violations (bad rank order, leaf order, arity < 2).
Skeleton parse_skeleton(const std::string& text);

// All skeletons with m leaves, in encoding order.  Throws BudgetError for
// m > 9 (the count grows super-exponentially).
std::vector<Skeleton> skeletons(int m);

// The skeleton of a copy: internal nodes are the distinct pairwise meet
// nodes, children ordered by successor direction, ranks by meet length.
// Throws InputError("non-diagonal copy") when two incomparable meets share a
// length, i.e. the copy is not diagonal.
Skeleton type_of(const Copy& c);

// Both copies must be diagonal.  True iff the induced structures agree (via
// the unique order-preserving bijection, i.e. positionally) and the skeletons
// coincide.
bool strongly_isomorphic(const LimitChain& chain, const Copy& c1, const Copy& c2);

// Relations forced on the children of each internal node by the leaf
// structure H.  ok=false when some internal node has an ordered child pair
// whose leaf pairs disagree on a symbol (no copy of H can have this shape).
struct Determination {
    bool ok = true;
    std::string violation;             // set when !ok
    std::vector<RelStruct> children;   // per rank, set when ok
};
Determination determine_children(const Skeleton& skel, const RelStruct& h,
                                 const Signature& sig);

// Realizability of a skeleton for H inside the coding tree over C: the
// determination above must succeed and every internal node's children
// structure must itself be a member of C.  The certificate names the violated
// node/pair or lists the per-node children structures.
struct RealizabilityReport {
    bool ok = false;
    std::string certificate;
    std::vector<RelStruct> childrenStructures;  // per rank, set when ok
};
RealizabilityReport check_realizable(const Skeleton& skel, const RelStruct& h,
                                     const ClassSpec& c);

// All realizable skeletons with |H| leaves, in encoding order.  The count is
// the big Ramsey degree T(H, F_max).  Throws ClassError when H is not a
// member of C.
std::vector<Skeleton> enumerate_types(const RelStruct& h, const ClassSpec& c);

}  // namespace bigramsey
