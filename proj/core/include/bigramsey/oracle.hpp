#pragma once

// Ground-truth realization machinery: constructive realization of a skeleton
// inside the truncated coding tree, exhaustive type discovery at a fixed
// level, and the enumerator-vs-oracle comparison report.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bigramsey/classes.hpp"
#include "bigramsey/flim.hpp"
#include "bigramsey/structures.hpp"
#include "bigramsey/tmax.hpp"
#include "bigramsey/types.hpp"

namespace bigramsey {

// A skeleton to inhabit and a structure to induce, looked for among copies
// whose branches all end at level maxDepth.
struct RealizationProblem {
    Skeleton skeleton;
    RelStruct target;
    ClassSpec cls;
    int maxDepth = 0;
};

// Witness on success; otherwise the deepest obstruction: "determination"
// (the skeleton forces contradictory relation values, independent of depth)
// or "level-exhausted" (some internal node's children structure embeds into
// no level structure within the depth).
struct RealizeOutcome {
    std::optional<Copy> witness;
    std::string failureKind;
    std::string failureDetail;
};

RealizeOutcome realize(const LimitChain& chain, const RealizationProblem& p);

// Internal-node levels are searched in increasing order and the first
// admitting level is taken with its lexicographically least embedding, so
// witnesses are deterministic.  Completeness needs no backtracking: levels
// are coherent (each is an induced substructure of every later one), so an
// embedding available at level n stays available at all deeper levels.

enum class SweepMode { backtracking, raw };

// Skeletons of all diagonal copies at the given level inducing exactly h.
// backtracking: skeleton-driven realize over skeletons(|h|).  raw: exhaustive
// sweep over node subsets, guarded to |h| <= 3 and depth <= 6.
std::vector<Skeleton> realized_types(const LimitChain& chain, const RelStruct& h,
                                     const ClassSpec& c, int depth,
                                     SweepMode mode = SweepMode::backtracking);

// One pass over all lex-ordered node triples at the level, grouped by the
// three pair patterns and the skeleton case, so that every 3-point structure
// can be answered from a single sweep.  Cases: 0 = "(0: l0 l1 l2)",
// 1 = "(0: l0 (1: l1 l2))", 2 = "(0: (1: l0 l1) l2)".
struct TripleSweep {
    std::uint64_t patternSpace = 0;            // 4^arity
    std::vector<long long> counts;             // ((p01*S + p02)*S + p12)*3 + case
    long long triples = 0;

    long long count_for(const RelStruct& h, int skelCase) const;
};
TripleSweep sweep_triples(const LimitChain& chain, int depth);

// Exhaustive scan for copies at the level inducing exactly h, with pattern
// pruning.  Non-diagonal matches are counted, not typed.  Guarded to
// |h| <= 5 and depth <= 6; nodeBudget bounds search-tree expansions.
struct RawScan {
    std::vector<Copy> copies;        // capped at 10000, see copiesSeen
    long long copiesSeen = 0;
    long long nonDiagonalSeen = 0;
    bool budgetExhausted = false;
};
RawScan raw_copies_of(const LimitChain& chain, const RelStruct& h, int depth,
                      long long nodeBudget = 50'000'000);

// enumerate_types vs realized_types, with per-skeleton witnesses.  When
// rawConfirm is set and the raw sweep is feasible, the sweep re-derives the
// realized set independently; rawAgrees records the comparison.
struct ComparisonReport {
    std::vector<Skeleton> enumerated;
    std::vector<Skeleton> realized;
    std::vector<Skeleton> missing;   // enumerated but not realized
    std::vector<Skeleton> extra;     // realized but not enumerated
    std::vector<std::pair<std::string, Copy>> witnesses;  // skeleton text -> copy
    long long nonDiagonalSeen = 0;
    bool rawRan = false;
    bool rawAgrees = true;

    bool clean() const { return missing.empty() && extra.empty() && rawAgrees; }
};
ComparisonReport cross_check(const LimitChain& chain, const RelStruct& h,
                             const ClassSpec& c, int depth, bool rawConfirm = false);

}  // namespace bigramsey
