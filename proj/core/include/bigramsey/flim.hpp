#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bigramsey/classes.hpp"
#include "bigramsey/structures.hpp"

namespace bigramsey {

// A one-point-extension demand over a concrete base: some point outside base
// should relate to the base exactly as the descriptor says (descriptor rank
// and config are read against the base's induced substructure).
struct Demand {
    std::vector<int> base;  // enumeration ids, ascending
    ExtensionDescriptor descriptor;
    bool operator==(const Demand&) const = default;
};

struct ChainLogEntry {
    int stage = 0;              // the stage that added point `stage`
    std::string kind;           // "pack" or "demand"
    std::vector<int> base;      // enumeration ids the descriptor talks about
    ExtensionDescriptor descriptor;
    int slot = 0;               // insertion position in the global order
};

// Trace of one enqueued demand, kept for fairness diagnostics (not part of
// the serialized cache).
struct DemandTrace {
    Demand demand;
    int stageEnqueued = 0;
    int stageSatisfied = -1;  // first stage at which some point matched
};

// Knobs of the deterministic generator.  They are part of the schedule
// contract: changing any of them changes golden outputs, so they are
// fingerprinted into the cache key.
struct ChainOptions {
    int packSizeCap = 3;        // realize every member of size <= cap ...
    int packLevelBudget = 7;    // ... within this many levels if possible
    std::int64_t packNodeBudget = 4'000'000;  // search nodes per deepening step
    int demandBaseCap = 3;      // demands enumerate bases up to this size
    bool operator==(const ChainOptions&) const = default;
};

// Finite initial run of a fixed enumeration of Flim(K) on omega.
// raw[n] lives on enumeration ids {0..n}; order[n] lists those ids in the
// linear order of the limit; levels[n] is raw[n] relabelled so that < is the
// natural order.  raw[n] restricted to {0..n-1} equals raw[n-1], and order[n]
// restricted likewise equals order[n-1].
struct LimitChain {
    ClassSpec cls;
    ChainOptions options;
    int depth = 0;
    std::vector<RelStruct> raw;
    std::vector<std::vector<int>> order;
    std::vector<RelStruct> levels;
    std::vector<ChainLogEntry> log;
    std::vector<DemandTrace> demandTrace;
};

inline constexpr const char* kChainGeneratorVersion = "bigramsey-chain-1";

// Deterministic: equal inputs give byte-identical chains.  The schedule runs
// a packing prefix (shortest descriptor sequence realizing every member of
// size <= packSizeCap, found by iterative-deepening search) and then serves
// a FIFO queue of one-point-extension demands enumerated over all bases of
// size <= demandBaseCap (bases by size then colex, descriptors by
// (rank, config)); each stage realizes the oldest unsatisfied demand.
LimitChain build_chain(const ClassSpec& c, int depth, const ChainOptions& opts = {});

const RelStruct& level_structure(const LimitChain& chain, int n);

// The chain as a fresh build of the given smaller depth would have produced
// it (the generator is prefix-deterministic, so this is an exact restriction,
// byte-identical after serialization).
LimitChain truncate_chain(const LimitChain& chain, int depth);

struct UniversalityResult {
    bool ok = false;
    int budget = -1;                    // least N covering every member
    std::optional<RelStruct> witness;   // an uncovered member when !ok
};

// Least N such that every member of size <= s order-embeds into levels[N].
UniversalityResult universality_budget(const LimitChain& chain, int s);

// True iff some point outside d.base matches d in raw[n] (relations to the
// base exactly as the descriptor says, order rank among the base matching).
bool demand_satisfied(const LimitChain& chain, int n, const Demand& d);

}  // namespace bigramsey
