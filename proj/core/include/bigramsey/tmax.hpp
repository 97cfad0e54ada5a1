#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bigramsey/flim.hpp"
#include "bigramsey/structures.hpp"

namespace bigramsey {

// A node of the coding tree: a finite sequence with entries[i] <= i.  The
// node at level n has n+1 immediate successors, one per point of the level-n
// structure.
struct Node {
    std::vector<int> entries;

    Node() = default;
    explicit Node(std::vector<int> e);  // throws InputError unless entries[i] <= i

    int length() const { return static_cast<int>(entries.size()); }
    bool operator==(const Node&) const = default;
    bool operator<(const Node& o) const { return entries < o.entries; }  // lex
    std::string text() const;  // "<0,1,2>"
};

// The n+1 successors of a level-n node, in lexicographic order.
std::vector<Node> successors(const Node& t);

// Number of level-n nodes: n!.  Guarded to n <= 20.
std::uint64_t level_count(int n);

// All level-n nodes in lexicographic order.  Guarded to n <= 9.
std::vector<Node> level_nodes(int n);

// Longest common initial segment.  Throws InputError on equal nodes.
Node meet(const Node& x, const Node& y);

// An antichain of distinct nodes of one level, kept in lexicographic order.
struct Copy {
    std::vector<Node> nodes;

    Copy() = default;
    explicit Copy(std::vector<Node> ns);  // sorts; throws on duplicates/mixed lengths

    int size() const { return static_cast<int>(nodes.size()); }
};

struct DeltaCrown {
    int delta = 0;             // max pairwise meet length
    std::vector<Node> crown;   // distinct restrictions to delta+1, lex order
};

DeltaCrown delta_and_crown(const Copy& c);

// Relation between the branches x and y: decided at their meet, by the pair
// of successor directions read inside the meet-level structure of the chain.
bool eval_relation(const LimitChain& chain, int symbol, const Node& x, const Node& y);

// All symbols at once, packed like RelStruct::pair_pattern.
std::uint64_t branch_pair_pattern(const LimitChain& chain, const Node& x, const Node& y);

// Structure induced on the nodes of c (in lex order) by eval_relation.
RelStruct induced_structure(const LimitChain& chain, const Copy& c);

}  // namespace bigramsey
