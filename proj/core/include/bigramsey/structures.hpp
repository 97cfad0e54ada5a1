#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bigramsey {

// Error taxonomy, mirrored by the CLI exit codes.
struct InputError : std::runtime_error {   // malformed or inconsistent input (exit 2)
    using std::runtime_error::runtime_error;
};
struct ClassError : std::runtime_error {   // structure outside the class at hand (exit 3)
    using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {  // search exceeded its configured budget (exit 4)
    using std::runtime_error::runtime_error;
};

// Relation symbols of an ordered binary signature.  The linear order < is
// implicit and never appears as a symbol; per-symbol flags record whether a
// symbol is required to be symmetric and/or irreflexive.
struct Signature {
    std::vector<std::string> symbols;
    std::vector<bool> symmetric;
    std::vector<bool> irreflexive;

    int arity() const { return static_cast<int>(symbols.size()); }
    bool operator==(const Signature&) const = default;
};

Signature graph_signature();     // one symmetric irreflexive symbol R0
Signature directed_signature();  // one irreflexive symbol R0

// Finite structure with universe {0,...,size-1}; the natural order on the
// universe is the linear order of the structure.  rels[l] holds the ordered
// pairs of symbol l; symmetric symbols store both directions explicitly.
struct RelStruct {
    int size = 0;
    std::vector<std::set<std::pair<int, int>>> rels;

    bool has(int l, int i, int j) const {
        return rels[l].count({i, j}) > 0;
    }
    // Two bits per symbol: bit0 = R_l(i,j), bit1 = R_l(j,i).
    std::uint64_t pair_pattern(int i, int j) const;

    bool operator==(const RelStruct&) const = default;
    bool operator<(const RelStruct& o) const {
        return size != o.size ? size < o.size : rels < o.rels;
    }
};

// Compact deterministic key, usable as a map key or log token.
std::string struct_key(const RelStruct& s);

struct Violation {
    std::string kind;   // "arity", "bounds", "irreflexive", "symmetric"
    int symbol = -1;
    std::pair<int, int> pair{-1, -1};
    std::string message() const;
};

// Empty result iff s respects index bounds and every signature flag.
std::vector<Violation> validate(const RelStruct& s, const Signature& sig);

// Substructure induced on the given universe indices (strictly increasing);
// point k of the result is subset[k].
RelStruct induced_substructure(const RelStruct& s, const std::vector<int>& subset);

struct Embedding {
    std::vector<int> map;  // image of point k is map[k]; strictly increasing
    bool operator==(const Embedding&) const = default;
};

// All order-embeddings of a into b (strictly increasing maps preserving every
// relation in both directions), in lexicographic order of the image tuple.
std::vector<Embedding> find_embeddings(const RelStruct& a, const RelStruct& b);

// Ordered structures on initial segments are isomorphic iff they are equal:
// the only order bijection between them is the identity.
bool is_isomorphic(const RelStruct& a, const RelStruct& b);

// True iff a maps injectively into b preserving every relation both ways but
// ignoring the linear order.  Used for Forb(F) reduct membership.
bool embeds_unordered(const RelStruct& a, const RelStruct& b);

}  // namespace bigramsey
