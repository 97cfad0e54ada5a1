#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bigramsey/structures.hpp"

namespace bigramsey {

enum class ClassKind { og, og_k, oog, ot, opo, forb };

// A Fraisse class of finite ordered structures, given by kind plus
// parameters.  og_k keeps the clique bound in k; forb keeps the forbidden
// reducts (each irreducible: every pair of points carries some relation).
struct ClassSpec {
    ClassKind kind = ClassKind::og;
    int k = 0;
    std::vector<RelStruct> forbidden;
    Signature signature;

    bool operator==(const ClassSpec&) const = default;
};

ClassSpec make_og();
ClassSpec make_og_k(int k);  // k >= 3
ClassSpec make_oog();
ClassSpec make_ot();
ClassSpec make_opo();
ClassSpec make_forb(Signature sig, std::vector<RelStruct> forbidden);

std::string class_name(const ClassSpec& c);

// Membership test.  Throws InputError on signature arity mismatch.
bool membership(const RelStruct& s, const ClassSpec& c);

// Reason the structure fails membership, or nullopt when it is a member.
// For og_k and forb the reason names the forbidden structure that embeds.
std::optional<std::string> membership_failure(const RelStruct& s, const ClassSpec& c);

// One-point extension of an m-point structure: the new point sits at order
// position rank (0..m), and config encodes its relations to the existing
// points.  config is a base-P number with one digit per existing point, most
// significant digit for point 0; each digit packs two bits per symbol
// (bit0 = R_l(new, old), bit1 = R_l(old, new)), symmetric symbols using only
// {absent, present}.  This encoding is part of the format-stability contract.
struct ExtensionDescriptor {
    int rank = 0;
    std::uint64_t config = 0;
    bool operator==(const ExtensionDescriptor&) const = default;
};

// Number of per-pair pattern values P (product over symbols).
std::uint64_t pair_pattern_count(const Signature& sig);

// Translate one config digit into a pair pattern as stored by
// RelStruct::pair_pattern (two bits per symbol).
std::uint64_t digit_to_pattern(std::uint64_t digit, const Signature& sig);
std::uint64_t pattern_to_digit(std::uint64_t pattern, const Signature& sig);

// The structure on m+1 points obtained by applying d to s: new point at
// index d.rank after order-canonical relabelling.
RelStruct apply_extension(const RelStruct& s, const ExtensionDescriptor& d,
                          const Signature& sig);

// All descriptors whose extension lies in c, ordered by (rank, config).
// Throws ClassError if s itself is not a member.
std::vector<ExtensionDescriptor> one_point_extensions(const RelStruct& s,
                                                      const ClassSpec& c);

// All members of c with exactly the given size, in ascending order of the
// pair-pattern code enumeration.  Guarded to size <= 5.
std::vector<RelStruct> enumerate_members(const ClassSpec& c, int size);

}  // namespace bigramsey
