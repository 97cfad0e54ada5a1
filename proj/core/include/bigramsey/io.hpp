#pragma once

// Wire formats: JSON (de)serialization for structures, classes, copies,
// reports, gadgets and chain caches, plus dot/text emitters.  All functions
// exchange plain strings; parse failures raise InputError.

#include <string>
#include <vector>

#include "bigramsey/classes.hpp"
#include "bigramsey/flim.hpp"
#include "bigramsey/gadgets.hpp"
#include "bigramsey/oracle.hpp"
#include "bigramsey/structures.hpp"
#include "bigramsey/tmax.hpp"
#include "bigramsey/types.hpp"

namespace bigramsey {

// {"size": m, "relations": {"R0": [[i,j], ...], ...}}
std::string struct_to_json(const RelStruct& s, const Signature& sig);
// Symmetric symbols may list each pair once; the parser closes them and, when
// it did, sets *closedSymmetric.
RelStruct struct_from_json(const std::string& text, const Signature& sig,
                           bool* closedSymmetric = nullptr);

// {"kind":"og"} | {"kind":"og_k","k":3} | ... | {"kind":"forb","forbidden":[...]}
// forb accepts an optional "signature" object (symbols/symmetric/irreflexive
// arrays); the default is one directed irreflexive symbol R0.
std::string class_to_json(const ClassSpec& c);
ClassSpec class_from_json(const std::string& text);

// {"nodes": [[0,1,2], ...]}
std::string copy_to_json(const Copy& c);
Copy copy_from_json(const std::string& text);

// {"count": n, "types": ["(0: l0 l1 l2)", ...]}
std::string types_to_json(const std::vector<Skeleton>& types);

// {"enumerated":[...], "realized":[...], "missing":[...], "extra":[...],
//  "witnesses":{skeleton: copy}, "nonDiagonalSeen": n}
std::string report_to_json(const ComparisonReport& rep);

// structure JSON of the extension plus {"host":[...], "flavor":"...", "trivial":...}
std::string gadget_to_json(const Gadget& g, const Signature& sig);

std::string gadget_report_to_json(const GadgetReport& rep);

// Full chain state (class, options, version, raw/order/levels, log, demand
// traces); chain_from_json rejects caches from another generator version.
std::string chain_to_json(const LimitChain& chain);
LimitChain chain_from_json(const std::string& text);

// Returns the cached chain when cachePath holds one for the same class,
// options and generator version at depth >= depth; otherwise builds the
// chain and (over)writes the cache.  Empty cachePath skips caching.
LimitChain load_or_build_chain(const ClassSpec& c, int depth, const ChainOptions& opts,
                               const std::string& cachePath);

// dot renderings (one statement per line, deterministic order)
std::string skeleton_dot(const Skeleton& s);
std::string gadget_dot(const Gadget& g, const Signature& sig);

// plain-text renderings
std::string struct_text(const RelStruct& s, const Signature& sig);
std::string chain_text(const LimitChain& chain);

}  // namespace bigramsey
