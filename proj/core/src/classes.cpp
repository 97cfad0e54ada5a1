#include "bigramsey/classes.hpp"

#include <algorithm>
#include <functional>

namespace bigramsey {

namespace {

RelStruct clique(int k) {
    RelStruct s;
    s.size = k;
    s.rels.resize(1);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j) s.rels[0].insert({i, j});
    return s;
}

bool antisymmetric(const RelStruct& s, int l) {
    for (const auto& [i, j] : s.rels[l])
        if (i != j && s.has(l, j, i)) return false;
    return true;
}

bool total(const RelStruct& s, int l) {
    for (int i = 0; i < s.size; ++i)
        for (int j = i + 1; j < s.size; ++j)
            if (!s.has(l, i, j) && !s.has(l, j, i)) return false;
    return true;
}

bool transitive(const RelStruct& s, int l) {
    for (const auto& [i, j] : s.rels[l])
        for (const auto& [j2, k] : s.rels[l])
            if (j == j2 && i != k && !s.has(l, i, k)) return false;
    return true;
}

bool order_compatible(const RelStruct& s, int l) {
    for (const auto& [i, j] : s.rels[l])
        if (i >= j) return false;
    return true;
}

}  // namespace

ClassSpec make_og() { return {ClassKind::og, 0, {}, graph_signature()}; }

ClassSpec make_og_k(int k) {
    if (k < 3) throw InputError("og_k: k must be at least 3");
    return {ClassKind::og_k, k, {}, graph_signature()};
}

ClassSpec make_oog() { return {ClassKind::oog, 0, {}, directed_signature()}; }
ClassSpec make_ot() { return {ClassKind::ot, 0, {}, directed_signature()}; }
ClassSpec make_opo() { return {ClassKind::opo, 0, {}, directed_signature()}; }

ClassSpec make_forb(Signature sig, std::vector<RelStruct> forbidden) {
    for (const auto& f : forbidden) {
        if (f.size == 0) throw InputError("forb: forbidden structures must be nonempty");
        if (static_cast<int>(f.rels.size()) != sig.arity())
            throw InputError("forb: forbidden structure arity mismatch");
        if (!validate(f, sig).empty())
            throw InputError("forb: forbidden structure violates signature flags");
        for (int i = 0; i < f.size; ++i)
            for (int j = i + 1; j < f.size; ++j)
                if (f.pair_pattern(i, j) == 0)
                    throw InputError("forb: forbidden structures must be irreducible");
    }
    return {ClassKind::forb, 0, std::move(forbidden), std::move(sig)};
}

std::string class_name(const ClassSpec& c) {
    switch (c.kind) {
        case ClassKind::og: return "og";
        case ClassKind::og_k: return "og_" + std::to_string(c.k);
        case ClassKind::oog: return "oog";
        case ClassKind::ot: return "ot";
        case ClassKind::opo: return "opo";
        case ClassKind::forb: return "forb";
    }
    return "?";
}

bool membership(const RelStruct& s, const ClassSpec& c) {
    return !membership_failure(s, c).has_value();
}

std::optional<std::string> membership_failure(const RelStruct& s, const ClassSpec& c) {
    if (static_cast<int>(s.rels.size()) != c.signature.arity())
        throw InputError("membership: signature arity mismatch");
    auto violations = validate(s, c.signature);
    if (!violations.empty()) return violations.front().message();
    switch (c.kind) {
        case ClassKind::og:
            return std::nullopt;
        case ClassKind::og_k:
            if (embeds_unordered(clique(c.k), s))
                return "a " + std::to_string(c.k) + "-clique embeds";
            return std::nullopt;
        case ClassKind::oog:
            if (!antisymmetric(s, 0)) return "R0 is not antisymmetric";
            return std::nullopt;
        case ClassKind::ot:
            if (!antisymmetric(s, 0)) return "R0 is not antisymmetric";
            if (!total(s, 0)) return "R0 is not total";
            return std::nullopt;
        case ClassKind::opo:
            if (!antisymmetric(s, 0)) return "R0 is not antisymmetric";
            if (!transitive(s, 0)) return "R0 is not transitive";
            if (!order_compatible(s, 0)) return "R0 relates some pair against the order";
            return std::nullopt;
        case ClassKind::forb:
            for (std::size_t i = 0; i < c.forbidden.size(); ++i)
                if (embeds_unordered(c.forbidden[i], s))
                    return "forbidden structure " + std::to_string(i) + " (" +
                           struct_key(c.forbidden[i]) + ") embeds";
            return std::nullopt;
    }
    return "unknown class kind";
}

std::uint64_t pair_pattern_count(const Signature& sig) {
    std::uint64_t p = 1;
    for (int l = 0; l < sig.arity(); ++l) p *= sig.symmetric[l] ? 2 : 4;
    return p;
}

std::uint64_t digit_to_pattern(std::uint64_t digit, const Signature& sig) {
    std::uint64_t pattern = 0;
    for (int l = 0; l < sig.arity(); ++l) {
        std::uint64_t radix = sig.symmetric[l] ? 2 : 4;
        std::uint64_t v = digit % radix;
        digit /= radix;
        if (sig.symmetric[l]) v = v ? 3 : 0;  // present means both directions
        pattern |= v << (2 * l);
    }
    return pattern;
}

std::uint64_t pattern_to_digit(std::uint64_t pattern, const Signature& sig) {
    std::uint64_t digit = 0, stride = 1;
    for (int l = 0; l < sig.arity(); ++l) {
        std::uint64_t v = (pattern >> (2 * l)) & 3;
        if (sig.symmetric[l]) v = v ? 1 : 0;
        digit += v * stride;
        stride *= sig.symmetric[l] ? 2 : 4;
    }
    return digit;
}

RelStruct apply_extension(const RelStruct& s, const ExtensionDescriptor& d,
                          const Signature& sig) {
    if (d.rank < 0 || d.rank > s.size)
        throw InputError("apply_extension: rank out of range");
    const std::uint64_t P = pair_pattern_count(sig);
    RelStruct r;
    r.size = s.size + 1;
    r.rels.resize(s.rels.size());
    auto relabel = [&](int old) { return old < d.rank ? old : old + 1; };
    for (int l = 0; l < static_cast<int>(s.rels.size()); ++l)
        for (const auto& [i, j] : s.rels[l]) r.rels[l].insert({relabel(i), relabel(j)});

    // Peel digits from most significant (existing point 0) downward.
    std::uint64_t cfg = d.config;
    std::uint64_t place = 1;
    for (int i = 1; i < s.size; ++i) place *= P;
    for (int i = 0; i < s.size; ++i) {
        std::uint64_t digit = cfg / place;
        cfg %= place;
        if (i + 1 < s.size) place /= P;
        std::uint64_t pattern = digit_to_pattern(digit, sig);
        for (int l = 0; l < sig.arity(); ++l) {
            std::uint64_t bits = (pattern >> (2 * l)) & 3;
            if (bits & 1) r.rels[l].insert({d.rank, relabel(i)});
            if (bits & 2) r.rels[l].insert({relabel(i), d.rank});
        }
    }
    return r;
}

std::vector<ExtensionDescriptor> one_point_extensions(const RelStruct& s,
                                                      const ClassSpec& c) {
    if (!membership(s, c)) throw ClassError("one_point_extensions: structure not in class");
    const std::uint64_t P = pair_pattern_count(c.signature);
    std::uint64_t total = 1;
    for (int i = 0; i < s.size; ++i) {
        if (total > (1ull << 40) / P) throw BudgetError("one_point_extensions: config space too large");
        total *= P;
    }
    std::vector<ExtensionDescriptor> out;
    for (int rank = 0; rank <= s.size; ++rank)
        for (std::uint64_t cfg = 0; cfg < total; ++cfg) {
            ExtensionDescriptor d{rank, cfg};
            if (membership(apply_extension(s, d, c.signature), c)) out.push_back(d);
        }
    return out;
}

std::vector<RelStruct> enumerate_members(const ClassSpec& c, int size) {
    if (size < 0 || size > 5) throw InputError("enumerate_members: size must be in 0..5");
    const std::uint64_t P = pair_pattern_count(c.signature);
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j) pairs.push_back({i, j});

    std::vector<RelStruct> out;
    RelStruct s;
    s.size = size;
    s.rels.resize(c.signature.arity());
    std::function<void(int)> rec = [&](int p) {
        if (p == static_cast<int>(pairs.size())) {
            if (membership(s, c)) out.push_back(s);
            return;
        }
        auto [i, j] = pairs[p];
        for (std::uint64_t digit = 0; digit < P; ++digit) {
            std::uint64_t pattern = digit_to_pattern(digit, c.signature);
            for (int l = 0; l < c.signature.arity(); ++l) {
                std::uint64_t bits = (pattern >> (2 * l)) & 3;
                if (bits & 1) s.rels[l].insert({i, j});
                if (bits & 2) s.rels[l].insert({j, i});
            }
            rec(p + 1);
            for (int l = 0; l < c.signature.arity(); ++l) {
                s.rels[l].erase({i, j});
                s.rels[l].erase({j, i});
            }
        }
    };
    rec(0);
    return out;
}

}  // namespace bigramsey
