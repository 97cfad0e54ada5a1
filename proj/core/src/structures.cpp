#include "bigramsey/structures.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace bigramsey {

Signature graph_signature() {
    return Signature{{"R0"}, {true}, {true}};
}

Signature directed_signature() {
    return Signature{{"R0"}, {false}, {true}};
}

std::uint64_t RelStruct::pair_pattern(int i, int j) const {
    std::uint64_t p = 0;
    for (int l = 0; l < static_cast<int>(rels.size()); ++l) {
        std::uint64_t bits = (has(l, i, j) ? 1u : 0u) | (has(l, j, i) ? 2u : 0u);
        p |= bits << (2 * l);
    }
    return p;
}

std::string struct_key(const RelStruct& s) {
    std::ostringstream out;
    out << s.size;
    for (const auto& rel : s.rels) {
        out << '|';
        for (const auto& [i, j] : rel) out << i << ',' << j << ';';
    }
    return out.str();
}

std::string Violation::message() const {
    std::ostringstream out;
    out << kind;
    if (symbol >= 0) out << " symbol=" << symbol;
    if (pair.first >= 0) out << " pair=(" << pair.first << ',' << pair.second << ')';
    return out.str();
}

std::vector<Violation> validate(const RelStruct& s, const Signature& sig) {
    std::vector<Violation> out;
    if (static_cast<int>(s.rels.size()) != sig.arity()) {
        out.push_back({"arity", -1, {-1, -1}});
        return out;
    }
    for (int l = 0; l < sig.arity(); ++l) {
        for (const auto& [i, j] : s.rels[l]) {
            if (i < 0 || j < 0 || i >= s.size || j >= s.size) {
                out.push_back({"bounds", l, {i, j}});
                continue;
            }
            if (sig.irreflexive[l] && i == j) out.push_back({"irreflexive", l, {i, j}});
            if (sig.symmetric[l] && !s.has(l, j, i)) out.push_back({"symmetric", l, {i, j}});
        }
    }
    return out;
}

RelStruct induced_substructure(const RelStruct& s, const std::vector<int>& subset) {
    for (int idx : subset)
        if (idx < 0 || idx >= s.size) throw InputError("induced_substructure: index out of range");
    if (!std::is_sorted(subset.begin(), subset.end()) ||
        std::adjacent_find(subset.begin(), subset.end()) != subset.end())
        throw InputError("induced_substructure: subset must be strictly increasing");

    RelStruct r;
    r.size = static_cast<int>(subset.size());
    r.rels.resize(s.rels.size());
    for (int a = 0; a < r.size; ++a)
        for (int b = 0; b < r.size; ++b)
            for (int l = 0; l < static_cast<int>(s.rels.size()); ++l)
                if (s.has(l, subset[a], subset[b])) r.rels[l].insert({a, b});
    return r;
}

namespace {

bool pair_compatible(const RelStruct& a, const RelStruct& b, int u, int v, int iu, int iv) {
    return a.pair_pattern(u, v) == b.pair_pattern(iu, iv) &&
           a.pair_pattern(v, u) == b.pair_pattern(iv, iu);
}

}  // namespace

std::vector<Embedding> find_embeddings(const RelStruct& a, const RelStruct& b) {
    if (a.rels.size() != b.rels.size())
        throw InputError("find_embeddings: signature arity mismatch");
    std::vector<Embedding> out;
    std::vector<int> img;
    img.reserve(a.size);
    // Depth-first over strictly increasing images; candidates ascend, so the
    // results come out in lexicographic order of the image tuple.
    std::function<void(int)> rec = [&](int k) {
        if (k == a.size) {
            out.push_back({img});
            return;
        }
        int lo = img.empty() ? 0 : img.back() + 1;
        for (int cand = lo; cand <= b.size - (a.size - k); ++cand) {
            bool ok = true;
            for (int l = 0; ok && l < static_cast<int>(a.rels.size()); ++l)
                if (a.has(l, k, k) != b.has(l, cand, cand)) ok = false;
            for (int p = 0; ok && p < k; ++p)
                if (!pair_compatible(a, b, p, k, img[p], cand)) ok = false;
            if (!ok) continue;
            img.push_back(cand);
            rec(k + 1);
            img.pop_back();
        }
    };
    if (a.size == 0) return {Embedding{{}}};
    rec(0);
    return out;
}

bool is_isomorphic(const RelStruct& a, const RelStruct& b) {
    if (a.rels.size() != b.rels.size())
        throw InputError("is_isomorphic: signature arity mismatch");
    return a == b;
}

bool embeds_unordered(const RelStruct& a, const RelStruct& b) {
    if (a.rels.size() != b.rels.size())
        throw InputError("embeds_unordered: signature arity mismatch");
    if (a.size > b.size) return false;
    std::vector<int> img;
    std::vector<bool> used(b.size, false);
    std::function<bool(int)> rec = [&](int k) -> bool {
        if (k == a.size) return true;
        for (int cand = 0; cand < b.size; ++cand) {
            if (used[cand]) continue;
            bool ok = true;
            for (int l = 0; ok && l < static_cast<int>(a.rels.size()); ++l)
                if (a.has(l, k, k) != b.has(l, cand, cand)) ok = false;
            for (int p = 0; ok && p < k; ++p)
                if (!pair_compatible(a, b, p, k, img[p], cand)) ok = false;
            if (!ok) continue;
            used[cand] = true;
            img.push_back(cand);
            if (rec(k + 1)) return true;
            img.pop_back();
            used[cand] = false;
        }
        return false;
    };
    return rec(0);
}

}  // namespace bigramsey
