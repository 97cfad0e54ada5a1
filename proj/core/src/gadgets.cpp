#include "bigramsey/gadgets.hpp"

#include <algorithm>

namespace bigramsey {

namespace {

void require_member(const RelStruct& h, const ClassSpec& c, const std::string& who) {
    if (auto why = membership_failure(h, c))
        throw ClassError(who + ": structure is not a member of " + class_name(c) + ": " +
                         *why);
}

// H copied onto the given positions of a fresh structure of the given size.
RelStruct plant_host(const RelStruct& h, int size, const std::vector<int>& host) {
    RelStruct s;
    s.size = size;
    s.rels.resize(h.rels.size());
    for (std::size_t l = 0; l < h.rels.size(); ++l)
        for (const auto& [i, j] : h.rels[l]) s.rels[l].insert({host[i], host[j]});
    return s;
}

void transitive_close(RelStruct& s, int l) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<int, int>> add;
        for (const auto& [i, j] : s.rels[l])
            for (const auto& [j2, k] : s.rels[l])
                if (j == j2 && i != k && !s.has(l, i, k)) add.push_back({i, k});
        for (const auto& p : add) {
            s.rels[l].insert(p);
            changed = true;
        }
    }
}

}  // namespace

Gadget build_gadget_free(const RelStruct& h, const ClassSpec& c) {
    if (c.kind != ClassKind::og && c.kind != ClassKind::og_k && c.kind != ClassKind::oog &&
        c.kind != ClassKind::forb)
        throw InputError("build_gadget_free: class must be og, og_k, oog, or forb");
    require_member(h, c, "build_gadget_free");

    int m = h.size;
    if (m == 0) throw InputError("build_gadget_free: structure must be nonempty");
    Gadget g;
    g.flavor = "free";
    g.base = h;
    for (int i = 0; i < m; ++i) g.hostPositions.push_back(2 * i + 1);
    g.extended = plant_host(h, 2 * m + 1, g.hostPositions);
    // R0-chain on the evens; both directions only when R0 is symmetric
    for (int i = 0; i + 2 <= 2 * m; i += 2) {
        g.extended.rels[0].insert({i, i + 2});
        if (c.signature.symmetric[0]) g.extended.rels[0].insert({i + 2, i});
    }
    require_member(g.extended, c, "build_gadget_free: extension");
    return g;
}

Gadget build_gadget_ot(const RelStruct& h) {
    ClassSpec c = make_ot();
    require_member(h, c, "build_gadget_ot");

    int m = h.size;
    if (m == 0) throw InputError("build_gadget_ot: structure must be nonempty");
    Gadget g;
    g.flavor = "ot";
    g.base = h;
    for (int i = 0; i < m; ++i) g.hostPositions.push_back(2 * i + 1);
    g.extended = plant_host(h, 2 * m + 1, g.hostPositions);
    for (int i = 0; i <= 2 * m; i += 2)
        for (int j = i + 2; j <= 2 * m; j += 2) {
            if (j == i + 2)
                g.extended.rels[0].insert({i, j});  // consecutive evens forward
            else
                g.extended.rels[0].insert({j, i});  // the rest point backward
        }
    // even-odd pairs: the later vertex points at the earlier one
    for (int i = 0; i <= 2 * m; i += 2)
        for (int j = 1; j <= 2 * m; j += 2) {
            if (i < j)
                g.extended.rels[0].insert({j, i});
            else
                g.extended.rels[0].insert({i, j});
        }
    require_member(g.extended, c, "build_gadget_ot: extension");
    return g;
}

Gadget build_gadget_opo(const RelStruct& h) {
    ClassSpec c = make_opo();
    require_member(h, c, "build_gadget_opo");

    int m = h.size;
    if (m == 0) throw InputError("build_gadget_opo: structure must be nonempty");
    Gadget g;
    g.flavor = "opo";
    g.base = h;
    if (m == 1) {
        g.extended = h;
        g.hostPositions = {0};
        g.trivial = true;
        return g;
    }
    for (int i = 0; i < m; ++i) g.hostPositions.push_back(2 * i + 2);
    g.extended = plant_host(h, 2 * m + 3, g.hostPositions);
    g.extended.rels[0].insert({0, 3});
    g.extended.rels[0].insert({2 * m - 1, 2 * m + 2});
    for (int i = 1; i <= 2 * m - 3; i += 2) g.extended.rels[0].insert({i, i + 4});
    transitive_close(g.extended, 0);

    // the closure must stay inside the scaffold: host vertices are even and
    // the scaffold chains touch only odd vertices and the two even ends
    for (const auto& [i, j] : g.extended.rels[0]) {
        bool iHost = i >= 2 && i <= 2 * m && i % 2 == 0;
        bool jHost = j >= 2 && j <= 2 * m && j % 2 == 0;
        if (iHost != jHost)
            throw ClassError("build_gadget_opo: closure linked host and scaffold at (" +
                             std::to_string(i) + "," + std::to_string(j) + ")");
    }
    require_member(g.extended, c, "build_gadget_opo: extension");
    return g;
}

Gadget build_gadget(const RelStruct& h, const ClassSpec& c) {
    switch (c.kind) {
        case ClassKind::og:
        case ClassKind::og_k:
        case ClassKind::oog:
        case ClassKind::forb:
            return build_gadget_free(h, c);
        case ClassKind::ot:
            return build_gadget_ot(h);
        case ClassKind::opo:
            return build_gadget_opo(h);
    }
    throw InputError("build_gadget: unknown class kind");
}

GadgetReport verify_gadget(const LimitChain& chain, const Gadget& g, const ClassSpec& c,
                           int depth, long long rawBudget) {
    GadgetReport rep;
    rep.hostOk = induced_substructure(g.extended, g.hostPositions) == g.base;
    rep.memberOk = membership(g.extended, c);
    rep.enumerated = enumerate_types(g.extended, c);
    rep.singleSplit = !rep.enumerated.empty();
    int wantInternals = g.extended.size >= 2 ? 1 : 0;
    for (const auto& skel : rep.enumerated)
        if (skel.internal_count() != wantInternals) rep.singleSplit = false;

    if (depth > 0 && g.extended.size <= 5 && depth <= 5) {
        try {
            RawScan scan = raw_copies_of(chain, g.extended, depth, rawBudget);
            rep.rawRan = true;
            rep.rawCopies = scan.copiesSeen;
            rep.rawNonDiagonal = scan.nonDiagonalSeen;
            // a copy meeting at more than one node (or a non-diagonal copy)
            // would break the single-splitting-node conclusion
            rep.rawSingleSplit = scan.nonDiagonalSeen == 0;
            for (const auto& copy : scan.copies)
                if (type_of(copy).internal_count() != wantInternals)
                    rep.rawSingleSplit = false;
            if (scan.budgetExhausted) {
                rep.note = "raw scan budget exhausted; partial results";
            } else if (scan.copiesSeen == 0) {
                rep.note = "raw sweep found no copies at this depth";
            }
        } catch (const BudgetError& e) {
            rep.note = e.what();
        }
    }
    return rep;
}

}  // namespace bigramsey
