#include "bigramsey/oracle.hpp"

#include <algorithm>

namespace bigramsey {

namespace {

Node zeros(int length) {
    return Node(std::vector<int>(length, 0));
}

Node extend_with_zeros(const Node& base, int direction, int length) {
    std::vector<int> e = base.entries;
    e.push_back(direction);
    e.resize(length, 0);
    return Node(std::move(e));
}

// Pairwise meet lengths and patterns for one level's node list, flattened to
// i * n + j (i < j).
struct PairTables {
    int n = 0;
    std::vector<std::uint8_t> meetLen;
    std::vector<std::uint8_t> pattern;

    int meet_at(int i, int j) const { return meetLen[static_cast<std::size_t>(i) * n + j]; }
    std::uint64_t pattern_at(int i, int j) const {
        return pattern[static_cast<std::size_t>(i) * n + j];
    }
};

PairTables build_pair_tables(const LimitChain& chain, const std::vector<Node>& nodes) {
    if (chain.cls.signature.arity() > 4)
        throw BudgetError("raw sweep supports at most 4 relation symbols");
    PairTables t;
    t.n = static_cast<int>(nodes.size());
    t.meetLen.assign(static_cast<std::size_t>(t.n) * t.n, 0);
    t.pattern.assign(static_cast<std::size_t>(t.n) * t.n, 0);
    for (int i = 0; i < t.n; ++i)
        for (int j = i + 1; j < t.n; ++j) {
            int len = 0;
            while (nodes[i].entries[len] == nodes[j].entries[len]) ++len;
            std::size_t at = static_cast<std::size_t>(i) * t.n + j;
            t.meetLen[at] = static_cast<std::uint8_t>(len);
            t.pattern[at] = static_cast<std::uint8_t>(
                chain.levels[len].pair_pattern(nodes[i].entries[len], nodes[j].entries[len]));
        }
    return t;
}

const char* kTripleSkeletons[3] = {
    "(0: l0 l1 l2)",
    "(0: l0 (1: l1 l2))",
    "(0: (1: l0 l1) l2)",
};

std::vector<Skeleton> set_difference_sorted(const std::vector<Skeleton>& a,
                                            const std::vector<Skeleton>& b) {
    std::vector<Skeleton> out;
    for (const auto& s : a)
        if (std::find(b.begin(), b.end(), s) == b.end()) out.push_back(s);
    return out;
}

}  // namespace

RealizeOutcome realize(const LimitChain& chain, const RealizationProblem& p) {
    RealizeOutcome out;
    int m = p.skeleton.leafCount;
    if (p.target.size != m)
        throw InputError("realize: skeleton has " + std::to_string(m) +
                         " leaves but the target has " + std::to_string(p.target.size) +
                         " points");
    if (chain.depth < p.maxDepth)
        throw InputError("realize: chain depth " + std::to_string(chain.depth) +
                         " < requested depth " + std::to_string(p.maxDepth));

    if (m == 1) {
        out.witness = Copy({zeros(p.maxDepth)});
        return out;
    }

    Determination det = determine_children(p.skeleton, p.target, p.cls.signature);
    if (!det.ok) {
        out.failureKind = "determination";
        out.failureDetail = det.violation;
        return out;
    }

    // greedy first-fit level per internal node, in rank order
    int k = p.skeleton.internal_count();
    std::vector<int> level(k, -1);
    std::vector<Embedding> emb(k);
    int prev = -1;
    for (int r = 0; r < k; ++r) {
        bool placed = false;
        for (int n = prev + 1; n + 1 <= p.maxDepth && !placed; ++n) {
            auto embs = find_embeddings(det.children[r], level_structure(chain, n));
            if (!embs.empty()) {
                level[r] = n;
                emb[r] = embs.front();
                prev = n;
                placed = true;
            }
        }
        if (!placed) {
            out.failureKind = "level-exhausted";
            out.failureDetail = "internal " + std::to_string(r) + ": children structure " +
                                struct_key(det.children[r]) +
                                " embeds into no level in " + std::to_string(prev + 1) +
                                ".." + std::to_string(p.maxDepth - 1);
            return out;
        }
    }

    // build the internal nodes top-down, then the branches
    std::vector<Node> internalNode(k, Node{});
    internalNode[0] = zeros(level[0]);
    std::vector<Node> branches(m, Node{});
    for (int r = 0; r < k; ++r)
        for (std::size_t slot = 0; slot < p.skeleton.internals[r].size(); ++slot) {
            const auto& ch = p.skeleton.internals[r][slot];
            int dir = emb[r].map[static_cast<int>(slot)];
            if (ch.leaf)
                branches[ch.id] = extend_with_zeros(internalNode[r], dir, p.maxDepth);
            else
                internalNode[ch.id] = extend_with_zeros(internalNode[r], dir, level[ch.id]);
        }
    out.witness = Copy(std::move(branches));
    return out;
}

std::vector<Skeleton> realized_types(const LimitChain& chain, const RelStruct& h,
                                     const ClassSpec& c, int depth, SweepMode mode) {
    if (chain.depth < depth) throw InputError("realized_types: chain too shallow");
    if (mode == SweepMode::backtracking) {
        std::vector<Skeleton> out;
        for (auto& skel : skeletons(h.size)) {
            RealizationProblem p{skel, h, c, depth};
            if (realize(chain, p).witness) out.push_back(std::move(skel));
        }
        return out;
    }

    // raw mode
    if (h.size > 3 || depth > 6)
        throw BudgetError("raw sweep is limited to |H| <= 3 and depth <= 6");
    std::vector<Skeleton> out;
    if (h.size == 1) {
        if (level_count(depth) > 0) out.push_back(parse_skeleton("l0"));
        return out;
    }
    if (h.size == 2) {
        auto nodes = level_nodes(depth);
        PairTables t = build_pair_tables(chain, nodes);
        std::uint64_t want = h.pair_pattern(0, 1);
        for (int i = 0; i < t.n; ++i)
            for (int j = i + 1; j < t.n; ++j)
                if (t.pattern_at(i, j) == want) {
                    out.push_back(parse_skeleton("(0: l0 l1)"));
                    return out;
                }
        return out;
    }
    TripleSweep sweep = sweep_triples(chain, depth);
    for (int skelCase = 0; skelCase < 3; ++skelCase)
        if (sweep.count_for(h, skelCase) > 0)
            out.push_back(parse_skeleton(kTripleSkeletons[skelCase]));
    std::sort(out.begin(), out.end());
    return out;
}

long long TripleSweep::count_for(const RelStruct& h, int skelCase) const {
    if (h.size != 3) throw InputError("TripleSweep: structure must have 3 points");
    if (skelCase < 0 || skelCase > 2)
        throw InputError("TripleSweep: case must be 0, 1 or 2");
    std::uint64_t p01 = h.pair_pattern(0, 1);
    std::uint64_t p02 = h.pair_pattern(0, 2);
    std::uint64_t p12 = h.pair_pattern(1, 2);
    std::size_t idx = ((p01 * patternSpace + p02) * patternSpace + p12) * 3 + skelCase;
    return counts[idx];
}

TripleSweep sweep_triples(const LimitChain& chain, int depth) {
    if (depth > 6) throw BudgetError("sweep_triples: depth must be <= 6");
    if (chain.depth < depth) throw InputError("sweep_triples: chain too shallow");
    if (chain.cls.signature.arity() > 2)
        throw BudgetError("sweep_triples: at most 2 relation symbols supported");

    auto nodes = level_nodes(depth);
    PairTables t = build_pair_tables(chain, nodes);
    TripleSweep sweep;
    sweep.patternSpace = 1ull << (2 * chain.cls.signature.arity());
    std::uint64_t s = sweep.patternSpace;
    sweep.counts.assign(s * s * s * 3, 0);

    const int n = t.n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int mij = t.meet_at(i, j);
            std::uint64_t pij = t.pattern_at(i, j);
            for (int k = j + 1; k < n; ++k) {
                int mjk = t.meet_at(j, k);
                // lex order makes meet(i,k) = min of the other two and forces
                // all three directions at a shared meet apart, so every
                // triple is diagonal; only the case split matters.
                int skelCase = mij == mjk ? 0 : (mij < mjk ? 1 : 2);
                std::size_t idx =
                    ((pij * s + t.pattern_at(i, k)) * s + t.pattern_at(j, k)) * 3 + skelCase;
                ++sweep.counts[idx];
                ++sweep.triples;
            }
        }
    return sweep;
}

RawScan raw_copies_of(const LimitChain& chain, const RelStruct& h, int depth,
                      long long nodeBudget) {
    if (h.size > 5 || depth > 6)
        throw BudgetError("raw_copies_of is limited to |H| <= 5 and depth <= 6");
    if (chain.depth < depth) throw InputError("raw_copies_of: chain too shallow");

    RawScan scan;
    auto nodes = level_nodes(depth);
    if (h.size == 1) {
        for (const auto& nd : nodes) {
            ++scan.copiesSeen;
            if (scan.copies.size() < 10000) scan.copies.push_back(Copy({nd}));
        }
        return scan;
    }
    PairTables t = build_pair_tables(chain, nodes);
    int m = h.size;
    std::vector<std::uint64_t> want(static_cast<std::size_t>(m) * m, 0);
    for (int q = 0; q < m; ++q)
        for (int p = q + 1; p < m; ++p)
            want[static_cast<std::size_t>(q) * m + p] = h.pair_pattern(q, p);
    std::vector<int> chosen;
    long long spent = 0;

    auto rec = [&](auto&& self, int from) -> void {
        if (scan.budgetExhausted) return;
        int pos = static_cast<int>(chosen.size());
        if (pos == m) {
            std::vector<Node> picked;
            for (int idx : chosen) picked.push_back(nodes[idx]);
            Copy c(std::move(picked));
            ++scan.copiesSeen;
            try {
                type_of(c);
            } catch (const InputError&) {
                ++scan.nonDiagonalSeen;
                return;
            }
            if (scan.copies.size() < 10000) scan.copies.push_back(std::move(c));
            return;
        }
        for (int i = from; i < t.n; ++i) {
            if (++spent > nodeBudget) {
                scan.budgetExhausted = true;
                return;
            }
            bool ok = true;
            for (int q = 0; q < pos && ok; ++q)
                ok = t.pattern_at(chosen[q], i) == want[static_cast<std::size_t>(q) * m + pos];
            if (!ok) continue;
            chosen.push_back(i);
            self(self, i + 1);
            chosen.pop_back();
            if (scan.budgetExhausted) return;
        }
    };
    rec(rec, 0);
    return scan;
}

ComparisonReport cross_check(const LimitChain& chain, const RelStruct& h,
                             const ClassSpec& c, int depth, bool rawConfirm) {
    ComparisonReport rep;
    rep.enumerated = enumerate_types(h, c);
    for (auto& skel : skeletons(h.size)) {
        RealizationProblem p{skel, h, c, depth};
        RealizeOutcome out = realize(chain, p);
        if (out.witness) {
            rep.witnesses.push_back({skel.text(), *out.witness});
            rep.realized.push_back(std::move(skel));
        }
    }
    rep.missing = set_difference_sorted(rep.enumerated, rep.realized);
    rep.extra = set_difference_sorted(rep.realized, rep.enumerated);
    if (rawConfirm && h.size <= 3 && depth <= 6 && c.signature.arity() <= 2) {
        auto raw = realized_types(chain, h, c, depth, SweepMode::raw);
        rep.rawRan = true;
        rep.rawAgrees = raw == rep.realized;
    }
    return rep;
}

}  // namespace bigramsey
