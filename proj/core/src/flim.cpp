#include "bigramsey/flim.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace bigramsey {

namespace {

// Boolean embedding test with first-hit exit; same search order as
// find_embeddings.
bool embeds_ordered(const RelStruct& a, const RelStruct& b) {
    if (a.size > b.size) return false;
    std::vector<int> img;
    std::function<bool(int)> rec = [&](int k) -> bool {
        if (k == a.size) return true;
        int lo = img.empty() ? 0 : img.back() + 1;
        for (int cand = lo; cand <= b.size - (a.size - k); ++cand) {
            bool ok = true;
            for (int p = 0; ok && p < k; ++p)
                if (a.pair_pattern(p, k) != b.pair_pattern(img[p], cand)) ok = false;
            if (!ok) continue;
            img.push_back(cand);
            if (rec(k + 1)) return true;
            img.pop_back();
        }
        return false;
    };
    return rec(0);
}

// Per-pair digit choices for a new point against one existing point.  For the
// built-in classes these are exactly the locally admissible values, so only
// og_k, opo and forb need a global membership re-check.
std::vector<std::uint64_t> digit_options(const ClassSpec& c, bool newBeforeOld) {
    switch (c.kind) {
        case ClassKind::og:
        case ClassKind::og_k: return {0, 1};
        case ClassKind::oog: return {0, 1, 2};
        case ClassKind::ot: return {1, 2};
        case ClassKind::opo:
            return newBeforeOld ? std::vector<std::uint64_t>{0, 1}
                                : std::vector<std::uint64_t>{0, 2};
        case ClassKind::forb: break;
    }
    std::vector<std::uint64_t> digits{0};
    std::uint64_t stride = 1;
    for (int l = 0; l < c.signature.arity(); ++l) {
        std::vector<std::uint64_t> next;
        int radix = c.signature.symmetric[l] ? 2 : 4;
        for (std::uint64_t v = 0; v < static_cast<std::uint64_t>(radix); ++v)
            for (auto d : digits) next.push_back(d + v * stride);
        stride *= radix;
        std::sort(next.begin(), next.end());
        digits = std::move(next);
    }
    return digits;
}

bool needs_global_check(const ClassSpec& c) {
    return c.kind == ClassKind::og_k || c.kind == ClassKind::opo ||
           c.kind == ClassKind::forb;
}

struct PackStep {
    int rank = 0;
    std::uint64_t config = 0;
};

// Iterative-deepening search for the shortest descriptor sequence whose
// final level realizes every target.  Candidates are explored by
// (coverage gain desc, rank, config), which is deterministic and tends to
// find covers almost immediately when they exist.
struct PackSearcher {
    const ClassSpec& cls;
    const std::vector<RelStruct>& targets;
    std::int64_t budget;
    std::int64_t nodes = 0;
    bool budgetHit = false;
    std::unordered_map<std::string, int> futile;  // state -> levels known insufficient

    PackSearcher(const ClassSpec& c, const std::vector<RelStruct>& t, std::int64_t b)
        : cls(c), targets(t), budget(b) {}

    static std::string state_key(const RelStruct& s, const std::vector<bool>& covered) {
        std::string key = struct_key(s);
        key += '#';
        for (bool b : covered) key += b ? '1' : '0';
        return key;
    }

    struct Candidate {
        int gain;
        PackStep step;
        RelStruct next;
        std::vector<int> newlyCovered;
    };

    std::vector<Candidate> candidates(const RelStruct& s, const std::vector<bool>& covered) {
        std::vector<Candidate> out;
        const int p = s.size;
        const std::uint64_t P = pair_pattern_count(cls.signature);
        std::vector<std::uint64_t> digits(p);
        for (int rank = 0; rank <= p; ++rank) {
            std::function<void(int)> walk = [&](int q) {
                if (q == p) {
                    std::uint64_t config = 0;
                    for (int i = 0; i < p; ++i) config = config * P + digits[i];
                    ExtensionDescriptor d{rank, config};
                    RelStruct next = apply_extension(s, d, cls.signature);
                    if (needs_global_check(cls) && !membership(next, cls)) return;
                    Candidate cand{0, {rank, config}, std::move(next), {}};
                    for (int t = 0; t < static_cast<int>(targets.size()); ++t)
                        if (!covered[t] && embeds_ordered(targets[t], cand.next))
                            cand.newlyCovered.push_back(t);
                    cand.gain = static_cast<int>(cand.newlyCovered.size());
                    out.push_back(std::move(cand));
                    return;
                }
                for (auto dv : digit_options(cls, rank <= q)) {
                    digits[q] = dv;
                    walk(q + 1);
                }
            };
            walk(0);
        }
        std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
            if (a.gain != b.gain) return a.gain > b.gain;
            if (a.step.rank != b.step.rank) return a.step.rank < b.step.rank;
            return a.step.config < b.step.config;
        });
        return out;
    }

    bool capacity_ok(int points, int remaining, int u2, int u3) const {
        std::int64_t pairs = 0, triples = 0;
        for (int q = points; q < points + remaining; ++q) {
            pairs += q;
            triples += static_cast<std::int64_t>(q) * (q - 1) / 2;
        }
        return u2 <= pairs && u3 <= triples;
    }

    bool dfs(const RelStruct& s, std::vector<bool>& covered, int coveredCount,
             int remaining, std::vector<PackStep>& steps) {
        if (coveredCount == static_cast<int>(targets.size())) return true;
        if (remaining == 0) return false;
        int u2 = 0, u3 = 0;
        for (int t = 0; t < static_cast<int>(targets.size()); ++t)
            if (!covered[t]) (targets[t].size <= 2 ? u2 : u3)++;
        if (!capacity_ok(s.size, remaining, u2, u3)) return false;
        std::string key = state_key(s, covered);
        auto it = futile.find(key);
        if (it != futile.end() && it->second >= remaining) return false;
        if (++nodes > budget) {
            budgetHit = true;
            return false;
        }
        for (auto& cand : candidates(s, covered)) {
            for (int t : cand.newlyCovered) covered[t] = true;
            steps.push_back(cand.step);
            if (dfs(cand.next, covered, coveredCount + cand.gain, remaining - 1, steps))
                return true;
            steps.pop_back();
            for (int t : cand.newlyCovered) covered[t] = false;
            if (budgetHit) return false;
        }
        auto& slot = futile[key];
        slot = std::max(slot, remaining);
        return false;
    }
};

std::vector<PackStep> pack_plan(const ClassSpec& cls, const ChainOptions& opts) {
    int cap = opts.packSizeCap;
    std::vector<RelStruct> targets;
    while (cap >= 2) {
        targets.clear();
        for (int sz = 2; sz <= cap; ++sz)
            for (auto& m : enumerate_members(cls, sz)) targets.push_back(m);
        if (targets.size() <= 128) break;
        --cap;  // exotic classes with huge member counts pack a smaller slice
    }
    if (cap < 2 || targets.empty()) return {};

    RelStruct start;
    start.size = 1;
    start.rels.resize(cls.signature.arity());

    for (int L = 1; L <= opts.packLevelBudget; ++L) {
        PackSearcher searcher(cls, targets, opts.packNodeBudget);
        std::vector<bool> covered(targets.size(), false);
        std::vector<PackStep> steps;
        if (searcher.dfs(start, covered, 0, L, steps)) return steps;
    }

    // No full cover within the level budget: fall back to the deterministic
    // greedy sequence so the chain still packs as much as possible.
    PackSearcher searcher(cls, targets, opts.packNodeBudget);
    std::vector<bool> covered(targets.size(), false);
    std::vector<PackStep> steps;
    RelStruct s = start;
    for (int L = 0; L < opts.packLevelBudget; ++L) {
        auto cands = searcher.candidates(s, covered);
        if (cands.empty()) break;
        auto& best = cands.front();
        for (int t : best.newlyCovered) covered[t] = true;
        steps.push_back(best.step);
        s = best.next;
        if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) break;
    }
    return steps;
}

// ---------------------------------------------------------------------------

bool point_matches_demand(const RelStruct& raw, const std::vector<int>& orderList,
                          const Signature& sig, const Demand& d, int v) {
    for (int b : d.base)
        if (b == v) return false;
    auto pos = [&](int id) {
        return static_cast<int>(std::find(orderList.begin(), orderList.end(), id) -
                                orderList.begin());
    };
    std::vector<int> baseOrd = d.base;
    std::sort(baseOrd.begin(), baseOrd.end(), [&](int a, int b) { return pos(a) < pos(b); });
    int rank = 0;
    for (int b : baseOrd)
        if (pos(b) < pos(v)) ++rank;
    if (rank != d.descriptor.rank) return false;
    const std::uint64_t P = pair_pattern_count(sig);
    std::uint64_t place = 1;
    for (std::size_t i = 1; i < baseOrd.size(); ++i) place *= P;
    std::uint64_t cfg = d.descriptor.config;
    for (std::size_t q = 0; q < baseOrd.size(); ++q) {
        std::uint64_t digit = cfg / place;
        cfg %= place;
        if (q + 1 < baseOrd.size()) place /= P;
        if (raw.pair_pattern(v, baseOrd[q]) != digit_to_pattern(digit, sig)) return false;
    }
    return true;
}

struct Builder {
    ClassSpec cls;
    ChainOptions opts;
    LimitChain chain;
    RelStruct raw;                // current structure on enumeration ids
    std::vector<int> orderList;   // ids in chain order
    std::deque<std::size_t> queue;
    std::map<std::string, std::vector<ExtensionDescriptor>> extensionCache;

    int pos_of(int id) const {
        return static_cast<int>(std::find(orderList.begin(), orderList.end(), id) -
                                orderList.begin());
    }

    RelStruct relabel_current() const {
        std::vector<int> posOf(orderList.size());
        for (std::size_t p = 0; p < orderList.size(); ++p) posOf[orderList[p]] = static_cast<int>(p);
        RelStruct out;
        out.size = raw.size;
        out.rels.resize(raw.rels.size());
        for (std::size_t l = 0; l < raw.rels.size(); ++l)
            for (auto& [i, j] : raw.rels[l]) out.rels[l].insert({posOf[i], posOf[j]});
        return out;
    }

    std::vector<int> base_in_order(const std::vector<int>& base) const {
        std::vector<int> b = base;
        std::sort(b.begin(), b.end(), [&](int x, int y) { return pos_of(x) < pos_of(y); });
        return b;
    }

    RelStruct induced_canonical(const std::vector<int>& base) const {
        std::vector<int> bOrd = base_in_order(base);
        RelStruct out;
        out.size = static_cast<int>(bOrd.size());
        out.rels.resize(raw.rels.size());
        for (int a = 0; a < out.size; ++a)
            for (int b = 0; b < out.size; ++b)
                for (std::size_t l = 0; l < raw.rels.size(); ++l)
                    if (raw.rels[l].count({bOrd[a], bOrd[b]})) out.rels[l].insert({a, b});
        return out;
    }

    const std::vector<ExtensionDescriptor>& extensions_of(const RelStruct& s) {
        std::string key = struct_key(s);
        auto it = extensionCache.find(key);
        if (it != extensionCache.end()) return it->second;
        return extensionCache.emplace(key, one_point_extensions(s, cls)).first->second;
    }

    void eager_mark(int newId, int stage) {
        for (auto& tr : chain.demandTrace) {
            if (tr.stageSatisfied >= 0) continue;
            if (point_matches_demand(raw, orderList, cls.signature, tr.demand, newId))
                tr.stageSatisfied = stage;
        }
    }

    // Enqueue all demands over bases containing id n (each base appears
    // exactly once over the whole run, so no dedup set is needed).  Bases go
    // by size then colex; descriptors by (rank, config).
    void replenish(int n, int stage) {
        std::vector<std::vector<int>> bases;
        for (int r = 1; r <= std::min(opts.demandBaseCap, n + 1); ++r) {
            // size-r bases containing n, colex over the r-1 remaining ids
            std::vector<int> pick;
            std::function<void(int, int)> gen = [&](int need, int maxId) {
                if (need == 0) {
                    std::vector<int> base(pick.rbegin(), pick.rend());
                    base.push_back(n);
                    bases.push_back(std::move(base));
                    return;
                }
                for (int v = need - 1; v <= maxId; ++v) {
                    // colex: highest remaining id varies slowest
                    pick.push_back(v);
                    gen(need - 1, v - 1);
                    pick.pop_back();
                }
            };
            gen(r - 1, n - 1);
        }
        for (auto& base : bases) {
            std::sort(base.begin(), base.end());
            RelStruct sub = induced_canonical(base);
            for (const auto& d : extensions_of(sub)) {
                DemandTrace tr;
                tr.demand = {base, d};
                tr.stageEnqueued = stage;
                if (satisfied_now(tr.demand)) tr.stageSatisfied = stage;
                chain.demandTrace.push_back(std::move(tr));
                queue.push_back(chain.demandTrace.size() - 1);
            }
        }
    }

    bool satisfied_now(const Demand& d) const {
        for (int v = 0; v < raw.size; ++v)
            if (point_matches_demand(raw, orderList, cls.signature, d, v)) return true;
        return false;
    }

    void insert_point(int slot) {
        int id = raw.size;
        raw.size += 1;
        orderList.insert(orderList.begin() + slot, id);
    }

    void add_pattern(int newId, int oldId, std::uint64_t pattern) {
        for (int l = 0; l < cls.signature.arity(); ++l) {
            std::uint64_t bits = (pattern >> (2 * l)) & 3;
            if (bits & 1) raw.rels[l].insert({newId, oldId});
            if (bits & 2) raw.rels[l].insert({oldId, newId});
        }
    }

    void transitive_close_raw() {
        bool changed = true;
        while (changed) {
            changed = false;
            auto rel = raw.rels[0];
            for (auto& [i, j] : rel)
                for (auto& [j2, k] : rel)
                    if (j == j2 && i != k && !raw.rels[0].count({i, k})) {
                        raw.rels[0].insert({i, k});
                        changed = true;
                    }
        }
    }

    void realize_pack(const PackStep& step, int stage) {
        const int p = raw.size;
        const std::uint64_t P = pair_pattern_count(cls.signature);
        std::vector<int> oldOrder = orderList;  // canonical position -> id
        insert_point(step.rank);
        int newId = raw.size - 1;
        std::uint64_t cfg = step.config;
        std::uint64_t place = 1;
        for (int i = 1; i < p; ++i) place *= P;
        for (int q = 0; q < p; ++q) {
            std::uint64_t digit = cfg / place;
            cfg %= place;
            if (q + 1 < p) place /= P;
            add_pattern(newId, oldOrder[q], digit_to_pattern(digit, cls.signature));
        }
        std::vector<int> base(p);
        for (int i = 0; i < p; ++i) base[i] = i;
        chain.log.push_back({stage, "pack", base, {step.rank, step.config}, step.rank});
        eager_mark(newId, stage);
    }

    void realize_demand(std::size_t traceIdx, int stage) {
        const Demand& d = chain.demandTrace[traceIdx].demand;
        std::vector<int> baseOrd = base_in_order(d.base);
        const int r = static_cast<int>(baseOrd.size());
        int slot = d.descriptor.rank == 0 ? 0 : pos_of(baseOrd[d.descriptor.rank - 1]) + 1;
        insert_point(slot);
        int newId = raw.size - 1;
        const std::uint64_t P = pair_pattern_count(cls.signature);
        std::uint64_t place = 1;
        for (int i = 1; i < r; ++i) place *= P;
        std::uint64_t cfg = d.descriptor.config;
        for (int q = 0; q < r; ++q) {
            std::uint64_t digit = cfg / place;
            cfg %= place;
            if (q + 1 < r) place /= P;
            add_pattern(newId, baseOrd[q], digit_to_pattern(digit, cls.signature));
        }
        if (cls.kind == ClassKind::ot) {
            // complete against non-base points: arrows follow the chain order
            for (int v = 0; v < newId; ++v) {
                if (std::find(d.base.begin(), d.base.end(), v) != d.base.end()) continue;
                if (pos_of(newId) < pos_of(v))
                    raw.rels[0].insert({newId, v});
                else
                    raw.rels[0].insert({v, newId});
            }
        } else if (cls.kind == ClassKind::opo) {
            // the descriptor is closed on base+new; closing over the rest
            // cannot violate antisymmetry or the order constraint
            transitive_close_raw();
        }
        chain.log.push_back({stage, "demand", d.base, d.descriptor, slot});
        eager_mark(newId, stage);
        assert(chain.demandTrace[traceIdx].stageSatisfied == stage);
    }

    void snapshot() {
        chain.raw.push_back(raw);
        chain.order.push_back(orderList);
        chain.levels.push_back(relabel_current());
        if (!membership(chain.levels.back(), cls))
            throw ClassError("build_chain: generator produced a non-member level");
    }
};

}  // namespace

LimitChain build_chain(const ClassSpec& c, int depth, const ChainOptions& opts) {
    if (depth < 0) throw InputError("build_chain: depth must be nonnegative");
    Builder b;
    b.cls = c;
    b.opts = opts;
    b.chain.cls = c;
    b.chain.options = opts;
    b.chain.depth = depth;
    b.raw.size = 1;
    b.raw.rels.resize(c.signature.arity());
    b.orderList = {0};
    b.snapshot();
    b.replenish(0, 0);

    std::vector<PackStep> plan = pack_plan(c, opts);
    for (int stage = 1; stage <= depth; ++stage) {
        if (stage <= static_cast<int>(plan.size())) {
            b.realize_pack(plan[stage - 1], stage);
        } else {
            while (!b.queue.empty() &&
                   b.chain.demandTrace[b.queue.front()].stageSatisfied >= 0)
                b.queue.pop_front();
            if (b.queue.empty())
                throw InputError("build_chain: demand queue exhausted");
            std::size_t idx = b.queue.front();
            b.queue.pop_front();
            b.realize_demand(idx, stage);
        }
        b.snapshot();
        b.replenish(stage, stage);
    }
    return b.chain;
}

const RelStruct& level_structure(const LimitChain& chain, int n) {
    if (n < 0 || n > chain.depth)
        throw InputError("level_structure: level out of range");
    return chain.levels[n];
}

LimitChain truncate_chain(const LimitChain& chain, int depth) {
    if (depth < 0 || depth > chain.depth)
        throw InputError("truncate_chain: depth out of range");
    LimitChain out;
    out.cls = chain.cls;
    out.options = chain.options;
    out.depth = depth;
    out.raw.assign(chain.raw.begin(), chain.raw.begin() + depth + 1);
    out.order.assign(chain.order.begin(), chain.order.begin() + depth + 1);
    out.levels.assign(chain.levels.begin(), chain.levels.begin() + depth + 1);
    for (const auto& e : chain.log)
        if (e.stage <= depth) out.log.push_back(e);
    for (const auto& t : chain.demandTrace) {
        if (t.stageEnqueued > depth) continue;
        DemandTrace copy = t;
        if (copy.stageSatisfied > depth) copy.stageSatisfied = -1;
        out.demandTrace.push_back(std::move(copy));
    }
    return out;
}

UniversalityResult universality_budget(const LimitChain& chain, int s) {
    UniversalityResult res;
    res.ok = true;
    res.budget = 0;
    for (int sz = 1; sz <= s; ++sz) {
        for (const auto& m : enumerate_members(chain.cls, sz)) {
            int found = -1;
            for (int n = 0; n <= chain.depth && found < 0; ++n)
                if (embeds_ordered(m, chain.levels[n])) found = n;
            if (found < 0) {
                res.ok = false;
                res.budget = -1;
                res.witness = m;
                return res;
            }
            res.budget = std::max(res.budget, found);
        }
    }
    return res;
}

bool demand_satisfied(const LimitChain& chain, int n, const Demand& d) {
    if (n < 0 || n > chain.depth) throw InputError("demand_satisfied: level out of range");
    for (int v = 0; v <= n; ++v)
        if (point_matches_demand(chain.raw[n], chain.order[n], chain.cls.signature, d, v))
            return true;
    return false;
}

}  // namespace bigramsey
