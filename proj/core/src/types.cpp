#include "bigramsey/types.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace bigramsey {

namespace {

// Scratch tree used while enumerating shapes and parsing: leaf index or an
// internal node with ordered children; ranks assigned afterwards.
struct ShapeNode {
    bool leaf = true;
    int leafIdx = 0;
    int rank = -1;  // internals only
    std::vector<ShapeNode> children;
};

void render(const ShapeNode& n, std::ostringstream& out) {
    if (n.leaf) {
        out << 'l' << n.leafIdx;
        return;
    }
    out << '(' << n.rank << ':';
    for (const auto& ch : n.children) {
        out << ' ';
        render(ch, out);
    }
    out << ')';
}

// Planar shapes with m ordered leaves: a root of arity >= 2 whose parts are
// leaves or smaller shapes.  Leaf indices are filled in by the caller.
std::vector<ShapeNode> shapes(int m) {
    if (m == 1) {
        ShapeNode leaf;
        return {leaf};
    }
    std::vector<ShapeNode> out;
    // compositions of m into at least two parts
    std::vector<int> parts;
    std::vector<ShapeNode> chosen;
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            if (chosen.size() < 2) return;
            ShapeNode root;
            root.leaf = false;
            root.children = chosen;
            out.push_back(std::move(root));
            return;
        }
        for (int p = 1; p <= remaining; ++p) {
            // a single part would make an arity-1 root
            if (p == remaining && chosen.empty()) continue;
            for (auto& sub : shapes(p)) {
                chosen.push_back(sub);
                self(self, remaining - p);
                chosen.pop_back();
            }
        }
    };
    rec(rec, m);
    return out;
}

void assign_leaf_indices(ShapeNode& n, int& next) {
    if (n.leaf) {
        n.leafIdx = next++;
        return;
    }
    for (auto& ch : n.children) assign_leaf_indices(ch, next);
}

void collect_internals(ShapeNode& n, int parent, std::vector<ShapeNode*>& nodes,
                       std::vector<int>& parentOf) {
    if (n.leaf) return;
    int me = static_cast<int>(nodes.size());
    nodes.push_back(&n);
    parentOf.push_back(parent);
    for (auto& ch : n.children) collect_internals(ch, me, nodes, parentOf);
}

Skeleton from_shape(const ShapeNode& root, int leafCount) {
    Skeleton s;
    s.leafCount = leafCount;
    if (root.leaf) return s;
    // internals indexed by rank; children reference final ranks
    int count = 0;
    auto countInternals = [&](auto&& self, const ShapeNode& n) -> void {
        if (n.leaf) return;
        ++count;
        for (const auto& ch : n.children) self(self, ch);
    };
    countInternals(countInternals, root);
    s.internals.resize(count);
    auto emit = [&](auto&& self, const ShapeNode& n) -> void {
        if (n.leaf) return;
        auto& row = s.internals[n.rank];
        for (const auto& ch : n.children) {
            Skeleton::Child c;
            c.leaf = ch.leaf;
            c.id = ch.leaf ? ch.leafIdx : ch.rank;
            row.push_back(c);
            self(self, ch);
        }
    };
    emit(emit, root);
    return s;
}

// All rank assignments of the internals that extend ancestry, produced by
// repeatedly picking any ranked-parent node (in preorder position order).
void linear_extensions(std::vector<ShapeNode*>& nodes, const std::vector<int>& parentOf,
                       std::vector<bool>& ranked, int next, ShapeNode& root, int leafCount,
                       std::vector<Skeleton>& out) {
    if (next == static_cast<int>(nodes.size())) {
        out.push_back(from_shape(root, leafCount));
        return;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (ranked[i]) continue;
        if (parentOf[i] >= 0 && !ranked[parentOf[i]]) continue;
        ranked[i] = true;
        nodes[i]->rank = next;
        linear_extensions(nodes, parentOf, ranked, next + 1, root, leafCount, out);
        nodes[i]->rank = -1;
        ranked[i] = false;
    }
}

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& why) {
        throw InputError("skeleton parse error at offset " + std::to_string(pos) + ": " + why);
    }
    int number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected a number");
        return std::stoi(s.substr(start, pos - start));
    }
    ShapeNode node() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        if (s[pos] == 'l') {
            ++pos;
            ShapeNode n;
            n.leafIdx = number();
            return n;
        }
        if (s[pos] != '(') fail("expected 'l' or '('");
        ++pos;
        ShapeNode n;
        n.leaf = false;
        n.rank = number();
        skip_ws();
        if (pos >= s.size() || s[pos] != ':') fail("expected ':'");
        ++pos;
        while (true) {
            skip_ws();
            if (pos >= s.size()) fail("unexpected end of input");
            if (s[pos] == ')') {
                ++pos;
                break;
            }
            n.children.push_back(node());
        }
        if (n.children.size() < 2) fail("internal node needs arity >= 2");
        return n;
    }
};

void validate_shape(const ShapeNode& n, int parentRank, std::vector<int>& ranksSeen,
                    std::vector<int>& leavesSeen) {
    if (n.leaf) {
        leavesSeen.push_back(n.leafIdx);
        return;
    }
    if (parentRank >= 0 && n.rank <= parentRank)
        throw InputError("skeleton: internal rank " + std::to_string(n.rank) +
                         " does not follow its parent");
    ranksSeen.push_back(n.rank);
    for (const auto& ch : n.children) validate_shape(ch, n.rank, ranksSeen, leavesSeen);
}

}  // namespace

std::vector<int> Skeleton::leaves_under(int rank) const {
    std::vector<int> out;
    auto rec = [&](auto&& self, int r) -> void {
        for (const auto& ch : internals[r]) {
            if (ch.leaf)
                out.push_back(ch.id);
            else
                self(self, ch.id);
        }
    };
    rec(rec, rank);
    return out;
}

std::string Skeleton::text() const {
    if (internals.empty()) return "l0";
    std::ostringstream out;
    auto rec = [&](auto&& self, int r) -> void {
        out << '(' << r << ':';
        for (const auto& ch : internals[r]) {
            out << ' ';
            if (ch.leaf)
                out << 'l' << ch.id;
            else
                self(self, ch.id);
        }
        out << ')';
    };
    rec(rec, 0);
    return out.str();
}

Skeleton parse_skeleton(const std::string& text) {
    Parser p(text);
    ShapeNode root = p.node();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters");

    std::vector<int> ranks, leaves;
    validate_shape(root, -1, ranks, leaves);
    if (root.leaf) {
        if (leaves != std::vector<int>{0}) throw InputError("skeleton: lone leaf must be l0");
        Skeleton s;
        s.leafCount = 1;
        return s;
    }
    std::vector<int> sortedRanks = ranks;
    std::sort(sortedRanks.begin(), sortedRanks.end());
    for (std::size_t i = 0; i < sortedRanks.size(); ++i)
        if (sortedRanks[i] != static_cast<int>(i))
            throw InputError("skeleton: internal ranks must be exactly 0..K-1");
    for (std::size_t i = 0; i < leaves.size(); ++i)
        if (leaves[i] != static_cast<int>(i))
            throw InputError("skeleton: leaves must read l0..l_{m-1} left to right");
    return from_shape(root, static_cast<int>(leaves.size()));
}

std::vector<Skeleton> skeletons(int m) {
    if (m < 1) throw InputError("skeletons: m must be >= 1");
    if (m > 9) throw BudgetError("skeletons: m > 9 exceeds the enumeration budget");
    std::vector<Skeleton> out;
    for (auto& shape : shapes(m)) {
        int next = 0;
        assign_leaf_indices(shape, next);
        std::vector<ShapeNode*> nodes;
        std::vector<int> parentOf;
        collect_internals(shape, -1, nodes, parentOf);
        std::vector<bool> ranked(nodes.size(), false);
        linear_extensions(nodes, parentOf, ranked, 0, shape, m, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Skeleton type_of(const Copy& c) {
    int m = c.size();
    Skeleton s;
    s.leafCount = m;
    if (m == 1) return s;

    // internal nodes = distinct pairwise meets
    std::vector<Node> meets;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) meets.push_back(meet(c.nodes[i], c.nodes[j]));
    std::sort(meets.begin(), meets.end());
    meets.erase(std::unique(meets.begin(), meets.end()), meets.end());

    std::sort(meets.begin(), meets.end(), [](const Node& a, const Node& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        return a < b;
    });
    for (std::size_t i = 0; i + 1 < meets.size(); ++i)
        if (meets[i].length() == meets[i + 1].length())
            throw InputError("non-diagonal copy: incomparable meets share length " +
                             std::to_string(meets[i].length()));

    auto is_prefix = [](const Node& a, const Node& b) {
        if (a.length() >= b.length()) return false;
        return std::equal(a.entries.begin(), a.entries.end(), b.entries.begin());
    };
    // longest meet that is a proper prefix of the given node
    auto parent_of = [&](const Node& n) {
        int best = -1;
        for (std::size_t r = 0; r < meets.size(); ++r)
            if (is_prefix(meets[r], n) &&
                (best < 0 || meets[r].length() > meets[best].length()))
                best = static_cast<int>(r);
        return best;
    };

    int k = static_cast<int>(meets.size());
    s.internals.resize(k);
    // (direction at parent, child) per internal, sorted by direction
    std::vector<std::vector<std::pair<int, Skeleton::Child>>> slots(k);
    for (int r = 1; r < k; ++r) {
        int p = parent_of(meets[r]);
        if (p < 0) throw InputError("type_of: meets do not form a tree");
        slots[p].push_back({meets[r].entries[meets[p].length()], {false, r}});
    }
    for (int i = 0; i < m; ++i) {
        int p = parent_of(c.nodes[i]);
        if (p < 0) throw InputError("type_of: leaf outside the meet tree");
        slots[p].push_back({c.nodes[i].entries[meets[p].length()], {true, i}});
    }
    for (int r = 0; r < k; ++r) {
        std::sort(slots[r].begin(), slots[r].end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (slots[r].size() < 2) throw InputError("type_of: internal node of arity < 2");
        for (auto& [dir, ch] : slots[r]) s.internals[r].push_back(ch);
    }
    return s;
}

bool strongly_isomorphic(const LimitChain& chain, const Copy& c1, const Copy& c2) {
    if (type_of(c1) != type_of(c2)) return false;
    return induced_structure(chain, c1) == induced_structure(chain, c2);
}

Determination determine_children(const Skeleton& skel, const RelStruct& h,
                                 const Signature& sig) {
    Determination d;
    d.children.resize(skel.internal_count());
    for (int r = 0; r < skel.internal_count(); ++r) {
        const auto& row = skel.internals[r];
        int arity = static_cast<int>(row.size());
        std::vector<std::vector<int>> under(arity);
        for (int a = 0; a < arity; ++a)
            under[a] = row[a].leaf ? std::vector<int>{row[a].id}
                                   : skel.leaves_under(row[a].id);
        RelStruct childStruct;
        childStruct.size = arity;
        childStruct.rels.resize(sig.arity());
        for (int a = 0; a < arity; ++a)
            for (int b = 0; b < arity; ++b) {
                if (a == b) continue;
                for (int l = 0; l < sig.arity(); ++l) {
                    bool value = h.has(l, under[a][0], under[b][0]);
                    for (int u : under[a])
                        for (int v : under[b])
                            if (h.has(l, u, v) != value) {
                                d.ok = false;
                                d.violation = "internal " + std::to_string(r) +
                                              ", children " + std::to_string(a) + "," +
                                              std::to_string(b) + ", symbol " +
                                              sig.symbols[l] +
                                              ": relation not constant across leaves";
                                d.children.clear();
                                return d;
                            }
                    if (value) childStruct.rels[l].insert({a, b});
                }
            }
        d.children[r] = std::move(childStruct);
    }
    return d;
}

RealizabilityReport check_realizable(const Skeleton& skel, const RelStruct& h,
                                     const ClassSpec& c) {
    if (skel.leafCount != h.size)
        throw InputError("check_realizable: skeleton has " + std::to_string(skel.leafCount) +
                         " leaves but the structure has " + std::to_string(h.size) +
                         " points");
    if (auto why = membership_failure(h, c))
        throw ClassError("check_realizable: structure is not a member of " + class_name(c) +
                         ": " + *why);

    RealizabilityReport rep;
    Determination d = determine_children(skel, h, c.signature);
    if (!d.ok) {
        rep.certificate = d.violation;
        return rep;
    }
    for (int r = 0; r < skel.internal_count(); ++r) {
        if (auto why = membership_failure(d.children[r], c)) {
            rep.certificate = "internal " + std::to_string(r) + ": children structure " +
                              struct_key(d.children[r]) + " is not a member of " +
                              class_name(c) + " (" + *why + ")";
            return rep;
        }
    }
    rep.ok = true;
    std::ostringstream cert;
    for (int r = 0; r < skel.internal_count(); ++r) {
        if (r) cert << "; ";
        cert << "internal " << r << ": " << struct_key(d.children[r]);
    }
    rep.certificate = cert.str();
    rep.childrenStructures = std::move(d.children);
    return rep;
}

std::vector<Skeleton> enumerate_types(const RelStruct& h, const ClassSpec& c) {
    if (auto why = membership_failure(h, c))
        throw ClassError("enumerate_types: structure is not a member of " + class_name(c) +
                         ": " + *why);
    std::vector<Skeleton> out;
    for (auto& skel : skeletons(h.size))
        if (check_realizable(skel, h, c).ok) out.push_back(std::move(skel));
    return out;
}

}  // namespace bigramsey
