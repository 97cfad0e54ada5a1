#include "bigramsey/tmax.hpp"

#include <algorithm>
#include <sstream>

namespace bigramsey {

Node::Node(std::vector<int> e) : entries(std::move(e)) {
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (entries[i] < 0 || entries[i] > static_cast<int>(i))
            throw InputError("Node: entry " + std::to_string(i) + " exceeds its index");
}

std::string Node::text() const {
    std::ostringstream out;
    out << '<';
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i) out << ',';
        out << entries[i];
    }
    out << '>';
    return out.str();
}

std::vector<Node> successors(const Node& t) {
    std::vector<Node> out;
    out.reserve(t.length() + 1);
    for (int v = 0; v <= t.length(); ++v) {
        Node s = t;
        s.entries.push_back(v);
        out.push_back(std::move(s));
    }
    return out;
}

std::uint64_t level_count(int n) {
    if (n < 0 || n > 20) throw InputError("level_count: n must be in 0..20");
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<Node> level_nodes(int n) {
    if (n < 0 || n > 9) throw InputError("level_nodes: n must be in 0..9");
    std::vector<Node> out{Node{}};
    for (int lvl = 0; lvl < n; ++lvl) {
        std::vector<Node> next;
        next.reserve(out.size() * (lvl + 1));
        for (const auto& t : out)
            for (auto& s : successors(t)) next.push_back(std::move(s));
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Node meet(const Node& x, const Node& y) {
    if (x == y) throw InputError("meet: nodes must be distinct");
    Node m;
    int lim = std::min(x.length(), y.length());
    for (int i = 0; i < lim && x.entries[i] == y.entries[i]; ++i)
        m.entries.push_back(x.entries[i]);
    return m;
}

Copy::Copy(std::vector<Node> ns) : nodes(std::move(ns)) {
    if (nodes.empty()) throw InputError("Copy: empty node set");
    std::sort(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (nodes[i] == nodes[i + 1]) throw InputError("Copy: duplicate node");
        if (nodes[i].length() != nodes[i + 1].length())
            throw InputError("Copy: nodes must share one level");
    }
}

DeltaCrown delta_and_crown(const Copy& c) {
    if (c.size() < 2) throw InputError("delta_and_crown: need at least two nodes");
    int delta = 0;
    for (int i = 0; i < c.size(); ++i)
        for (int j = i + 1; j < c.size(); ++j)
            delta = std::max(delta, meet(c.nodes[i], c.nodes[j]).length());
    if (delta + 1 > c.nodes[0].length())
        throw InputError("delta_and_crown: node lengths must exceed delta");
    DeltaCrown out;
    out.delta = delta;
    for (const auto& t : c.nodes) {
        Node r;
        r.entries.assign(t.entries.begin(), t.entries.begin() + delta + 1);
        out.crown.push_back(std::move(r));
    }
    std::sort(out.crown.begin(), out.crown.end());
    out.crown.erase(std::unique(out.crown.begin(), out.crown.end()), out.crown.end());
    return out;
}

std::uint64_t branch_pair_pattern(const LimitChain& chain, const Node& x, const Node& y) {
    Node m = meet(x, y);
    int n = m.length();
    if (n >= x.length() || n >= y.length())
        throw InputError("branch_pair_pattern: one node is an initial segment of the other");
    if (n > chain.depth)
        throw InputError("branch_pair_pattern: chain too shallow for meet level " +
                         std::to_string(n));
    // directions taken immediately below the meet, read as points of the
    // meet-level structure
    int a = x.entries[n], b = y.entries[n];
    return chain.levels[n].pair_pattern(a, b);
}

bool eval_relation(const LimitChain& chain, int symbol, const Node& x, const Node& y) {
    if (symbol < 0 || symbol >= chain.cls.signature.arity())
        throw InputError("eval_relation: symbol out of range");
    std::uint64_t p = branch_pair_pattern(chain, x, y);
    return ((p >> (2 * symbol)) & 1) != 0;
}

RelStruct induced_structure(const LimitChain& chain, const Copy& c) {
    RelStruct s;
    s.size = c.size();
    s.rels.resize(chain.cls.signature.arity());
    for (int i = 0; i < c.size(); ++i)
        for (int j = i + 1; j < c.size(); ++j) {
            std::uint64_t p = branch_pair_pattern(chain, c.nodes[i], c.nodes[j]);
            for (int l = 0; l < chain.cls.signature.arity(); ++l) {
                std::uint64_t bits = (p >> (2 * l)) & 3;
                if (bits & 1) s.rels[l].insert({i, j});
                if (bits & 2) s.rels[l].insert({j, i});
            }
        }
    return s;
}

}  // namespace bigramsey
