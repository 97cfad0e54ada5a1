#include "bigramsey/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace bigramsey {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

json struct_to_obj(const RelStruct& s, const Signature& sig) {
    json rels = json::object();
    for (int l = 0; l < sig.arity(); ++l) {
        json pairs = json::array();
        for (const auto& [i, j] : s.rels[l]) pairs.push_back(json::array({i, j}));
        rels[sig.symbols[l]] = std::move(pairs);
    }
    return json{{"size", s.size}, {"relations", std::move(rels)}};
}

RelStruct struct_from_obj(const json& obj, const Signature& sig, bool* closedSymmetric) {
    if (!obj.is_object() || !obj.contains("size") || !obj["size"].is_number_integer())
        throw InputError("structure: expected an object with an integer \"size\"");
    RelStruct s;
    s.size = obj["size"].get<int>();
    if (s.size < 0) throw InputError("structure: size must be nonnegative");
    s.rels.resize(sig.arity());
    if (obj.contains("relations")) {
        const json& rels = obj["relations"];
        if (!rels.is_object()) throw InputError("structure: \"relations\" must be an object");
        for (auto it = rels.begin(); it != rels.end(); ++it) {
            int l = -1;
            for (int c = 0; c < sig.arity(); ++c)
                if (sig.symbols[c] == it.key()) l = c;
            if (l < 0) throw InputError("structure: unknown relation symbol " + it.key());
            if (!it.value().is_array())
                throw InputError("structure: relation " + it.key() + " must be an array");
            for (const json& p : it.value()) {
                if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() ||
                    !p[1].is_number_integer())
                    throw InputError("structure: relation pairs must be [i, j]");
                s.rels[l].insert({p[0].get<int>(), p[1].get<int>()});
            }
        }
    }
    // close symmetric symbols listed one direction only, and note doing so
    for (int l = 0; l < sig.arity(); ++l) {
        if (!sig.symmetric[l]) continue;
        std::vector<std::pair<int, int>> add;
        for (const auto& [i, j] : s.rels[l])
            if (!s.has(l, j, i)) add.push_back({j, i});
        for (const auto& p : add) s.rels[l].insert(p);
        if (!add.empty() && closedSymmetric) *closedSymmetric = true;
    }
    auto violations = validate(s, sig);
    if (!violations.empty()) throw InputError("structure: " + violations.front().message());
    return s;
}

Signature signature_from_obj(const json& obj) {
    Signature sig;
    if (!obj.is_object() || !obj.contains("symbols"))
        throw InputError("signature: expected an object with \"symbols\"");
    for (const json& s : obj["symbols"]) sig.symbols.push_back(s.get<std::string>());
    auto flags = [&](const char* key) {
        std::vector<bool> out(sig.symbols.size(), false);
        if (obj.contains(key)) {
            const json& arr = obj[key];
            if (!arr.is_array() || arr.size() != sig.symbols.size())
                throw InputError(std::string("signature: \"") + key +
                                 "\" must match the symbol list");
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = arr[i].get<bool>();
        }
        return out;
    };
    sig.symmetric = flags("symmetric");
    sig.irreflexive = flags("irreflexive");
    if (sig.symbols.empty()) throw InputError("signature: at least one symbol required");
    return sig;
}

json signature_to_obj(const Signature& sig) {
    return json{{"symbols", sig.symbols},
                {"symmetric", sig.symmetric},
                {"irreflexive", sig.irreflexive}};
}

json class_to_obj(const ClassSpec& c) {
    switch (c.kind) {
        case ClassKind::og: return json{{"kind", "og"}};
        case ClassKind::og_k: return json{{"kind", "og_k"}, {"k", c.k}};
        case ClassKind::oog: return json{{"kind", "oog"}};
        case ClassKind::ot: return json{{"kind", "ot"}};
        case ClassKind::opo: return json{{"kind", "opo"}};
        case ClassKind::forb: {
            json forbidden = json::array();
            for (const auto& f : c.forbidden) forbidden.push_back(struct_to_obj(f, c.signature));
            return json{{"kind", "forb"},
                        {"forbidden", std::move(forbidden)},
                        {"signature", signature_to_obj(c.signature)}};
        }
    }
    throw InputError("class: unknown kind");
}

ClassSpec class_from_obj(const json& obj) {
    if (!obj.is_object() || !obj.contains("kind") || !obj["kind"].is_string())
        throw InputError("class: expected an object with a string \"kind\"");
    std::string kind = obj["kind"].get<std::string>();
    if (kind == "og") return make_og();
    if (kind == "og_k") {
        if (!obj.contains("k") || !obj["k"].is_number_integer())
            throw InputError("class: og_k needs an integer \"k\"");
        return make_og_k(obj["k"].get<int>());
    }
    if (kind == "oog") return make_oog();
    if (kind == "ot") return make_ot();
    if (kind == "opo") return make_opo();
    if (kind == "forb") {
        Signature sig = obj.contains("signature") ? signature_from_obj(obj["signature"])
                                                  : directed_signature();
        std::vector<RelStruct> forbidden;
        if (!obj.contains("forbidden") || !obj["forbidden"].is_array())
            throw InputError("class: forb needs a \"forbidden\" array");
        for (const json& f : obj["forbidden"])
            forbidden.push_back(struct_from_obj(f, sig, nullptr));
        return make_forb(std::move(sig), std::move(forbidden));
    }
    throw InputError("class: unknown kind \"" + kind + "\"");
}

json copy_to_obj(const Copy& c) {
    json nodes = json::array();
    for (const auto& n : c.nodes) nodes.push_back(n.entries);
    return json{{"nodes", std::move(nodes)}};
}

json options_to_obj(const ChainOptions& o) {
    return json{{"packSizeCap", o.packSizeCap},
                {"packLevelBudget", o.packLevelBudget},
                {"packNodeBudget", o.packNodeBudget},
                {"demandBaseCap", o.demandBaseCap}};
}

ChainOptions options_from_obj(const json& obj) {
    ChainOptions o;
    o.packSizeCap = obj.at("packSizeCap").get<int>();
    o.packLevelBudget = obj.at("packLevelBudget").get<int>();
    o.packNodeBudget = obj.at("packNodeBudget").get<std::int64_t>();
    o.demandBaseCap = obj.at("demandBaseCap").get<int>();
    return o;
}

std::string node_name(bool leaf, int id) {
    return (leaf ? "l" : "i") + std::to_string(id);
}

}  // namespace

std::string struct_to_json(const RelStruct& s, const Signature& sig) {
    return struct_to_obj(s, sig).dump();
}

RelStruct struct_from_json(const std::string& text, const Signature& sig,
                           bool* closedSymmetric) {
    return struct_from_obj(parse_or_throw(text, "structure"), sig, closedSymmetric);
}

std::string class_to_json(const ClassSpec& c) { return class_to_obj(c).dump(); }

ClassSpec class_from_json(const std::string& text) {
    return class_from_obj(parse_or_throw(text, "class"));
}

std::string copy_to_json(const Copy& c) { return copy_to_obj(c).dump(); }

Copy copy_from_json(const std::string& text) {
    json obj = parse_or_throw(text, "copy");
    if (!obj.is_object() || !obj.contains("nodes") || !obj["nodes"].is_array())
        throw InputError("copy: expected an object with a \"nodes\" array");
    std::vector<Node> nodes;
    for (const json& n : obj["nodes"]) {
        if (!n.is_array()) throw InputError("copy: each node must be an entry array");
        nodes.push_back(Node(n.get<std::vector<int>>()));
    }
    return Copy(std::move(nodes));
}

std::string types_to_json(const std::vector<Skeleton>& types) {
    json texts = json::array();
    for (const auto& t : types) texts.push_back(t.text());
    return json{{"count", types.size()}, {"types", std::move(texts)}}.dump();
}

std::string report_to_json(const ComparisonReport& rep) {
    auto texts = [](const std::vector<Skeleton>& v) {
        json arr = json::array();
        for (const auto& s : v) arr.push_back(s.text());
        return arr;
    };
    json witnesses = json::object();
    for (const auto& [skel, copy] : rep.witnesses) witnesses[skel] = copy_to_obj(copy);
    return json{{"enumerated", texts(rep.enumerated)},
                {"realized", texts(rep.realized)},
                {"missing", texts(rep.missing)},
                {"extra", texts(rep.extra)},
                {"witnesses", std::move(witnesses)},
                {"nonDiagonalSeen", rep.nonDiagonalSeen}}
        .dump();
}

std::string gadget_to_json(const Gadget& g, const Signature& sig) {
    json obj = struct_to_obj(g.extended, sig);
    obj["host"] = g.hostPositions;
    obj["flavor"] = g.flavor;
    obj["trivial"] = g.trivial;
    return obj.dump();
}

std::string gadget_report_to_json(const GadgetReport& rep) {
    json enumerated = json::array();
    for (const auto& s : rep.enumerated) enumerated.push_back(s.text());
    return json{{"hostOk", rep.hostOk},
                {"memberOk", rep.memberOk},
                {"enumerated", std::move(enumerated)},
                {"singleSplit", rep.singleSplit},
                {"rawRan", rep.rawRan},
                {"rawCopies", rep.rawCopies},
                {"rawNonDiagonal", rep.rawNonDiagonal},
                {"rawSingleSplit", rep.rawSingleSplit},
                {"note", rep.note},
                {"ok", rep.ok()}}
        .dump();
}

std::string chain_to_json(const LimitChain& chain) {
    json raw = json::array(), levels = json::array(), order = json::array();
    for (const auto& s : chain.raw) raw.push_back(struct_to_obj(s, chain.cls.signature));
    for (const auto& s : chain.levels) levels.push_back(struct_to_obj(s, chain.cls.signature));
    for (const auto& o : chain.order) order.push_back(o);
    json log = json::array();
    for (const auto& e : chain.log)
        log.push_back(json{{"stage", e.stage},
                           {"kind", e.kind},
                           {"base", e.base},
                           {"rank", e.descriptor.rank},
                           {"config", e.descriptor.config},
                           {"slot", e.slot}});
    json demands = json::array();
    for (const auto& t : chain.demandTrace)
        demands.push_back(json{{"base", t.demand.base},
                               {"rank", t.demand.descriptor.rank},
                               {"config", t.demand.descriptor.config},
                               {"enqueued", t.stageEnqueued},
                               {"satisfied", t.stageSatisfied}});
    return json{{"class", class_to_obj(chain.cls)},
                {"version", kChainGeneratorVersion},
                {"options", options_to_obj(chain.options)},
                {"depth", chain.depth},
                {"raw", std::move(raw)},
                {"order", std::move(order)},
                {"levels", std::move(levels)},
                {"log", std::move(log)},
                {"demands", std::move(demands)}}
        .dump();
}

LimitChain chain_from_json(const std::string& text) {
    json obj = parse_or_throw(text, "chain");
    try {
        if (obj.at("version").get<std::string>() != kChainGeneratorVersion)
            throw InputError("chain: generator version mismatch");
        LimitChain chain;
        chain.cls = class_from_obj(obj.at("class"));
        chain.options = options_from_obj(obj.at("options"));
        chain.depth = obj.at("depth").get<int>();
        for (const json& s : obj.at("raw"))
            chain.raw.push_back(struct_from_obj(s, chain.cls.signature, nullptr));
        for (const json& o : obj.at("order"))
            chain.order.push_back(o.get<std::vector<int>>());
        for (const json& s : obj.at("levels"))
            chain.levels.push_back(struct_from_obj(s, chain.cls.signature, nullptr));
        for (const json& e : obj.at("log")) {
            ChainLogEntry entry;
            entry.stage = e.at("stage").get<int>();
            entry.kind = e.at("kind").get<std::string>();
            entry.base = e.at("base").get<std::vector<int>>();
            entry.descriptor.rank = e.at("rank").get<int>();
            entry.descriptor.config = e.at("config").get<std::uint64_t>();
            entry.slot = e.at("slot").get<int>();
            chain.log.push_back(std::move(entry));
        }
        for (const json& d : obj.at("demands")) {
            DemandTrace t;
            t.demand.base = d.at("base").get<std::vector<int>>();
            t.demand.descriptor.rank = d.at("rank").get<int>();
            t.demand.descriptor.config = d.at("config").get<std::uint64_t>();
            t.stageEnqueued = d.at("enqueued").get<int>();
            t.stageSatisfied = d.at("satisfied").get<int>();
            chain.demandTrace.push_back(std::move(t));
        }
        if (chain.depth < 0 ||
            chain.raw.size() != static_cast<std::size_t>(chain.depth) + 1 ||
            chain.levels.size() != chain.raw.size() || chain.order.size() != chain.raw.size())
            throw InputError("chain: inconsistent depth");
        return chain;
    } catch (const json::exception& e) {
        throw InputError(std::string("chain: ") + e.what());
    }
}

LimitChain load_or_build_chain(const ClassSpec& c, int depth, const ChainOptions& opts,
                               const std::string& cachePath) {
    if (!cachePath.empty() && std::filesystem::exists(cachePath)) {
        std::ifstream in(cachePath);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            LimitChain cached = chain_from_json(buf.str());
            if (cached.cls == c && cached.options == opts && cached.depth >= depth)
                return cached;
        } catch (const InputError&) {
            // stale or foreign cache: rebuild below
        }
    }
    LimitChain chain = build_chain(c, depth, opts);
    if (!cachePath.empty()) {
        std::ofstream out(cachePath);
        out << chain_to_json(chain);
        if (!out) throw InputError("chain cache: cannot write " + cachePath);
    }
    return chain;
}

std::string skeleton_dot(const Skeleton& s) {
    std::ostringstream out;
    out << "digraph skeleton {\n";
    out << "  rankdir=TB;\n";
    if (s.internals.empty()) {
        out << "  l0 [label=\"l0\", shape=box];\n";
    } else {
        for (int r = 0; r < s.internal_count(); ++r)
            out << "  i" << r << " [label=\"" << r << "\", shape=circle];\n";
        for (int i = 0; i < s.leafCount; ++i)
            out << "  l" << i << " [label=\"l" << i << "\", shape=box];\n";
        for (int r = 0; r < s.internal_count(); ++r)
            for (const auto& ch : s.internals[r])
                out << "  i" << r << " -> " << node_name(ch.leaf, ch.id) << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string gadget_dot(const Gadget& g, const Signature& sig) {
    std::ostringstream out;
    out << "digraph gadget {\n";
    for (int v = 0; v < g.extended.size; ++v) {
        bool host = false;
        for (int h : g.hostPositions) host = host || h == v;
        out << "  v" << v << " [label=\"v" << v << "\"" << (host ? ", peripheries=2" : "")
            << "];\n";
    }
    for (int l = 0; l < sig.arity(); ++l)
        for (const auto& [i, j] : g.extended.rels[l]) {
            if (sig.symmetric[l] && i > j) continue;  // one line per symmetric pair
            out << "  v" << i << " -> v" << j << " [label=\"" << sig.symbols[l] << "\""
                << (sig.symmetric[l] ? ", dir=none" : "") << "];\n";
        }
    out << "}\n";
    return out.str();
}

std::string struct_text(const RelStruct& s, const Signature& sig) {
    std::ostringstream out;
    out << "size " << s.size;
    for (int l = 0; l < sig.arity(); ++l) {
        out << "; " << sig.symbols[l] << ":";
        if (s.rels[l].empty()) out << " -";
        for (const auto& [i, j] : s.rels[l]) out << " (" << i << "," << j << ")";
    }
    return out.str();
}

std::string chain_text(const LimitChain& chain) {
    std::ostringstream out;
    for (int n = 0; n <= chain.depth; ++n)
        out << "level " << n << ": " << struct_text(chain.levels[n], chain.cls.signature)
            << "\n";
    return out.str();
}

}  // namespace bigramsey
