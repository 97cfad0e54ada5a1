// Command-line front end: type enumeration, gadget construction and
// verification, oracle cross-checks, chain/level inspection, and diagram
// emission.  Exit codes: 0 ok, 1 assertion failed, 2 invalid input,
// 3 class violation, 4 budget exceeded.

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bigramsey/io.hpp"

namespace {

using namespace bigramsey;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// --class / --structure take inline JSON or a file path
std::string arg_payload(const std::string& arg) {
    for (char ch : arg) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return (ch == '{' || ch == '[') ? arg : slurp(arg);
    }
    throw InputError("empty argument");
}

void print_skeleton_list(const std::vector<Skeleton>& list, const std::string& format) {
    if (format == "json") {
        std::cout << types_to_json(list) << "\n";
    } else if (format == "text") {
        std::cout << "count " << list.size() << "\n";
        for (const auto& s : list) std::cout << s.text() << "\n";
    } else {
        for (const auto& s : list) std::cout << skeleton_dot(s);
    }
}

int cmd_types(const std::string& classText, const std::string& structText,
              const std::string& format) {
    ClassSpec c = class_from_json(arg_payload(classText));
    RelStruct h = struct_from_json(arg_payload(structText), c.signature);
    print_skeleton_list(enumerate_types(h, c), format);
    return 0;
}

int cmd_skeletons(int m, const std::string& format) {
    print_skeleton_list(skeletons(m), format);
    return 0;
}

int cmd_gadget(const std::string& classText, const std::string& structText, bool verify,
               int depth, const std::string& chainCache, const std::string& format,
               long long budget) {
    ClassSpec c = class_from_json(arg_payload(classText));
    RelStruct h = struct_from_json(arg_payload(structText), c.signature);
    Gadget g = build_gadget(h, c);
    if (!verify) {
        if (format == "json")
            std::cout << gadget_to_json(g, c.signature) << "\n";
        else if (format == "dot")
            std::cout << gadget_dot(g, c.signature);
        else
            std::cout << "flavor " << g.flavor << (g.trivial ? " (trivial)" : "") << "\n"
                      << struct_text(g.extended, c.signature) << "\n";
        return 0;
    }
    LimitChain chain = load_or_build_chain(c, depth, {}, chainCache);
    GadgetReport rep = verify_gadget(chain, g, c, depth, budget);
    if (format == "text") {
        std::cout << "hostOk " << rep.hostOk << "\nmemberOk " << rep.memberOk
                  << "\nsingleSplit " << rep.singleSplit << "\nrawRan " << rep.rawRan
                  << "\nrawCopies " << rep.rawCopies << "\nrawSingleSplit "
                  << rep.rawSingleSplit << "\nok " << rep.ok() << "\n";
    } else {
        std::cout << gadget_report_to_json(rep) << "\n";
    }
    return rep.ok() ? 0 : 1;
}

int cmd_realize(const std::string& classText, const std::string& structText,
                const std::string& skeletonText, int depth, const std::string& chainCache,
                const std::string& format) {
    ClassSpec c = class_from_json(arg_payload(classText));
    RelStruct h = struct_from_json(arg_payload(structText), c.signature);
    Skeleton skel = parse_skeleton(skeletonText);
    LimitChain chain = load_or_build_chain(c, depth, {}, chainCache);
    RealizationProblem p{skel, h, c, depth};
    RealizeOutcome out = realize(chain, p);
    if (out.witness) {
        if (format == "text")
            for (const auto& n : out.witness->nodes) std::cout << n.text() << "\n";
        else
            std::cout << copy_to_json(*out.witness) << "\n";
        return 0;
    }
    if (format == "text")
        std::cout << out.failureKind << ": " << out.failureDetail << "\n";
    else
        std::cout << nlohmann::json{{"failureKind", out.failureKind},
                                    {"failureDetail", out.failureDetail}}
                         .dump()
                  << "\n";
    return 1;
}

int cmd_oracle(const std::string& classText, const std::string& structText, int depth,
               const std::string& chainCache, bool rawConfirm) {
    ClassSpec c = class_from_json(arg_payload(classText));
    RelStruct h = struct_from_json(arg_payload(structText), c.signature);
    LimitChain chain = load_or_build_chain(c, depth, {}, chainCache);
    ComparisonReport rep = cross_check(chain, h, c, depth, rawConfirm);
    std::cout << report_to_json(rep) << "\n";
    return rep.clean() ? 0 : 1;
}

int cmd_flim(const std::string& classText, int depth, const std::string& chainCache,
             const std::string& format) {
    ClassSpec c = class_from_json(arg_payload(classText));
    LimitChain chain = load_or_build_chain(c, depth, {}, chainCache);
    if (chain.depth > depth) chain = truncate_chain(chain, depth);
    if (format == "text")
        std::cout << chain_text(chain);
    else if (format == "json")
        std::cout << chain_to_json(chain) << "\n";
    else
        throw InputError("flim supports --format json|text");
    return 0;
}

int cmd_tmax_level(int n, const std::string& format) {
    std::uint64_t count = level_count(n);
    if (format == "text") {
        std::cout << "level " << n << ": " << count << " nodes\n";
        if (n <= 9)
            for (const auto& node : level_nodes(n)) std::cout << node.text() << "\n";
        return 0;
    }
    if (format != "json") throw InputError("tmax-level supports --format json|text");
    nlohmann::json obj{{"level", n}, {"count", count}};
    if (n <= 9) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const auto& node : level_nodes(n)) nodes.push_back(node.entries);
        obj["nodes"] = std::move(nodes);
    }
    std::cout << obj.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coding-tree type and gadget toolkit"};
    app.require_subcommand(1);

    std::string classText, structText, skeletonText, chainCache;
    std::string format = "json";
    int depth = 6;
    int levelArg = 0;
    int mArg = 1;
    bool verify = false;
    long long budget = 50'000'000;

    auto addFormat = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "text", "dot"}));
    };

    auto* cTypes = app.add_subcommand("types", "enumerate the types of a structure");
    cTypes->add_option("--class", classText, "class JSON or file")->required();
    cTypes->add_option("--structure", structText, "structure JSON or file")->required();
    addFormat(cTypes);

    auto* cSkel = app.add_subcommand("skeletons", "list all skeletons with m leaves");
    cSkel->add_option("m", mArg, "leaf count")->required();
    addFormat(cSkel);

    auto* cGadget = app.add_subcommand("gadget", "build the class gadget for a structure");
    cGadget->add_option("--class", classText)->required();
    cGadget->add_option("--structure", structText)->required();
    cGadget->add_flag("--verify", verify, "verify the single-splitting-node property");
    cGadget->add_option("--depth", depth, "verification depth");
    cGadget->add_option("--chain-cache", chainCache, "chain cache file");
    cGadget->add_option("--budget", budget, "raw scan node budget");
    addFormat(cGadget);

    auto* cVerify = app.add_subcommand("verify-gadget", "build and verify the gadget");
    cVerify->add_option("--class", classText)->required();
    cVerify->add_option("--structure", structText)->required();
    cVerify->add_option("--depth", depth);
    cVerify->add_option("--chain-cache", chainCache);
    cVerify->add_option("--budget", budget);
    addFormat(cVerify);

    auto* cRealize = app.add_subcommand("realize", "realize a skeleton for a structure");
    cRealize->add_option("skeleton", skeletonText, "skeleton string")->required();
    cRealize->add_option("--class", classText)->required();
    cRealize->add_option("--structure", structText)->required();
    cRealize->add_option("--depth", depth);
    cRealize->add_option("--chain-cache", chainCache);
    addFormat(cRealize);

    auto* cOracle = app.add_subcommand("oracle", "cross-check enumerator vs realization");
    cOracle->add_option("--class", classText)->required();
    cOracle->add_option("--structure", structText)->required();
    cOracle->add_option("--depth", depth);
    cOracle->add_option("--chain-cache", chainCache);
    cOracle->add_flag("--verify", verify, "re-derive by raw sweep when feasible");

    auto* cFlim = app.add_subcommand("flim", "emit the generated limit chain");
    cFlim->add_option("--class", classText)->required();
    cFlim->add_option("--depth", depth);
    cFlim->add_option("--chain-cache", chainCache);
    addFormat(cFlim);

    auto* cTmax = app.add_subcommand("tmax-level", "list one level of the coding tree");
    cTmax->add_option("n", levelArg, "level")->required();
    addFormat(cTmax);

    // default depths differ: gadget verification reads shallow levels only
    cGadget->parse_complete_callback([&] {
        if (cGadget->count("--depth") == 0) depth = 5;
    });
    cVerify->parse_complete_callback([&] {
        if (cVerify->count("--depth") == 0) depth = 5;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(cTypes)) return cmd_types(classText, structText, format);
        if (app.got_subcommand(cSkel)) return cmd_skeletons(mArg, format);
        if (app.got_subcommand(cGadget))
            return cmd_gadget(classText, structText, verify, depth, chainCache, format,
                              budget);
        if (app.got_subcommand(cVerify))
            return cmd_gadget(classText, structText, true, depth, chainCache, format,
                              budget);
        if (app.got_subcommand(cRealize))
            return cmd_realize(classText, structText, skeletonText, depth, chainCache,
                               format);
        if (app.got_subcommand(cOracle))
            return cmd_oracle(classText, structText, depth, chainCache, verify);
        if (app.got_subcommand(cFlim)) return cmd_flim(classText, depth, chainCache, format);
        if (app.got_subcommand(cTmax)) return cmd_tmax_level(levelArg, format);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ClassError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
