#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#include "bigramsey/io.hpp"
#include "bigramsey/tmax.hpp"
#include "bigramsey/types.hpp"

using namespace bigramsey;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    std::string out;
    int exitCode = -1;
};

RunResult run_with(const std::string& args, const char* redirect) {
    const char* bin = std::getenv("BIGRAMSEY_CLI_PATH");
    if (!bin) bin = BIGRAMSEY_CLI_PATH;
    std::string cmd = std::string(bin) + " " + args + " " + redirect;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    return {out, WEXITSTATUS(status)};
}

RunResult run(const std::string& args) { return run_with(args, "2>/dev/null"); }
RunResult run_merged(const std::string& args) { return run_with(args, "2>&1"); }

const char* kOg = R"(--class '{"kind":"og"}')";
const char* kPath3 = R"(--structure '{"size":3,"relations":{"R0":[[0,1],[1,2]]}}')";
const char* kTriangle = R"(--structure '{"size":3,"relations":{"R0":[[0,1],[0,2],[1,2]]}}')";
// two disjoint paths on five points: present in no generated level at small depth
const char* kCrown5 = R"(--structure '{"size":5,"relations":{"R0":[[0,2],[2,4],[1,3]]}}')";

}  // namespace

TEST_CASE("skeletons prints the catalogue in all three formats") {
    RunResult r = run("skeletons 3");
    CHECK(r.exitCode == 0);
    CHECK(r.out == types_to_json(skeletons(3)) + "\n");

    r = run("skeletons 3 --format text");
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("count 3\n") == 0);
    CHECK(r.out.find("(0: l0 l1 l2)\n") != std::string::npos);

    r = run("skeletons 2 --format dot");
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("digraph skeleton {") != std::string::npos);
}

TEST_CASE("tmax-level lists levels, omitting node lists when they get large") {
    RunResult r = run("tmax-level 4");
    CHECK(r.exitCode == 0);
    json obj = json::parse(r.out);
    CHECK(obj["level"] == 4);
    CHECK(obj["count"] == 24);
    json nodes = json::array();
    for (const Node& n : level_nodes(4)) nodes.push_back(n.entries);
    CHECK(obj["nodes"] == nodes);

    r = run("tmax-level 10");
    obj = json::parse(r.out);
    CHECK(obj["count"] == 3628800);
    CHECK(!obj.contains("nodes"));

    r = run("tmax-level 2 --format text");
    CHECK(r.out == "level 2: 2 nodes\n<0,0>\n<0,1>\n");
}

TEST_CASE("types reports the enumerated skeletons of a structure") {
    RunResult r = run(std::string("types ") + kOg + " " + kPath3);
    CHECK(r.exitCode == 0);
    CHECK(json::parse(r.out) == json{{"count", 1}, {"types", {"(0: l0 l1 l2)"}}});

    r = run(std::string("types ") + kOg + " " + kTriangle);
    CHECK(json::parse(r.out)["count"] == 3);
}

TEST_CASE("structure arguments may also name files") {
    fs::path dir = fs::temp_directory_path() / "bigramsey_cli_test";
    fs::create_directories(dir);
    fs::path f = dir / "path3.json";
    {
        std::ofstream out(f);
        out << R"({"size":3,"relations":{"R0":[[0,1],[1,2]]}})";
    }
    RunResult r = run(std::string("types ") + kOg + " --structure " + f.string());
    CHECK(r.exitCode == 0);
    CHECK(json::parse(r.out)["count"] == 1);

    r = run_merged(std::string("types ") + kOg + " --structure " + (dir / "absent.json").string());
    CHECK(r.exitCode == 2);
    CHECK(r.out.find("cannot read file") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("exit codes separate the failure families") {
    // parse errors from the argument layer
    CHECK(run("").exitCode == 2);
    CHECK(run("skeletons 3 --zap").exitCode == 2);
    CHECK(run(std::string("types ") + kOg).exitCode == 2);
    CHECK(run("skeletons notanumber").exitCode == 2);

    // invalid payloads
    RunResult r = run_merged(std::string("types ") + kOg + R"( --structure '{"size":')");
    CHECK(r.exitCode == 2);
    CHECK(r.out.find("error: ") == 0);

    // class violations
    r = run(std::string(R"(types --class '{"kind":"og_k","k":3}' )") + kTriangle);
    CHECK(r.exitCode == 3);

    // catalogue budgets
    CHECK(run("skeletons 12").exitCode == 4);

    // honest negative results
    r = run(std::string("oracle ") + kOg + " " + kCrown5 + " --depth 6");
    CHECK(r.exitCode == 1);
}

TEST_CASE("realize prints a witness or the obstruction") {
    RunResult r = run(std::string("realize '(0: l0 l1 l2)' ") + kOg + " " + kPath3 +
                      " --depth 6");
    CHECK(r.exitCode == 0);
    json copy = json::parse(r.out);
    REQUIRE(copy["nodes"].size() == 3);
    for (const json& n : copy["nodes"]) CHECK(n.size() == 6);

    r = run(std::string("realize '(0: l0 (1: l1 l2))' ") + kOg + " " + kPath3 + " --depth 6");
    CHECK(r.exitCode == 1);
    CHECK(json::parse(r.out)["failureKind"] == "determination");

    r = run(std::string("realize '(0: l0 l1 l2 l3 l4)' ") + kOg + " " + kCrown5 +
            " --depth 6");
    CHECK(r.exitCode == 1);
    CHECK(json::parse(r.out)["failureKind"] == "level-exhausted");

    r = run(std::string("realize '(0: l0 (1: l1 l2))' ") + kOg + " " + kPath3 +
            " --depth 6 --format text");
    CHECK(r.exitCode == 1);
    CHECK(r.out.find("determination: ") == 0);
}

TEST_CASE("oracle emits the comparison report") {
    RunResult r = run(std::string("oracle ") + kOg + " " + kPath3 + " --depth 6");
    CHECK(r.exitCode == 0);
    json rep = json::parse(r.out);
    CHECK(rep["missing"].empty());
    CHECK(rep["extra"].empty());
    CHECK(rep["enumerated"] == json::array({"(0: l0 l1 l2)"}));
    CHECK(rep["witnesses"].size() == 1);

    r = run(std::string("oracle ") + kOg + " " + kCrown5 + " --depth 6");
    CHECK(r.exitCode == 1);
    rep = json::parse(r.out);
    CHECK(rep["missing"].size() == 1);
    CHECK(rep["extra"].empty());
}

TEST_CASE("flim emits the chain and honors the cache") {
    fs::path dir = fs::temp_directory_path() / "bigramsey_cli_cache";
    fs::create_directories(dir);
    fs::path cache = dir / "ot.chain.json";
    fs::remove(cache);

    std::string base = R"(flim --class '{"kind":"ot"}')";
    RunResult r = run(base + " --depth 4 --chain-cache " + cache.string());
    CHECK(r.exitCode == 0);
    CHECK(json::parse(r.out)["depth"] == 4);
    REQUIRE(fs::exists(cache));

    // a shallower request is served from the deeper cache, truncated
    r = run(base + " --depth 3 --chain-cache " + cache.string());
    CHECK(r.exitCode == 0);
    CHECK(json::parse(r.out)["depth"] == 3);
    CHECK(json::parse(r.out)["levels"].size() == 4);

    // a corrupt cache is rebuilt, not trusted
    {
        std::ofstream out(cache);
        out << "{ corrupt";
    }
    r = run(base + " --depth 2 --chain-cache " + cache.string());
    CHECK(r.exitCode == 0);
    CHECK(json::parse(r.out)["depth"] == 2);

    r = run(R"(flim --class '{"kind":"og"}' --depth 2 --format text)");
    CHECK(r.exitCode == 0);
    CHECK(r.out ==
          "level 0: size 1; R0: -\n"
          "level 1: size 2; R0: -\n"
          "level 2: size 3; R0: (0,2) (2,0)\n");

    CHECK(run(R"(flim --class '{"kind":"og"}' --depth 2 --format dot)").exitCode == 2);
    fs::remove_all(dir);
}

TEST_CASE("gadget builds and verify-gadget judges") {
    RunResult r = run(R"(gadget --class '{"kind":"opo"}' --structure '{"size":2}')");
    CHECK(r.exitCode == 0);
    json g = json::parse(r.out);
    CHECK(g["size"] == 7);
    CHECK(g["host"] == json::array({2, 4}));
    CHECK(g["flavor"] == "opo");

    r = run(R"(gadget --class '{"kind":"opo"}' --structure '{"size":1}' --format text)");
    CHECK(r.out.find("flavor opo (trivial)") == 0);

    r = run(R"(verify-gadget --class '{"kind":"ot"}' --structure '{"size":1}')");
    CHECK(r.exitCode == 0);
    json rep = json::parse(r.out);
    CHECK(rep["ok"] == true);
    CHECK(rep["rawRan"] == true);
    CHECK(rep["rawCopies"] == 774);
    CHECK(rep["enumerated"].size() == 1);

    r = run(R"(gadget --class '{"kind":"og"}' --structure '{"size":1}' --verify --format text)");
    CHECK(r.exitCode == 0);
    CHECK(r.out.find("rawCopies 16774\n") != std::string::npos);
    CHECK(r.out.find("ok 1\n") != std::string::npos);

    r = run(R"(gadget --class '{"kind":"og"}' --structure '{"size":1}' --format dot)");
    CHECK(r.out.find("digraph gadget {") == 0);
}
