#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "freeze/cli_app.hpp"
#include "freeze/construct.hpp"
#include "freeze/document.hpp"

using namespace freeze;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(FREEZE_FIXTURE_DIR) + "/" + name; }

fs::path temp_file(const std::string& name, const std::string& contents) {
    fs::path dir = fs::temp_directory_path() / "freezeset_tests";
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream(p) << contents;
    return p;
}

} // namespace

TEST_CASE("cli: help and version") {
    CHECK(run({"--help"}).code == 0);
    CliResult v = run({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find("1.0.0") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify"}).code == 2); // missing arguments
}

TEST_CASE("cli info: cavity document resolves to 316 points") {
    CliResult r = run({"info", fixture("cavity.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("316") != std::string::npos);

    CliResult j = run({"info", fixture("cavity.json"), "--json"});
    CHECK(j.code == 0);
    json doc = json::parse(j.out);
    CHECK(doc["points"] == 316);
    CHECK(doc["dim"] == 3);
    CHECK(doc["connected"] == true);
    CHECK(doc["tool"] == "freezeset");
}

TEST_CASE("cli info: unit cube and disconnected pair") {
    CliResult j = run({"info", fixture("unit_cube.json"), "--json"});
    CHECK(j.code == 0);
    json doc = json::parse(j.out);
    CHECK(doc["points"] == 8);
    CHECK(doc["boundary_points"] == 8);

    CliResult d = run({"info", fixture("disconnected.json")});
    CHECK(d.code == 0);
    CHECK(d.out.find("connected:        no") != std::string::npos);
}

TEST_CASE("cli info: adjacency override") {
    CliResult c1 = run({"info", fixture("diagonal.json"), "--json"});
    CHECK(json::parse(c1.out)["connected"] == false);
    CliResult c2 = run({"info", fixture("diagonal.json"), "--adjacency", "2", "--json"});
    CHECK(json::parse(c2.out)["connected"] == true);
    CHECK(run({"info", fixture("diagonal.json"), "--adjacency", "9"}).code == 2);
}

TEST_CASE("cli construct: corner sets and the slab decomposition") {
    CliResult single = run({"construct", fixture("cube4.json"), "--method", "corners"});
    CHECK(single.code == 0);
    json set1 = json::parse(single.out);
    CHECK(set1["count"] == 8);

    CliResult slabs = run({"construct", fixture("cube4.json"), "--method", "corners",
                           "--decomposition", fixture("two_slabs.json")});
    CHECK(slabs.code == 0);
    json set2 = json::parse(slabs.out);
    CHECK(set2["count"] == 12);
    PointSet parsed = point_set_from_json(set2, 3);
    PointSet expected;
    for (Coord x : {0, 4})
        for (Coord y : {0, 4})
            for (Coord z : {0, 2, 4}) expected.push_back({x, y, z});
    CHECK(parsed == canonical_point_set(expected));
}

TEST_CASE("cli construct: boundary and trivial methods") {
    CliResult bd = run({"construct", fixture("cube2_c3.json"), "--method", "boundary"});
    CHECK(bd.code == 0);
    CHECK(json::parse(bd.out)["count"] == 26);

    CliResult trivial = run({"construct", fixture("segment02.json"), "--method", "trivial"});
    CHECK(trivial.code == 0);
    CHECK(json::parse(trivial.out)["count"] == 3);
}

TEST_CASE("cli construct: adjacency mismatch warns but emits the set") {
    CliResult r = run({"construct", fixture("cube2_c3.json"), "--method", "corners"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(json::parse(r.out)["count"] == 8);

    CHECK(run({"construct", fixture("cube4.json"), "--method", "nonsense"}).code == 2);
}

TEST_CASE("cli construct: emitted point sets re-parse identically") {
    for (const char* mode : {"text", "json"}) {
        std::vector<std::string> args = {"construct", fixture("square5.json"), "--method", "corners"};
        if (std::string(mode) == "json") args.push_back("--json");
        CliResult r = run(args);
        REQUIRE(r.code == 0);
        PointSet reparsed = point_set_from_json(json::parse(r.out), 2);
        CHECK(reparsed == PointSet{{0, 0}, {0, 5}, {5, 0}, {5, 5}});
    }
}

TEST_CASE("cli verify: hypercube example exits 0") {
    CliResult r = run({"verify", fixture("unit_cube.json"), fixture("hypercube_set.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("status: frozen") != std::string::npos);

    CliResult j = run({"verify", fixture("unit_cube.json"), fixture("hypercube_set.json"), "--json"});
    json doc = json::parse(j.out);
    CHECK(doc["status"] == "frozen");
    CHECK(doc["witness"].is_null());
    CHECK(doc["stats"]["nodes"] == 0);
    CHECK(doc["version"] == "1.0.0");
}

TEST_CASE("cli verify: dropping a hypercube point flips the status") {
    CliResult r = run({"verify", fixture("unit_cube.json"), fixture("hypercube_set_minus_one.json")});
    CHECK(r.code == 1);
    CHECK(r.out.find("status: not-frozen") != std::string::npos);
    CHECK(r.out.find("->") != std::string::npos);
}

TEST_CASE("cli verify: empty set on a segment yields a witness") {
    CliResult r = run({"verify", fixture("segment01.json"), fixture("empty_set.json"), "--json"});
    CHECK(r.code == 1);
    json doc = json::parse(r.out);
    CHECK(doc["status"] == "not_frozen");
    CHECK(doc["witness"].is_array());
}

TEST_CASE("cli verify: validation and parse failures exit 2") {
    CHECK(run({"verify", fixture("bad_syntax.json"), fixture("empty_set.json")}).code == 2);
    CHECK(run({"verify", fixture("segment01.json"), fixture("bad_syntax.json")}).code == 2);
    // set point outside the image
    auto outside = temp_file("outside.json", R"({"points": [[9]]})");
    CHECK(run({"verify", fixture("segment01.json"), outside.string()}).code == 2);
    CHECK(run({"verify", fixture("segment01.json"), "/no/such/file.json"}).code == 2);
    CHECK(run({"verify", fixture("segment01.json"), fixture("empty_set.json"), "--no-prune", "bogus"}).code == 2);
}

TEST_CASE("cli verify: zero budget is inconclusive when search is needed") {
    CliResult r = run({"verify", fixture("segment02.json"), fixture("set_zero.json"), "--budget", "0",
                       "--no-prune", "mandatory"});
    CHECK(r.code == 3);
    CHECK(r.err.find("inconclusive") != std::string::npos);
    // with the mandatory fast path active no nodes are needed
    CHECK(run({"verify", fixture("segment02.json"), fixture("set_zero.json"), "--budget", "0"}).code == 1);
}

TEST_CASE("cli verify: pruning toggles and threads keep the status") {
    for (const char* rule : {"arc", "distance", "geodesic", "pulling", "interior", "mandatory"}) {
        CliResult r = run({"verify", fixture("unit_cube.json"), fixture("hypercube_set.json"),
                           "--no-prune", rule});
        CHECK(r.code == 0);
    }
    CliResult threaded = run({"verify", fixture("unit_cube.json"), fixture("hypercube_set_minus_one.json"),
                              "--threads", "3"});
    CHECK(threaded.code == 1);
}

TEST_CASE("cli pipeline: construct feeds verify") {
    CliResult bd = run({"construct", fixture("cube2_c3.json"), "--method", "boundary"});
    REQUIRE(bd.code == 0);
    auto set_file = temp_file("bd26.json", bd.out);
    CliResult v = run({"verify", fixture("cube2_c3.json"), set_file.string()});
    CHECK(v.code == 0);

    CliResult corners12 = run({"construct", fixture("cube4.json"), "--method", "corners",
                               "--decomposition", fixture("two_slabs.json")});
    REQUIRE(corners12.code == 0);
    auto twelve_file = temp_file("twelve.json", corners12.out);
    CHECK(run({"verify", fixture("cube4.json"), twelve_file.string()}).code == 0);
}

TEST_CASE("cli minimize: cube boundary under cN is already minimal") {
    CliResult bd = run({"construct", fixture("cube2_c3.json"), "--method", "boundary"});
    REQUIRE(bd.code == 0);
    auto set_file = temp_file("bd26b.json", bd.out);
    CliResult m = run({"minimize", fixture("cube2_c3.json"), set_file.string(), "--json"});
    CHECK(m.code == 0);
    json doc = json::parse(m.out);
    CHECK(doc["count"] == 26);
    CHECK(doc["removed"].empty());
    CHECK(doc["kept"].size() == 26);
    PointSet reparsed = point_set_from_json(doc, 3);
    CHECK(reparsed.size() == 26);
}

TEST_CASE("cli minimize: interior point of the corner set is dropped") {
    auto with_center = temp_file("corners_center.json",
                                 R"({"points": [[0,0,0],[0,0,4],[0,4,0],[0,4,4],
                                                [4,0,0],[4,0,4],[4,4,0],[4,4,4],[2,2,2]]})");
    CliResult m = run({"minimize", fixture("cube4.json"), with_center.string(), "--json"});
    CHECK(m.code == 0);
    json doc = json::parse(m.out);
    PointSet minimal = point_set_from_json(doc, 3);
    CHECK_FALSE(set_contains(minimal, {2, 2, 2}));
    // the survivors still freeze the cube
    auto min_file = temp_file("minimal_out.json", m.out);
    CHECK(run({"verify", fixture("cube4.json"), min_file.string()}).code == 0);
}

TEST_CASE("cli minimize: both segment endpoints are retained") {
    auto all = temp_file("seg_all.json", R"({"points": [[0],[1]]})");
    CliResult m = run({"minimize", fixture("segment01.json"), all.string(), "--json"});
    CHECK(m.code == 0);
    CHECK(point_set_from_json(json::parse(m.out), 1) == PointSet{{0}, {1}});

    // the text report is a parseable point-set document as well
    CliResult t = run({"minimize", fixture("segment01.json"), all.string()});
    CHECK(t.code == 0);
    CHECK(point_set_from_json(json::parse(t.out), 1) == PointSet{{0}, {1}});
}

TEST_CASE("cli minimize: non-freezing input exits 1 with a witness") {
    CliResult m = run({"minimize", fixture("segment02.json"), fixture("set_zero.json"), "--json"});
    CHECK(m.code == 1);
    json doc = json::parse(m.out);
    CHECK(doc["status"] == "not_frozen");
    CHECK(doc["witness"].is_array());
}

TEST_CASE("cli: budget override via the environment") {
    setenv("FREEZESET_BUDGET", "0", 1);
    CliResult r = run({"verify", fixture("segment02.json"), fixture("set_zero.json"),
                       "--no-prune", "mandatory"});
    unsetenv("FREEZESET_BUDGET");
    CHECK(r.code == 3);
}
