#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cgsym/cli.hpp"
#include "support/fixtures.hpp"

using namespace cgsym;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "cgsym_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
    auto path = temp_dir() / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    return path.string();
}

std::string graph_file(const std::string& name, const HybridGraph& g) {
    return write_file(name, serialize(g));
}

}  // namespace

TEST_CASE("validate prints the graph class", "[cli]") {
    auto chain = graph_file("chain.cg", fixtures::chain3());
    auto r = run_cli({"validate", chain});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "dag\n");

    auto flag = write_file("flag.cg", "vertices: 3\n1 -> 2\n2 -- 3\n");
    REQUIRE(run_cli({"validate", flag}).out == "chain-graph-with-flags\n");

    auto bad = write_file("bad.cg", "vertices: 2\n1 -> 2\n1 -- 2\n");
    auto rbad = run_cli({"validate", bad});
    REQUIRE(rbad.code == 1);
    REQUIRE(rbad.err.find("line 3") != std::string::npos);

    REQUIRE(run_cli({"validate", (temp_dir() / "missing.cg").string()}).code == 1);
}

TEST_CASE("essential prints a fixpoint of itself", "[cli]") {
    auto spr = graph_file("sprinkler.cg", fixtures::sprinkler5());
    auto r = run_cli({"essential", spr});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == serialize(fixtures::sprinkler5_essential()));

    auto again = run_cli({"essential", write_file("sprinkler_star.cg", r.out)});
    REQUIRE(again.code == 0);
    REQUIRE(again.out == r.out);

    auto flag = write_file("flag2.cg", "vertices: 3\n1 -> 2\n2 -- 3\n");
    REQUIRE(run_cli({"essential", flag}).code == 2);
}

TEST_CASE("equivalent explains its verdict", "[cli]") {
    auto a = graph_file("ch_a.cg", fixtures::chain3());
    auto b = graph_file("ch_b.cg", fixtures::chain3_rev());
    auto c = graph_file("col.cg", fixtures::collider3());
    auto d = graph_file("single_edge.cg", HybridGraph(3, {{1, 2}}, {}));

    auto r = run_cli({"equivalent", a, b});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "equivalent\n");
    REQUIRE(run_cli({"equivalent", a, c}).out == "not equivalent (immorality mismatch)\n");
    REQUIRE(run_cli({"equivalent", a, d}).out == "not equivalent (skeleton mismatch)\n");

    auto tiny = graph_file("tiny.cg", HybridGraph(2, {{1, 2}}, {}));
    REQUIRE(run_cli({"equivalent", a, tiny}).code == 2);
}

TEST_CASE("imset prints the standard imset", "[cli]") {
    auto chain = graph_file("chain_imset.cg", fixtures::chain3());
    auto r = run_cli({"imset", chain});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "{2}: 1\n{1,2}: -1\n{2,3}: -1\n{1,2,3}: 1\n");

    auto undirected = graph_file("undirected.cg", fixtures::path3());
    REQUIRE(run_cli({"imset", undirected}).code == 2);
}

TEST_CASE("group prints pattern, bounds, and JSON", "[cli]") {
    auto chain = graph_file("chain_group.cg", fixtures::chain3());
    auto r = run_cli({"group", chain});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.find("allowed: (1,2) (3,2)") != std::string::npos);
    REQUIRE(r.out.find("min_sample_size: 2") != std::string::npos);

    auto col = graph_file("col_group.cg", fixtures::collider3());
    auto rb = run_cli({"group", col, "--n", "5"});
    REQUIRE(rb.out.find("breakdown_bound: 2/5") != std::string::npos);

    auto rj = run_cli({"group", col, "--json"});
    REQUIRE(rj.code == 0);
    auto j = nlohmann::json::parse(rj.out);
    REQUIRE(j.size() == 5);
    for (const char* key :
         {"pattern", "classes", "automorphisms", "min_sample_size", "down_sets"})
        REQUIRE(j.contains(key));
    REQUIRE(j["pattern"] == nlohmann::json::parse("[[2,1],[2,3]]"));
    REQUIRE(j["min_sample_size"] == 3);
    REQUIRE(j["automorphisms"] == nlohmann::json::parse("[[1,2,3],[3,2,1]]"));

    auto rjn = run_cli({"group", col, "--json", "--n", "5"});
    auto jn = nlohmann::json::parse(rjn.out);
    REQUIRE(jn["breakdown_bound"] == "2/5");

    auto flag = write_file("flag3.cg", "vertices: 3\n1 -> 2\n2 -- 3\n");
    REQUIRE(run_cli({"group", flag}).code == 2);
}

TEST_CASE("vanishing reports combinatorial and numeric verdicts", "[cli]") {
    auto col = graph_file("col_vanishing.cg", fixtures::collider3());
    auto r = run_cli({"vanishing", col, "--rows", "1,2", "--cols", "2,3"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out == "vanishes: yes\n");

    auto rn = run_cli({"vanishing", col, "--rows", "1", "--cols", "3", "--numeric",
                       "--trials", "5", "--seed", "1"});
    REQUIRE(rn.out == "vanishes: no\nnumeric_vanishes: no\n");

    auto rnum = run_cli({"vanishing", col, "--rows", "1,2", "--cols", "2,3", "--numeric"});
    REQUIRE(rnum.out == "vanishes: yes\nnumeric_vanishes: yes\n");

    REQUIRE(run_cli({"vanishing", col, "--rows", "1,2", "--cols", "3"}).code == 1);
    REQUIRE(run_cli({"vanishing", col, "--rows", "1,9", "--cols", "2,3"}).code == 1);
    REQUIRE(run_cli({"vanishing", col, "--rows", "x", "--cols", "3"}).code == 1);
}

TEST_CASE("sample emits K or CSV data and invariant consumes it", "[cli]") {
    auto col = graph_file("col_sample.cg", fixtures::collider3());
    auto k1 = run_cli({"sample", col, "--seed", "9"});
    auto k2 = run_cli({"sample", col, "--seed", "9"});
    REQUIRE(k1.code == 0);
    REQUIRE(k1.out == k2.out);
    REQUIRE(std::count(k1.out.begin(), k1.out.end(), '\n') == 3);

    auto data = run_cli({"sample", col, "--seed", "3", "--data", "5"});
    REQUIRE(data.code == 0);
    auto data_path = write_file("col_data.csv", data.out);
    auto inv = run_cli({"invariant", col, "--data", data_path});
    REQUIRE(inv.code == 0);
    REQUIRE(inv.out.find("class: {1} down: {1}") != std::string::npos);
    REQUIRE(inv.out.find("class: {2} down: {1,2,3}") != std::string::npos);

    auto small = run_cli({"sample", col, "--seed", "3", "--data", "2"});
    auto small_path = write_file("col_small.csv", small.out);
    REQUIRE(run_cli({"invariant", col, "--data", small_path}).code == 2);

    auto ragged = write_file("ragged.csv", "1,2\n3\n");
    REQUIRE(run_cli({"invariant", col, "--data", ragged}).code == 1);
}

TEST_CASE("usage errors exit with code 1", "[cli]") {
    REQUIRE(run_cli({"no-such-command"}).code == 1);
    REQUIRE(run_cli({}).code == 1);
    REQUIRE(run_cli({"vanishing", "nofile.cg", "--rows", "1"}).code == 1);
    REQUIRE(run_cli({"--help"}).code == 0);
}
