#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bandwave/cli.hpp"
#include "bandwave/petri.hpp"
#include "bandwave/philosophers.hpp"
#include "support/oracles.hpp"

using namespace bandwave;

namespace {

struct CliResult {
    int status = 0;
    std::string out;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("bandwave");
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    CliResult result;
    try {
        result.status = cli_dispatch(static_cast<int>(argv.size()), argv.data());
    } catch (...) {
        std::cout.rdbuf(old);
        throw;
    }
    std::cout.rdbuf(old);
    result.out = captured.str();
    return result;
}

std::string example_path() { return std::string(BANDWAVE_TEST_DATA_DIR) + "/example.pnml"; }

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const std::filesystem::path path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const std::string kCmOrderText = "rows: 2 3 1 6 4 5\ncols: 2 3 4 5 1\n";

}  // namespace

TEST_CASE("metrics subcommand prints the six measures") {
    const CliResult r = run_cli({"metrics", example_path()});
    CHECK(r.status == 0);
    CHECK(r.out ==
          "bandwidth 10 (0.909)\n"
          "profile 87 (0.719)\n"
          "span 44 (0.364)\n"
          "avg-wavefront 4.27 (0.388)\n"
          "event-span 22 (0.733)\n"
          "weighted-event-span 40.8 (1.36)\n");
}

TEST_CASE("metrics honors a stored split permutation (block evaluation)") {
    const std::filesystem::path order = write_temp("bandwave_cm.order", kCmOrderText);
    const CliResult r =
        run_cli({"metrics", example_path(), "--order-file", order.string()});
    CHECK(r.status == 0);
    // A split permutation no longer remembers how rows and columns
    // interleaved, so the matrix half is evaluated rows-then-columns.
    CHECK(r.out ==
          "bandwidth 7 (0.636)\n"
          "profile 82 (0.678)\n"
          "span 32 (0.264)\n"
          "avg-wavefront 4 (0.364)\n"
          "event-span 16 (0.533)\n"
          "weighted-event-span 25.6 (0.853)\n");
}

TEST_CASE("reorder subcommand emits the split permutation") {
    const CliResult r = run_cli({"reorder", example_path(), "--alg", "cm"});
    CHECK(r.status == 0);
    CHECK(r.out == kCmOrderText);

    const std::filesystem::path out_file =
        std::filesystem::temp_directory_path() / "bandwave_reorder.order";
    std::filesystem::remove(out_file);
    const CliResult to_file =
        run_cli({"reorder", example_path(), "--alg", "cm", "-o", out_file.string()});
    CHECK(to_file.status == 0);
    CHECK(to_file.out.empty());
    CHECK(slurp(out_file) == kCmOrderText);

    const CliResult flipped =
        run_cli({"reorder", example_path(), "--alg", "cm", "--flip", "h"});
    CHECK(flipped.status == 0);
    CHECK(flipped.out == "rows: 5 4 6 1 3 2\ncols: 2 3 4 5 1\n");

    const CliResult reversed =
        run_cli({"reorder", example_path(), "--alg", "cm", "--reverse"});
    CHECK(reversed.status == 0);
    CHECK(reversed.out == "rows: 5 4 6 1 3 2\ncols: 1 5 4 3 2\n");

    // All algorithms produce well-formed output on the same model.
    for (const char* alg : {"king", "sloan", "gps"}) {
        const CliResult other = run_cli({"reorder", example_path(), "--alg", alg});
        CHECK(other.status == 0);
        CHECK(other.out.rfind("rows: ", 0) == 0);
    }
}

TEST_CASE("reach subcommand explores the net") {
    const CliResult r = run_cli({"reach", example_path(), "--strategy", "bfs"});
    CHECK(r.status == 0);
    CHECK(r.out.rfind("states 5\n", 0) == 0);
    CHECK(r.out.find("final-nodes ") != std::string::npos);
    CHECK(r.out.find("peak-nodes ") != std::string::npos);
    CHECK(r.out.find("iterations ") != std::string::npos);

    const std::filesystem::path order = write_temp("bandwave_cm2.order", kCmOrderText);
    for (const char* strategy : {"bfs", "chaining", "sat-like"}) {
        const CliResult ordered = run_cli(
            {"reach", example_path(), "--strategy", strategy, "--order-file", order.string()});
        CHECK(ordered.status == 0);
        CHECK(ordered.out.rfind("states 5\n", 0) == 0);
    }
}

TEST_CASE("generated rings feed straight back into reachability") {
    const std::filesystem::path net_file =
        std::filesystem::temp_directory_path() / "bandwave_ring.pnml";
    std::filesystem::remove(net_file);
    const CliResult gen = run_cli({"gen-philosophers", "--count", "4", "--layout",
                                   "interleaved", "-o", net_file.string()});
    CHECK(gen.status == 0);
    CHECK(parse_pnml(slurp(net_file)) ==
          dining_philosophers(4, PhilosopherLayout::Interleaved));

    const CliResult r = run_cli({"reach", net_file.string(), "--strategy", "sat-like"});
    CHECK(r.status == 0);
    CHECK(r.out.rfind("states 7\n", 0) == 0);

    // Without -o the document lands on stdout.
    const CliResult direct =
        run_cli({"gen-philosophers", "--count", "3", "--layout", "grouped"});
    CHECK(direct.status == 0);
    CHECK(parse_pnml(direct.out) == dining_philosophers(3, PhilosopherLayout::Grouped));
}

TEST_CASE("render subcommand writes a portable bitmap") {
    const std::filesystem::path bitmap =
        std::filesystem::temp_directory_path() / "bandwave_render.pbm";
    std::filesystem::remove(bitmap);
    const CliResult r = run_cli({"render", example_path(), "-o", bitmap.string()});
    CHECK(r.status == 0);
    CHECK(slurp(bitmap) ==
          "P1\n5 6\n"
          "0 1 0 1 1\n"
          "0 1 1 0 0\n"
          "0 1 1 0 0\n"
          "1 0 0 0 1\n"
          "1 0 0 0 1\n"
          "1 0 1 1 0\n");

    const std::filesystem::path order = write_temp("bandwave_cm3.order", kCmOrderText);
    const CliResult permuted = run_cli(
        {"render", example_path(), "--order-file", order.string(), "-o", bitmap.string()});
    CHECK(permuted.status == 0);
    CHECK(slurp(bitmap) ==
          "P1\n5 6\n"
          "1 1 0 0 0\n"
          "1 1 0 0 0\n"
          "1 0 1 1 0\n"
          "0 1 1 0 1\n"
          "0 0 0 1 1\n"
          "0 0 0 1 1\n");
}

TEST_CASE("bench subcommand runs a manifest") {
    const std::filesystem::path manifest =
        write_temp("bandwave_bench_manifest.txt", example_path() + "\n");
    const std::filesystem::path csv =
        std::filesystem::temp_directory_path() / "bandwave_bench.csv";
    std::filesystem::remove(csv);
    const CliResult r = run_cli({"bench", manifest.string(), "--category", "none",
                                 "--category", "bi,cm", "--csv", csv.string()});
    CHECK(r.status == 0);
    CHECK(r.out.find("mean standard score over 1 model(s)") != std::string::npos);

    std::istringstream rows(slurp(csv));
    std::vector<std::string> lines;
    for (std::string line; std::getline(rows, line);) lines.push_back(line);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0].rfind("model,category,bandwidth", 0) == 0);
    CHECK(lines[1].rfind("example,none,10,", 0) == 0);
    CHECK(lines[2].rfind("example,\"bi,cm\",3,", 0) == 0);
}

TEST_CASE("usage and runtime errors exit nonzero") {
    CHECK(run_cli({}).status != 0);                                      // no subcommand
    CHECK(run_cli({"frobnicate"}).status != 0);                          // unknown subcommand
    CHECK(run_cli({"reorder", example_path()}).status != 0);             // missing --alg
    CHECK(run_cli({"reorder", example_path(), "--alg", "qr"}).status != 0);
    CHECK(run_cli({"gen-philosophers", "--count", "1", "--layout", "grouped"}).status != 0);
    CHECK(run_cli({"metrics", "/nonexistent/model.pnml"}).status == 1);

    const std::filesystem::path matrix = write_temp(
        "bandwave_matrix_only.mat", oracle::running_example_graph().biadjacency().to_text());
    CHECK(run_cli({"reach", matrix.string(), "--strategy", "bfs"}).status == 1);

    const std::filesystem::path bad_order = write_temp("bandwave_bad.order", "rows: 1\ncols: 1\n");
    CHECK(run_cli({"metrics", example_path(), "--order-file", bad_order.string()}).status == 1);
}
