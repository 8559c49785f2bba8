#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hpc/cli.hpp"
#include "hpc/detectors.hpp"
#include "hpc/harness.hpp"
#include "hpc/hypergraph.hpp"
#include "hpc/io.hpp"
#include "hpc/rng.hpp"

using namespace hpc;

namespace {

struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "hpc_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string scratch(const std::string& name) { return (scratch_dir() / name).string(); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out);
    out << body;
}

} // namespace

TEST_CASE("gen is deterministic and writes graph plus truth") {
    std::string a = scratch("gen_a.hg"), b = scratch("gen_b.hg");
    RunResult ra = run_cli({"gen", "--n", "20", "--d", "3", "--kappa", "8", "--seed", "7",
                            "--out", a});
    RunResult rb = run_cli({"gen", "--n", "20", "--d", "3", "--kappa", "8", "--seed", "7",
                            "--out", b});
    REQUIRE(ra.code == 0);
    REQUIRE(rb.code == 0);
    CHECK(ra.err.rfind("config: cmd=gen", 0) == 0);
    CHECK(ra.out.find("wrote " + a) != std::string::npos);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(truth_path_for(a)) == slurp(truth_path_for(b)));

    DUniformHypergraph g = read_graph_file(a);
    CHECK(g.vertex_count() == 20);
    CHECK(g.arity() == 3);
    TruthSidecar truth = read_truth_file(truth_path_for(a));
    REQUIRE(truth.label == Hypothesis::H1);
    REQUIRE(truth.clique.size() == 8);
    CHECK(is_clique(g, truth.clique));
}

TEST_CASE("gen without kappa writes an H0 sidecar") {
    std::string p = scratch("gen_h0.hg");
    REQUIRE(run_cli({"gen", "--n", "10", "--d", "3", "--seed", "2", "--out", p}).code == 0);
    CHECK(slurp(truth_path_for(p)) == "H0\n");
}

TEST_CASE("gen matches the in-memory generator streams") {
    std::string p = scratch("gen_mem.hg");
    REQUIRE(run_cli({"gen", "--n", "15", "--d", "3", "--kappa", "6", "--seed", "11",
                     "--out", p})
                .code == 0);
    RandomStream null_gen = derive_stream({11, "null-gen", 0});
    DUniformHypergraph g = sample_null(15, 3, null_gen);
    RandomStream plant = derive_stream({11, "plant", 0});
    PlantedInstance inst = plant_clique(g, 6, plant);
    CHECK(read_graph_file(p) == inst.graph);
}

TEST_CASE("gen validates parameters at runtime") {
    RunResult r = run_cli({"gen", "--n", "5", "--d", "3", "--kappa", "9", "--seed", "0",
                           "--out", scratch("gen_bad.hg")});
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("binary output extension round trips through gen") {
    std::string p = scratch("gen_bin.hgb");
    REQUIRE(run_cli({"gen", "--n", "12", "--d", "3", "--seed", "4", "--out", p}).code == 0);
    CHECK(slurp(p).rfind("HPCB", 0) == 0);
    CHECK(read_graph_file(p).vertex_count() == 12);
}

TEST_CASE("detect prints the one-line result format") {
    std::string p = scratch("det.hg");
    REQUIRE(run_cli({"gen", "--n", "16", "--d", "3", "--seed", "3", "--out", p}).code == 0);
    RunResult r = run_cli({"detect", "--in", p, "--detector", "edgecount", "--threshold",
                           "1.5", "--seed", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.err.rfind("config: cmd=detect", 0) == 0);
    double stat = edge_count_statistic(read_graph_file(p));
    std::string want = "edgecount stat=" + format_g6(stat) + " thr=1.5 decision=" +
                       (stat > 1.5 ? "1" : "0") + "\n";
    CHECK(r.out == want);
}

TEST_CASE("detect via file equals detect in memory") {
    std::string p = scratch("det_mem.hg");
    REQUIRE(run_cli({"gen", "--n", "14", "--d", "3", "--kappa", "7", "--seed", "7",
                     "--out", p})
                .code == 0);
    RunResult r = run_cli({"detect", "--in", p, "--detector", "spectral", "--threshold",
                           "30", "--seed", "9"});
    REQUIRE(r.code == 0);

    DUniformHypergraph g = read_graph_file(p);
    DetectorConfig cfg;
    cfg.kind = DetectorKind::Spectral;
    RandomStream det = derive_stream({9, "detect", 0});
    TestResult res = run_detector(g, cfg, 30.0, det);
    std::string want = "spectral stat=" + format_g6(res.statistic) + " thr=30 decision=" +
                       std::to_string(res.decision) + "\n";
    CHECK(r.out == want);
}

TEST_CASE("detect never touches the truth sidecar") {
    std::string p = scratch("det_blind.hg");
    REQUIRE(run_cli({"gen", "--n", "12", "--d", "3", "--kappa", "6", "--seed", "5",
                     "--out", p})
                .code == 0);
    spit(truth_path_for(p), "garbage that would fail any parser\n");
    RunResult r = run_cli({"detect", "--in", p, "--detector", "edgecount", "--threshold",
                           "0", "--seed", "0"});
    CHECK(r.code == 0);
    std::remove(truth_path_for(p).c_str());
    r = run_cli({"detect", "--in", p, "--detector", "edgecount", "--threshold", "0",
                 "--seed", "0"});
    CHECK(r.code == 0);
}

TEST_CASE("exhaustive detect defaults its threshold to the target size minus one") {
    std::string p = scratch("det_exh.hg");
    REQUIRE(run_cli({"gen", "--n", "20", "--d", "3", "--seed", "6", "--out", p}).code == 0);
    RunResult r = run_cli({"detect", "--in", p, "--detector", "exhaustive", "--seed", "0"});
    REQUIRE(r.code == 0);
    double thr = static_cast<double>(exhaustive_target_size(20, 3, 1.0)) - 1.0;
    CHECK(r.out.find(" thr=" + format_g6(thr) + " ") != std::string::npos);
}

TEST_CASE("non-exhaustive detect requires a threshold") {
    std::string p = scratch("det_nothr.hg");
    REQUIRE(run_cli({"gen", "--n", "10", "--d", "3", "--seed", "1", "--out", p}).code == 0);
    RunResult r = run_cli({"detect", "--in", p, "--detector", "spectral", "--seed", "0"});
    CHECK(r.code == 1);
    CHECK(r.err.find("usage error") != std::string::npos);
}

TEST_CASE("usage and runtime failures map to exit codes 1 and 2") {
    CHECK(run_cli({"detect", "--in", scratch("missing.hg"), "--detector", "edgecount",
                   "--threshold", "0", "--seed", "0"})
              .code == 2);
    CHECK(run_cli({"frobnicate"}).code == 1);
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"gen", "--n", "10", "--d", "3", "--seed", "0", "--out",
                   scratch("x.hg"), "--bogus-flag"})
              .code == 1);
    CHECK(run_cli({"detect", "--in", scratch("x.hg"), "--detector", "sorting",
                   "--threshold", "0"})
              .code == 1);
    RunResult help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("gen") != std::string::npos);
}

TEST_CASE("reduce slices a d=3 instance to a 19-vertex graph when N=20") {
    std::string p = scratch("red.hg"), q = scratch("red_out.hg");
    REQUIRE(run_cli({"gen", "--n", "20", "--d", "3", "--seed", "8", "--out", p}).code == 0);
    RunResult r = run_cli({"reduce", "--in", p, "--fix", "5", "--out", q});
    REQUIRE(r.code == 0);
    DUniformHypergraph sliced = read_graph_file(q);
    CHECK(sliced.vertex_count() == 19);
    CHECK(sliced.arity() == 2);
    CHECK(r.out.find("N=19") != std::string::npos);

    auto map_pos = r.out.find("map=");
    REQUIRE(map_pos != std::string::npos);
    std::istringstream map_line(r.out.substr(map_pos + 4));
    std::vector<uint32_t> map_ids;
    uint32_t v;
    while (map_line >> v) map_ids.push_back(v);
    REQUIRE(map_ids.size() == 19);
    for (uint32_t id : map_ids) CHECK(id != 5);

    DUniformHypergraph parent = read_graph_file(p);
    for (uint32_t a = 0; a < 5; ++a)
        for (uint32_t b = a + 1; b < 5; ++b) {
            std::vector<uint32_t> tri{4, map_ids[a] - 1, map_ids[b] - 1};
            std::sort(tri.begin(), tri.end());
            std::vector<uint32_t> pair{a, b};
            CHECK(sliced.has_edge(pair) == parent.has_edge(tri));
        }
}

TEST_CASE("calibrate prints a threshold and writes the optional table") {
    std::string csv = scratch("cal.csv");
    RunResult r = run_cli({"calibrate", "--detector", "edgecount", "--n", "14", "--d", "3",
                           "--level", "0.25", "--trials", "8", "--seed", "1", "--out", csv});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("edgecount N=14 d=3 level=0.25 trials=8 threshold=") == 0);
    CHECK(slurp(csv).rfind("detector,N,d,level,trials,threshold\n", 0) == 0);
}

TEST_CASE("risk prints the summary line and honors --no-timing output") {
    std::string csv = scratch("risk.csv");
    RunResult r = run_cli({"risk", "--detector", "edgecount", "--n", "14", "--d", "3",
                           "--kappa", "7", "--trials", "10", "--cal-trials", "8", "--level",
                           "0.25", "--seed", "2", "--no-timing", "--out", csv});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("risk=", 0) == 0);
    CHECK(r.out.find(" type_I=") != std::string::npos);
    CHECK(r.out.find(" threshold=") != std::string::npos);
    std::string body = slurp(csv);
    CHECK(body.rfind(std::string(kPhaseCsvHeader) + "\n", 0) == 0);
    CHECK(body.find(",0,ok\n") != std::string::npos);
    CHECK(std::count(body.begin(), body.end(), '\n') == 2);
}

TEST_CASE("risk propagates trial failures as exit 2") {
    RunResult r = run_cli({"risk", "--detector", "edgecount", "--n", "2", "--d", "3",
                           "--kappa", "2", "--trials", "4", "--cal-trials", "4", "--level",
                           "0.5", "--seed", "0"});
    CHECK(r.code == 2);
    bool named = r.err.find("undefined statistic") != std::string::npos ||
                 r.err.find("calibration trial") != std::string::npos;
    CHECK(named);
}

TEST_CASE("phase consumes a key=value config and emits the CSV grid") {
    std::string cfg = scratch("phase.cfg");
    spit(cfg,
         "# two-cell smoke grid\n"
         "d = 3\n"
         "n_list = 12,14\n"
         "kappa_list = 4\n"
         "detectors = edgecount\n"
         "level = 0.25\n"
         "trials = 10\n"
         "cal_trials = 8\n"
         "master_seed = 5\n");
    RunResult a = run_cli({"phase", "--config", cfg, "--no-timing"});
    REQUIRE(a.code == 0);
    CHECK(a.out.rfind(std::string(kPhaseCsvHeader) + "\n", 0) == 0);
    CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 3);
    CHECK(a.out.find("edgecount,12,3,4,") != std::string::npos);
    CHECK(a.out.find("edgecount,14,3,4,") != std::string::npos);

    RunResult b = run_cli({"phase", "--config", cfg, "--no-timing"});
    CHECK(a.out == b.out);
    RunResult w1 = run_cli({"phase", "--config", cfg, "--no-timing", "--workers", "1"});
    RunResult w8 = run_cli({"phase", "--config", cfg, "--no-timing", "--workers", "8"});
    CHECK(w1.out == w8.out);

    std::string out_csv = scratch("phase.csv"), out_svg = scratch("phase.svg");
    RunResult f = run_cli({"phase", "--config", cfg, "--no-timing", "--out", out_csv,
                           "--svg", out_svg});
    REQUIRE(f.code == 0);
    CHECK(slurp(out_csv) == a.out);
    CHECK(slurp(out_svg).rfind("<svg", 0) == 0);
}

TEST_CASE("phase rejects malformed configs as usage errors") {
    std::string cfg = scratch("phase_bad.cfg");
    spit(cfg, "n_list = 12\ndetectors = edgecount\nkappa_list = 4\nwidgets = 9\n");
    RunResult unknown = run_cli({"phase", "--config", cfg});
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("unknown config key") != std::string::npos);

    spit(cfg, "n_list = 12\nn_list = 14\ndetectors = edgecount\nkappa_list = 4\n");
    CHECK(run_cli({"phase", "--config", cfg}).code == 1);

    spit(cfg, "detectors = edgecount\nkappa_list = 4\n");
    CHECK(run_cli({"phase", "--config", cfg}).code == 1);

    spit(cfg, "n_list = 12\ndetectors = edgecount\n");
    CHECK(run_cli({"phase", "--config", cfg}).code == 1);

    spit(cfg, "n_list = 12\ndetectors = edgecount\nkappa_list = 4\ngamma_list = 1.0\n");
    CHECK(run_cli({"phase", "--config", cfg}).code == 1);
}

TEST_CASE("maxclique prints size, nodes, and the 1-based witness") {
    std::string p = scratch("maxc.hg");
    write_graph_file(DUniformHypergraph::complete(5, 3), p);
    RunResult r = run_cli({"maxclique", "--in", p});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("size=5 nodes=", 0) == 0);
    CHECK(r.out.find("clique=1 2 3 4 5") != std::string::npos);

    RunResult capped = run_cli({"maxclique", "--in", p, "--cap", "3"});
    CHECK(capped.out.rfind("size=3", 0) == 0);

    RunResult broke = run_cli({"maxclique", "--in", p, "--budget", "1"});
    CHECK(broke.code == 2);
    CHECK(broke.err.find("node budget") != std::string::npos);
}

TEST_CASE("metropolis subcommand runs the chain on a file") {
    std::string p = scratch("metro.hg");
    write_graph_file(DUniformHypergraph::complete(8, 3), p);
    RunResult r = run_cli({"metropolis", "--in", p, "--lambda", "2", "--steps", "50",
                           "--seed", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("size=", 0) == 0);
    CHECK(r.out.find("steps=50") != std::string::npos);
    RunResult again = run_cli({"metropolis", "--in", p, "--lambda", "2", "--steps", "50",
                               "--seed", "3"});
    CHECK(again.out == r.out);
}

TEST_CASE("cliquelaw emits its CSV schema") {
    RunResult r = run_cli({"cliquelaw", "--d", "3", "--nlist", "10,12", "--trials", "3",
                           "--seed", "1"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("N,trials,mean_size,law_value,ratio,status\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
}
