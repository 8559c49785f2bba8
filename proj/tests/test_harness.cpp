#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "hpc/detectors.hpp"
#include "hpc/harness.hpp"
#include "hpc/svg.hpp"

using namespace hpc;

TEST_CASE("wilson half width at the boundary and the center") {
    double at_zero = wilson_half_width(0, 100);
    CHECK(at_zero > 0.03);
    CHECK(at_zero < 0.05);
    CHECK(at_zero == doctest::Approx(0.036996).epsilon(1e-3));
    CHECK(wilson_half_width(100, 100) == doctest::Approx(at_zero).epsilon(1e-12));
    double at_half = wilson_half_width(50, 100);
    CHECK(at_half > 0.09);
    CHECK(at_half < 0.10);
    CHECK_THROWS_AS(wilson_half_width(0, 0), std::invalid_argument);
}

TEST_CASE("error codes map the exception taxonomy") {
    CHECK(error_code_of(TrialError("work-cap", "ctx")) == "work-cap");
    CHECK(error_code_of(WorkCapExceeded("budget")) == "work-cap");
    CHECK(error_code_of(std::domain_error("dom")) == "undefined-statistic");
    CHECK(error_code_of(std::overflow_error("ovf")) == "overflow");
    CHECK(error_code_of(std::invalid_argument("arg")) == "param");
    CHECK(error_code_of(std::out_of_range("oor")) == "param");
    CHECK(error_code_of(std::runtime_error("other")) == "runtime");
}

TEST_CASE("parallel_for covers every index on any worker count") {
    for (uint32_t workers : {1u, 2u, 8u}) {
        std::vector<uint64_t> slot(1000, 0);
        parallel_for(1000, workers, [&](uint64_t i) { slot[i] = i + 1; });
        for (uint64_t i = 0; i < 1000; ++i) CHECK(slot[i] == i + 1);
    }
    parallel_for(0, 4, [&](uint64_t) { FAIL("must not run"); });
}

TEST_CASE("parallel_for rethrows the lowest failing index after finishing") {
    std::atomic<uint64_t> attempts{0};
    try {
        parallel_for(100, 8, [&](uint64_t i) {
            attempts.fetch_add(1);
            if (i == 3) throw std::runtime_error("boom 3");
            if (i == 7) throw std::runtime_error("boom 7");
        });
        FAIL("expected a rethrow");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "boom 3");
    }
    CHECK(attempts.load() == 100);
}

TEST_CASE("a constant statistic calibrates to itself and never alarms") {
    DetectorConfig cfg;
    cfg.kind = DetectorKind::Metropolis;
    cfg.steps = 0; // chain never moves: statistic is identically 0
    CalibrationTable table = calibrate_threshold(cfg, 10, 3, 0.05, 40, 9001);
    CHECK(table.threshold == 0.0);
    CHECK(table.null_stats == std::vector<double>(40, 0.0));
    RiskEstimate rk = estimate_risk(cfg, table.threshold, 10, 3, 5, 50, 9001);
    CHECK(rk.type_i == 0.0);
    CHECK(rk.type_ii == 1.0);
    CHECK(rk.risk() == 1.0);
}

TEST_CASE("calibration picks the ceil((1-level)T)-th order statistic") {
    DetectorConfig cfg;
    cfg.kind = DetectorKind::EdgeCount;
    CalibrationTable table = calibrate_threshold(cfg, 20, 3, 0.05, 200, 42);
    REQUIRE(table.null_stats.size() == 200);
    CHECK(std::is_sorted(table.null_stats.begin(), table.null_stats.end()));
    CHECK(table.threshold == table.null_stats[189]);
    CHECK(table.detector_name == "edgecount");
    CHECK(table.n == 20);
    CHECK(table.level == 0.05);
    CHECK(table.trials == 200);
}

TEST_CASE("edge count null quantile approximates the gaussian value") {
    DetectorConfig cfg;
    cfg.kind = DetectorKind::EdgeCount;
    CalibrationTable table = calibrate_threshold(cfg, 20, 3, 0.05, 2000, 7);
    CHECK(table.threshold > 1.45);
    CHECK(table.threshold < 1.85);
}

TEST_CASE("slice vote calibration pools per-slice statistics") {
    DetectorConfig cfg;
    cfg.kind = DetectorKind::SliceVote;
    CalibrationTable table = calibrate_threshold(cfg, 8, 3, 0.5, 25, 11);
    REQUIRE(table.null_stats.size() == 25 * 8);
    CHECK(std::is_sorted(table.null_stats.begin(), table.null_stats.end()));
    CHECK(table.threshold ==
          empirical_quantile(table.null_stats, 1.0 - 0.5 / 8));
}

TEST_CASE("calibration validates its arguments") {
    DetectorConfig cfg;
    cfg.kind = DetectorKind::EdgeCount;
    CHECK_THROWS_AS(calibrate_threshold(cfg, 20, 3, 0.0, 100, 0), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_threshold(cfg, 20, 3, 1.0, 100, 0), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_threshold(cfg, 20, 3, 0.05, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_threshold(cfg, 20, 3, 0.05, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS(calibrate_threshold(cfg, 20, 1, 0.05, 100, 0), std::invalid_argument);
}

TEST_CASE("calibration failures carry the trial context") {
    DetectorConfig cfg;
    cfg.kind = DetectorKind::EdgeCount;
    try {
        calibrate_threshold(cfg, 2, 3, 0.5, 4, 0); // C(2,3)=0: undefined statistic
        FAIL("expected TrialError");
    } catch (const TrialError& e) {
        CHECK(e.code() == "undefined-statistic");
        CHECK(std::string(e.what()).find("calibration trial 0") != std::string::npos);
    }
}

TEST_CASE("extreme thresholds pin the two error types") {
    DetectorConfig cfg;
    cfg.kind = DetectorKind::EdgeCount;
    RiskEstimate always = estimate_risk(cfg, -1e9, 16, 3, 8, 100, 3);
    CHECK(always.type_i == 1.0);
    CHECK(always.type_ii == 0.0);
    CHECK(always.trials_per_hypothesis == 100);
    CHECK(always.ci_i > 0.0);
    CHECK(always.ci_i < 0.1);
    RiskEstimate never = estimate_risk(cfg, 1e9, 16, 3, 8, 100, 3);
    CHECK(never.type_i == 0.0);
    CHECK(never.type_ii == 1.0);
}

TEST_CASE("harness runs are reproducible and worker-count independent") {
    DetectorConfig cfg;
    cfg.kind = DetectorKind::Spectral;
    CalibrationTable a = calibrate_threshold(cfg, 12, 3, 0.1, 30, 5, 1);
    CalibrationTable b = calibrate_threshold(cfg, 12, 3, 0.1, 30, 5, 4);
    CHECK(a.threshold == b.threshold);
    CHECK(a.null_stats == b.null_stats);
    RiskEstimate ra = estimate_risk(cfg, a.threshold, 12, 3, 6, 40, 5, 1);
    RiskEstimate rb = estimate_risk(cfg, a.threshold, 12, 3, 6, 40, 5, 4);
    CHECK(ra.type_i == rb.type_i);
    CHECK(ra.type_ii == rb.type_ii);
}

TEST_CASE("calibrated level approximately controls type I error") {
    DetectorConfig cfg;
    cfg.kind = DetectorKind::EdgeCount;
    CalibrationTable table = calibrate_threshold(cfg, 20, 3, 0.1, 500, 88);
    RiskEstimate rk = estimate_risk(cfg, table.threshold, 20, 3, 10, 200, 88);
    CHECK(rk.type_i <= 0.2);
    CHECK(rk.type_ii <= 0.1); // kappa = N/2 is far into the detectable regime
}

TEST_CASE("gamma axis definition") {
    CHECK(gamma_of(49, 7) == 1.0);
    CHECK(gamma_of(100, 10) == 1.0);
    CHECK(gamma_of(16, 8) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(gamma_of(100, 100) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("phase grid emits one sorted row per cell") {
    PhaseGridSpec spec;
    spec.d = 3;
    spec.n_list = {14, 12};
    spec.kappa_list = {6, 4};
    DetectorConfig edge;
    edge.kind = DetectorKind::EdgeCount;
    DetectorConfig metro;
    metro.kind = DetectorKind::Metropolis;
    metro.steps = 200;
    spec.detectors = {metro, edge};
    spec.level = 0.1;
    spec.trials = 30;
    spec.cal_trials = 20;
    spec.master_seed = 13;
    std::vector<PhaseRow> rows = phase_grid(spec, 2);
    REQUIRE(rows.size() == 8);
    for (size_t i = 1; i < rows.size(); ++i) {
        auto key = [](const PhaseRow& r) {
            return std::make_tuple(r.detector, r.n, r.kappa);
        };
        CHECK(key(rows[i - 1]) < key(rows[i]));
    }
    for (const auto& r : rows) {
        CHECK(r.d == 3);
        CHECK(r.status == "ok");
        CHECK(r.gamma == gamma_of(r.n, r.kappa));
        CHECK(r.risk == r.type_i + r.type_ii);
        CHECK(r.runtime_s >= 0.0);
    }
    CHECK(rows[0].detector == "edgecount");
    CHECK(rows[0].n == 12);
    CHECK(rows[0].kappa == 4);
    CHECK(rows[7].detector == "metropolis");
    CHECK(rows[7].n == 14);
    CHECK(rows[7].kappa == 6);
}

TEST_CASE("failing grid cells become error rows without stopping the sweep") {
    PhaseGridSpec spec;
    spec.d = 3;
    spec.n_list = {2, 12};
    spec.kappa_list = {2};
    DetectorConfig edge;
    edge.kind = DetectorKind::EdgeCount;
    spec.detectors = {edge};
    spec.level = 0.25;
    spec.trials = 10;
    spec.cal_trials = 8;
    std::vector<PhaseRow> rows = phase_grid(spec);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 2);
    CHECK(rows[0].status == "error:undefined-statistic");
    CHECK(rows[0].risk == 0.0);
    CHECK(rows[1].n == 12);
    CHECK(rows[1].status == "ok");
}

TEST_CASE("a single-cell grid reproduces the composed calibrate-then-risk run") {
    DetectorConfig cfg;
    cfg.kind = DetectorKind::EdgeCount;
    PhaseRow row = run_phase_cell(cfg, 20, 3, 10, 0.1, 25, 20, 77, true);
    uint64_t cell_key = derive_key({77, "phase.edgecount.n20.k10.d3", 0});
    CalibrationTable table = calibrate_threshold(cfg, 20, 3, 0.1, 20, cell_key);
    RiskEstimate rk = estimate_risk(cfg, table.threshold, 20, 3, 10, 25, cell_key);
    CHECK(row.threshold == table.threshold);
    CHECK(row.type_i == rk.type_i);
    CHECK(row.type_ii == rk.type_ii);
    CHECK(row.ci_i == rk.ci_i);
    CHECK(row.ci_ii == rk.ci_ii);
    CHECK(row.status == "ok");
}

TEST_CASE("gamma-driven grids derive kappa = floor(N^(gamma/2))") {
    PhaseGridSpec spec;
    spec.d = 3;
    spec.n_list = {49};
    spec.gamma_list = {1.0};
    DetectorConfig edge;
    edge.kind = DetectorKind::EdgeCount;
    spec.detectors = {edge};
    spec.level = 0.25;
    spec.trials = 8;
    spec.cal_trials = 8;
    std::vector<PhaseRow> rows = phase_grid(spec);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].kappa == 7);
    CHECK(rows[0].gamma == 1.0);

    PhaseGridSpec bad = spec;
    bad.kappa_list = {7};
    CHECK_THROWS_AS(phase_grid(bad), std::invalid_argument);
    PhaseGridSpec neither = spec;
    neither.gamma_list = {};
    CHECK_THROWS_AS(phase_grid(neither), std::invalid_argument);
    PhaseGridSpec huge = spec;
    huge.gamma_list = {2.5};
    CHECK_THROWS_AS(phase_grid(huge), std::invalid_argument);
}

TEST_CASE("clique law values at the pinned sizes") {
    CHECK(clique_law_value(64, 3) == 6.0);
    CHECK(clique_law_value(16, 2) == 8.0);
    CHECK(clique_law_value(256, 3) == doctest::Approx(std::sqrt(48.0)).epsilon(1e-12));
}

TEST_CASE("clique law experiment reports per-N rows") {
    std::vector<uint32_t> ns{10, 12};
    auto rows = clique_law_experiment(3, ns, 5, 21);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.trials_done == 5);
        CHECK(r.feasible);
        CHECK(r.mean_size >= 2.0);
        CHECK(r.mean_size <= 8.0);
        CHECK(r.law_value == clique_law_value(r.n, 3));
        CHECK(r.ratio == doctest::Approx(r.mean_size / r.law_value));
    }
    CHECK(rows[0].n == 10);

    auto capped = clique_law_experiment(3, std::vector<uint32_t>{12}, 5, 21, 3);
    REQUIRE(capped.size() == 1);
    CHECK_FALSE(capped[0].feasible);
}

TEST_CASE("g6 float formatting") {
    CHECK(format_g6(0.05) == "0.05");
    CHECK(format_g6(0.0) == "0");
    CHECK(format_g6(1.0) == "1");
    CHECK(format_g6(1.0 / 3.0) == "0.333333");
    CHECK(format_g6(1234567.0) == "1.23457e+06");
}

TEST_CASE("phase CSV golden row") {
    PhaseRow row;
    row.detector = "edgecount";
    row.n = 20;
    row.d = 3;
    row.kappa = 10;
    row.gamma = 1.5371;
    row.type_i = 0.05;
    row.type_ii = 0.25;
    row.risk = 0.3;
    row.ci_i = 0.0427;
    row.ci_ii = 0.085;
    row.threshold = 1.645;
    row.runtime_s = 0.251;
    row.status = "ok";
    std::ostringstream out;
    write_phase_csv({&row, 1}, out);
    CHECK(out.str() ==
          "detector,N,d,kappa,gamma,type_I,type_II,risk,ci_I,ci_II,threshold,runtime_s,status\n"
          "edgecount,20,3,10,1.5371,0.05,0.25,0.3,0.0427,0.085,1.645,0.251,ok\n");
    std::ostringstream untimed;
    write_phase_csv({&row, 1}, untimed, false);
    CHECK(untimed.str().find(",1.645,0,ok\n") != std::string::npos);
    CHECK(std::string(kPhaseCsvHeader) ==
          "detector,N,d,kappa,gamma,type_I,type_II,risk,ci_I,ci_II,threshold,runtime_s,status");
}

TEST_CASE("calibration and clique law CSV headers") {
    DetectorConfig cfg;
    cfg.kind = DetectorKind::EdgeCount;
    CalibrationTable table = calibrate_threshold(cfg, 14, 3, 0.25, 8, 0);
    std::ostringstream out;
    write_calibration_csv(table, out);
    CHECK(out.str().rfind("detector,N,d,level,trials,threshold\n", 0) == 0);
    CHECK(out.str().find("edgecount,14,3,0.25,8,") != std::string::npos);

    CliqueLawRow row;
    row.n = 32;
    row.trials_done = 20;
    row.mean_size = 5.2;
    row.law_value = 5.47723;
    row.ratio = 0.949385;
    row.feasible = true;
    std::ostringstream law;
    write_clique_law_csv({&row, 1}, law);
    CHECK(law.str() ==
          "N,trials,mean_size,law_value,ratio,status\n32,20,5.2,5.47723,0.949385,ok\n");
}

TEST_CASE("phase SVG emits one panel per detector") {
    PhaseRow a;
    a.detector = "edgecount";
    a.n = 20;
    a.d = 3;
    a.kappa = 10;
    a.gamma = 1.5;
    a.risk = 0.3;
    a.status = "ok";
    PhaseRow b = a;
    b.detector = "spectral";
    b.risk = 1.2;
    PhaseRow c = a;
    c.status = "error:param";
    c.kappa = 12;
    c.gamma = 1.7;
    std::ostringstream out;
    write_phase_svg(std::vector<PhaseRow>{a, b, c}, out);
    std::string svg = out.str();
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("edgecount") != std::string::npos);
    CHECK(svg.find("spectral") != std::string::npos);
    CHECK(svg.find("<rect") != std::string::npos);
}
