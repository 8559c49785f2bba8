#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hpc/detectors.hpp"
#include "hpc/hypergraph.hpp"

namespace hpc {

/// Distinguishes a trial failure and remembers the machine-readable code
/// used in CSV status columns ("param", "undefined-statistic", "overflow",
/// "work-cap", "runtime"). what() carries the trial context.
class TrialError : public std::runtime_error {
public:
    TrialError(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

/// Maps an exception type to its CSV status code.
std::string error_code_of(const std::exception& e);

/// Runs fn(i) for i in [0, count) on up to `workers` threads (0 = hardware
/// concurrency). Results must be written to per-index slots; the first
/// failing index's exception is rethrown after all threads join.
void parallel_for(uint64_t count, uint32_t workers,
                  const std::function<void(uint64_t)>& fn);

double wilson_half_width(uint64_t successes, uint64_t trials, double z = 1.96);

struct CalibrationTable {
    std::string detector_name;
    uint32_t n = 0;
    uint32_t d = 0;
    DetectorConfig config;
    double level = 0.0;
    uint64_t trials = 0;
    double threshold = 0.0;
    std::vector<double> null_stats; // sorted; pooled per-slice values for slicevote
};

/// Samples `trials` null instances on trial-indexed streams (role tags
/// "cal.gen"/"cal.det"), pools the calibration statistics, and takes the
/// empirical (1 - tail) quantile, where tail = level for scalar detectors
/// and level/num_slices for the slice vote (Bonferroni). Requires
/// trials * level >= 1 so the quantile is resolvable.
CalibrationTable calibrate_threshold(const DetectorConfig& cfg, uint32_t n, uint32_t d,
                                     double level, uint64_t trials, uint64_t master_seed,
                                     uint32_t workers = 1);

struct RiskEstimate {
    double type_i = 0.0;
    double type_ii = 0.0;
    uint64_t trials_per_hypothesis = 0;
    double ci_i = 0.0;  // Wilson 95% half-width of type_i
    double ci_ii = 0.0; // Wilson 95% half-width of type_ii
    double risk() const { return type_i + type_ii; }
};

/// Runs `trials` fresh H0 and H1 trials (role tags "risk.h0.*" and
/// "risk.h1.*", disjoint from calibration) against the given threshold.
/// Detector failures surface as TrialError naming the hypothesis and
/// trial index.
RiskEstimate estimate_risk(const DetectorConfig& cfg, double threshold, uint32_t n,
                           uint32_t d, uint32_t kappa, uint64_t trials,
                           uint64_t master_seed, uint32_t workers = 1);

/// gamma = log(kappa) / log(sqrt(N)), the exponent axis of the phase grid.
double gamma_of(uint32_t n, uint32_t kappa);

struct PhaseGridSpec {
    uint32_t d = 3;
    std::vector<uint32_t> n_list;
    std::vector<uint32_t> kappa_list; // exactly one of kappa_list/gamma_list
    std::vector<double> gamma_list;   // kappa = floor(N^(gamma/2))
    std::vector<DetectorConfig> detectors;
    double level = 0.05;
    uint64_t trials = 100;
    uint64_t cal_trials = 200;
    uint64_t master_seed = 0;
};

struct PhaseRow {
    std::string detector;
    uint32_t n = 0;
    uint32_t d = 0;
    uint32_t kappa = 0;
    double gamma = 0.0;
    double type_i = 0.0;
    double type_ii = 0.0;
    double risk = 0.0;
    double ci_i = 0.0;
    double ci_ii = 0.0;
    double threshold = 0.0;
    double runtime_s = 0.0;
    std::string status = "ok"; // or "error:<code>"
};

/// Calibrate-then-estimate for one grid cell. The cell's streams derive
/// from key = derive_key({master_seed, "phase.<det>.n<N>.k<kappa>.d<d>", 0})
/// when cell_tagged is true, from master_seed directly otherwise.
PhaseRow run_phase_cell(const DetectorConfig& cfg, uint32_t n, uint32_t d, uint32_t kappa,
                        double level, uint64_t trials, uint64_t cal_trials,
                        uint64_t master_seed, bool cell_tagged, uint32_t workers = 1);

/// Full grid sweep: one row per (detector, N, kappa), sorted by that key.
/// A failing cell yields an error-marked row; the sweep continues.
std::vector<PhaseRow> phase_grid(const PhaseGridSpec& spec, uint32_t workers = 1);

struct CliqueLawRow {
    uint32_t n = 0;
    uint64_t trials_done = 0;
    double mean_size = 0.0;
    double law_value = 0.0; // (d! * log2 N)^(1/(d-1))
    double ratio = 0.0;     // mean_size / law_value
    bool feasible = true;   // false when the node budget tripped
};

double clique_law_value(uint32_t n, uint32_t d);

/// Mean exact max-clique size over ER samples per N (role tag "law.gen"),
/// against the growth law. A node-budget hit marks the row infeasible.
std::vector<CliqueLawRow> clique_law_experiment(uint32_t d, std::span<const uint32_t> n_list,
                                                uint64_t trials, uint64_t master_seed,
                                                uint64_t node_budget = 50000000,
                                                uint32_t workers = 1);

extern const char kPhaseCsvHeader[]; // "detector,N,d,kappa,..."

/// CSV emission, 6-significant-digit floats, LF line endings. When
/// include_timing is false the runtime column is written as 0.
void write_phase_csv(std::span<const PhaseRow> rows, std::ostream& out,
                     bool include_timing = true);
void write_calibration_csv(const CalibrationTable& table, std::ostream& out);
void write_clique_law_csv(std::span<const CliqueLawRow> rows, std::ostream& out);

std::string format_g6(double v); // printf %.6g

} // namespace hpc
