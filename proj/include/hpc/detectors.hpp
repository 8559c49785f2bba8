#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpc/hypergraph.hpp"
#include "hpc/rng.hpp"

namespace hpc {

/// Outcome of one detector evaluation. decision = 1 iff
/// statistic > threshold (ties resolve to 0, conservative under H0).
struct TestResult {
    std::string detector_name;
    double statistic = 0.0;
    double threshold = 0.0;
    int decision = 0;
    double wall_time = 0.0; // seconds
};

/// Outcome of a clique search. best_clique is sorted and always satisfies
/// is_clique; steps_or_nodes counts chain steps or DFS nodes.
struct CliqueSearchResult {
    std::vector<uint32_t> best_clique;
    uint32_t size = 0;
    uint64_t steps_or_nodes = 0;
};

enum class DetectorKind : uint8_t { EdgeCount, Spectral, Exhaustive, Metropolis, SliceVote };

std::string detector_name(DetectorKind kind);
DetectorKind detector_from_name(const std::string& name);

/// Detector settings with the documented defaults. steps and num_slices
/// resolve lazily from (N, d) when unset: steps = ceil(10 N ln N),
/// num_slices = min(N, C(N, d-2)).
struct DetectorConfig {
    DetectorKind kind = DetectorKind::Spectral;
    double tol = 1e-4;
    uint32_t max_iter = 300;
    uint32_t row_modes = 1;
    double epsilon = 1.0;
    double lambda = 2.0;
    std::optional<uint64_t> steps;
    std::optional<uint64_t> num_slices;
};

uint64_t default_metropolis_steps(uint32_t n);
uint64_t resolved_steps(const DetectorConfig& cfg, uint32_t n);
uint64_t resolved_slices(const DetectorConfig& cfg, uint32_t n, uint32_t d);

/// Standardized edge count (|E| - C(N,d)/2) / (sqrt(C(N,d))/2).
/// Throws std::domain_error when C(N,d) = 0.
double edge_count_statistic(const DUniformHypergraph& g);

TestResult edge_count_test(const DUniformHypergraph& g, double threshold);

/// Top singular value of the centered unfolding as the test statistic.
TestResult spectral_test(const DUniformHypergraph& g, double threshold, double tol,
                         uint32_t max_iter, RandomStream& stream, uint32_t row_modes = 1);

/// Thrown when a search exceeds its node budget.
class WorkCapExceeded : public std::runtime_error {
public:
    explicit WorkCapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct ExhaustiveOptions {
    std::optional<uint32_t> size_cap;   // stop once a clique this large is found
    std::optional<uint64_t> node_budget; // throw WorkCapExceeded beyond this
};

/// Exact maximum clique by depth-first ordered extension with incremental
/// d-subset checks; prunes branches that cannot beat the incumbent. With
/// size_cap the search stops at the first clique of that size.
CliqueSearchResult max_clique_exhaustive(const DUniformHypergraph& g,
                                         const ExhaustiveOptions& opts = {});

/// k* = ceil(((d! + epsilon) * log2 N)^(1/(d-1))), the search target size.
uint32_t exhaustive_target_size(uint32_t n, uint32_t d, double epsilon);

/// statistic = capped max-clique size, threshold = k* - 1, so the decision
/// is 1 exactly when a clique of size >= k* exists.
TestResult exhaustive_test(const DUniformHypergraph& g, double epsilon,
                           const std::optional<uint64_t>& node_budget = std::nullopt);

using MetropolisObserver = std::function<void(std::span<const uint32_t> clique)>;

/// Metropolis chain on cliques from the empty state: each step picks a
/// uniform vertex; members are proposed for removal (accepted with
/// probability 1/lambda), non-members for insertion when the result is
/// still a clique (always accepted since lambda >= 1). Returns the largest
/// clique visited. The observer, when set, sees the state after every step.
CliqueSearchResult metropolis_search(const DUniformHypergraph& g, double lambda,
                                     uint64_t steps, RandomStream& stream,
                                     const MetropolisObserver& observer = {});

TestResult metropolis_test(const DUniformHypergraph& g, double lambda, uint64_t steps,
                           double threshold, RandomStream& stream);

/// Per-slice PC statistics at num_slices distinct uniformly drawn
/// (d-2)-subsets, in colex rank order: each slice's statistic is the top
/// singular value of its centered adjacency matrix.
std::vector<double> slice_vote_statistics(const DUniformHypergraph& g, uint64_t num_slices,
                                          double tol, uint32_t max_iter,
                                          RandomStream& stream);

/// Sorted-sample empirical quantile: the ceil(q*T)-th order statistic.
double empirical_quantile(std::span<const double> sorted_sample, double q);

/// Bonferroni slice vote: statistic = max per-slice statistic, threshold =
/// empirical (1 - level/num_slices) quantile of the calibrated per-slice
/// null sample (sorted ascending).
TestResult slice_vote_test(const DUniformHypergraph& g, uint64_t num_slices, double level,
                           std::span<const double> sorted_null_slice_stats,
                           RandomStream& stream, double tol = 1e-4,
                           uint32_t max_iter = 300);

/// The scalar statistic a calibrated threshold is compared against.
double detector_statistic(const DUniformHypergraph& g, const DetectorConfig& cfg,
                          RandomStream& stream);

/// Null-calibration samples for one trial: one value per trial for scalar
/// detectors, num_slices per-slice values for the slice vote.
void calibration_statistics(const DUniformHypergraph& g, const DetectorConfig& cfg,
                            RandomStream& stream, std::vector<double>& out);

/// Tail mass the calibration quantile must resolve: level for scalar
/// detectors, level/num_slices for the slice vote.
double calibration_tail(const DetectorConfig& cfg, uint32_t n, uint32_t d, double level);

/// Runs the configured detector against an explicit threshold.
TestResult run_detector(const DUniformHypergraph& g, const DetectorConfig& cfg,
                        double threshold, RandomStream& stream);

} // namespace hpc
