#include "hpc/detectors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_set>

#include "hpc/tensor.hpp"

namespace hpc {

namespace {

template <typename F>
TestResult timed_test(std::string name, double threshold, F&& statistic) {
    auto t0 = std::chrono::steady_clock::now();
    double stat = statistic();
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    TestResult r;
    r.detector_name = std::move(name);
    r.statistic = stat;
    r.threshold = threshold;
    r.decision = stat > threshold ? 1 : 0;
    r.wall_time = dt.count();
    return r;
}

/// Floyd's algorithm: k distinct uniform values from [0, n), sorted.
/// Consumes exactly k draws from the stream.
std::vector<uint64_t> floyd_sample(RandomStream& stream, uint64_t k, uint64_t n) {
    std::unordered_set<uint64_t> chosen;
    chosen.reserve(static_cast<size_t>(k) * 2);
    for (uint64_t j = n - k; j < n; ++j) {
        uint64_t t = stream.next_below(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<uint64_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

struct DfsState {
    const DUniformHypergraph& g;
    uint32_t n;
    uint32_t cap;        // stop once the incumbent reaches this size
    uint64_t budget;     // 0 = unlimited
    uint64_t nodes = 0;
    bool stop = false;
    std::vector<uint32_t> cur;
    std::vector<uint32_t> best;

    void run(uint32_t start) {
        ++nodes;
        if (budget != 0 && nodes > budget)
            throw WorkCapExceeded("clique search exceeded node budget of " +
                                  std::to_string(budget));
        if (cur.size() > best.size()) {
            best = cur;
            if (best.size() >= cap) {
                stop = true;
                return;
            }
        }
        for (uint32_t v = start; v < n; ++v) {
            if (cur.size() + (n - v) <= best.size()) break;
            if (!extends_clique(g, cur, v)) continue;
            cur.push_back(v);
            run(v + 1);
            cur.pop_back();
            if (stop) return;
        }
    }
};

} // namespace

std::string detector_name(DetectorKind kind) {
    switch (kind) {
    case DetectorKind::EdgeCount: return "edgecount";
    case DetectorKind::Spectral: return "spectral";
    case DetectorKind::Exhaustive: return "exhaustive";
    case DetectorKind::Metropolis: return "metropolis";
    case DetectorKind::SliceVote: return "slicevote";
    }
    throw std::invalid_argument("bad detector kind");
}

DetectorKind detector_from_name(const std::string& name) {
    if (name == "edgecount") return DetectorKind::EdgeCount;
    if (name == "spectral") return DetectorKind::Spectral;
    if (name == "exhaustive") return DetectorKind::Exhaustive;
    if (name == "metropolis") return DetectorKind::Metropolis;
    if (name == "slicevote") return DetectorKind::SliceVote;
    throw std::invalid_argument("unknown detector: " + name);
}

uint64_t default_metropolis_steps(uint32_t n) {
    if (n <= 1) return 0;
    return static_cast<uint64_t>(
        std::ceil(10.0 * n * std::log(static_cast<double>(n))));
}

uint64_t resolved_steps(const DetectorConfig& cfg, uint32_t n) {
    return cfg.steps ? *cfg.steps : default_metropolis_steps(n);
}

uint64_t resolved_slices(const DetectorConfig& cfg, uint32_t n, uint32_t d) {
    if (cfg.num_slices) return *cfg.num_slices;
    uint64_t total = d >= 2 ? binom_saturating(n, d - 2) : 0;
    return std::min<uint64_t>(n, total);
}

double edge_count_statistic(const DUniformHypergraph& g) {
    double slots = static_cast<double>(g.slot_count());
    if (slots == 0.0)
        throw std::domain_error("edge-count statistic undefined: zero edge slots");
    double edges = static_cast<double>(g.edge_count());
    return (edges - slots / 2.0) / (std::sqrt(slots) / 2.0);
}

TestResult edge_count_test(const DUniformHypergraph& g, double threshold) {
    return timed_test("edgecount", threshold, [&] { return edge_count_statistic(g); });
}

TestResult spectral_test(const DUniformHypergraph& g, double threshold, double tol,
                         uint32_t max_iter, RandomStream& stream, uint32_t row_modes) {
    return timed_test("spectral", threshold, [&] {
        AdjacencyTensorView t(g, Centering::Centered);
        UnfoldingView u(t, row_modes);
        return top_singular_value(u, tol, max_iter, stream).sigma;
    });
}

CliqueSearchResult max_clique_exhaustive(const DUniformHypergraph& g,
                                         const ExhaustiveOptions& opts) {
    uint32_t n = g.vertex_count();
    uint32_t vacuous = std::min(g.arity() - 1, n);
    DfsState dfs{g,
                 n,
                 std::max(opts.size_cap.value_or(n), vacuous),
                 opts.node_budget.value_or(0),
                 0,
                 false,
                 {},
                 {}};
    dfs.best.resize(vacuous);
    for (uint32_t v = 0; v < vacuous; ++v) dfs.best[v] = v;
    dfs.cur.reserve(n);
    if (dfs.best.size() < dfs.cap) dfs.run(0);
    uint32_t found = static_cast<uint32_t>(dfs.best.size());
    return {std::move(dfs.best), found, dfs.nodes};
}

uint32_t exhaustive_target_size(uint32_t n, uint32_t d, double epsilon) {
    if (n < 2) throw std::invalid_argument("exhaustive test needs N >= 2");
    if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
    double fact = 1.0;
    for (uint32_t i = 2; i <= d; ++i) fact *= i;
    double v = std::pow((fact + epsilon) * std::log2(static_cast<double>(n)),
                        1.0 / (d - 1));
    return static_cast<uint32_t>(std::ceil(v - 1e-9 * std::max(1.0, v)));
}

TestResult exhaustive_test(const DUniformHypergraph& g, double epsilon,
                           const std::optional<uint64_t>& node_budget) {
    uint32_t kstar = exhaustive_target_size(g.vertex_count(), g.arity(), epsilon);
    return timed_test("exhaustive", static_cast<double>(kstar) - 1.0, [&] {
        ExhaustiveOptions opts;
        opts.size_cap = kstar;
        opts.node_budget = node_budget;
        return static_cast<double>(max_clique_exhaustive(g, opts).size);
    });
}

CliqueSearchResult metropolis_search(const DUniformHypergraph& g, double lambda,
                                     uint64_t steps, RandomStream& stream,
                                     const MetropolisObserver& observer) {
    if (lambda < 1.0) throw std::invalid_argument("metropolis bias lambda must be >= 1");
    uint32_t n = g.vertex_count();
    std::vector<uint32_t> cur;
    std::vector<uint8_t> member(n, 0);
    std::vector<uint32_t> best;
    double accept_down = 1.0 / lambda;

    for (uint64_t step = 0; step < steps; ++step) {
        auto v = static_cast<uint32_t>(stream.next_below(n));
        if (member[v]) {
            if (stream.next_unit() < accept_down) {
                cur.erase(std::lower_bound(cur.begin(), cur.end(), v));
                member[v] = 0;
            }
        } else if (extends_clique(g, cur, v)) {
            cur.insert(std::lower_bound(cur.begin(), cur.end(), v), v);
            member[v] = 1;
            if (cur.size() > best.size()) best = cur;
        }
        if (observer) observer(cur);
    }
    uint32_t found = static_cast<uint32_t>(best.size());
    return {std::move(best), found, steps};
}

TestResult metropolis_test(const DUniformHypergraph& g, double lambda, uint64_t steps,
                           double threshold, RandomStream& stream) {
    return timed_test("metropolis", threshold, [&] {
        return static_cast<double>(metropolis_search(g, lambda, steps, stream).size);
    });
}

std::vector<double> slice_vote_statistics(const DUniformHypergraph& g, uint64_t num_slices,
                                          double tol, uint32_t max_iter,
                                          RandomStream& stream) {
    uint32_t n = g.vertex_count();
    uint32_t d = g.arity();
    if (d < 3) throw std::invalid_argument("slice vote needs d >= 3");
    uint64_t total = binom(n, d - 2);
    if (num_slices < 1 || num_slices > total)
        throw std::invalid_argument("num_slices must be in [1, C(N, d-2)]");

    std::vector<uint64_t> ranks = floyd_sample(stream, num_slices, total);
    AdjacencyTensorView t(g, Centering::Centered);
    std::vector<double> stats;
    stats.reserve(ranks.size());
    std::vector<uint32_t> tuple;
    for (uint64_t r : ranks) {
        comb_unrank(r, d - 2, tuple);
        SliceResult sl = slice(t, tuple);
        AdjacencyTensorView st(sl.graph, Centering::Centered);
        UnfoldingView u(st, 1);
        stats.push_back(top_singular_value(u, tol, max_iter, stream).sigma);
    }
    return stats;
}

double empirical_quantile(std::span<const double> sorted_sample, double q) {
    if (sorted_sample.empty())
        throw std::invalid_argument("empirical quantile of an empty sample");
    double t = static_cast<double>(sorted_sample.size());
    auto idx = static_cast<uint64_t>(std::ceil(q * t - 1e-9));
    idx = std::clamp<uint64_t>(idx, 1, sorted_sample.size());
    return sorted_sample[idx - 1];
}

TestResult slice_vote_test(const DUniformHypergraph& g, uint64_t num_slices, double level,
                           std::span<const double> sorted_null_slice_stats,
                           RandomStream& stream, double tol, uint32_t max_iter) {
    if (level <= 0.0 || level >= 1.0)
        throw std::invalid_argument("level must be in (0, 1)");
    if (num_slices < 1) throw std::invalid_argument("num_slices must be >= 1");
    double threshold = empirical_quantile(sorted_null_slice_stats,
                                          1.0 - level / static_cast<double>(num_slices));
    return timed_test("slicevote", threshold, [&] {
        auto stats = slice_vote_statistics(g, num_slices, tol, max_iter, stream);
        return *std::max_element(stats.begin(), stats.end());
    });
}

double detector_statistic(const DUniformHypergraph& g, const DetectorConfig& cfg,
                          RandomStream& stream) {
    switch (cfg.kind) {
    case DetectorKind::EdgeCount:
        return edge_count_statistic(g);
    case DetectorKind::Spectral: {
        AdjacencyTensorView t(g, Centering::Centered);
        UnfoldingView u(t, cfg.row_modes);
        return top_singular_value(u, cfg.tol, cfg.max_iter, stream).sigma;
    }
    case DetectorKind::Exhaustive: {
        ExhaustiveOptions opts;
        opts.size_cap = exhaustive_target_size(g.vertex_count(), g.arity(), cfg.epsilon);
        return static_cast<double>(max_clique_exhaustive(g, opts).size);
    }
    case DetectorKind::Metropolis:
        return static_cast<double>(
            metropolis_search(g, cfg.lambda, resolved_steps(cfg, g.vertex_count()), stream)
                .size);
    case DetectorKind::SliceVote: {
        auto stats = slice_vote_statistics(
            g, resolved_slices(cfg, g.vertex_count(), g.arity()), cfg.tol, cfg.max_iter,
            stream);
        return *std::max_element(stats.begin(), stats.end());
    }
    }
    throw std::invalid_argument("bad detector kind");
}

void calibration_statistics(const DUniformHypergraph& g, const DetectorConfig& cfg,
                            RandomStream& stream, std::vector<double>& out) {
    if (cfg.kind == DetectorKind::SliceVote) {
        out = slice_vote_statistics(g, resolved_slices(cfg, g.vertex_count(), g.arity()),
                                    cfg.tol, cfg.max_iter, stream);
        return;
    }
    out.assign(1, detector_statistic(g, cfg, stream));
}

double calibration_tail(const DetectorConfig& cfg, uint32_t n, uint32_t d, double level) {
    if (cfg.kind == DetectorKind::SliceVote)
        return level / static_cast<double>(resolved_slices(cfg, n, d));
    return level;
}

TestResult run_detector(const DUniformHypergraph& g, const DetectorConfig& cfg,
                        double threshold, RandomStream& stream) {
    return timed_test(detector_name(cfg.kind), threshold,
                      [&] { return detector_statistic(g, cfg, stream); });
}

} // namespace hpc
