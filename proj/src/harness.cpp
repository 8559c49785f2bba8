#include "hpc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace hpc {

namespace {

uint64_t checked_sum(std::span<const uint8_t> v) {
    uint64_t s = 0;
    for (uint8_t x : v) s += x;
    return s;
}

} // namespace

std::string error_code_of(const std::exception& e) {
    if (auto* t = dynamic_cast<const TrialError*>(&e)) return t->code();
    if (dynamic_cast<const WorkCapExceeded*>(&e)) return "work-cap";
    if (dynamic_cast<const std::domain_error*>(&e)) return "undefined-statistic";
    if (dynamic_cast<const std::overflow_error*>(&e)) return "overflow";
    if (dynamic_cast<const std::invalid_argument*>(&e)) return "param";
    if (dynamic_cast<const std::out_of_range*>(&e)) return "param";
    return "runtime";
}

void parallel_for(uint64_t count, uint32_t workers,
                  const std::function<void(uint64_t)>& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    uint64_t threads = std::min<uint64_t>(workers, count);
    if (threads <= 1) {
        for (uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<uint64_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    auto worker = [&] {
        while (true) {
            uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (uint64_t w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (uint64_t i = 0; i < count; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
}

double wilson_half_width(uint64_t successes, uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson interval needs trials >= 1");
    double t = static_cast<double>(trials);
    double p = static_cast<double>(successes) / t;
    double z2 = z * z;
    double denom = 1.0 + z2 / t;
    double center = (p + z2 / (2.0 * t)) / denom;
    double delta = z * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
    return std::max(p - (center - delta), (center + delta) - p);
}

CalibrationTable calibrate_threshold(const DetectorConfig& cfg, uint32_t n, uint32_t d,
                                     double level, uint64_t trials, uint64_t master_seed,
                                     uint32_t workers) {
    if (level <= 0.0 || level >= 1.0)
        throw std::invalid_argument("level must be in (0, 1)");
    if (trials < 1) throw std::invalid_argument("calibration needs trials >= 1");
    if (static_cast<double>(trials) * level < 1.0 - 1e-9)
        throw std::invalid_argument("trials too small to resolve the level quantile");
    ModelParams{n, d, std::nullopt}.validate();

    std::vector<std::vector<double>> samples(trials);
    parallel_for(trials, workers, [&](uint64_t t) {
        try {
            RandomStream gen = derive_stream({master_seed, "cal.gen", t});
            DUniformHypergraph g = sample_null(n, d, gen);
            RandomStream det = derive_stream({master_seed, "cal.det", t});
            calibration_statistics(g, cfg, det, samples[t]);
        } catch (const TrialError&) {
            throw;
        } catch (const std::exception& e) {
            throw TrialError(error_code_of(e),
                             "calibration trial " + std::to_string(t) + ": " + e.what());
        }
    });

    CalibrationTable table;
    table.detector_name = detector_name(cfg.kind);
    table.n = n;
    table.d = d;
    table.config = cfg;
    table.level = level;
    table.trials = trials;
    for (const auto& s : samples)
        table.null_stats.insert(table.null_stats.end(), s.begin(), s.end());
    std::sort(table.null_stats.begin(), table.null_stats.end());
    double tail = calibration_tail(cfg, n, d, level);
    table.threshold = empirical_quantile(table.null_stats, 1.0 - tail);
    return table;
}

RiskEstimate estimate_risk(const DetectorConfig& cfg, double threshold, uint32_t n,
                           uint32_t d, uint32_t kappa, uint64_t trials,
                           uint64_t master_seed, uint32_t workers) {
    if (trials < 1) throw std::invalid_argument("risk estimation needs trials >= 1");
    ModelParams{n, d, kappa}.validate();

    std::vector<uint8_t> h0_alarm(trials, 0);
    std::vector<uint8_t> h1_miss(trials, 0);
    parallel_for(trials, workers, [&](uint64_t t) {
        const char* phase = "H0";
        try {
            {
                RandomStream gen = derive_stream({master_seed, "risk.h0.gen", t});
                DUniformHypergraph g = sample_null(n, d, gen);
                RandomStream det = derive_stream({master_seed, "risk.h0.det", t});
                h0_alarm[t] = run_detector(g, cfg, threshold, det).decision ? 1 : 0;
            }
            phase = "H1";
            {
                RandomStream gen = derive_stream({master_seed, "risk.h1.gen", t});
                DUniformHypergraph g = sample_null(n, d, gen);
                RandomStream plant = derive_stream({master_seed, "risk.h1.plant", t});
                PlantedInstance inst = plant_clique(g, kappa, plant);
                RandomStream det = derive_stream({master_seed, "risk.h1.det", t});
                h1_miss[t] = run_detector(inst.graph, cfg, threshold, det).decision ? 0 : 1;
            }
        } catch (const TrialError&) {
            throw;
        } catch (const std::exception& e) {
            throw TrialError(error_code_of(e), std::string(phase) + " trial " +
                                                   std::to_string(t) + ": " + e.what());
        }
    });

    uint64_t false_alarms = checked_sum(h0_alarm);
    uint64_t misses = checked_sum(h1_miss);
    RiskEstimate r;
    r.type_i = static_cast<double>(false_alarms) / static_cast<double>(trials);
    r.type_ii = static_cast<double>(misses) / static_cast<double>(trials);
    r.trials_per_hypothesis = trials;
    r.ci_i = wilson_half_width(false_alarms, trials);
    r.ci_ii = wilson_half_width(misses, trials);
    return r;
}

double gamma_of(uint32_t n, uint32_t kappa) {
    return std::log(static_cast<double>(kappa)) /
           std::log(std::sqrt(static_cast<double>(n)));
}

PhaseRow run_phase_cell(const DetectorConfig& cfg, uint32_t n, uint32_t d, uint32_t kappa,
                        double level, uint64_t trials, uint64_t cal_trials,
                        uint64_t master_seed, bool cell_tagged, uint32_t workers) {
    PhaseRow row;
    row.detector = detector_name(cfg.kind);
    row.n = n;
    row.d = d;
    row.kappa = kappa;
    row.gamma = gamma_of(n, kappa);

    uint64_t key = master_seed;
    if (cell_tagged) {
        std::string tag = "phase." + row.detector + ".n" + std::to_string(n) + ".k" +
                          std::to_string(kappa) + ".d" + std::to_string(d);
        key = derive_key({master_seed, tag, 0});
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        CalibrationTable cal =
            calibrate_threshold(cfg, n, d, level, cal_trials, key, workers);
        row.threshold = cal.threshold;
        RiskEstimate risk =
            estimate_risk(cfg, cal.threshold, n, d, kappa, trials, key, workers);
        row.type_i = risk.type_i;
        row.type_ii = risk.type_ii;
        row.risk = risk.risk();
        row.ci_i = risk.ci_i;
        row.ci_ii = risk.ci_ii;
        row.status = "ok";
    } catch (const std::exception& e) {
        row.status = "error:" + error_code_of(e);
        row.type_i = row.type_ii = row.risk = row.ci_i = row.ci_ii = 0.0;
        row.threshold = 0.0;
    }
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    row.runtime_s = dt.count();
    return row;
}

std::vector<PhaseRow> phase_grid(const PhaseGridSpec& spec, uint32_t workers) {
    if (spec.n_list.empty()) throw std::invalid_argument("phase grid needs n_list");
    if (spec.detectors.empty()) throw std::invalid_argument("phase grid needs detectors");
    if (spec.kappa_list.empty() == spec.gamma_list.empty())
        throw std::invalid_argument("phase grid needs exactly one of kappa_list/gamma_list");
    for (double g : spec.gamma_list)
        if (!(g > 0.0)) throw std::invalid_argument("gamma values must be positive");

    std::vector<PhaseRow> rows;
    for (const DetectorConfig& cfg : spec.detectors) {
        for (uint32_t n : spec.n_list) {
            std::vector<uint32_t> kappas;
            if (!spec.kappa_list.empty()) {
                kappas = spec.kappa_list;
            } else {
                for (double g : spec.gamma_list) {
                    double k = std::floor(
                        std::pow(static_cast<double>(n), g / 2.0) + 1e-9);
                    kappas.push_back(static_cast<uint32_t>(k));
                }
            }
            for (uint32_t kappa : kappas) {
                if (kappa > n)
                    throw std::invalid_argument("kappa " + std::to_string(kappa) +
                                                " exceeds N " + std::to_string(n));
                rows.push_back(run_phase_cell(cfg, n, spec.d, kappa, spec.level,
                                              spec.trials, spec.cal_trials,
                                              spec.master_seed, true, workers));
            }
        }
    }
    std::sort(rows.begin(), rows.end(), [](const PhaseRow& a, const PhaseRow& b) {
        if (a.detector != b.detector) return a.detector < b.detector;
        if (a.n != b.n) return a.n < b.n;
        return a.kappa < b.kappa;
    });
    return rows;
}

double clique_law_value(uint32_t n, uint32_t d) {
    double fact = 1.0;
    for (uint32_t i = 2; i <= d; ++i) fact *= i;
    return std::pow(fact * std::log2(static_cast<double>(n)),
                    1.0 / static_cast<double>(d - 1));
}

std::vector<CliqueLawRow> clique_law_experiment(uint32_t d, std::span<const uint32_t> n_list,
                                                uint64_t trials, uint64_t master_seed,
                                                uint64_t node_budget, uint32_t workers) {
    if (trials < 1) throw std::invalid_argument("clique law needs trials >= 1");
    std::vector<CliqueLawRow> rows;
    for (uint32_t n : n_list) {
        if (n < 2) throw std::invalid_argument("clique law needs N >= 2");
        ModelParams{n, d, std::nullopt}.validate();
        CliqueLawRow row;
        row.n = n;
        row.law_value = clique_law_value(n, d);
        std::vector<uint32_t> sizes(trials, 0);
        try {
            parallel_for(trials, workers, [&](uint64_t t) {
                RandomStream gen =
                    derive_stream({master_seed, "law.n" + std::to_string(n) + ".gen", t});
                DUniformHypergraph g = sample_null(n, d, gen);
                ExhaustiveOptions opts;
                opts.node_budget = node_budget;
                sizes[t] = max_clique_exhaustive(g, opts).size;
            });
            double sum = 0.0;
            for (uint32_t s : sizes) sum += s;
            row.trials_done = trials;
            row.mean_size = sum / static_cast<double>(trials);
            row.ratio = row.mean_size / row.law_value;
            row.feasible = true;
        } catch (const WorkCapExceeded&) {
            row.feasible = false;
        }
        rows.push_back(row);
    }
    return rows;
}

const char kPhaseCsvHeader[] =
    "detector,N,d,kappa,gamma,type_I,type_II,risk,ci_I,ci_II,threshold,runtime_s,status";

std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void write_phase_csv(std::span<const PhaseRow> rows, std::ostream& out,
                     bool include_timing) {
    out << kPhaseCsvHeader << '\n';
    for (const PhaseRow& r : rows) {
        out << r.detector << ',' << r.n << ',' << r.d << ',' << r.kappa << ','
            << format_g6(r.gamma) << ',' << format_g6(r.type_i) << ','
            << format_g6(r.type_ii) << ',' << format_g6(r.risk) << ','
            << format_g6(r.ci_i) << ',' << format_g6(r.ci_ii) << ','
            << format_g6(r.threshold) << ','
            << format_g6(include_timing ? r.runtime_s : 0.0) << ',' << r.status << '\n';
    }
}

void write_calibration_csv(const CalibrationTable& table, std::ostream& out) {
    out << "detector,N,d,level,trials,threshold\n";
    out << table.detector_name << ',' << table.n << ',' << table.d << ','
        << format_g6(table.level) << ',' << table.trials << ','
        << format_g6(table.threshold) << '\n';
}

void write_clique_law_csv(std::span<const CliqueLawRow> rows, std::ostream& out) {
    out << "N,trials,mean_size,law_value,ratio,status\n";
    for (const CliqueLawRow& r : rows) {
        out << r.n << ',' << r.trials_done << ',' << format_g6(r.mean_size) << ','
            << format_g6(r.law_value) << ',' << format_g6(r.ratio) << ','
            << (r.feasible ? "ok" : "infeasible") << '\n';
    }
}

} // namespace hpc
