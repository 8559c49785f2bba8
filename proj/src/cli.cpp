#include "hpc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "hpc/detectors.hpp"
#include "hpc/harness.hpp"
#include "hpc/io.hpp"
#include "hpc/svg.hpp"
#include "hpc/tensor.hpp"

namespace hpc::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i <= s.size()) {
        size_t j = s.find(',', i);
        if (j == std::string::npos) j = s.size();
        out.push_back(trim(s.substr(i, j - i)));
        i = j + 1;
    }
    return out;
}

uint64_t parse_u64_value(const std::string& tok, const std::string& what) {
    uint64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw UsageError("bad " + what + ": '" + tok + "'");
    return v;
}

double parse_double_value(const std::string& tok, const std::string& what) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw UsageError("bad " + what + ": '" + tok + "'");
    return v;
}

std::vector<uint32_t> parse_u32_list(const std::string& s, const std::string& what) {
    std::vector<uint32_t> out;
    for (const std::string& tok : split_list(s)) {
        uint64_t v = parse_u64_value(tok, what);
        if (v > std::numeric_limits<uint32_t>::max())
            throw UsageError(what + " value out of range: " + tok);
        out.push_back(static_cast<uint32_t>(v));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& s, const std::string& what) {
    std::vector<double> out;
    for (const std::string& tok : split_list(s)) out.push_back(parse_double_value(tok, what));
    return out;
}

/// key=value experiment file for the phase subcommand. Unknown or
/// duplicate keys are usage errors; blank lines and #-comments are
/// skipped.
PhaseGridSpec parse_phase_config(std::istream& in) {
    static const std::set<std::string> known = {
        "d",     "n_list",  "kappa_list", "gamma_list", "detectors", "level",
        "trials", "cal_trials", "master_seed", "tol",   "max_iter",  "row_modes",
        "epsilon", "lambda", "steps",      "slices"};
    std::map<std::string, std::string> kv;
    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(line_no) +
                             ": expected key=value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (!known.count(key))
            throw UsageError("unknown config key: " + key);
        if (kv.count(key)) throw UsageError("duplicate config key: " + key);
        kv[key] = value;
    }

    auto get = [&](const char* key) -> const std::string* {
        auto it = kv.find(key);
        return it == kv.end() ? nullptr : &it->second;
    };

    PhaseGridSpec spec;
    if (const auto* v = get("d")) spec.d = static_cast<uint32_t>(parse_u64_value(*v, "d"));
    if (const auto* v = get("n_list")) spec.n_list = parse_u32_list(*v, "n_list");
    else throw UsageError("config needs n_list");
    if (const auto* v = get("kappa_list")) spec.kappa_list = parse_u32_list(*v, "kappa_list");
    if (const auto* v = get("gamma_list")) spec.gamma_list = parse_double_list(*v, "gamma_list");
    if (spec.kappa_list.empty() == spec.gamma_list.empty())
        throw UsageError("config needs exactly one of kappa_list/gamma_list");
    if (const auto* v = get("level")) spec.level = parse_double_value(*v, "level");
    if (const auto* v = get("trials")) spec.trials = parse_u64_value(*v, "trials");
    if (const auto* v = get("cal_trials")) spec.cal_trials = parse_u64_value(*v, "cal_trials");
    if (const auto* v = get("master_seed")) spec.master_seed = parse_u64_value(*v, "master_seed");

    DetectorConfig base;
    if (const auto* v = get("tol")) base.tol = parse_double_value(*v, "tol");
    if (const auto* v = get("max_iter"))
        base.max_iter = static_cast<uint32_t>(parse_u64_value(*v, "max_iter"));
    if (const auto* v = get("row_modes"))
        base.row_modes = static_cast<uint32_t>(parse_u64_value(*v, "row_modes"));
    if (const auto* v = get("epsilon")) base.epsilon = parse_double_value(*v, "epsilon");
    if (const auto* v = get("lambda")) base.lambda = parse_double_value(*v, "lambda");
    if (const auto* v = get("steps")) base.steps = parse_u64_value(*v, "steps");
    if (const auto* v = get("slices")) base.num_slices = parse_u64_value(*v, "slices");

    const auto* dets = get("detectors");
    if (!dets) throw UsageError("config needs detectors");
    for (const std::string& name : split_list(*dets)) {
        DetectorConfig cfg = base;
        try {
            cfg.kind = detector_from_name(name);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        spec.detectors.push_back(cfg);
    }
    return spec;
}

std::string opt_str(const std::optional<uint64_t>& v) {
    return v ? std::to_string(*v) : "default";
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    return f;
}

void print_clique_line(std::ostream& out, const char* counter_name,
                       const CliqueSearchResult& res) {
    out << "size=" << res.size << ' ' << counter_name << '=' << res.steps_or_nodes
        << " clique=";
    for (size_t i = 0; i < res.best_clique.size(); ++i) {
        if (i) out << ' ';
        out << res.best_clique[i] + 1;
    }
    out << '\n';
}

/// Flags shared by detect/calibrate/risk, mirroring DetectorConfig.
struct DetectorFlags {
    std::string detector;
    double tol = 1e-4;
    uint32_t max_iter = 300;
    uint32_t row_modes = 1;
    double epsilon = 1.0;
    double lambda = 2.0;
    uint64_t steps = 0;
    uint64_t slices = 0;
    CLI::Option* steps_opt = nullptr;
    CLI::Option* slices_opt = nullptr;

    void attach(CLI::App* sub) {
        sub->add_option("--detector", detector, "detector name")
            ->required()
            ->check(CLI::IsMember(
                {"edgecount", "spectral", "exhaustive", "metropolis", "slicevote"}));
        sub->add_option("--tol", tol, "power-iteration relative tolerance");
        sub->add_option("--maxiter", max_iter, "power-iteration cap");
        sub->add_option("--rowmodes", row_modes, "unfolding row mode count");
        sub->add_option("--epsilon", epsilon, "exhaustive-search slack");
        sub->add_option("--lambda", lambda, "Metropolis bias");
        steps_opt = sub->add_option("--steps", steps, "Metropolis chain length");
        slices_opt = sub->add_option("--slices", slices, "slice-vote slice count");
    }

    DetectorConfig config() const {
        DetectorConfig cfg;
        cfg.kind = detector_from_name(detector);
        cfg.tol = tol;
        cfg.max_iter = max_iter;
        cfg.row_modes = row_modes;
        cfg.epsilon = epsilon;
        cfg.lambda = lambda;
        if (steps_opt && steps_opt->count()) cfg.steps = steps;
        if (slices_opt && slices_opt->count()) cfg.num_slices = slices;
        return cfg;
    }

    std::string echo() const {
        DetectorConfig cfg = config();
        return "detector=" + detector + " tol=" + format_g6(tol) +
               " maxiter=" + std::to_string(max_iter) +
               " rowmodes=" + std::to_string(row_modes) +
               " epsilon=" + format_g6(epsilon) + " lambda=" + format_g6(lambda) +
               " steps=" + opt_str(cfg.steps) + " slices=" + opt_str(cfg.num_slices);
    }
};

PhaseRow assemble_risk_row(const DetectorConfig& cfg, uint32_t n, uint32_t d,
                           uint32_t kappa, const CalibrationTable& cal,
                           const RiskEstimate& rk, double runtime_s) {
    PhaseRow row;
    row.detector = detector_name(cfg.kind);
    row.n = n;
    row.d = d;
    row.kappa = kappa;
    row.gamma = gamma_of(n, kappa);
    row.type_i = rk.type_i;
    row.type_ii = rk.type_ii;
    row.risk = rk.risk();
    row.ci_i = rk.ci_i;
    row.ci_ii = rk.ci_ii;
    row.threshold = cal.threshold;
    row.runtime_s = runtime_s;
    row.status = "ok";
    return row;
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"hypergraph planted-clique workbench"};
    app.require_subcommand(1);

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "sample an instance and write it with its truth sidecar");
    struct {
        uint32_t n = 0, d = 0, kappa = 0;
        uint64_t seed = 0;
        std::string out_path;
        CLI::Option* kappa_opt = nullptr;
    } gen;
    gen_cmd->add_option("--n", gen.n, "vertex count")->required();
    gen_cmd->add_option("--d", gen.d, "hyperedge arity")->required();
    gen.kappa_opt = gen_cmd->add_option("--kappa", gen.kappa, "planted clique size");
    gen_cmd->add_option("--seed", gen.seed, "master seed");
    gen_cmd->add_option("--out", gen.out_path, "output path (.hg or .hgb)")->required();

    // detect
    auto* detect_cmd = app.add_subcommand("detect", "run one detector on a graph file");
    struct {
        std::string in_path;
        double threshold = 0.0;
        double level = 0.05;
        uint64_t seed = 0;
        CLI::Option* threshold_opt = nullptr;
    } detect;
    DetectorFlags detect_flags;
    detect_cmd->add_option("--in", detect.in_path, "input graph (.hg/.hgb)")->required();
    detect_flags.attach(detect_cmd);
    detect.threshold_opt =
        detect_cmd->add_option("--threshold", detect.threshold, "decision threshold");
    detect_cmd->add_option("--level", detect.level, "nominal level (logged only)");
    detect_cmd->add_option("--seed", detect.seed, "master seed");

    // calibrate
    auto* cal_cmd = app.add_subcommand("calibrate", "estimate a null-quantile threshold");
    struct {
        uint32_t n = 0, d = 0;
        double level = 0.05;
        uint64_t trials = 200;
        uint64_t seed = 0;
        uint32_t workers = 0;
        std::string out_path;
    } cal;
    DetectorFlags cal_flags;
    cal_flags.attach(cal_cmd);
    cal_cmd->add_option("--n", cal.n, "vertex count")->required();
    cal_cmd->add_option("--d", cal.d, "hyperedge arity")->required();
    cal_cmd->add_option("--level", cal.level, "level alpha");
    cal_cmd->add_option("--trials", cal.trials, "null calibration trials");
    cal_cmd->add_option("--seed", cal.seed, "master seed");
    cal_cmd->add_option("--workers", cal.workers, "thread cap (0 = hardware)");
    cal_cmd->add_option("--out", cal.out_path, "write the table as CSV");

    // risk
    auto* risk_cmd = app.add_subcommand("risk", "calibrate then estimate detection risk");
    struct {
        uint32_t n = 0, d = 0, kappa = 0;
        uint64_t trials = 100, cal_trials = 200;
        double level = 0.05;
        uint64_t seed = 0;
        uint32_t workers = 0;
        bool no_timing = false;
        std::string out_path;
    } risk;
    DetectorFlags risk_flags;
    risk_flags.attach(risk_cmd);
    risk_cmd->add_option("--n", risk.n, "vertex count")->required();
    risk_cmd->add_option("--d", risk.d, "hyperedge arity")->required();
    risk_cmd->add_option("--kappa", risk.kappa, "planted clique size")->required();
    risk_cmd->add_option("--trials", risk.trials, "trials per hypothesis");
    risk_cmd->add_option("--cal-trials", risk.cal_trials, "null calibration trials");
    risk_cmd->add_option("--level", risk.level, "level alpha");
    risk_cmd->add_option("--seed", risk.seed, "master seed");
    risk_cmd->add_option("--workers", risk.workers, "thread cap (0 = hardware)");
    risk_cmd->add_flag("--no-timing", risk.no_timing, "zero the runtime column");
    risk_cmd->add_option("--out", risk.out_path, "write the cell as CSV");

    // phase
    auto* phase_cmd = app.add_subcommand("phase", "run a (detector, N, kappa) grid from a config file");
    struct {
        std::string config_path;
        std::string out_path;
        std::string svg_path;
        uint32_t workers = 0;
        bool no_timing = false;
    } phase;
    phase_cmd->add_option("--config", phase.config_path, "key=value experiment file")
        ->required();
    phase_cmd->add_option("--out", phase.out_path, "CSV output path (default stdout)");
    phase_cmd->add_option("--svg", phase.svg_path, "risk heatmap SVG path");
    phase_cmd->add_option("--workers", phase.workers, "thread cap (0 = hardware)");
    phase_cmd->add_flag("--no-timing", phase.no_timing, "zero the runtime column");

    // maxclique
    auto* maxc_cmd = app.add_subcommand("maxclique", "exact maximum clique of a graph file");
    struct {
        std::string in_path;
        uint32_t cap = 0;
        uint64_t budget = 0;
        CLI::Option* cap_opt = nullptr;
        CLI::Option* budget_opt = nullptr;
    } maxc;
    maxc_cmd->add_option("--in", maxc.in_path, "input graph (.hg/.hgb)")->required();
    maxc.cap_opt = maxc_cmd->add_option("--cap", maxc.cap, "stop at this clique size");
    maxc.budget_opt = maxc_cmd->add_option("--budget", maxc.budget, "node budget");

    // metropolis
    auto* metro_cmd = app.add_subcommand("metropolis", "run the Metropolis clique chain on a graph file");
    struct {
        std::string in_path;
        double lambda = 2.0;
        uint64_t steps = 0;
        uint64_t seed = 0;
        CLI::Option* steps_opt = nullptr;
    } metro;
    metro_cmd->add_option("--in", metro.in_path, "input graph (.hg/.hgb)")->required();
    metro_cmd->add_option("--lambda", metro.lambda, "bias, >= 1");
    metro.steps_opt = metro_cmd->add_option("--steps", metro.steps, "chain length");
    metro_cmd->add_option("--seed", metro.seed, "master seed");

    // reduce
    auto* reduce_cmd = app.add_subcommand("reduce", "slice a d>=3 instance down to a 2-uniform graph");
    struct {
        std::string in_path, fix, out_path;
    } reduce;
    reduce_cmd->add_option("--in", reduce.in_path, "input graph (.hg/.hgb)")->required();
    reduce_cmd->add_option("--fix", reduce.fix, "d-2 fixed vertices, 1-based, comma-separated")
        ->required();
    reduce_cmd->add_option("--out", reduce.out_path, "output graph path")->required();

    // cliquelaw
    auto* law_cmd = app.add_subcommand("cliquelaw", "mean max-clique size against the growth law");
    struct {
        uint32_t d = 0;
        std::string nlist;
        uint64_t trials = 20;
        uint64_t seed = 0;
        uint64_t budget = 50000000;
        uint32_t workers = 0;
        std::string out_path;
    } law;
    law_cmd->add_option("--d", law.d, "hyperedge arity")->required();
    law_cmd->add_option("--nlist", law.nlist, "comma-separated N values")->required();
    law_cmd->add_option("--trials", law.trials, "trials per N");
    law_cmd->add_option("--seed", law.seed, "master seed");
    law_cmd->add_option("--budget", law.budget, "search node budget per trial");
    law_cmd->add_option("--workers", law.workers, "thread cap (0 = hardware)");
    law_cmd->add_option("--out", law.out_path, "CSV output path (default stdout)");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(gen_cmd)) {
            bool planted = gen.kappa_opt->count() > 0;
            err << "config: cmd=gen n=" << gen.n << " d=" << gen.d
                << " kappa=" << (planted ? std::to_string(gen.kappa) : "none")
                << " seed=" << gen.seed << " out=" << gen.out_path << '\n';
            ModelParams params{gen.n, gen.d,
                               planted ? std::optional<uint32_t>(gen.kappa) : std::nullopt};
            params.validate();
            RandomStream null_gen = derive_stream({gen.seed, "null-gen", 0});
            DUniformHypergraph g = sample_null(gen.n, gen.d, null_gen);
            TruthSidecar truth;
            if (planted) {
                RandomStream plant = derive_stream({gen.seed, "plant", 0});
                PlantedInstance inst = plant_clique(g, gen.kappa, plant);
                g = std::move(inst.graph);
                truth.label = Hypothesis::H1;
                truth.clique = std::move(*inst.clique);
            }
            write_graph_file(g, gen.out_path);
            std::string truth_path = truth_path_for(gen.out_path);
            write_truth_file(truth, truth_path);
            out << "wrote " << gen.out_path << " (N=" << g.vertex_count()
                << " d=" << g.arity() << " edges=" << g.edge_count() << ")\n";
            out << "wrote " << truth_path << '\n';
        } else if (app.got_subcommand(detect_cmd)) {
            err << "config: cmd=detect in=" << detect.in_path << ' ' << detect_flags.echo()
                << " threshold="
                << (detect.threshold_opt->count() ? format_g6(detect.threshold)
                                                  : std::string("auto"))
                << " level=" << format_g6(detect.level) << " seed=" << detect.seed << '\n';
            DUniformHypergraph g = read_graph_file(detect.in_path);
            DetectorConfig cfg = detect_flags.config();
            double threshold;
            if (detect.threshold_opt->count()) {
                threshold = detect.threshold;
            } else if (cfg.kind == DetectorKind::Exhaustive) {
                threshold = static_cast<double>(exhaustive_target_size(
                                g.vertex_count(), g.arity(), cfg.epsilon)) -
                            1.0;
            } else {
                throw UsageError("--threshold is required for detector " +
                                 detector_name(cfg.kind));
            }
            RandomStream det = derive_stream({detect.seed, "detect", 0});
            TestResult res = run_detector(g, cfg, threshold, det);
            out << res.detector_name << " stat=" << format_g6(res.statistic)
                << " thr=" << format_g6(res.threshold) << " decision=" << res.decision
                << '\n';
        } else if (app.got_subcommand(cal_cmd)) {
            err << "config: cmd=calibrate " << cal_flags.echo() << " n=" << cal.n
                << " d=" << cal.d << " level=" << format_g6(cal.level)
                << " trials=" << cal.trials << " seed=" << cal.seed
                << " workers=" << cal.workers
                << " out=" << (cal.out_path.empty() ? "-" : cal.out_path) << '\n';
            CalibrationTable table = calibrate_threshold(
                cal_flags.config(), cal.n, cal.d, cal.level, cal.trials, cal.seed,
                cal.workers);
            out << table.detector_name << " N=" << table.n << " d=" << table.d
                << " level=" << format_g6(table.level) << " trials=" << table.trials
                << " threshold=" << format_g6(table.threshold) << '\n';
            if (!cal.out_path.empty()) {
                auto f = open_output(cal.out_path);
                write_calibration_csv(table, f);
            }
        } else if (app.got_subcommand(risk_cmd)) {
            err << "config: cmd=risk " << risk_flags.echo() << " n=" << risk.n
                << " d=" << risk.d << " kappa=" << risk.kappa
                << " trials=" << risk.trials << " cal_trials=" << risk.cal_trials
                << " level=" << format_g6(risk.level) << " seed=" << risk.seed
                << " workers=" << risk.workers << " no_timing=" << risk.no_timing
                << " out=" << (risk.out_path.empty() ? "-" : risk.out_path) << '\n';
            DetectorConfig cfg = risk_flags.config();
            auto t0 = std::chrono::steady_clock::now();
            CalibrationTable table = calibrate_threshold(
                cfg, risk.n, risk.d, risk.level, risk.cal_trials, risk.seed, risk.workers);
            RiskEstimate rk = estimate_risk(cfg, table.threshold, risk.n, risk.d,
                                            risk.kappa, risk.trials, risk.seed,
                                            risk.workers);
            std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
            PhaseRow row =
                assemble_risk_row(cfg, risk.n, risk.d, risk.kappa, table, rk, dt.count());
            out << "risk=" << format_g6(row.risk) << " type_I=" << format_g6(row.type_i)
                << " type_II=" << format_g6(row.type_ii)
                << " threshold=" << format_g6(row.threshold) << '\n';
            if (!risk.out_path.empty()) {
                auto f = open_output(risk.out_path);
                write_phase_csv({&row, 1}, f, !risk.no_timing);
            }
        } else if (app.got_subcommand(phase_cmd)) {
            err << "config: cmd=phase config=" << phase.config_path
                << " out=" << (phase.out_path.empty() ? "-" : phase.out_path)
                << " svg=" << (phase.svg_path.empty() ? "none" : phase.svg_path)
                << " workers=" << phase.workers << " no_timing=" << phase.no_timing
                << '\n';
            std::ifstream cfg_file(phase.config_path);
            if (!cfg_file) throw std::runtime_error("cannot open " + phase.config_path);
            PhaseGridSpec spec = parse_phase_config(cfg_file);
            std::vector<PhaseRow> rows = phase_grid(spec, phase.workers);
            if (phase.out_path.empty()) {
                write_phase_csv(rows, out, !phase.no_timing);
            } else {
                auto f = open_output(phase.out_path);
                write_phase_csv(rows, f, !phase.no_timing);
            }
            if (!phase.svg_path.empty()) {
                auto f = open_output(phase.svg_path);
                write_phase_svg(rows, f);
            }
        } else if (app.got_subcommand(maxc_cmd)) {
            err << "config: cmd=maxclique in=" << maxc.in_path << " cap="
                << (maxc.cap_opt->count() ? std::to_string(maxc.cap) : "none")
                << " budget="
                << (maxc.budget_opt->count() ? std::to_string(maxc.budget) : "none")
                << '\n';
            DUniformHypergraph g = read_graph_file(maxc.in_path);
            ExhaustiveOptions opts;
            if (maxc.cap_opt->count()) opts.size_cap = maxc.cap;
            if (maxc.budget_opt->count()) opts.node_budget = maxc.budget;
            print_clique_line(out, "nodes", max_clique_exhaustive(g, opts));
        } else if (app.got_subcommand(metro_cmd)) {
            DUniformHypergraph g = read_graph_file(metro.in_path);
            uint64_t steps = metro.steps_opt->count()
                                 ? metro.steps
                                 : default_metropolis_steps(g.vertex_count());
            err << "config: cmd=metropolis in=" << metro.in_path
                << " lambda=" << format_g6(metro.lambda) << " steps=" << steps
                << " seed=" << metro.seed << '\n';
            RandomStream chain = derive_stream({metro.seed, "metropolis", 0});
            print_clique_line(out, "steps",
                              metropolis_search(g, metro.lambda, steps, chain));
        } else if (app.got_subcommand(reduce_cmd)) {
            err << "config: cmd=reduce in=" << reduce.in_path << " fix=" << reduce.fix
                << " out=" << reduce.out_path << '\n';
            DUniformHypergraph g = read_graph_file(reduce.in_path);
            std::vector<uint32_t> fixed;
            for (uint32_t v : parse_u32_list(reduce.fix, "--fix")) {
                if (v < 1) throw UsageError("--fix ids are 1-based");
                fixed.push_back(v - 1);
            }
            AdjacencyTensorView t(g, Centering::Raw);
            SliceResult sl = slice(t, fixed);
            write_graph_file(sl.graph, reduce.out_path);
            out << "wrote " << reduce.out_path << " (N=" << sl.graph.vertex_count()
                << " d=2 edges=" << sl.graph.edge_count() << ")\n";
            out << "map=";
            for (size_t i = 0; i < sl.vertex_map.size(); ++i) {
                if (i) out << ' ';
                out << sl.vertex_map[i] + 1;
            }
            out << '\n';
        } else if (app.got_subcommand(law_cmd)) {
            err << "config: cmd=cliquelaw d=" << law.d << " nlist=" << law.nlist
                << " trials=" << law.trials << " seed=" << law.seed
                << " budget=" << law.budget << " workers=" << law.workers
                << " out=" << (law.out_path.empty() ? "-" : law.out_path) << '\n';
            std::vector<uint32_t> ns = parse_u32_list(law.nlist, "--nlist");
            std::vector<CliqueLawRow> rows = clique_law_experiment(
                law.d, ns, law.trials, law.seed, law.budget, law.workers);
            if (law.out_path.empty()) {
                write_clique_law_csv(rows, out);
            } else {
                auto f = open_output(law.out_path);
                write_clique_law_csv(rows, f);
            }
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace hpc::cli
