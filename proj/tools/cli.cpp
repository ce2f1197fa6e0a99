#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "nnca/baselines.hpp"
#include "nnca/linalg.hpp"
#include "nnca/matrix_io.hpp"
#include "nnca/metrics.hpp"
#include "nnca/report.hpp"
#include "nnca/sequence.hpp"
#include "nnca/simulation.hpp"

namespace nnca::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

/// Invalid or unsatisfiable configuration (exit 3).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or invalid input data (exit 2).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DecomposeArgs {
    std::string input;
    std::string method = "nnca";
    std::string ranks;
    std::uint64_t seed = 1;
    std::size_t restarts = 1;
    std::size_t max_iter = 0;
    std::string nmf_algorithm = "mu";
    double tol_kkt = 1e-8;
    double tol_nonneg = kNonnegTolerance;
    std::string output_dir = "nnca-out";
    std::string format = "json";
    bool header = false;
};

struct SimulateArgs {
    std::string scenario;
    std::string config;
    std::string input;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replicates;
    std::optional<std::size_t> restarts;
    bool full = false;
    bool header = false;
    std::string output_dir = "nnca-out";
};

std::string fixed(double v, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

std::vector<std::size_t> parse_ranks(const std::string& spec) {
    auto to_size = [&](const std::string& s) -> std::size_t {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw ConfigError("invalid rank specification '" + spec + "'");
        }
        if (pos != s.size() || v < 1) {
            throw ConfigError("invalid rank specification '" + spec + "'");
        }
        return static_cast<std::size_t>(v);
    };
    const auto dash = spec.find('-');
    if (dash == std::string::npos) {
        return {to_size(spec)};
    }
    const std::size_t lo = to_size(spec.substr(0, dash));
    const std::size_t hi = to_size(spec.substr(dash + 1));
    if (lo > hi) {
        throw ConfigError("rank range '" + spec + "' is empty");
    }
    std::vector<std::size_t> out;
    for (std::size_t k = lo; k <= hi; ++k) {
        out.push_back(k);
    }
    return out;
}

NmfOptions nmf_options_from(const std::string& algorithm, std::size_t max_iter) {
    NmfOptions o;
    if (algorithm == "als") {
        o = NmfOptions::alternating();
    } else if (algorithm != "mu") {
        throw ConfigError("unknown NMF algorithm '" + algorithm + "' (expected mu or als)");
    }
    if (max_iter > 0) {
        o.max_iter = max_iter;
    }
    return o;
}

NmfOptions nmf_options_from_json(const nlohmann::json& j, NmfOptions base) {
    if (j.contains("algorithm")) {
        const auto name = j.at("algorithm").get<std::string>();
        base = nmf_options_from(name == "multiplicative" ? "mu" : name, 0);
    }
    if (j.contains("max_iter")) {
        base.max_iter = j.at("max_iter").get<std::size_t>();
    }
    if (j.contains("relative_tolerance")) {
        base.relative_tolerance = j.at("relative_tolerance").get<double>();
    }
    if (j.contains("function_tolerance")) {
        base.function_tolerance = j.at("function_tolerance").get<double>();
    }
    if (j.contains("step_tolerance")) {
        base.step_tolerance = j.at("step_tolerance").get<double>();
    }
    return base;
}

NonnegMatrix load_input(const std::string& path, bool header) {
    DenseMatrix m = [&] {
        try {
            return io::parse_matrix_file(path, {',', header});
        } catch (const io::ParseError& e) {
            throw InputError(path + ": " + e.what());
        } catch (const ArgumentError& e) {
            throw InputError(path + ": " + e.what());
        }
    }();
    try {
        return NonnegMatrix(std::move(m));
    } catch (const ArgumentError& e) {
        throw InputError(path + ": decomposition requires nonnegative data: " + e.what());
    }
}

Json rank_row(const DenseMatrix& x, std::size_t k, const DenseMatrix& approx, const std::string& file) {
    return Json{{"rank", k},
                {"file", file},
                {"residual", residual_fro(x, approx)},
                {"out_of_cone", count_out_of_cone(approx)},
                {"sparse_columns", count_sparse_columns(approx)},
                {"min_entry", approx.min_entry()}};
}

const std::vector<std::string> kRankCsvColumns = {
    "rank",           "file",          "residual",     "out_of_cone",       "sparse_columns",
    "min_entry",      "effective_rank", "degenerate_gap", "svd_was_feasible", "solver_converged",
    "max_kkt_residual", "residual_from_parent", "objective", "converged",     "best_restart"};

std::string csv_cell(const Json& v) {
    if (v.is_null()) {
        return "";
    }
    if (v.is_number_float()) {
        return io::format_double(v.get<double>());
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

std::string ranks_csv(const Json& rows) {
    std::string out;
    for (std::size_t c = 0; c < kRankCsvColumns.size(); ++c) {
        out += (c ? "," : "") + kRankCsvColumns[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < kRankCsvColumns.size(); ++c) {
            const auto it = row.find(kRankCsvColumns[c]);
            out += (c ? "," : "") + (it == row.end() ? std::string() : csv_cell(*it));
        }
        out += '\n';
    }
    return out;
}

int decompose(const DecomposeArgs& a, std::ostream& out) {
    if (a.format != "json" && a.format != "csv") {
        throw ConfigError("unknown format '" + a.format + "' (expected json or csv)");
    }
    if (a.method != "nnca" && a.method != "svd" && a.method != "pca" && a.method != "nmf") {
        throw ConfigError("unknown method '" + a.method + "'");
    }
    if (a.restarts < 1) {
        throw ConfigError("--restarts must be at least 1");
    }
    if (!(a.tol_kkt > 0.0) || !(a.tol_nonneg >= 0.0)) {
        throw ConfigError("tolerances must be positive");
    }
    const NmfOptions nmf_opts = nmf_options_from(a.nmf_algorithm, a.max_iter);
    const NonnegMatrix x = load_input(a.input, a.header);
    const DenseMatrix& data = x.matrix();
    const std::size_t d = data.rows();
    const std::size_t n = data.cols();
    const std::size_t r0 = numerical_rank(data);
    const std::size_t min_dn = std::min(d, n);

    std::vector<std::size_t> ranks;
    if (a.ranks.empty()) {
        for (std::size_t k = 1; k + 1 <= std::max<std::size_t>(r0, 2); ++k) {
            ranks.push_back(k);
        }
    } else {
        ranks = parse_ranks(a.ranks);
    }
    for (std::size_t k : ranks) {
        std::size_t hi = min_dn;
        if (a.method == "nnca") {
            hi = std::min(min_dn - 1, r0 == 0 ? 0 : r0 - 1);
        } else if (a.method == "svd") {
            hi = r0;
        }
        if (k < 1 || k > hi) {
            throw ConfigError("rank " + std::to_string(k) + " is infeasible for method " + a.method +
                              " (allowed 1.." + std::to_string(hi) + ", data rank " + std::to_string(r0) + ")");
        }
    }

    fs::create_directories(a.output_dir);
    Json rows = Json::array();
    std::vector<std::pair<std::size_t, DenseMatrix>> approximations;
    bool capped = false;
    Json extra = Json::object();

    NncaOptions nnca_opts;
    nnca_opts.qp.kkt_tolerance = a.tol_kkt;
    nnca_opts.qp.feasibility_tolerance = a.tol_nonneg;

    std::optional<NncaSequence> seq;
    if (a.method == "nnca") {
        seq = nnca_sequence(NonnegMatrix(data, a.tol_nonneg), nnca_opts);
    }
    for (std::size_t k : ranks) {
        const std::string file = "approx_rank_" + std::to_string(k) + ".csv";
        DenseMatrix approx(d, n);
        Json diag = Json::object();
        if (a.method == "nnca") {
            const NncaStep& step = seq->at_rank(k);
            approx = step.approx.matrix();
            diag = {{"effective_rank", step.effective_rank},
                    {"degenerate_gap", step.degenerate_gap},
                    {"svd_was_feasible", step.svd_was_feasible},
                    {"solver_converged", step.solver_converged},
                    {"max_kkt_residual", step.max_kkt_residual},
                    {"residual_from_parent", step.residual_from_parent}};
            capped = capped || !step.solver_converged || step.max_kkt_residual > a.tol_kkt;
        } else if (a.method == "svd") {
            approx = svd_approx(data, k);
        } else if (a.method == "pca") {
            const PcaApproximation p = pca_approx(data, k);
            approx = p.approx;
            extra["mean"] = p.mean;
        } else {
            const NmfFactorization f = nmf_best_of(x, k, a.restarts, a.seed, nmf_opts);
            approx = f.approx();
            diag = {{"objective", f.objective}, {"converged", f.converged}, {"best_restart", f.best_restart}};
            capped = capped || !f.converged;
        }
        io::write_matrix_file(fs::path(a.output_dir) / file, approx);
        Json row = rank_row(data, k, approx, file);
        row.update(diag);
        rows.push_back(std::move(row));
        approximations.emplace_back(k, std::move(approx));
    }

    Json angles = Json::array();
    if (a.method != "pca") {
        for (std::size_t i = 0; i + 1 < approximations.size(); ++i) {
            const auto& [k_lo, lo] = approximations[i];
            const auto& [k_hi, hi] = approximations[i + 1];
            if (frobenius_norm(lo) > 0.0 && frobenius_norm(hi) > 0.0) {
                angles.push_back({{"ranks", {k_lo, k_hi}}, {"degrees", principal_angle(lo, hi).value()}});
            }
        }
    }

    Json config = {{"method", a.method},
                   {"ranks", ranks},
                   {"input", a.input},
                   {"header", a.header},
                   {"seed", a.seed},
                   {"restarts", a.restarts},
                   {"nmf_algorithm", a.nmf_algorithm},
                   {"nmf_max_iter", nmf_opts.max_iter},
                   {"tol_kkt", a.tol_kkt},
                   {"tol_nonneg", a.tol_nonneg},
                   {"format", a.format}};
    if (a.format == "json") {
        Json report = {{"schema_version", kReportSchemaVersion},
                       {"command", "decompose"},
                       {"config", config},
                       {"input", {{"rows", d}, {"cols", n}, {"rank", r0}, {"frobenius_norm", frobenius_norm(data)}}},
                       {"ranks", rows},
                       {"angles_between_ranks", angles},
                       {"iteration_capped", capped}};
        report.update(extra);
        write_text(fs::path(a.output_dir) / "report.json", report.dump(2) + "\n");
    } else {
        write_text(fs::path(a.output_dir) / "report.csv", ranks_csv(rows));
    }

    out << a.method << " on " << d << "x" << n << " matrix (rank " << r0 << ")\n";
    for (const auto& [k, m] : approximations) {
        out << "rank " << k << "  residual " << fixed(residual_fro(data, m)) << "\n" << io::format_matrix_2dp(m, "  ");
    }
    if (capped) {
        out << "warning: a solver stopped at its iteration cap; artifacts are flagged\n";
        return kIterationCap;
    }
    return kOk;
}

void write_study(const StudyReport& report, const std::string& dir) {
    fs::create_directories(dir);
    write_text(fs::path(dir) / "report.json", to_json(report).dump(2) + "\n");
    write_text(fs::path(dir) / "records.csv", records_csv(report));
    write_text(fs::path(dir) / "summary.csv", summary_csv(report));
}

std::string mean_std(const SummaryRow* row) {
    if (row == nullptr) {
        return "n/a";
    }
    return fixed(row->mean) + " (" + fixed(row->std_dev) + ")";
}

void print_scenario_a(const StudyReport& r, std::ostream& out) {
    const std::string cell = "scenario-a";
    const std::size_t used = r.find(cell, "SVD", 1, "out_of_cone") ? r.find(cell, "SVD", 1, "out_of_cone")->count : 0;
    out << "Projections outside the nonnegative cone per data set, mean (std) over " << used << " replicates\n";
    out << pad("Method", 8) << pad("Rank 1", 16) << "Rank 2\n";
    for (const char* m : {"PCA", "SVD", "NNCA", "NMF"}) {
        out << pad(m, 8) << pad(mean_std(r.find(cell, m, 1, "out_of_cone")), 16)
            << mean_std(r.find(cell, m, 2, "out_of_cone")) << "\n";
    }
    out << "\nRank-2 summaries\n";
    out << pad("Method", 8) << pad("Measure", 32) << pad("Min", 8) << pad("Max", 8) << pad("Mean", 8) << "Median\n";
    auto line = [&](const char* method, const char* label, const char* measure) {
        const SummaryRow* row = r.find(cell, method, 2, measure);
        if (row == nullptr) {
            return;
        }
        out << pad(method, 8) << pad(label, 32) << pad(fixed(row->min), 8) << pad(fixed(row->max), 8)
            << pad(fixed(row->mean), 8) << fixed(row->median) << "\n";
    };
    line("NMF", "Angle between ranks (degrees)", "angle_deg");
    line("NMF", "Number of sparse projections", "sparse_columns");
    line("NNCA", "Angle between ranks (degrees)", "angle_deg");
    line("NNCA", "Number of sparse projections", "sparse_columns");
    if (!r.excluded.empty()) {
        out << r.excluded.size() << " replicate(s) excluded; see report.json\n";
    }
}

void print_angles(const StudyReport& r, const sim::ScenarioCConfig& cfg, std::ostream& out) {
    out << "Angles (degrees) between rank-1 and rank-2 NMF approximations\n";
    std::vector<std::size_t> ds;
    for (std::size_t d : cfg.d_values) {
        if (cfg.full || d <= sim::kCappedDimension) {
            ds.push_back(d);
        }
    }
    out << pad("n", 6) << pad("", 6);
    for (std::size_t d : ds) {
        out << pad("d=" + std::to_string(d), 10);
    }
    out << "\n";
    for (std::size_t n : cfg.n_values) {
        for (const char* stat : {"Mean", "Max"}) {
            out << pad(stat == std::string("Mean") ? std::to_string(n) : "", 6) << pad(stat, 6);
            for (std::size_t d : ds) {
                const SummaryRow* row = r.find(sim::angle_cell_name(n, d), "NMF", 2, "angle_deg");
                const std::string v = row == nullptr ? "n/a" : fixed(stat == std::string("Mean") ? row->mean : row->max);
                out << pad(v, 10);
            }
            out << "\n";
        }
    }
    if (!r.excluded.empty()) {
        out << r.excluded.size() << " replicate(s) skipped; see report.json\n";
    }
}

Json matrix_json(const DenseMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json read_config(const std::string& path) {
    if (path.empty()) {
        return nlohmann::json::object();
    }
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }
}

int simulate(const SimulateArgs& a, std::ostream& out) {
    const nlohmann::json file_cfg = read_config(a.config);
    try {
        if (a.scenario == "a") {
            sim::ScenarioAConfig cfg;
            cfg.seed = file_cfg.value("seed", cfg.seed);
            cfg.replicates = file_cfg.value("replicates", cfg.replicates);
            cfg.nmf_restarts = file_cfg.value("nmf_restarts", cfg.nmf_restarts);
            if (file_cfg.contains("nmf")) {
                cfg.nmf = nmf_options_from_json(file_cfg.at("nmf"), cfg.nmf);
            }
            cfg.seed = a.seed.value_or(cfg.seed);
            cfg.replicates = a.replicates.value_or(cfg.replicates);
            cfg.nmf_restarts = a.restarts.value_or(cfg.nmf_restarts);
            if (cfg.replicates < 1 || cfg.nmf_restarts < 1) {
                throw ConfigError("replicates and restarts must be at least 1");
            }
            const StudyReport r = sim::run_scenario_a_study(cfg);
            write_study(r, a.output_dir);
            print_scenario_a(r, out);
            return kOk;
        }
        if (a.scenario == "angles") {
            sim::ScenarioCConfig cfg;
            cfg.seed = file_cfg.value("seed", cfg.seed);
            cfg.replicates = file_cfg.value("replicates", cfg.replicates);
            cfg.nmf_restarts = file_cfg.value("nmf_restarts", cfg.nmf_restarts);
            cfg.n_values = file_cfg.value("n_values", cfg.n_values);
            cfg.d_values = file_cfg.value("d_values", cfg.d_values);
            cfg.full = file_cfg.value("full", cfg.full);
            if (file_cfg.contains("nmf")) {
                cfg.nmf = nmf_options_from_json(file_cfg.at("nmf"), cfg.nmf);
            }
            cfg.seed = a.seed.value_or(cfg.seed);
            cfg.replicates = a.replicates.value_or(cfg.replicates);
            cfg.nmf_restarts = a.restarts.value_or(cfg.nmf_restarts);
            cfg.full = cfg.full || a.full;
            if (cfg.replicates < 1 || cfg.nmf_restarts < 1) {
                throw ConfigError("replicates and restarts must be at least 1");
            }
            for (std::size_t v : cfg.n_values) {
                if (v < 2) throw ConfigError("n_values must be at least 2");
            }
            for (std::size_t v : cfg.d_values) {
                if (v < 2) throw ConfigError("d_values must be at least 2");
            }
            const StudyReport r = sim::run_angle_study(cfg);
            write_study(r, a.output_dir);
            print_angles(r, cfg, out);
            return kOk;
        }
        if (a.scenario == "single") {
            const std::uint64_t seed = a.seed.value_or(file_cfg.value("seed", std::uint64_t{1}));
            const std::size_t restarts = a.restarts.value_or(file_cfg.value("nmf_restarts", std::size_t{100}));
            NmfOptions nmf = NmfOptions::alternating();
            if (file_cfg.contains("nmf")) {
                nmf = nmf_options_from_json(file_cfg.at("nmf"), nmf);
            }
            if (restarts < 1) {
                throw ConfigError("restarts must be at least 1");
            }
            const NonnegMatrix x = a.input.empty() ? NonnegMatrix(sim::toy_matrix()) : load_input(a.input, a.header);
            const sim::SingleRealization r = sim::run_single_realization(x, restarts, seed, nmf);

            fs::create_directories(a.output_dir);
            Json methods = Json::array();
            for (const auto& m : r.results) {
                const std::string file = "single_" + m.method + "_rank_" + std::to_string(m.rank) + ".csv";
                io::write_matrix_file(fs::path(a.output_dir) / file, m.approx);
                methods.push_back({{"method", m.method},
                                   {"rank", m.rank},
                                   {"file", file},
                                   {"out_of_cone", m.out_of_cone},
                                   {"sparse_columns", m.sparse_columns},
                                   {"residual", m.residual},
                                   {"approx", matrix_json(m.approx)}});
            }
            Json report = {{"schema_version", kReportSchemaVersion},
                           {"study", "single"},
                           {"config", {{"seed", seed}, {"nmf_restarts", restarts}, {"input", a.input}}},
                           {"data", matrix_json(r.data)},
                           {"frobenius_norm", frobenius_norm(r.data)},
                           {"results", methods},
                           {"angles_rank1_rank2", {{"SVD", r.svd_angle}, {"NNCA", r.nnca_angle}, {"NMF", r.nmf_angle}}}};
            write_text(fs::path(a.output_dir) / "report.json", report.dump(2) + "\n");

            out << "Data (Frobenius norm " << fixed(frobenius_norm(r.data)) << ")\n" << io::format_matrix_2dp(r.data, "  ");
            out << "Method  Rank  Approximation matrix\n";
            for (const auto& m : r.results) {
                out << pad(m.method, 8) << pad(std::to_string(m.rank), 6) << "out of cone " << m.out_of_cone
                    << ", sparse " << m.sparse_columns << ", residual " << fixed(m.residual) << "\n"
                    << io::format_matrix_2dp(m.approx, "              ");
            }
            out << "Rank-1 vs rank-2 angle (degrees): SVD " << fixed(r.svd_angle) << ", NNCA " << fixed(r.nnca_angle)
                << ", NMF " << fixed(r.nmf_angle) << "\n";
            return kOk;
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    throw ConfigError("unknown scenario '" + a.scenario + "' (expected a, angles or single)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nested nonnegative cone analysis and baseline decompositions"};
    app.require_subcommand(1);

    DecomposeArgs dec;
    auto* decompose_cmd = app.add_subcommand("decompose", "Approximate a nonnegative CSV matrix at one or more ranks");
    decompose_cmd->add_option("input", dec.input, "CSV matrix, rows = dimensions, columns = observations")->required();
    decompose_cmd->add_option("--method", dec.method, "nnca | svd | pca | nmf")->capture_default_str();
    decompose_cmd->add_option("--rank", dec.ranks, "Rank or range such as 1-2 (default: 1 .. rank-1)");
    decompose_cmd->add_option("--seed", dec.seed, "NMF seed")->capture_default_str();
    decompose_cmd->add_option("--restarts", dec.restarts, "NMF restarts; the best objective wins")->capture_default_str();
    decompose_cmd->add_option("--max-iter", dec.max_iter, "NMF iteration cap (0 = algorithm default)");
    decompose_cmd->add_option("--nmf-algorithm", dec.nmf_algorithm, "mu | als")->capture_default_str();
    decompose_cmd->add_option("--tol-kkt", dec.tol_kkt, "Cone projection KKT tolerance")->capture_default_str();
    decompose_cmd->add_option("--tol-nonneg", dec.tol_nonneg, "Nonnegativity tolerance")->capture_default_str();
    decompose_cmd->add_option("--output-dir", dec.output_dir, "Artifact directory")->capture_default_str();
    decompose_cmd->add_option("--format", dec.format, "json | csv")->capture_default_str();
    decompose_cmd->add_flag("--header", dec.header, "Skip the first line of the input");

    SimulateArgs simargs;
    std::uint64_t seed = 0;
    std::size_t replicates = 0;
    std::size_t restarts = 0;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run a simulation study");
    simulate_cmd->add_option("scenario", simargs.scenario, "a | angles | single")->required();
    simulate_cmd->add_option("--config", simargs.config, "JSON config file");
    auto* seed_opt = simulate_cmd->add_option("--seed", seed, "Master seed");
    auto* reps_opt = simulate_cmd->add_option("--replicates", replicates, "Replicates per cell");
    auto* restarts_opt = simulate_cmd->add_option("--restarts", restarts, "NMF restarts per fit");
    simulate_cmd->add_flag("--full", simargs.full, "Include d = 10000 in the angle study");
    simulate_cmd->add_option("--input", simargs.input, "CSV matrix for the single scenario (default: toy data)");
    simulate_cmd->add_flag("--header", simargs.header, "Skip the first line of --input");
    simulate_cmd->add_option("--output-dir", simargs.output_dir, "Artifact directory")->capture_default_str();

    std::vector<std::string> storage{"nnca"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) {
        argv.push_back(s.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kBadConfig;
    }
    if (seed_opt->count() > 0) simargs.seed = seed;
    if (reps_opt->count() > 0) simargs.replicates = replicates;
    if (restarts_opt->count() > 0) simargs.restarts = restarts;

    try {
        if (decompose_cmd->parsed()) {
            return decompose(dec, out);
        }
        return simulate(simargs, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kBadConfig;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kBadConfig;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kIterationCap;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInternalError;
    }
}

}  // namespace nnca::cli
