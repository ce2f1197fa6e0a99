#include "nnca/simulation.hpp"

#include <cmath>
#include <exception>

#include "nnca/linalg.hpp"
#include "nnca/metrics.hpp"
#include "nnca/rng.hpp"

namespace nnca::sim {

namespace {

// Counter offset of the NMF seed draw; far past any data draw of a replicate.
constexpr std::uint64_t kNmfSeedCounter = 1ULL << 40;

MethodResult measure(const DenseMatrix& x, std::string method, std::size_t rank, DenseMatrix approx) {
    MethodResult r{std::move(method), rank, std::move(approx)};
    r.out_of_cone = count_out_of_cone(r.approx);
    r.sparse_columns = count_sparse_columns(r.approx);
    r.residual = residual_fro(x, r.approx);
    return r;
}

nlohmann::ordered_json nmf_options_json(const NmfOptions& o) {
    if (o.algorithm == NmfAlgorithm::multiplicative) {
        return {{"algorithm", "multiplicative"},
                {"max_iter", o.max_iter},
                {"relative_tolerance", o.relative_tolerance},
                {"denominator_guard", o.denominator_guard}};
    }
    return {{"algorithm", "als"},
            {"max_iter", o.max_iter},
            {"function_tolerance", o.function_tolerance},
            {"step_tolerance", o.step_tolerance}};
}

}  // namespace

DenseMatrix toy_matrix() {
    return DenseMatrix{{0.09, 0.90, 0.62, 0.00, 0.00, 0.00},
                       {0.85, 0.02, 0.47, 0.20, 0.75, 0.00},
                       {0.00, 0.00, 0.00, 0.45, 0.70, 0.80}};
}

NonnegMatrix gen_scenario_a(std::uint64_t seed, std::size_t replicate) {
    CounterRng rng(seed, replicate);
    DenseMatrix m(3, 6);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            bool zero = false;
            for (const auto& z : kScenarioAZeros) {
                zero = zero || (z[0] == i && z[1] == j);
            }
            if (!zero) {
                m(i, j) = rng.uniform();
            }
        }
    }
    return NonnegMatrix(std::move(m));
}

NonnegMatrix gen_unit_columns(std::size_t d, std::size_t n, std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng(seed, stream);
    DenseMatrix m(d, n);
    for (std::size_t j = 0; j < n; ++j) {
        double ss = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            m(i, j) = rng.uniform();
            ss += m(i, j) * m(i, j);
        }
        const double nrm = std::sqrt(ss);
        if (nrm > 0.0) {
            for (std::size_t i = 0; i < d; ++i) {
                m(i, j) /= nrm;
            }
        }
    }
    return NonnegMatrix(std::move(m));
}

std::uint64_t nmf_seed(std::uint64_t seed, std::uint64_t stream) {
    return CounterRng(seed, stream).at(kNmfSeedCounter);
}

const MethodResult& SingleRealization::get(const std::string& method, std::size_t rank) const {
    for (const auto& r : results) {
        if (r.method == method && r.rank == rank) {
            return r;
        }
    }
    throw ArgumentError("no " + method + " rank-" + std::to_string(rank) + " result");
}

SingleRealization run_single_realization(const NonnegMatrix& x, std::size_t nmf_restarts, std::uint64_t seed,
                                         const NmfOptions& nmf_options, const NncaOptions& nnca_options) {
    const DenseMatrix& data = x.matrix();
    const std::size_t rank = numerical_rank(data);
    if (rank != 3) {
        throw ArgumentError("run_single_realization: expected a rank-3 matrix, got rank " + std::to_string(rank));
    }

    NncaSequence seq = nnca_sequence(x, nnca_options);
    const NmfFactorization nmf1 = nmf_best_of(x, 1, nmf_restarts, seed, nmf_options);
    const NmfFactorization nmf2 = nmf_best_of(x, 2, nmf_restarts, seed, nmf_options);

    SingleRealization out{data, {}, 0.0, 0.0, 0.0, seq};
    for (std::size_t k : {1u, 2u}) {
        out.results.push_back(measure(data, "PCA", k, pca_approx(data, k).approx));
    }
    for (std::size_t k : {1u, 2u}) {
        out.results.push_back(measure(data, "SVD", k, svd_approx(data, k)));
    }
    for (std::size_t k : {1u, 2u}) {
        out.results.push_back(measure(data, "NNCA", k, seq.at_rank(k).approx.matrix()));
    }
    out.results.push_back(measure(data, "NMF", 1, nmf1.approx()));
    out.results.push_back(measure(data, "NMF", 2, nmf2.approx()));

    out.svd_angle = principal_angle(out.get("SVD", 1).approx, out.get("SVD", 2).approx).value();
    out.nnca_angle = principal_angle(out.get("NNCA", 1).approx, out.get("NNCA", 2).approx).value();
    out.nmf_angle = principal_angle(out.get("NMF", 1).approx, out.get("NMF", 2).approx).value();
    return out;
}

StudyReport run_scenario_a_study(const ScenarioAConfig& cfg) {
    if (cfg.replicates < 1) {
        throw ArgumentError("scenario A study needs at least one replicate");
    }
    const std::string cell = "scenario-a";
    StudyReport report;
    report.study = "scenario-a";
    report.config = {{"seed", cfg.seed},
                     {"replicates", cfg.replicates},
                     {"nmf_restarts", cfg.nmf_restarts},
                     {"nmf", nmf_options_json(cfg.nmf)}};

    for (std::size_t rep = 0; rep < cfg.replicates; ++rep) {
        const NonnegMatrix x = gen_scenario_a(cfg.seed, rep);
        if (numerical_rank(x.matrix()) != 3) {
            report.excluded.push_back({cell, rep, "numerical rank below 3"});
            continue;
        }
        std::vector<Measurement> rows;
        try {
            const SingleRealization r = run_single_realization(x, cfg.nmf_restarts, nmf_seed(cfg.seed, rep), cfg.nmf);
            for (const auto& m : r.results) {
                rows.push_back({cell, rep, m.method, m.rank, "out_of_cone", static_cast<double>(m.out_of_cone)});
                rows.push_back({cell, rep, m.method, m.rank, "sparse_columns", static_cast<double>(m.sparse_columns)});
                rows.push_back({cell, rep, m.method, m.rank, "residual", m.residual});
            }
            rows.push_back({cell, rep, "SVD", 2, "angle_deg", r.svd_angle});
            rows.push_back({cell, rep, "NNCA", 2, "angle_deg", r.nnca_angle});
            rows.push_back({cell, rep, "NMF", 2, "angle_deg", r.nmf_angle});
        } catch (const std::exception& e) {
            report.excluded.push_back({cell, rep, e.what()});
            continue;
        }
        report.records.insert(report.records.end(), rows.begin(), rows.end());
    }
    report.summary = summarize(report.records);
    return report;
}

std::string angle_cell_name(std::size_t n, std::size_t d) {
    return "n=" + std::to_string(n) + ",d=" + std::to_string(d);
}

std::optional<double> nmf_rank_angle(const NonnegMatrix& x, std::size_t restarts, std::uint64_t seed,
                                     const NmfOptions& options) {
    if (numerical_rank(x.matrix()) < 2) {
        return std::nullopt;
    }
    const NmfFactorization one = nmf_best_of(x, 1, restarts, seed, options);
    const NmfFactorization two = nmf_best_of(x, 2, restarts, seed, options);
    return principal_angle(one.approx(), two.approx()).value();
}

StudyReport run_angle_study(const ScenarioCConfig& cfg) {
    if (cfg.replicates < 1) {
        throw ArgumentError("angle study needs at least one replicate");
    }
    for (std::size_t v : cfg.n_values) {
        if (v < 2) {
            throw ArgumentError("angle study sizes must be at least 2");
        }
    }
    for (std::size_t v : cfg.d_values) {
        if (v < 2) {
            throw ArgumentError("angle study sizes must be at least 2");
        }
    }

    StudyReport report;
    report.study = "angles";
    report.config = {{"seed", cfg.seed},
                     {"n_values", cfg.n_values},
                     {"d_values", cfg.d_values},
                     {"replicates", cfg.replicates},
                     {"nmf_restarts", cfg.nmf_restarts},
                     {"full", cfg.full},
                     {"nmf", nmf_options_json(cfg.nmf)}};

    for (std::size_t n : cfg.n_values) {
        for (std::size_t d : cfg.d_values) {
            if (!cfg.full && d > kCappedDimension) {
                continue;
            }
            const std::string cell = angle_cell_name(n, d);
            const std::uint64_t cell_id = static_cast<std::uint64_t>(n) * 100000u + d;
            for (std::size_t rep = 0; rep < cfg.replicates; ++rep) {
                const std::uint64_t stream = (cell_id << 32) | rep;
                const NonnegMatrix x = gen_unit_columns(d, n, cfg.seed, stream);
                try {
                    const auto angle = nmf_rank_angle(x, cfg.nmf_restarts, nmf_seed(cfg.seed, stream), cfg.nmf);
                    if (!angle) {
                        report.excluded.push_back({cell, rep, "numerical rank below 2; rank-2 fit skipped"});
                        continue;
                    }
                    report.records.push_back({cell, rep, "NMF", 2, "angle_deg", *angle});
                } catch (const std::exception& e) {
                    report.excluded.push_back({cell, rep, e.what()});
                }
            }
        }
    }
    report.summary = summarize(report.records);
    return report;
}

}  // namespace nnca::sim
