#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nnca/baselines.hpp"
#include "nnca/matrix.hpp"
#include "nnca/report.hpp"
#include "nnca/sequence.hpp"

namespace nnca::sim {

/// The 3x6 toy data set with entries printed to two decimals.
DenseMatrix toy_matrix();

/// Zero positions (0-based row, col) of scenario A: (3,1) (3,2) (3,3) (1,4)
/// (1,5) (1,6) (2,6) in 1-based indexing.
inline constexpr std::size_t kScenarioAZeros[7][2] = {{2, 0}, {2, 1}, {2, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 5}};

/// 3x6 matrix with the seven scenario-A zeros and the other eleven entries
/// uniform(0, 1), filled row-major from stream `replicate` of `seed`.
NonnegMatrix gen_scenario_a(std::uint64_t seed, std::size_t replicate);

/// d x n matrix of uniform(0, 1) columns each scaled to unit L2 norm.
NonnegMatrix gen_unit_columns(std::size_t d, std::size_t n, std::uint64_t seed, std::uint64_t stream);

/// Seed for the NMF restarts of one replicate, independent of the data draws.
std::uint64_t nmf_seed(std::uint64_t seed, std::uint64_t stream);

struct MethodResult {
    std::string method;  // "PCA", "SVD", "NNCA" or "NMF"
    std::size_t rank = 0;
    DenseMatrix approx;
    std::size_t out_of_cone = 0;
    std::size_t sparse_columns = 0;
    double residual = 0.0;
};

struct SingleRealization {
    DenseMatrix data;
    std::vector<MethodResult> results;  // PCA, SVD, NNCA, NMF; ranks 1 then 2
    /// Rank-1 vs rank-2 principal angle in degrees per subspace method.
    double svd_angle = 0.0;
    double nnca_angle = 0.0;
    double nmf_angle = 0.0;
    NncaSequence nnca;

    const MethodResult& get(const std::string& method, std::size_t rank) const;
};

/// Rank-1 and rank-2 approximations of a rank-3 3xn matrix by every method.
SingleRealization run_single_realization(const NonnegMatrix& x, std::size_t nmf_restarts, std::uint64_t seed,
                                         const NmfOptions& nmf_options = NmfOptions::alternating(),
                                         const NncaOptions& nnca_options = {});

struct ScenarioAConfig {
    std::uint64_t seed = 1;
    std::size_t replicates = 100;
    std::size_t nmf_restarts = 100;
    NmfOptions nmf = NmfOptions::alternating();
};

/// Repeated scenario-A study: out-of-cone counts, sparse-column counts,
/// residuals and rank-1 vs rank-2 angles for every method.
StudyReport run_scenario_a_study(const ScenarioAConfig& cfg);

struct ScenarioCConfig {
    std::uint64_t seed = 1;
    std::vector<std::size_t> n_values{10, 100};
    std::vector<std::size_t> d_values{10, 100, 1000, 10000};
    std::size_t replicates = 100;
    std::size_t nmf_restarts = 1;
    /// Without `full`, cells with d above 1000 are skipped.
    bool full = false;
    NmfOptions nmf = NmfOptions::alternating();
};

inline constexpr std::size_t kCappedDimension = 1000;

std::string angle_cell_name(std::size_t n, std::size_t d);

/// NMF rank-1 vs rank-2 angle for one data matrix, or nullopt if the matrix
/// has numerical rank below 2 (the rank-2 fit is then skipped).
std::optional<double> nmf_rank_angle(const NonnegMatrix& x, std::size_t restarts, std::uint64_t seed,
                                     const NmfOptions& options = NmfOptions::alternating());

/// NMF rank-1 vs rank-2 angle over the (n, d) grid of unit-norm uniform data.
StudyReport run_angle_study(const ScenarioCConfig& cfg);

}  // namespace nnca::sim
