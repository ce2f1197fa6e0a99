#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "nnca/matrix.hpp"

namespace nnca {

/// Eckart-Young rank-k truncation of x. Requires 1 <= k <= rank(x).
DenseMatrix svd_approx(const DenseMatrix& x, std::size_t k);

struct PcaApproximation {
    std::vector<double> mean;
    DenseMatrix column_mean_matrix;
    DenseMatrix approx;
    std::size_t rank_target = 0;
    /// Rank of x minus its column mean; components beyond it are zero.
    std::size_t centered_rank = 0;
};

/// Column mean plus the rank-k truncation of the centered data. Ranks past
/// rank(x - M_c) add nothing, so any 1 <= k <= min(d, n) is accepted.
PcaApproximation pca_approx(const DenseMatrix& x, std::size_t k);

enum class NmfAlgorithm {
    /// Lee-Seung multiplicative updates; the objective never increases.
    multiplicative,
    /// Alternating least squares with negative entries clipped to zero.
    alternating_least_squares,
};

struct NmfOptions {
    NmfAlgorithm algorithm = NmfAlgorithm::multiplicative;
    std::size_t max_iter = 5000;
    /// Multiplicative: stop when the objective changes by less than this fraction.
    double relative_tolerance = 1e-9;
    double denominator_guard = 1e-12;
    /// Alternating: stop when the RMS residual improves by at most
    /// function_tolerance * max(1, previous RMS) ...
    double function_tolerance = 1e-4;
    /// ... or when no factor entry moves by more than step_tolerance relative
    /// to the largest entry of the previous factor.
    double step_tolerance = 1e-4;

    /// Alternating least squares, at most 100 sweeps, both tolerances 1e-4.
    static NmfOptions alternating();
};

struct NmfFactorization {
    DenseMatrix w;  // d x k, unit-norm nonnegative columns
    DenseMatrix h;  // n x k
    double objective = 0.0;
    std::size_t restarts_used = 1;
    std::size_t best_restart = 0;
    std::vector<std::size_t> iterations;  // one entry per restart
    bool converged = false;               // of the winning restart

    DenseMatrix approx() const;
};

/// Local minimizer of ‖x - w hᵀ‖_F² over w, h >= 0 from a uniform(0,1) start
/// drawn from stream `stream` of `seed`, using the update rule selected in
/// `options`. When `objective_trace` is set, the objective after every update
/// sweep is appended to it.
NmfFactorization nmf(const NonnegMatrix& x, std::size_t k, std::uint64_t seed, const NmfOptions& options = {},
                     std::uint64_t stream = 0, std::vector<double>* objective_trace = nullptr);

/// Runs `restarts` independent starts (streams 0..restarts-1) and keeps the
/// lowest objective, ties to the lowest restart index.
NmfFactorization nmf_best_of(const NonnegMatrix& x, std::size_t k, std::size_t restarts, std::uint64_t seed,
                             const NmfOptions& options = {});

}  // namespace nnca
