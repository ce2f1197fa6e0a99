#pragma once

#include <cstddef>
#include <vector>

#include "nnca/cone_qp.hpp"
#include "nnca/matrix.hpp"

namespace nnca {

struct NncaOptions {
    ConeQpOptions qp;
    /// Relative singular gap (in units of s1) at or below which a step is flagged degenerate.
    double degenerate_gap_tolerance = 1e-10;
};

/// One rank reduction B (rank k+1) -> A (rank <= k).
struct NncaStep {
    std::size_t rank_target = 0;
    NonnegMatrix approx;
    double residual_from_parent = 0.0;
    double residual_from_data = 0.0;
    std::size_t effective_rank = 0;
    bool degenerate_gap = false;
    /// Plain SVD truncation was already nonnegative; no cone projection was needed.
    bool svd_was_feasible = false;
    /// Every column projection converged (always true when svd_was_feasible).
    bool solver_converged = true;
    double max_kkt_residual = 0.0;
};

struct NncaSequence {
    NonnegMatrix source;
    std::size_t source_rank = 0;
    /// Ordered from rank source_rank - 1 down to rank 1.
    std::vector<NncaStep> steps;

    /// Step whose rank_target equals k. Throws ArgumentError if absent.
    const NncaStep& at_rank(std::size_t k) const;
};

/// Best rank-k nonnegative approximation of b with the SVD-then-cone-projection
/// scheme. Requires 1 <= k < rank(b). residual_from_data is left at 0; the
/// sequence driver fills it.
NncaStep reduce_rank(const NonnegMatrix& b, std::size_t k, const NncaOptions& options = {});

/// Backward sequence A_{r0-1}, ..., A_1 where each A_k is computed from A_{k+1}.
/// Requires rank(x) >= 2. If some A_{k+1} already has rank <= k it is carried
/// down unchanged, since it is then its own best approximation.
NncaSequence nnca_sequence(const NonnegMatrix& x, const NncaOptions& options = {});

}  // namespace nnca
