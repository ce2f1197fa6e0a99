#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nnca/matrix.hpp"

namespace nnca {

struct ConeQpOptions {
    double feasibility_tolerance = kNonnegTolerance;
    double kkt_tolerance = 1e-8;
    double orthonormality_tolerance = 1e-8;
    /// Active-set changes allowed per constraint row.
    std::size_t changes_per_row = 10;
};

enum class QpStatus { converged, iteration_capped };

/// Solution of min ‖b - Uv‖² subject to Uv >= 0.
struct ConeProjectionResult {
    std::vector<double> v;
    std::vector<double> fitted;              // Uv, with active rows set to exactly 0
    std::vector<std::size_t> active_set;     // rows held at zero, ascending
    std::vector<double> multipliers;         // one per active_set entry, >= 0 at optimum
    double kkt_residual = 0.0;
    std::size_t iterations = 0;              // active-set changes
    QpStatus status = QpStatus::converged;
};

/// Projects b onto the cone span(u) ∩ R₊ᵈ with a primal active-set method on
/// the d row constraints.
///
/// Without `initial_active_set` the solver first tries the unconstrained
/// optimum uᵀb; if that leaves the orthant it starts from v = 0 with the most
/// violated row (lowest index on ties) as the working set. A caller-supplied
/// working set also starts from v = 0, where every row constraint is active;
/// rows that are linearly dependent on earlier entries are skipped.
///
/// Throws ArgumentError when u is not orthonormal or shapes disagree.
ConeProjectionResult project_column(std::span<const double> b, const DenseMatrix& u,
                                    const ConeQpOptions& options = {},
                                    std::optional<std::span<const std::size_t>> initial_active_set = std::nullopt);

struct MatrixProjection {
    DenseMatrix fitted;
    std::vector<ConeProjectionResult> columns;

    bool converged() const;
    double max_kkt_residual() const;
};

/// Column-wise project_column; column j of `fitted` is the projection of b_j.
MatrixProjection project_matrix(const NonnegMatrix& b, const DenseMatrix& u, const ConeQpOptions& options = {});

}  // namespace nnca
