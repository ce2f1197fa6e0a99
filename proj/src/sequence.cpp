#include "nnca/sequence.hpp"

#include <algorithm>

#include "nnca/linalg.hpp"

namespace nnca {

namespace {

DenseMatrix leading_columns(const DenseMatrix& m, std::size_t k) {
    DenseMatrix out(m.rows(), k);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            out(i, j) = m(i, j);
        }
    }
    return out;
}

}  // namespace

const NncaStep& NncaSequence::at_rank(std::size_t k) const {
    for (const auto& step : steps) {
        if (step.rank_target == k) {
            return step;
        }
    }
    throw ArgumentError("NNCA sequence has no rank-" + std::to_string(k) + " step");
}

NncaStep reduce_rank(const NonnegMatrix& b, std::size_t k, const NncaOptions& options) {
    const SvdFactorization f = svd(b.matrix());
    if (k < 1 || k >= f.rank()) {
        throw ArgumentError("reduce_rank: target rank " + std::to_string(k) + " must lie in [1, " +
                            std::to_string(f.rank()) + ")");
    }

    const bool degenerate = f.s[k - 1] - f.s[k] <= options.degenerate_gap_tolerance * f.s[0];
    DenseMatrix truncated = truncate(f, k);

    auto finish = [&](DenseMatrix approx, bool feasible, bool converged, double kkt) {
        const double from_parent = frobenius_norm(b.matrix() - approx);
        const std::size_t eff = numerical_rank(approx);
        return NncaStep{k,
                        NonnegMatrix(std::move(approx), options.qp.feasibility_tolerance),
                        from_parent,
                        0.0,
                        eff,
                        degenerate,
                        feasible,
                        converged,
                        kkt};
    };

    if (truncated.min_entry() >= -options.qp.feasibility_tolerance) {
        return finish(std::move(truncated), true, true, 0.0);
    }
    const MatrixProjection proj = project_matrix(b, leading_columns(f.u, k), options.qp);
    return finish(proj.fitted, false, proj.converged(), proj.max_kkt_residual());
}

NncaSequence nnca_sequence(const NonnegMatrix& x, const NncaOptions& options) {
    const std::size_t r0 = numerical_rank(x.matrix());
    if (r0 < 2) {
        throw ArgumentError("nnca_sequence: input rank " + std::to_string(r0) + " is below 2");
    }
    NncaSequence seq{x, r0, {}};
    seq.steps.reserve(r0 - 1);

    const NonnegMatrix* parent = &x;
    std::size_t parent_rank = r0;
    for (std::size_t k = r0 - 1; k >= 1; --k) {
        NncaStep step = [&] {
            if (parent_rank <= k) {
                return NncaStep{k,          *parent, 0.0, 0.0, parent_rank, false, true, true,
                                0.0};
            }
            return reduce_rank(*parent, k, options);
        }();
        step.residual_from_data = frobenius_norm(x.matrix() - step.approx.matrix());
        parent_rank = step.effective_rank;
        seq.steps.push_back(std::move(step));
        parent = &seq.steps.back().approx;
    }
    return seq;
}

}  // namespace nnca
