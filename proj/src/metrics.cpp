#include "nnca/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nnca/linalg.hpp"

namespace nnca {

AngleDegrees::AngleDegrees(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 90.0)) {
        throw ArgumentError("angle " + std::to_string(value) + " outside [0, 90] degrees");
    }
}

AngleDegrees principal_angle(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) {
        throw ArgumentError("principal_angle: ambient dimensions differ");
    }
    if (frobenius_norm(a) == 0.0 || frobenius_norm(b) == 0.0) {
        throw ArgumentError("principal_angle: zero matrix has no span");
    }
    OrthonormalBasis qa = column_space_basis(a);
    OrthonormalBasis qb = column_space_basis(b);
    if (qa.dim() > qb.dim()) {
        std::swap(qa, qb);
    }
    // Sines of the principal angles are the singular values of the part of Q_a
    // orthogonal to span(b); they resolve small angles, the cosines
    // (singular values of Q_aᵀQ_b) resolve angles near 90 degrees.
    const DenseMatrix cross = transpose_times(qb.q, qa.q);
    const DenseMatrix leftover = qa.q - qb.q * cross;
    const double sin_max = frobenius_norm(leftover) == 0.0 ? 0.0 : svd(leftover).s.front();
    double radians = 0.0;
    if (sin_max < 0.5) {
        radians = std::asin(sin_max);
    } else {
        double rho = 0.0;
        if (frobenius_norm(cross) > 0.0) {
            const SvdFactorization f = svd(cross);
            rho = f.rank() < qa.dim() ? 0.0 : f.s.back();
        }
        radians = std::acos(std::clamp(rho, -1.0, 1.0));
    }
    return AngleDegrees(std::min(radians * 180.0 / std::numbers::pi, 90.0));
}

std::size_t count_out_of_cone(const DenseMatrix& a) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (a(i, j) < -kOutOfConeThreshold) {
                ++count;
                break;
            }
        }
    }
    return count;
}

std::size_t count_sparse_columns(const DenseMatrix& a) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (std::abs(a(i, j)) <= kSparseThreshold) {
                ++count;
                break;
            }
        }
    }
    return count;
}

double residual_fro(const DenseMatrix& x, const DenseMatrix& a) { return frobenius_norm(x - a); }

}  // namespace nnca
