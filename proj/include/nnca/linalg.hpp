#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "nnca/matrix.hpp"

namespace nnca {

/// Thrown when the Jacobi SVD kernel hits its sweep cap.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::size_t iterations)
        : std::runtime_error(what + " (after " + std::to_string(iterations) + " iterations)"),
          iterations_(iterations) {}

    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::size_t iterations_;
};

namespace svd_config {
inline constexpr std::size_t kMaxSweeps = 60;
inline constexpr double kOffDiagonalTolerance = 1e-12;
/// Singular values at or below kRankTolerance * s1 count as zero.
inline constexpr double kRankTolerance = 1e-10;
}  // namespace svd_config

/// Thin SVD m = u * diag(s) * vᵀ restricted to the numerically nonzero
/// singular values. Each column of u is signed so that its largest-magnitude
/// entry is positive (first index wins ties); v follows.
struct SvdFactorization {
    DenseMatrix u;          // d x r
    std::vector<double> s;  // r, nonincreasing, > 0
    DenseMatrix v;          // n x r
    std::size_t sweeps = 0;

    std::size_t rank() const noexcept { return s.size(); }
};

/// One-sided Jacobi SVD. Throws ArgumentError for the zero matrix (it has no
/// nonzero singular triplet) and ConvergenceError if the sweep cap is hit.
SvdFactorization svd(const DenseMatrix& m);

/// Sum of the first k singular triplets. Requires 1 <= k <= f.rank().
DenseMatrix truncate(const SvdFactorization& f, std::size_t k);

/// Numerical rank using the relative singular-value threshold; 0 for the zero matrix.
std::size_t numerical_rank(const DenseMatrix& m);

struct QrFactorization {
    DenseMatrix q;  // d x k, orthonormal columns
    DenseMatrix r;  // k x k, upper triangular
};

/// Thin QR by modified Gram-Schmidt with one reorthogonalization pass.
/// Throws ArgumentError naming the first column that is numerically dependent
/// on its predecessors.
QrFactorization qr(const DenseMatrix& m);

struct OrthonormalBasis {
    DenseMatrix q;

    std::size_t dim() const noexcept { return q.cols(); }
};

/// Orthonormal basis of the column span of a full-column-rank matrix.
OrthonormalBasis qr_basis(const DenseMatrix& m);

/// Orthonormal basis of the column span of any nonzero matrix (leading left
/// singular vectors), so rank-deficient inputs are accepted.
OrthonormalBasis column_space_basis(const DenseMatrix& m);

double frobenius_norm(const DenseMatrix& m);

/// Largest Euclidean distance from a column of m to span(basis).
double max_column_distance(const DenseMatrix& m, const OrthonormalBasis& basis);

/// Sum of squared column distances from m to span(basis).
double squared_distance_to_span(const DenseMatrix& m, const OrthonormalBasis& basis);

/// ‖qᵀq - I‖_F.
double orthonormality_defect(const DenseMatrix& q);

/// Solves r x = y for upper-triangular r.
std::vector<double> back_substitute(const DenseMatrix& r, std::span<const double> y);

}  // namespace nnca
