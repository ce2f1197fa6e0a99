#pragma once

#include <cstddef>

#include "nnca/matrix.hpp"

namespace nnca {

/// Angle in degrees, always within [0, 90].
class AngleDegrees {
public:
    explicit AngleDegrees(double value);
    double value() const noexcept { return value_; }

private:
    double value_;
};

/// Largest principal angle between span(a) and span(b), where a has the lower
/// (or equal) rank: acos of the smallest singular value of Q_aᵀQ_b. It is 0
/// exactly when span(a) is contained in span(b). Bases come from the leading
/// left singular vectors, so rank-deficient inputs are fine. The arguments are
/// swapped internally if a has the higher rank. Zero inputs throw ArgumentError.
AngleDegrees principal_angle(const DenseMatrix& a, const DenseMatrix& b);

inline constexpr double kOutOfConeThreshold = 1e-9;
inline constexpr double kSparseThreshold = 1e-6;

/// Columns with any entry below -1e-9.
std::size_t count_out_of_cone(const DenseMatrix& a);

/// Columns with any entry of magnitude at most 1e-6.
std::size_t count_sparse_columns(const DenseMatrix& a);

/// ‖x - a‖_F; shapes must agree.
double residual_fro(const DenseMatrix& x, const DenseMatrix& a);

}  // namespace nnca
