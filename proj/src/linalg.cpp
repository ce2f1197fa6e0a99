#include "nnca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nnca {

namespace {

using Columns = std::vector<std::vector<double>>;

Columns to_columns(const DenseMatrix& m) {
    Columns cols(m.cols(), std::vector<double>(m.rows()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            cols[c][r] = m(r, c);
        }
    }
    return cols;
}

void rotate(std::vector<double>& x, std::vector<double>& y, double c, double s) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

struct TallSvd {
    Columns u;
    std::vector<double> s;
    Columns v;
    std::size_t sweeps;
};

// Hestenes one-sided Jacobi on a matrix with rows >= cols. Orthogonalizes the
// columns of a working copy; the accumulated rotations form v.
TallSvd jacobi_tall(const DenseMatrix& a, double frob) {
    const std::size_t n = a.cols();
    Columns w = to_columns(a);
    Columns v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        v[i][i] = 1.0;
    }
    // Columns with squared norm below this are numerical zero.
    const double negligible = std::pow(1e-15 * frob, 2);

    std::size_t sweep = 0;
    bool rotated = true;
    while (rotated) {
        if (sweep == svd_config::kMaxSweeps) {
            throw ConvergenceError("svd: one-sided Jacobi did not converge", sweep);
        }
        ++sweep;
        rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = dot(w[p], w[p]);
                const double beta = dot(w[q], w[q]);
                if (std::min(alpha, beta) <= negligible) {
                    continue;
                }
                const double gamma = dot(w[p], w[q]);
                if (std::abs(gamma) <= svd_config::kOffDiagonalTolerance * std::sqrt(alpha * beta)) {
                    continue;
                }
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                rotate(w[p], w[q], c, s);
                rotate(v[p], v[q], c, s);
            }
        }
    }

    TallSvd out{Columns(n), std::vector<double>(n), std::move(v), sweep};
    for (std::size_t i = 0; i < n; ++i) {
        out.s[i] = norm2(w[i]);
        out.u[i] = std::move(w[i]);
        if (out.s[i] > 0.0) {
            for (double& x : out.u[i]) {
                x /= out.s[i];
            }
        }
    }
    return out;
}

}  // namespace

SvdFactorization svd(const DenseMatrix& m) {
    const double frob = frobenius_norm(m);
    if (frob == 0.0) {
        throw ArgumentError("svd: zero matrix has no nonzero singular values");
    }
    const bool wide = m.rows() < m.cols();
    TallSvd t = jacobi_tall(wide ? m.transposed() : m, frob);
    // For a wide input the roles of the left and right factors swap.
    Columns& left = wide ? t.v : t.u;
    Columns& right = wide ? t.u : t.v;

    std::vector<std::size_t> order(t.s.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t.s[a] > t.s[b]; });

    const double cutoff = svd_config::kRankTolerance * t.s[order.front()];
    std::size_t rank = 0;
    while (rank < order.size() && t.s[order[rank]] > cutoff) {
        ++rank;
    }

    SvdFactorization f{DenseMatrix(m.rows(), rank), std::vector<double>(rank), DenseMatrix(m.cols(), rank),
                       t.sweeps};
    for (std::size_t k = 0; k < rank; ++k) {
        const std::size_t src = order[k];
        f.s[k] = t.s[src];
        auto& lu = left[src];
        auto& rv = right[src];
        std::size_t argmax = 0;
        for (std::size_t i = 1; i < lu.size(); ++i) {
            if (std::abs(lu[i]) > std::abs(lu[argmax])) {
                argmax = i;
            }
        }
        const double sign = lu[argmax] < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < lu.size(); ++i) {
            f.u(i, k) = sign * lu[i];
        }
        for (std::size_t i = 0; i < rv.size(); ++i) {
            f.v(i, k) = sign * rv[i];
        }
    }
    return f;
}

DenseMatrix truncate(const SvdFactorization& f, std::size_t k) {
    if (k < 1 || k > f.rank()) {
        throw ArgumentError("truncate: rank " + std::to_string(k) + " outside [1, " + std::to_string(f.rank()) +
                            "]");
    }
    DenseMatrix out(f.u.rows(), f.v.rows());
    for (std::size_t i = 0; i < out.rows(); ++i) {
        for (std::size_t j = 0; j < out.cols(); ++j) {
            double acc = 0.0;
            for (std::size_t l = 0; l < k; ++l) {
                acc += f.u(i, l) * f.s[l] * f.v(j, l);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

std::size_t numerical_rank(const DenseMatrix& m) {
    if (frobenius_norm(m) == 0.0) {
        return 0;
    }
    return svd(m).rank();
}

QrFactorization qr(const DenseMatrix& m) {
    const std::size_t d = m.rows();
    const std::size_t k = m.cols();
    if (k > d) {
        throw ArgumentError("qr: more columns than rows; column " + std::to_string(d + 1) + " is dependent");
    }
    Columns a = to_columns(m);
    double scale = 0.0;
    for (const auto& col : a) {
        scale = std::max(scale, norm2(col));
    }
    const double cutoff = svd_config::kRankTolerance * scale;

    Columns q;
    DenseMatrix r(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<double> w = a[j];
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < q.size(); ++i) {
                const double proj = dot(q[i], w);
                r(i, j) += proj;
                for (std::size_t t = 0; t < d; ++t) {
                    w[t] -= proj * q[i][t];
                }
            }
        }
        const double nrm = norm2(w);
        if (!(nrm > cutoff)) {
            throw ArgumentError("qr: column " + std::to_string(j + 1) + " is linearly dependent on earlier columns");
        }
        r(j, j) = nrm;
        for (double& x : w) {
            x /= nrm;
        }
        q.push_back(std::move(w));
    }

    DenseMatrix qm(d, k);
    for (std::size_t j = 0; j < k; ++j) {
        qm.set_column(j, q[j]);
    }
    return {std::move(qm), std::move(r)};
}

OrthonormalBasis qr_basis(const DenseMatrix& m) { return {qr(m).q}; }

OrthonormalBasis column_space_basis(const DenseMatrix& m) {
    if (frobenius_norm(m) == 0.0) {
        throw ArgumentError("column_space_basis: zero matrix spans no subspace");
    }
    return {svd(m).u};
}

double frobenius_norm(const DenseMatrix& m) {
    const auto d = m.data();
    return std::sqrt(std::inner_product(d.begin(), d.end(), d.begin(), 0.0));
}

namespace {

std::vector<double> residual_after_projection(std::span<const double> x, const DenseMatrix& q) {
    std::vector<double> res(x.begin(), x.end());
    const auto coeffs = transpose_multiply(q, x);
    for (std::size_t i = 0; i < q.rows(); ++i) {
        for (std::size_t j = 0; j < q.cols(); ++j) {
            res[i] -= q(i, j) * coeffs[j];
        }
    }
    return res;
}

}  // namespace

double max_column_distance(const DenseMatrix& m, const OrthonormalBasis& basis) {
    double worst = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        worst = std::max(worst, norm2(residual_after_projection(m.column(c), basis.q)));
    }
    return worst;
}

double squared_distance_to_span(const DenseMatrix& m, const OrthonormalBasis& basis) {
    double total = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        const auto res = residual_after_projection(m.column(c), basis.q);
        total += dot(res, res);
    }
    return total;
}

double orthonormality_defect(const DenseMatrix& q) {
    return frobenius_norm(transpose_times(q, q) - DenseMatrix::identity(q.cols()));
}

std::vector<double> back_substitute(const DenseMatrix& r, std::span<const double> y) {
    const std::size_t n = r.cols();
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = y[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            acc -= r(i, j) * x[j];
        }
        x[i] = acc / r(i, i);
    }
    return x;
}

}  // namespace nnca
