#pragma once

// Reference computations for the tests. None of these call the library's
// factorizations, so they can check them independently.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "nnca/matrix.hpp"
#include "nnca/rng.hpp"

namespace nnca::testing {

inline DenseMatrix random_uniform(std::size_t rows, std::size_t cols, CounterRng& rng) {
    DenseMatrix m(rows, cols);
    for (double& x : m.data()) {
        x = rng.uniform();
    }
    return m;
}

inline DenseMatrix random_normal(std::size_t rows, std::size_t cols, CounterRng& rng) {
    DenseMatrix m(rows, cols);
    for (double& x : m.data()) {
        x = rng.normal();
    }
    return m;
}

/// Eigenvalues of a symmetric matrix by the classical two-sided Jacobi method,
/// sorted in decreasing order.
inline std::vector<double> symmetric_eigenvalues(DenseMatrix a) {
    const std::size_t n = a.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += a(p, q) * a(p, q);
            }
        }
        if (off < 1e-30) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) {
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) {
        ev[i] = a(i, i);
    }
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

/// Classical Gram-Schmidt on the columns of m (assumed independent).
inline DenseMatrix orthonormalize(const DenseMatrix& m) {
    DenseMatrix q(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::vector<double> v = m.column(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                double d = 0.0;
                for (std::size_t r = 0; r < m.rows(); ++r) {
                    d += q(r, i) * v[r];
                }
                for (std::size_t r = 0; r < m.rows(); ++r) {
                    v[r] -= d * q(r, i);
                }
            }
        }
        double nrm = 0.0;
        for (double x : v) {
            nrm += x * x;
        }
        nrm = std::sqrt(nrm);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            q(r, j) = v[r] / nrm;
        }
    }
    return q;
}

/// Sum of squared distances from the columns of b to span(q), q orthonormal.
inline double squared_distance(const DenseMatrix& b, const DenseMatrix& q) {
    double total = 0.0;
    for (std::size_t j = 0; j < b.cols(); ++j) {
        double norm_sq = 0.0;
        for (std::size_t r = 0; r < b.rows(); ++r) {
            norm_sq += b(r, j) * b(r, j);
        }
        double proj_sq = 0.0;
        for (std::size_t c = 0; c < q.cols(); ++c) {
            double d = 0.0;
            for (std::size_t r = 0; r < b.rows(); ++r) {
                d += q(r, c) * b(r, j);
            }
            proj_sq += d * d;
        }
        total += norm_sq - proj_sq;
    }
    return total;
}

/// Projection of b onto span(u) ∩ R₊ᵈ by brute force over directions. u has
/// one or two orthonormal columns. Unit directions w(θ) = cos θ u₁ + sin θ u₂
/// are scanned with step `coarse`; the best feasible direction is then refined
/// with step `fine` over the neighbouring coarse interval. Along a feasible
/// unit direction the best point is max(0, bᵀw)·w.
inline std::vector<double> grid_cone_projection(const std::vector<double>& b, const DenseMatrix& u,
                                                double coarse = 1e-3, double fine = 1e-6) {
    const std::size_t d = u.rows();
    auto direction = [&](double theta) {
        std::vector<double> w(d);
        for (std::size_t i = 0; i < d; ++i) {
            w[i] = std::cos(theta) * u(i, 0) + (u.cols() > 1 ? std::sin(theta) * u(i, 1) : 0.0);
        }
        return w;
    };
    auto feasible = [](const std::vector<double>& w) {
        return std::all_of(w.begin(), w.end(), [](double x) { return x >= -1e-12; });
    };
    auto gain = [&](const std::vector<double>& w) {
        double t = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            t += b[i] * w[i];
        }
        return std::max(0.0, t);
    };

    double best_theta = 0.0;
    double best_gain = -1.0;
    auto consider = [&](double theta) {
        const auto w = direction(theta);
        if (feasible(w) && gain(w) > best_gain) {
            best_gain = gain(w);
            best_theta = theta;
        }
    };
    if (u.cols() == 1) {
        consider(0.0);
        consider(std::numbers::pi);
    } else {
        const auto steps = static_cast<std::size_t>(2.0 * std::numbers::pi / coarse);
        for (std::size_t s = 0; s < steps; ++s) {
            consider(static_cast<double>(s) * coarse);
        }
        const double centre = best_theta;
        const auto fine_steps = static_cast<std::size_t>(2.0 * coarse / fine);
        for (std::size_t s = 0; s <= fine_steps; ++s) {
            consider(centre - coarse + static_cast<double>(s) * fine);
        }
    }
    std::vector<double> out(d, 0.0);
    if (best_gain > 0.0) {
        const auto w = direction(best_theta);
        for (std::size_t i = 0; i < d; ++i) {
            out[i] = best_gain * w[i];
        }
    }
    return out;
}

inline double distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return std::sqrt(s);
}

}  // namespace nnca::testing
