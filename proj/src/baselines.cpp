#include "nnca/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nnca/linalg.hpp"
#include "nnca/rng.hpp"

namespace nnca {

DenseMatrix svd_approx(const DenseMatrix& x, std::size_t k) { return truncate(svd(x), k); }

PcaApproximation pca_approx(const DenseMatrix& x, std::size_t k) {
    const std::size_t d = x.rows();
    const std::size_t n = x.cols();
    if (n < 2) {
        throw ArgumentError("pca_approx: need at least two observations");
    }
    if (k < 1 || k > std::min(d, n)) {
        throw ArgumentError("pca_approx: rank " + std::to_string(k) + " outside [1, " +
                            std::to_string(std::min(d, n)) + "]");
    }
    PcaApproximation out{std::vector<double>(d, 0.0), DenseMatrix(d, n), x, k, 0};
    for (std::size_t i = 0; i < d; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            s += x(i, j);
        }
        out.mean[i] = s / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) {
            out.column_mean_matrix(i, j) = out.mean[i];
        }
    }
    const DenseMatrix centered = x - out.column_mean_matrix;
    if (frobenius_norm(centered) == 0.0) {
        return out;
    }
    const SvdFactorization f = svd(centered);
    out.centered_rank = f.rank();
    out.approx = out.column_mean_matrix + truncate(f, std::min(k, f.rank()));
    return out;
}

NmfOptions NmfOptions::alternating() {
    NmfOptions o;
    o.algorithm = NmfAlgorithm::alternating_least_squares;
    o.max_iter = 100;
    o.function_tolerance = 1e-4;
    o.step_tolerance = 1e-4;
    return o;
}

DenseMatrix NmfFactorization::approx() const {
    DenseMatrix out(w.rows(), h.rows());
    for (std::size_t i = 0; i < w.rows(); ++i) {
        for (std::size_t j = 0; j < h.rows(); ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < w.cols(); ++l) {
                s += w(i, l) * h(j, l);
            }
            out(i, j) = s;
        }
    }
    return out;
}

namespace {

double residual_sq(const DenseMatrix& x, const DenseMatrix& w, const DenseMatrix& h) {
    const std::size_t k = w.cols();
    double total = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < k; ++l) {
                s += w(i, l) * h(j, l);
            }
            const double r = x(i, j) - s;
            total += r * r;
        }
    }
    return total;
}

// factor <- factor .* numer ./ (factor * gram + guard)
void multiplicative_step(DenseMatrix& factor, const DenseMatrix& numer, const DenseMatrix& gram, double guard) {
    const std::size_t k = factor.cols();
    std::vector<double> row(k);
    for (std::size_t i = 0; i < factor.rows(); ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            double denom = 0.0;
            for (std::size_t t = 0; t < k; ++t) {
                denom += factor(i, t) * gram(t, l);
            }
            row[l] = factor(i, l) * numer(i, l) / (denom + guard);
        }
        for (std::size_t l = 0; l < k; ++l) {
            factor(i, l) = row[l];
        }
    }
}

// Least-squares coefficients z minimizing ‖b_j - A z_j‖ for every column b_j of
// `b`, returned as rows (p x k). Columns of A that are numerically dependent on
// earlier ones get zero coefficients.
DenseMatrix least_squares_rows(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t m = a.rows();
    const std::size_t k = a.cols();
    double scale = 0.0;
    for (std::size_t l = 0; l < k; ++l) {
        double ss = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            ss += a(i, l) * a(i, l);
        }
        scale = std::max(scale, std::sqrt(ss));
    }
    std::vector<std::vector<double>> q;
    std::vector<std::size_t> kept;
    for (std::size_t l = 0; l < k; ++l) {
        std::vector<double> w = a.column(l);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& qi : q) {
                const double proj = dot(qi, w);
                for (std::size_t i = 0; i < m; ++i) {
                    w[i] -= proj * qi[i];
                }
            }
        }
        const double nrm = norm2(w);
        if (nrm > 1e-10 * scale) {
            for (double& x : w) {
                x /= nrm;
            }
            q.push_back(std::move(w));
            kept.push_back(l);
        }
    }
    DenseMatrix out(b.cols(), k);
    if (kept.empty()) {
        return out;
    }
    DenseMatrix qm(m, kept.size());
    for (std::size_t c = 0; c < kept.size(); ++c) {
        qm.set_column(c, q[c]);
    }
    DenseMatrix kept_cols(m, kept.size());
    for (std::size_t c = 0; c < kept.size(); ++c) {
        kept_cols.set_column(c, a.column(kept[c]));
    }
    const DenseMatrix r = transpose_times(qm, kept_cols);
    const DenseMatrix y = transpose_times(qm, b);  // r x p
    for (std::size_t j = 0; j < b.cols(); ++j) {
        const auto z = back_substitute(r, y.column(j));
        for (std::size_t c = 0; c < kept.size(); ++c) {
            out(j, kept[c]) = z[c];
        }
    }
    return out;
}

void clip_negative(DenseMatrix& m) {
    for (double& v : m.data()) {
        v = std::max(v, 0.0);
    }
}

// Largest entrywise change relative to the largest magnitude of the previous value.
double relative_change(const DenseMatrix& now, const DenseMatrix& before) {
    double diff = 0.0;
    double peak = 0.0;
    const auto a = now.data();
    const auto b = before.data();
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff = std::max(diff, std::abs(a[i] - b[i]));
        peak = std::max(peak, std::abs(b[i]));
    }
    return diff / (std::sqrt(std::numeric_limits<double>::epsilon()) + peak);
}

struct Iterate {
    std::size_t iterations = 0;
    bool converged = false;
};

Iterate run_multiplicative(const DenseMatrix& data, DenseMatrix& w, DenseMatrix& h, const NmfOptions& options,
                           std::vector<double>* trace) {
    double objective = residual_sq(data, w, h);
    Iterate it{0, objective == 0.0};
    while (!it.converged && it.iterations < options.max_iter) {
        multiplicative_step(h, transpose_times(data, w), transpose_times(w, w), options.denominator_guard);
        multiplicative_step(w, data * h, transpose_times(h, h), options.denominator_guard);
        ++it.iterations;
        const double next = residual_sq(data, w, h);
        if (trace != nullptr) {
            trace->push_back(next);
        }
        it.converged = next == 0.0 || std::abs(objective - next) < options.relative_tolerance * objective;
        objective = next;
    }
    return it;
}

Iterate run_alternating(const DenseMatrix& data, DenseMatrix& w, DenseMatrix& h, const NmfOptions& options,
                        std::vector<double>* trace) {
    const DenseMatrix data_t = data.transposed();
    const double cells = static_cast<double>(data.size());
    Iterate it;
    double prev_rms = 0.0;
    while (it.iterations < options.max_iter) {
        DenseMatrix h_next = least_squares_rows(w, data);
        clip_negative(h_next);
        DenseMatrix w_next = least_squares_rows(h_next, data_t);
        clip_negative(w_next);
        ++it.iterations;

        const double objective = residual_sq(data, w_next, h_next);
        if (trace != nullptr) {
            trace->push_back(objective);
        }
        const double rms = std::sqrt(objective / cells);
        const double delta = std::max(relative_change(w_next, w), relative_change(h_next, h));
        w = std::move(w_next);
        h = std::move(h_next);
        if (it.iterations > 1 && (delta <= options.step_tolerance ||
                                  prev_rms - rms <= options.function_tolerance * std::max(1.0, prev_rms))) {
            it.converged = true;
            break;
        }
        prev_rms = rms;
    }
    return it;
}

}  // namespace

NmfFactorization nmf(const NonnegMatrix& x, std::size_t k, std::uint64_t seed, const NmfOptions& options,
                     std::uint64_t stream, std::vector<double>* objective_trace) {
    const DenseMatrix& data = x.matrix();
    const std::size_t d = data.rows();
    const std::size_t n = data.cols();
    if (k < 1 || k > std::min(d, n)) {
        throw ArgumentError("nmf: rank " + std::to_string(k) + " outside [1, " + std::to_string(std::min(d, n)) +
                            "]");
    }

    CounterRng rng(seed, stream);
    DenseMatrix w(d, k);
    DenseMatrix h(n, k);
    for (double& v : w.data()) {
        v = rng.uniform();
    }
    for (double& v : h.data()) {
        v = rng.uniform();
    }
    for (std::size_t l = 0; l < k; ++l) {
        double nrm = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            nrm += w(i, l) * w(i, l);
        }
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < d; ++i) {
            w(i, l) /= nrm;
        }
    }

    const Iterate it = options.algorithm == NmfAlgorithm::multiplicative
                           ? run_multiplicative(data, w, h, options, objective_trace)
                           : run_alternating(data, w, h, options, objective_trace);

    // Unit-norm W columns; the scale moves into H so WHᵀ is unchanged.
    for (std::size_t l = 0; l < k; ++l) {
        double nrm = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            nrm += w(i, l) * w(i, l);
        }
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < d; ++i) {
            w(i, l) /= nrm;
        }
        for (std::size_t j = 0; j < n; ++j) {
            h(j, l) *= nrm;
        }
    }

    NmfFactorization out{std::move(w), std::move(h), 0.0, 1, 0, {it.iterations}, it.converged};
    out.objective = residual_sq(data, out.w, out.h);
    return out;
}

NmfFactorization nmf_best_of(const NonnegMatrix& x, std::size_t k, std::size_t restarts, std::uint64_t seed,
                             const NmfOptions& options) {
    if (restarts < 1) {
        throw ArgumentError("nmf_best_of: need at least one restart");
    }
    NmfFactorization best = nmf(x, k, seed, options, 0);
    std::vector<std::size_t> iterations = best.iterations;
    for (std::size_t r = 1; r < restarts; ++r) {
        NmfFactorization trial = nmf(x, k, seed, options, r);
        iterations.push_back(trial.iterations.front());
        if (trial.objective < best.objective) {
            best = std::move(trial);
            best.best_restart = r;
        }
    }
    best.restarts_used = restarts;
    best.iterations = std::move(iterations);
    return best;
}

}  // namespace nnca
