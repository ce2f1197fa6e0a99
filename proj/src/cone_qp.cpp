#include "nnca/cone_qp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nnca/linalg.hpp"

namespace nnca {

namespace {

// Row i of u is the normal of constraint (Uv)_i >= 0.
double row_dot(const DenseMatrix& u, std::size_t row, std::span<const double> x) {
    double s = 0.0;
    for (std::size_t j = 0; j < u.cols(); ++j) {
        s += u(row, j) * x[j];
    }
    return s;
}

DenseMatrix working_normals(const DenseMatrix& u, const std::vector<std::size_t>& working) {
    // k x m: columns are the constraint normals in the working set.
    DenseMatrix n(u.cols(), working.size());
    for (std::size_t c = 0; c < working.size(); ++c) {
        for (std::size_t j = 0; j < u.cols(); ++j) {
            n(j, c) = u(working[c], j);
        }
    }
    return n;
}

struct EqualitySolve {
    std::vector<double> target;       // argmin ‖y - c‖ on the null space of the working normals
    std::vector<double> multipliers;  // for the working set at the target
};

EqualitySolve solve_on_working_set(const DenseMatrix& u, const std::vector<std::size_t>& working,
                                   std::span<const double> c) {
    if (working.empty()) {
        return {std::vector<double>(c.begin(), c.end()), {}};
    }
    const QrFactorization f = qr(working_normals(u, working));
    const auto coeff = transpose_multiply(f.q, c);
    std::vector<double> target(c.begin(), c.end());
    for (std::size_t i = 0; i < target.size(); ++i) {
        for (std::size_t j = 0; j < coeff.size(); ++j) {
            target[i] -= f.q(i, j) * coeff[j];
        }
    }
    // Stationarity: target - c = N mu with N = QR, so R mu = Qᵀ(target - c) = -coeff.
    std::vector<double> rhs(coeff.size());
    for (std::size_t j = 0; j < coeff.size(); ++j) {
        rhs[j] = -coeff[j];
    }
    return {std::move(target), back_substitute(f.r, rhs)};
}

// Greedily keeps the rows whose normals are independent of those kept so far.
std::vector<std::size_t> independent_rows(const DenseMatrix& u, std::span<const std::size_t> rows) {
    std::vector<std::size_t> kept;
    for (std::size_t r : rows) {
        if (r >= u.rows()) {
            throw ArgumentError("initial active set row " + std::to_string(r) + " out of range");
        }
        if (std::find(kept.begin(), kept.end(), r) != kept.end() || kept.size() == u.cols()) {
            continue;
        }
        auto trial = kept;
        trial.push_back(r);
        try {
            (void)qr(working_normals(u, trial));
            kept = std::move(trial);
        } catch (const ArgumentError&) {
        }
    }
    return kept;
}

double kkt_residual(const DenseMatrix& u, std::span<const double> x, std::span<const double> c,
                    const std::vector<std::size_t>& working, const std::vector<double>& mu,
                    std::span<const double> fitted) {
    std::vector<double> stationarity(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        stationarity[j] = x[j] - c[j];
    }
    double worst = 0.0;
    for (std::size_t a = 0; a < working.size(); ++a) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            stationarity[j] -= mu[a] * u(working[a], j);
        }
        worst = std::max(worst, -mu[a]);
        worst = std::max(worst, std::abs(mu[a] * row_dot(u, working[a], x)));
    }
    worst = std::max(worst, norm2(stationarity));
    for (double f : fitted) {
        worst = std::max(worst, -f);
    }
    return worst;
}

}  // namespace

ConeProjectionResult project_column(std::span<const double> b, const DenseMatrix& u, const ConeQpOptions& options,
                                    std::optional<std::span<const std::size_t>> initial_active_set) {
    const std::size_t d = u.rows();
    const std::size_t k = u.cols();
    if (b.size() != d) {
        throw ArgumentError("project_column: b has length " + std::to_string(b.size()) + ", expected " +
                            std::to_string(d));
    }
    if (k > d) {
        throw ArgumentError("project_column: basis has more columns than rows");
    }
    if (orthonormality_defect(u) > options.orthonormality_tolerance) {
        throw ArgumentError("project_column: basis columns are not orthonormal");
    }

    const std::vector<double> c = transpose_multiply(u, b);
    const double scale = std::max(norm2(c), 1e-300);
    const double step_tolerance = 1e-13 * scale;
    const double drop_tolerance = 1e-12 * scale;

    ConeProjectionResult result;
    std::vector<double> x(k, 0.0);
    std::vector<std::size_t> working;

    if (initial_active_set) {
        working = independent_rows(u, *initial_active_set);
    } else {
        const auto unconstrained_fit = multiply(u, c);
        std::size_t worst = d;
        for (std::size_t i = 0; i < d; ++i) {
            if (unconstrained_fit[i] < -options.feasibility_tolerance &&
                (worst == d || unconstrained_fit[i] < unconstrained_fit[worst])) {
                worst = i;
            }
        }
        if (worst == d) {
            x = c;
        } else {
            working.push_back(worst);
            result.iterations = 1;
        }
    }

    const std::size_t cap = options.changes_per_row * d;
    std::vector<double> mu;
    bool optimal = false;
    if (!initial_active_set && working.empty()) {
        optimal = true;
    }
    while (!optimal) {
        if (result.iterations > cap) {
            result.status = QpStatus::iteration_capped;
            break;
        }
        EqualitySolve eq = solve_on_working_set(u, working, c);
        std::vector<double> step(k);
        for (std::size_t j = 0; j < k; ++j) {
            step[j] = eq.target[j] - x[j];
        }
        if (norm2(step) <= step_tolerance) {
            x = std::move(eq.target);
            mu = std::move(eq.multipliers);
            std::size_t leaving = working.size();
            for (std::size_t a = 0; a < working.size(); ++a) {
                if (mu[a] < -drop_tolerance && (leaving == working.size() || mu[a] < mu[leaving] ||
                                                (mu[a] == mu[leaving] && working[a] < working[leaving]))) {
                    leaving = a;
                }
            }
            if (leaving == working.size()) {
                optimal = true;
                break;
            }
            working.erase(working.begin() + static_cast<std::ptrdiff_t>(leaving));
            ++result.iterations;
            continue;
        }

        double alpha = 1.0;
        std::size_t blocking = d;
        const double step_norm = norm2(step);
        for (std::size_t i = 0; i < d; ++i) {
            if (std::find(working.begin(), working.end(), i) != working.end()) {
                continue;
            }
            const double rate = row_dot(u, i, step);
            if (rate >= -1e-15 * step_norm) {
                continue;
            }
            const double slack = std::max(row_dot(u, i, x), 0.0);
            const double ratio = slack / -rate;
            if (ratio < alpha) {
                alpha = ratio;
                blocking = i;
            }
        }
        for (std::size_t j = 0; j < k; ++j) {
            x[j] += alpha * step[j];
        }
        if (blocking != d) {
            working.push_back(blocking);
            ++result.iterations;
        }
    }

    if (!optimal) {
        // Best iterate: x is feasible throughout; multipliers from the final working set.
        mu = solve_on_working_set(u, working, c).multipliers;
    }

    std::vector<std::size_t> order(working.size());
    for (std::size_t a = 0; a < order.size(); ++a) {
        order[a] = a;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return working[l] < working[r]; });
    for (std::size_t a : order) {
        result.active_set.push_back(working[a]);
        result.multipliers.push_back(mu.empty() ? 0.0 : mu[a]);
    }

    result.fitted = multiply(u, x);
    for (std::size_t i : result.active_set) {
        result.fitted[i] = 0.0;
    }
    result.kkt_residual = kkt_residual(u, x, c, result.active_set, result.multipliers, result.fitted);
    result.v = std::move(x);
    return result;
}

bool MatrixProjection::converged() const {
    return std::all_of(columns.begin(), columns.end(),
                       [](const ConeProjectionResult& r) { return r.status == QpStatus::converged; });
}

double MatrixProjection::max_kkt_residual() const {
    double worst = 0.0;
    for (const auto& r : columns) {
        worst = std::max(worst, r.kkt_residual);
    }
    return worst;
}

MatrixProjection project_matrix(const NonnegMatrix& b, const DenseMatrix& u, const ConeQpOptions& options) {
    if (b.rows() != u.rows()) {
        throw ArgumentError("project_matrix: data has " + std::to_string(b.rows()) + " rows, basis has " +
                            std::to_string(u.rows()));
    }
    MatrixProjection out{DenseMatrix(b.rows(), b.cols()), {}};
    out.columns.reserve(b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        try {
            out.columns.push_back(project_column(b.matrix().column(j), u, options));
        } catch (const ArgumentError& e) {
            throw ArgumentError("column " + std::to_string(j + 1) + ": " + e.what());
        }
        out.fitted.set_column(j, out.columns.back().fitted);
    }
    return out;
}

}  // namespace nnca
