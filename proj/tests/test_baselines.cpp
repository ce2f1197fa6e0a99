#include <gtest/gtest.h>

#include <cmath>

#include "nnca/baselines.hpp"
#include "nnca/linalg.hpp"
#include "nnca/metrics.hpp"
#include "nnca/simulation.hpp"
#include "support/oracles.hpp"

using namespace nnca;

namespace {

// Mean plus leading principal component, by power iteration on the centered
// Gram matrix.
DenseMatrix pca_rank_one_oracle(const DenseMatrix& x) {
    const std::size_t d = x.rows();
    const std::size_t n = x.cols();
    DenseMatrix c = x;
    std::vector<double> mean(d, 0.0);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t j = 0; j < n; ++j) {
            mean[r] += x(r, j) / static_cast<double>(n);
        }
        for (std::size_t j = 0; j < n; ++j) {
            c(r, j) -= mean[r];
        }
    }
    const DenseMatrix g = c * c.transposed();
    std::vector<double> u(d, 1.0);
    for (int it = 0; it < 5000; ++it) {
        std::vector<double> next(d, 0.0);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t s = 0; s < d; ++s) {
                next[r] += g(r, s) * u[s];
            }
        }
        double nrm = 0.0;
        for (double v : next) {
            nrm += v * v;
        }
        nrm = std::sqrt(nrm);
        for (std::size_t r = 0; r < d; ++r) {
            u[r] = next[r] / nrm;
        }
    }
    DenseMatrix out(d, n);
    for (std::size_t j = 0; j < n; ++j) {
        double score = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
            score += u[r] * c(r, j);
        }
        for (std::size_t r = 0; r < d; ++r) {
            out(r, j) = mean[r] + score * u[r];
        }
    }
    return out;
}

const DenseMatrix kPcaRank2{{0.18, 0.87, 0.59, 0.10, -0.14, 0.01},
                            {0.90, -0.00, 0.45, 0.27, 0.66, 0.01},
                            {0.09, -0.03, -0.03, 0.56, 0.56, 0.81}};
const DenseMatrix kSvdRank1{{0.21, 0.09, 0.17, 0.13, 0.30, 0.14},
                            {0.51, 0.22, 0.42, 0.31, 0.74, 0.35},
                            {0.38, 0.17, 0.31, 0.23, 0.55, 0.26}};

}  // namespace

TEST(SvdApprox, ToyMatrixRankOne) {
    const DenseMatrix a = svd_approx(sim::toy_matrix(), 1);
    EXPECT_GE(a.min_entry(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a.data()[i], kSvdRank1.data()[i], 0.03);
    }
}

TEST(SvdApprox, ToyMatrixRankTwoOutOfConeColumns) {
    const DenseMatrix a = svd_approx(sim::toy_matrix(), 2);
    EXPECT_EQ(count_out_of_cone(a), 3u);
    for (std::size_t c : {1u, 3u, 5u}) {
        EXPECT_LT(std::min({a(0, c), a(1, c), a(2, c)}), 0.0) << "column " << c + 1;
    }
}

TEST(SvdApprox, FullRankIsIdentity) {
    const DenseMatrix x = sim::toy_matrix();
    EXPECT_LT(frobenius_norm(svd_approx(x, 3) - x), 1e-8);
}

TEST(PcaApprox, ToyMatrixMean) {
    const PcaApproximation p = pca_approx(sim::toy_matrix(), 1);
    ASSERT_EQ(p.mean.size(), 3u);
    EXPECT_NEAR(p.mean[0], 0.27, 0.01);
    EXPECT_NEAR(p.mean[1], 0.38, 0.01);
    EXPECT_NEAR(p.mean[2], 0.33, 0.01);
    EXPECT_EQ(p.column_mean_matrix(2, 4), p.mean[2]);
}

TEST(PcaApprox, ToyMatrixRankOne) {
    const DenseMatrix a = pca_approx(sim::toy_matrix(), 1).approx;
    EXPECT_LT(frobenius_norm(a - pca_rank_one_oracle(sim::toy_matrix())), 1e-10);
    EXPECT_LT(a(0, 4), 0.0);
    EXPECT_LT(a(0, 5), 0.0);
    EXPECT_LT(a(2, 1), 0.0);
    EXPECT_EQ(count_out_of_cone(a), 3u);
}

TEST(PcaApprox, ToyMatrixRankTwo) {
    const DenseMatrix a = pca_approx(sim::toy_matrix(), 2).approx;
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a.data()[i], kPcaRank2.data()[i], 0.03);
    }
    EXPECT_EQ(count_out_of_cone(a), 3u);
}

TEST(PcaApprox, CenteredSubspaceHasRankK) {
    CounterRng rng(41, 0);
    const DenseMatrix x = nnca::testing::random_uniform(5, 8, rng);
    for (std::size_t k = 1; k <= 3; ++k) {
        const PcaApproximation p = pca_approx(x, k);
        EXPECT_LE(numerical_rank(p.approx - p.column_mean_matrix), k);
    }
}

TEST(PcaApprox, FullCenteredRankReproducesData) {
    const DenseMatrix x = sim::toy_matrix();
    const PcaApproximation p = pca_approx(x, 2);
    ASSERT_EQ(p.centered_rank, 3u);
    EXPECT_LT(frobenius_norm(pca_approx(x, 3).approx - x), 1e-8);
}

TEST(PcaApprox, ConstantColumnsGiveData) {
    const DenseMatrix x{{0.2, 0.2, 0.2}, {0.7, 0.7, 0.7}};
    for (std::size_t k : {1u, 2u}) {
        EXPECT_LT(frobenius_norm(pca_approx(x, k).approx - x), 1e-15);
    }
}

TEST(PcaApprox, Errors) {
    EXPECT_THROW(pca_approx(DenseMatrix{{1}, {2}}, 1), ArgumentError);
    EXPECT_THROW(pca_approx(sim::toy_matrix(), 0), ArgumentError);
    EXPECT_THROW(pca_approx(sim::toy_matrix(), 4), ArgumentError);
}

TEST(Nmf, ExactRankOneFactorization) {
    const DenseMatrix x = DenseMatrix{{1}, {2}, {0.5}} * DenseMatrix{{0.3, 1.0, 0.7, 0.2}};
    const NmfFactorization f = nmf(NonnegMatrix(x), 1, 5);
    EXPECT_LE(f.objective, 1e-10);
}

TEST(Nmf, ToyMatrixRankOneMatchesSvd) {
    const NmfFactorization f = nmf(NonnegMatrix(sim::toy_matrix()), 1, 3);
    const DenseMatrix a = f.approx();
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a.data()[i], kSvdRank1.data()[i], 0.03);
    }
}

TEST(Nmf, FactorInvariants) {
    CounterRng rng(42, 0);
    for (const NmfOptions& opts : {NmfOptions{}, NmfOptions::alternating()}) {
        const NonnegMatrix x(nnca::testing::random_uniform(5, 7, rng));
        const NmfFactorization f = nmf(x, 3, 9, opts);
        EXPECT_GE(f.w.min_entry(), 0.0);
        EXPECT_GE(f.h.min_entry(), 0.0);
        for (std::size_t c = 0; c < 3; ++c) {
            EXPECT_NEAR(norm2(f.w.column(c)), 1.0, 1e-8);
        }
        const double recomputed = std::pow(frobenius_norm(x.matrix() - f.approx()), 2);
        EXPECT_NEAR(f.objective, recomputed, 1e-8 * std::max(1.0, recomputed));
        EXPECT_EQ(f.iterations.size(), 1u);
    }
}

TEST(Nmf, MultiplicativeObjectiveNeverIncreases) {
    CounterRng rng(43, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const NonnegMatrix x(nnca::testing::random_uniform(4, 4, rng));
        std::vector<double> trace;
        nmf(x, 2, static_cast<std::uint64_t>(trial), {}, 0, &trace);
        ASSERT_GT(trace.size(), 2u);
        for (std::size_t t = 1; t < trace.size(); ++t) {
            EXPECT_LE(trace[t], trace[t - 1] * (1.0 + 1e-12)) << "step " << t;
        }
    }
}

TEST(Nmf, IsDeterministic) {
    const NonnegMatrix x(sim::toy_matrix());
    const NmfFactorization a = nmf(x, 2, 17);
    const NmfFactorization b = nmf(x, 2, 17);
    EXPECT_EQ(a.w, b.w);
    EXPECT_EQ(a.h, b.h);
}

TEST(Nmf, RejectsBadRank) {
    const NonnegMatrix x(sim::toy_matrix());
    EXPECT_THROW(nmf(x, 0, 1), ArgumentError);
    EXPECT_THROW(nmf(x, 4, 1), ArgumentError);
    EXPECT_THROW(nmf_best_of(x, 1, 0, 1), ArgumentError);
}

TEST(NmfBestOf, SingleRestartEqualsPlainRun) {
    const NonnegMatrix x(sim::toy_matrix());
    const NmfFactorization a = nmf_best_of(x, 2, 1, 23);
    const NmfFactorization b = nmf(x, 2, 23);
    EXPECT_EQ(a.w, b.w);
    EXPECT_EQ(a.h, b.h);
    EXPECT_EQ(a.objective, b.objective);
}

TEST(NmfBestOf, KeepsLowestObjective) {
    const NonnegMatrix x(sim::toy_matrix());
    const NmfFactorization best = nmf_best_of(x, 2, 10, 29);
    EXPECT_EQ(best.restarts_used, 10u);
    EXPECT_EQ(best.iterations.size(), 10u);
    for (std::uint64_t s = 0; s < 10; ++s) {
        EXPECT_LE(best.objective, nmf(x, 2, 29, {}, s).objective);
    }
}

TEST(NmfBestOf, ToyMatrixRankTwoIsSparse) {
    const NmfFactorization f = nmf_best_of(NonnegMatrix(sim::toy_matrix()), 2, 100, 1, NmfOptions::alternating());
    const DenseMatrix a = f.approx();
    EXPECT_GE(a.min_entry(), -1e-10);
    EXPECT_GE(count_sparse_columns(a), 2u);
}

TEST(NmfBestOf, RestartStability) {
    const NonnegMatrix x(sim::toy_matrix());
    for (const NmfOptions& opts : {NmfOptions{}, NmfOptions::alternating()}) {
        const double a = nmf_best_of(x, 2, 100, 1, opts).objective;
        const double b = nmf_best_of(x, 2, 100, 2, opts).objective;
        EXPECT_NEAR(a, b, 1e-3);
    }
}
