#include <gtest/gtest.h>

#include <cmath>

#include "nnca/cone_qp.hpp"
#include "nnca/linalg.hpp"
#include "nnca/rng.hpp"
#include "nnca/simulation.hpp"
#include "support/oracles.hpp"

using namespace nnca;
using nnca::testing::distance;

namespace {

DenseMatrix leading_vectors(const DenseMatrix& b, std::size_t k) {
    const SvdFactorization f = svd(b);
    DenseMatrix u(b.rows(), k);
    for (std::size_t c = 0; c < k; ++c) {
        u.set_column(c, f.u.column(c));
    }
    return u;
}

double objective(std::span<const double> b, std::span<const double> fitted) {
    double s = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        s += (b[i] - fitted[i]) * (b[i] - fitted[i]);
    }
    return s;
}

}  // namespace

TEST(ProjectColumn, FeasibleUnconstrainedOptimum) {
    const DenseMatrix u{{1, 0}, {0, 1}, {0, 0}};
    const std::vector<double> b{0.3, 0.5, 0.9};
    const ConeProjectionResult r = project_column(b, u);
    EXPECT_EQ(r.status, QpStatus::converged);
    EXPECT_TRUE(r.active_set.empty());
    EXPECT_DOUBLE_EQ(r.v[0], 0.3);
    EXPECT_DOUBLE_EQ(r.v[1], 0.5);
}

TEST(ProjectColumn, ZeroVector) {
    const DenseMatrix u = leading_vectors(sim::toy_matrix(), 2);
    const ConeProjectionResult r = project_column(std::vector<double>(3, 0.0), u);
    EXPECT_EQ(norm2(r.v), 0.0);
}

TEST(ProjectColumn, RejectsNonOrthonormalBasis) {
    const DenseMatrix u{{1, 1}, {0, 1}, {0, 0}};
    EXPECT_THROW(project_column(std::vector<double>{1, 1, 1}, u), ArgumentError);
    EXPECT_THROW(project_column(std::vector<double>{1, 1}, DenseMatrix{{1}, {0}, {0}}), ArgumentError);
}

TEST(ProjectColumn, MatchesGridOracle) {
    int constrained = 0;
    for (std::size_t i = 0; i < 40; ++i) {
        const DenseMatrix b = sim::gen_scenario_a(21, i).matrix();
        const std::size_t k = 1 + i % 2;
        const DenseMatrix u = leading_vectors(b, k);
        for (std::size_t j = 0; j < b.cols(); ++j) {
            const auto col = b.column(j);
            const ConeProjectionResult r = project_column(col, u);
            ASSERT_EQ(r.status, QpStatus::converged);
            EXPECT_LE(r.kkt_residual, 1e-8);
            EXPECT_LT(distance(r.fitted, nnca::testing::grid_cone_projection(col, u)), 1e-4)
                << "instance " << i << " column " << j;
            constrained += r.active_set.empty() ? 0 : 1;
        }
    }
    EXPECT_GT(constrained, 20);
}

TEST(ProjectColumn, ArbitrarySignedTargets) {
    CounterRng rng(22, 0);
    const DenseMatrix u = nnca::testing::orthonormalize(nnca::testing::random_uniform(3, 2, rng));
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> b(3);
        for (double& x : b) {
            x = rng.normal();
        }
        const ConeProjectionResult r = project_column(b, u);
        EXPECT_LT(distance(r.fitted, nnca::testing::grid_cone_projection(b, u)), 1e-4);
        for (double x : r.fitted) {
            EXPECT_GE(x, -1e-10);
        }
    }
}

TEST(ProjectColumn, CertificateProperties) {
    for (std::size_t i = 0; i < 30; ++i) {
        const DenseMatrix b = sim::gen_scenario_a(23, i).matrix();
        const DenseMatrix u = leading_vectors(b, 2);
        for (std::size_t j = 0; j < b.cols(); ++j) {
            const auto col = b.column(j);
            const ConeProjectionResult r = project_column(col, u);
            ASSERT_EQ(r.multipliers.size(), r.active_set.size());
            for (std::size_t a = 0; a < r.active_set.size(); ++a) {
                EXPECT_GE(r.multipliers[a], -1e-12);
                EXPECT_EQ(r.fitted[r.active_set[a]], 0.0);
            }
            // Objective at the solution never exceeds the feasible point v = 0.
            EXPECT_LE(objective(col, r.fitted), objective(col, std::vector<double>(3, 0.0)) + 1e-14);
        }
    }
}

TEST(ProjectColumn, Idempotent) {
    for (std::size_t i = 0; i < 30; ++i) {
        const DenseMatrix b = sim::gen_scenario_a(24, i).matrix();
        const DenseMatrix u = leading_vectors(b, 2);
        for (std::size_t j = 0; j < b.cols(); ++j) {
            const ConeProjectionResult once = project_column(b.column(j), u);
            const ConeProjectionResult twice = project_column(once.fitted, u);
            EXPECT_LT(distance(once.fitted, twice.fitted), 1e-9);
        }
    }
}

TEST(ProjectColumn, ScalingEquivariant) {
    for (std::size_t i = 0; i < 30; ++i) {
        const DenseMatrix b = sim::gen_scenario_a(25, i).matrix();
        const DenseMatrix u = leading_vectors(b, 2);
        for (double alpha : {0.01, 3.0, 250.0}) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                auto col = b.column(j);
                const auto base = project_column(col, u).fitted;
                for (double& x : col) {
                    x *= alpha;
                }
                const auto scaled = project_column(col, u).fitted;
                for (std::size_t r = 0; r < 3; ++r) {
                    EXPECT_NEAR(scaled[r], alpha * base[r], 1e-9 * std::max(1.0, alpha));
                }
            }
        }
    }
}

TEST(ProjectColumn, UniqueFromRandomWorkingSets) {
    CounterRng rng(26, 0);
    for (std::size_t i = 0; i < 20; ++i) {
        const DenseMatrix b = sim::gen_scenario_a(26, i).matrix();
        const DenseMatrix u = leading_vectors(b, 2);
        for (std::size_t j = 0; j < b.cols(); ++j) {
            const auto reference = project_column(b.column(j), u).fitted;
            for (int start = 0; start < 20; ++start) {
                std::vector<std::size_t> working;
                for (std::size_t row = 0; row < 3; ++row) {
                    if (rng.uniform() < 0.5) {
                        working.push_back(row);
                    }
                }
                const auto r = project_column(b.column(j), u, {}, std::span<const std::size_t>(working));
                EXPECT_LT(distance(r.fitted, reference), 1e-8);
            }
        }
    }
}

TEST(ProjectColumn, HigherDimensionalBasis) {
    CounterRng rng(27, 0);
    const DenseMatrix x = nnca::testing::random_uniform(8, 12, rng);
    const DenseMatrix u = leading_vectors(x, 3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> b(8);
        for (double& v : b) {
            v = rng.normal();
        }
        const ConeProjectionResult r = project_column(b, u);
        EXPECT_EQ(r.status, QpStatus::converged);
        EXPECT_LE(r.kkt_residual, 1e-8);
        for (double v : r.fitted) {
            EXPECT_GE(v, -1e-10);
        }
    }
}

TEST(ProjectMatrix, FullSpanReturnsData) {
    const NonnegMatrix x(sim::toy_matrix());
    const MatrixProjection p = project_matrix(x, DenseMatrix::identity(3));
    EXPECT_LT(frobenius_norm(p.fitted - x.matrix()), 1e-14);
    EXPECT_TRUE(p.converged());
}

TEST(ProjectMatrix, BeatsRandomConePoints) {
    CounterRng rng(28, 0);
    for (std::size_t i = 0; i < 5; ++i) {
        const NonnegMatrix b = sim::gen_scenario_a(28, i);
        const DenseMatrix u = leading_vectors(b, 2);
        const MatrixProjection p = project_matrix(b, u);
        const double best = frobenius_norm(b.matrix() - p.fitted);
        for (int trial = 0; trial < 1000; ++trial) {
            DenseMatrix candidate(3, 6);
            for (std::size_t j = 0; j < 6; ++j) {
                std::vector<double> c;
                do {
                    const std::vector<double> v{rng.normal(), rng.normal()};
                    c = multiply(u, v);
                } while (c[0] < 0 || c[1] < 0 || c[2] < 0);
                candidate.set_column(j, c);
            }
            EXPECT_LE(best, frobenius_norm(b.matrix() - candidate) + 1e-12);
        }
    }
}

TEST(ProjectMatrix, ShapeMismatchThrows) {
    const NonnegMatrix x(sim::toy_matrix());
    EXPECT_THROW(project_matrix(x, DenseMatrix::identity(4)), ArgumentError);
}
