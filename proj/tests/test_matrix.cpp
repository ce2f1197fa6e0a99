#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "nnca/matrix.hpp"

using nnca::ArgumentError;
using nnca::DenseMatrix;
using nnca::NonnegMatrix;

TEST(DenseMatrix, RejectsEmptyShapes) {
    EXPECT_THROW(DenseMatrix(0, 3), ArgumentError);
    EXPECT_THROW(DenseMatrix(2, 0), ArgumentError);
}

TEST(DenseMatrix, RejectsNonFiniteEntries) {
    EXPECT_THROW(DenseMatrix(1, 2, {1.0, std::numeric_limits<double>::quiet_NaN()}), ArgumentError);
    EXPECT_THROW(DenseMatrix(1, 1, {std::numeric_limits<double>::infinity()}), ArgumentError);
}

TEST(DenseMatrix, RejectsWrongStorageLength) {
    EXPECT_THROW(DenseMatrix(2, 2, {1.0, 2.0, 3.0}), ArgumentError);
}

TEST(DenseMatrix, RejectsRaggedInitializer) {
    EXPECT_THROW((DenseMatrix{{1.0, 2.0}, {3.0}}), ArgumentError);
}

TEST(DenseMatrix, RowMajorLayout) {
    const DenseMatrix m{{1, 2, 3}, {4, 5, 6}};
    EXPECT_EQ(m.rows(), 2u);
    EXPECT_EQ(m.cols(), 3u);
    EXPECT_EQ(m(1, 0), 4.0);
    EXPECT_EQ(m.data()[2], 3.0);
    EXPECT_EQ(m.column(2), (std::vector<double>{3, 6}));
    EXPECT_EQ(m.transposed()(2, 1), 6.0);
}

TEST(DenseMatrix, Arithmetic) {
    const DenseMatrix a{{1, 2}, {3, 4}};
    const DenseMatrix b{{0, 1}, {1, 0}};
    EXPECT_EQ(a * b, (DenseMatrix{{2, 1}, {4, 3}}));
    EXPECT_EQ(a + b, (DenseMatrix{{1, 3}, {4, 4}}));
    EXPECT_EQ(a - b, (DenseMatrix{{1, 1}, {2, 4}}));
    EXPECT_EQ(2.0 * a, (DenseMatrix{{2, 4}, {6, 8}}));
    EXPECT_EQ(transpose_times(a, b), a.transposed() * b);
    EXPECT_THROW(a * DenseMatrix(3, 1), ArgumentError);
}

TEST(DenseMatrix, VectorProducts) {
    const DenseMatrix a{{1, 2}, {3, 4}, {5, 6}};
    const std::vector<double> x{1, -1};
    EXPECT_EQ(multiply(a, x), (std::vector<double>{-1, -1, -1}));
    const std::vector<double> y{1, 0, 1};
    EXPECT_EQ(transpose_multiply(a, y), (std::vector<double>{6, 8}));
    EXPECT_DOUBLE_EQ(nnca::norm2(std::vector<double>{3, 4}), 5.0);
}

TEST(DenseMatrix, SetColumnAndMin) {
    DenseMatrix m(2, 2);
    m.set_column(1, std::vector<double>{-3, 7});
    EXPECT_EQ(m(0, 1), -3.0);
    EXPECT_EQ(m.min_entry(), -3.0);
    EXPECT_THROW(m.set_column(0, std::vector<double>{1}), ArgumentError);
}

TEST(NonnegMatrix, AcceptsToleranceAndRejectsNegative) {
    EXPECT_NO_THROW(NonnegMatrix(DenseMatrix{{0.0, -1e-11}}));
    try {
        NonnegMatrix(DenseMatrix{{0.0, 1.0}, {2.0, -0.5}});
        FAIL() << "negative entry accepted";
    } catch (const ArgumentError& e) {
        EXPECT_NE(std::string(e.what()).find("(2,2)"), std::string::npos);
    }
}
