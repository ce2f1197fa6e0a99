#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nnca {

/// Raised when a caller violates an operation's preconditions.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Entries below -kNonnegTolerance are rejected by NonnegMatrix.
inline constexpr double kNonnegTolerance = 1e-10;

/// Dense, row-major, finite real matrix. Rows are dimensions, columns are
/// observations.
class DenseMatrix {
public:
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }

    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    std::vector<double> column(std::size_t c) const;
    void set_column(std::size_t c, std::span<const double> values);

    DenseMatrix transposed() const;

    double min_entry() const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, const DenseMatrix& a);

/// aᵀb without forming the transpose.
DenseMatrix transpose_times(const DenseMatrix& a, const DenseMatrix& b);

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x);
std::vector<double> transpose_multiply(const DenseMatrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

/// A DenseMatrix whose entries are all >= -kNonnegTolerance.
class NonnegMatrix {
public:
    explicit NonnegMatrix(DenseMatrix m, double tolerance = kNonnegTolerance);

    const DenseMatrix& matrix() const noexcept { return m_; }
    operator const DenseMatrix&() const noexcept { return m_; }

    std::size_t rows() const noexcept { return m_.rows(); }
    std::size_t cols() const noexcept { return m_.cols(); }
    double operator()(std::size_t r, std::size_t c) const noexcept { return m_(r, c); }

private:
    DenseMatrix m_;
};

}  // namespace nnca
