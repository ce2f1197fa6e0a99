#include "nnca/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nnca {

namespace {

void require_finite(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ArgumentError("matrix entry " + std::to_string(i) + " is not finite");
        }
    }
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ArgumentError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
    }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    if (rows == 0 || cols == 0) {
        throw ArgumentError("matrix dimensions must be positive");
    }
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw ArgumentError("matrix dimensions must be positive");
    }
    if (data_.size() != rows * cols) {
        throw ArgumentError("entry count " + std::to_string(data_.size()) + " does not match " +
                            std::to_string(rows) + "x" + std::to_string(cols));
    }
    require_finite(data_);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    if (rows_ == 0 || cols_ == 0) {
        throw ArgumentError("matrix dimensions must be positive");
    }
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw ArgumentError("ragged initializer list");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

std::vector<double> DenseMatrix::column(std::size_t c) const {
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

void DenseMatrix::set_column(std::size_t c, std::span<const double> values) {
    if (values.size() != rows_) {
        throw ArgumentError("set_column: length mismatch");
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, c) = values[r];
    }
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

double DenseMatrix::min_entry() const { return *std::min_element(data_.begin(), data_.end()); }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw ArgumentError("matrix product: inner dimensions differ");
    }
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const double ail = a(i, l);
            if (ail == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += ail * b(l, j);
            }
        }
    }
    return out;
}

DenseMatrix transpose_times(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) {
        throw ArgumentError("transpose_times: row counts differ");
    }
    DenseMatrix out(a.cols(), b.cols());
    for (std::size_t l = 0; l < a.rows(); ++l) {
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double ali = a(l, i);
            if (ali == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += ali * b(l, j);
            }
        }
    }
    return out;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "operator+");
    DenseMatrix out = a;
    auto o = out.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < o.size(); ++i) {
        o[i] += bd[i];
    }
    return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    require_same_shape(a, b, "operator-");
    DenseMatrix out = a;
    auto o = out.data();
    auto bd = b.data();
    for (std::size_t i = 0; i < o.size(); ++i) {
        o[i] -= bd[i];
    }
    return out;
}

DenseMatrix operator*(double s, const DenseMatrix& a) {
    DenseMatrix out = a;
    for (double& v : out.data()) {
        v *= s;
    }
    return out;
}

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x) {
    if (x.size() != a.cols()) {
        throw ArgumentError("multiply: length mismatch");
    }
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < a.cols(); ++c) {
            s += a(r, c) * x[c];
        }
        out[r] = s;
    }
    return out;
}

std::vector<double> transpose_multiply(const DenseMatrix& a, std::span<const double> x) {
    if (x.size() != a.rows()) {
        throw ArgumentError("transpose_multiply: length mismatch");
    }
    std::vector<double> out(a.cols(), 0.0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out[c] += a(r, c) * x[r];
        }
    }
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

NonnegMatrix::NonnegMatrix(DenseMatrix m, double tolerance) : m_(std::move(m)) {
    for (std::size_t r = 0; r < m_.rows(); ++r) {
        for (std::size_t c = 0; c < m_.cols(); ++c) {
            if (m_(r, c) < -tolerance) {
                throw ArgumentError("negative entry " + std::to_string(m_(r, c)) + " at (" +
                                    std::to_string(r + 1) + "," + std::to_string(c + 1) + ")");
            }
        }
    }
}

}  // namespace nnca
