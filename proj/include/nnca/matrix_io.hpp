#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "nnca/matrix.hpp"

namespace nnca::io {

/// Malformed matrix text. line and field are 1-based; field is 0 when the
/// whole line is at fault.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t field)
        : std::runtime_error(what), line_(line), field_(field) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::size_t field_;
};

struct MatrixFileOptions {
    char delimiter = ',';
    bool header = false;  // skip the first non-blank line
};

/// One matrix row per non-blank line, one column per delimited field.
DenseMatrix parse_matrix(std::istream& in, const MatrixFileOptions& options = {});
DenseMatrix parse_matrix_file(const std::filesystem::path& path, const MatrixFileOptions& options = {});

/// Full-precision (17 significant digit) delimited text, one row per line.
std::string format_matrix(const DenseMatrix& m, char delimiter = ',');
void write_matrix_file(const std::filesystem::path& path, const DenseMatrix& m, char delimiter = ',');

/// Fixed two-decimal rendering for console tables.
std::string format_matrix_2dp(const DenseMatrix& m, const std::string& indent = "");

/// Shortest-safe 17 significant digit rendering of a double.
std::string format_double(double v);

}  // namespace nnca::io
