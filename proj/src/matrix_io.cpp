#include "nnca/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace nnca::io {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_field(std::string_view token, std::size_t line, std::size_t field) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError("line " + std::to_string(line) + ", field " + std::to_string(field) +
                             ": not a number: '" + std::string(token) + "'",
                         line, field);
    }
    if (!std::isfinite(value)) {
        throw ParseError("line " + std::to_string(line) + ", field " + std::to_string(field) + ": not finite",
                         line, field);
    }
    return value;
}

}  // namespace

DenseMatrix parse_matrix(std::istream& in, const MatrixFileOptions& options) {
    std::vector<double> entries;
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool header_pending = options.header;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty()) {
            continue;
        }
        if (header_pending) {
            header_pending = false;
            continue;
        }
        std::size_t field = 0;
        std::size_t start = 0;
        while (true) {
            const auto end = body.find(options.delimiter, start);
            ++field;
            entries.push_back(parse_field(body.substr(start, end == std::string_view::npos ? end : end - start),
                                          line_no, field));
            if (end == std::string_view::npos) {
                break;
            }
            start = end + 1;
        }
        if (rows == 0) {
            cols = field;
        } else if (field != cols) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                                 " fields, found " + std::to_string(field),
                             line_no, 0);
        }
        ++rows;
    }
    if (rows == 0) {
        throw ParseError("no matrix rows found", line_no, 0);
    }
    return DenseMatrix(rows, cols, std::move(entries));
}

DenseMatrix parse_matrix_file(const std::filesystem::path& path, const MatrixFileOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string(), 0, 0);
    }
    return parse_matrix(in, options);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_matrix(const DenseMatrix& m, char delimiter) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out += delimiter;
            }
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

void write_matrix_file(const std::filesystem::path& path, const DenseMatrix& m, char delimiter) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << format_matrix(m, delimiter);
}

std::string format_matrix_2dp(const DenseMatrix& m, const std::string& indent) {
    std::string out;
    char buf[32];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += indent;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%7.2f", m(i, j));
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace nnca::io
