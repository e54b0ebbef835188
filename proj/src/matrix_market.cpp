#include "eigcon/matrix_market.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "eigcon/error.hpp"

namespace eigcon {

namespace {

enum class Layout { Array, Coordinate };
enum class Field { Real, Complex };
enum class Symmetry { General, Symmetric, Hermitian, Skew };

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

[[noreturn]] void fail(long line, const std::string& what) {
    throw Error(Errc::Parse, "line " + std::to_string(line) + ": " + what, static_cast<double>(line));
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next non-comment, non-blank line; false at end of input.
    bool next(std::string& out) {
        while (std::getline(in_, out)) {
            ++line_;
            if (!out.empty() && out.back() == '\r') out.pop_back();
            const auto first = out.find_first_not_of(" \t");
            if (first == std::string::npos || out[first] == '%') continue;
            return true;
        }
        return false;
    }
    bool header(std::string& out) {
        if (!std::getline(in_, out)) return false;
        ++line_;
        if (!out.empty() && out.back() == '\r') out.pop_back();
        return true;
    }
    long line() const { return line_; }

private:
    std::istream& in_;
    long line_ = 0;
};

std::vector<double> numbers(const std::string& text, long line, std::size_t expected) {
    std::istringstream ss(text);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) {
        double v = 0.0;
        const char* b = tok.data();
        const char* e = b + tok.size();
        if (*b == '+') ++b;
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || ptr != e) fail(line, "cannot parse number '" + tok + "'");
        out.push_back(v);
    }
    if (out.size() != expected)
        fail(line, "expected " + std::to_string(expected) + " values, found " + std::to_string(out.size()));
    return out;
}

Index as_index(double v, long line, const char* what) {
    if (v != std::floor(v) || v < 0 || v > 1e9) fail(line, std::string("invalid ") + what);
    return static_cast<Index>(v);
}

}  // namespace

MatrixXcd read_matrix_market(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.header(line)) fail(1, "empty input");

    std::istringstream hs(line);
    std::array<std::string, 5> h;
    for (auto& tok : h) hs >> tok;
    if (lower(h[0]) != "%%matrixmarket") fail(reader.line(), "missing %%MatrixMarket banner");
    if (lower(h[1]) != "matrix") fail(reader.line(), "object must be 'matrix'");

    Layout layout;
    const std::string fmt = lower(h[2]);
    if (fmt == "array") layout = Layout::Array;
    else if (fmt == "coordinate") layout = Layout::Coordinate;
    else fail(reader.line(), "format must be 'array' or 'coordinate'");

    Field field;
    const std::string fld = lower(h[3]);
    if (fld == "real" || fld == "integer" || fld == "double") field = Field::Real;
    else if (fld == "complex") field = Field::Complex;
    else fail(reader.line(), "unsupported field '" + h[3] + "'");

    Symmetry sym;
    const std::string sy = lower(h[4]);
    if (sy == "general") sym = Symmetry::General;
    else if (sy == "symmetric") sym = Symmetry::Symmetric;
    else if (sy == "hermitian") sym = Symmetry::Hermitian;
    else if (sy == "skew-symmetric") sym = Symmetry::Skew;
    else fail(reader.line(), "unsupported symmetry '" + h[4] + "'");
    if (sym == Symmetry::Hermitian && field != Field::Complex) sym = Symmetry::Symmetric;

    if (!reader.next(line)) fail(reader.line() + 1, "missing size line");
    const std::size_t size_count = layout == Layout::Array ? 2 : 3;
    const std::vector<double> dims = numbers(line, reader.line(), size_count);
    const Index rows = as_index(dims[0], reader.line(), "row count");
    const Index cols = as_index(dims[1], reader.line(), "column count");
    if (sym != Symmetry::General && rows != cols) fail(reader.line(), "symmetric storage requires a square matrix");

    MatrixXcd m = MatrixXcd::Zero(rows, cols);
    const std::size_t per_value = field == Field::Complex ? 2 : 1;

    auto store = [&](Index i, Index j, cplx v) {
        m(i, j) = v;
        if (i == j) return;
        switch (sym) {
        case Symmetry::General: break;
        case Symmetry::Symmetric: m(j, i) = v; break;
        case Symmetry::Hermitian: m(j, i) = std::conj(v); break;
        case Symmetry::Skew: m(j, i) = -v; break;
        }
    };
    auto value_of = [&](const std::vector<double>& vals, std::size_t offset) {
        return field == Field::Complex ? cplx(vals[offset], vals[offset + 1]) : cplx(vals[offset], 0.0);
    };

    if (layout == Layout::Array) {
        for (Index j = 0; j < cols; ++j) {
            const Index start = sym == Symmetry::General ? 0 : (sym == Symmetry::Skew ? j + 1 : j);
            for (Index i = start; i < rows; ++i) {
                if (!reader.next(line)) fail(reader.line() + 1, "unexpected end of data");
                store(i, j, value_of(numbers(line, reader.line(), per_value), 0));
            }
        }
    } else {
        const Index nnz = as_index(dims[2], reader.line(), "entry count");
        for (Index k = 0; k < nnz; ++k) {
            if (!reader.next(line)) fail(reader.line() + 1, "unexpected end of data");
            const std::vector<double> vals = numbers(line, reader.line(), 2 + per_value);
            const Index i = as_index(vals[0], reader.line(), "row index");
            const Index j = as_index(vals[1], reader.line(), "column index");
            if (i < 1 || i > rows || j < 1 || j > cols) fail(reader.line(), "index out of range");
            store(i - 1, j - 1, value_of(vals, 2));
        }
    }
    if (reader.next(line)) fail(reader.line(), "trailing data after matrix entries");
    if (!m.allFinite()) fail(reader.line(), "matrix contains NaN or Inf");
    return m;
}

MatrixXcd read_matrix_market_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
    return read_matrix_market(in);
}

std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), ptr);
}

void write_matrix_market(std::ostream& out, const MatrixXcd& m) {
    const bool is_complex = (m.imag().array() != 0.0).any();
    out << "%%MatrixMarket matrix array " << (is_complex ? "complex" : "real") << " general\n";
    out << m.rows() << ' ' << m.cols() << '\n';
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i) {
            out << format_double(m(i, j).real());
            if (is_complex) out << ' ' << format_double(m(i, j).imag());
            out << '\n';
        }
}

void write_matrix_market_file(const std::string& path, const MatrixXcd& m) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + path + "'");
    write_matrix_market(out, m);
}

}  // namespace eigcon
