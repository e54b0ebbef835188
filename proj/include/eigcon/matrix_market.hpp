#pragma once

#include <iosfwd>
#include <string>

#include "eigcon/matfun.hpp"

namespace eigcon {

/// Reads a dense complex matrix from Matrix Market text.
///
/// Supports `array` and `coordinate` layouts with `real`, `integer` or
/// `complex` fields and `general`, `symmetric`, `hermitian` or
/// `skew-symmetric` symmetry. Parse failures throw Error(Parse) whose message
/// starts with "line N:" and whose value() is N.
MatrixXcd read_matrix_market(std::istream& in);
MatrixXcd read_matrix_market_file(const std::string& path);

/// Writes `array` format, `complex` field unless every entry is real.
/// Values use shortest round-trip formatting.
void write_matrix_market(std::ostream& out, const MatrixXcd& m);
void write_matrix_market_file(const std::string& path, const MatrixXcd& m);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

}  // namespace eigcon
