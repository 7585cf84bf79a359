#pragma once

// File formats: matrix JSON, single-column CSV arrays, SSF grid CSV.
// All writers go through a temporary file and a rename.

#include <cstdint>
#include <string>
#include <vector>

#include "specshift/hermitian.hpp"
#include "specshift/ssf.hpp"

namespace specshift::io {

/// {"dim": n, "re": [[...]], "im": [[...]]}; "im" may be omitted. Parse or
/// shape errors throw ArgumentError.
HermitianOperator read_matrix_json(const std::string& path);
HermitianOperator parse_matrix_json(const std::string& text);

/// Canonical serialization (both arrays, shortest round-trip digits, one row per line).
std::string matrix_json(const Matrix& m);
void write_matrix_json(const std::string& path, const Matrix& m);

/// One number per line; blank lines, '#' comments and a non-numeric first
/// line (header) are skipped.
std::vector<double> read_column_csv(const std::string& path);

struct SsfGridHeader {
  std::string method;
  double quad_tol = 0.0;
  double r_tol = 0.0;
  std::string grid;
  std::string endpoints_hash;
};

/// Eight '#'-prefixed JSON header lines, then "lambda,xi" and the rows.
std::string ssf_grid_csv(const DensityGrid& grid, const SsfGridHeader& header);
void write_ssf_grid_csv(const std::string& path, const DensityGrid& grid, const SsfGridHeader& header);

/// Reads rows after the "lambda,xi" line; header comments are returned in `header` when given.
DensityGrid read_ssf_grid_csv(const std::string& path, SsfGridHeader* header = nullptr);

/// FNV-1a 64-bit, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& data);

/// Hash of the canonical JSON of both endpoint operators.
std::string endpoints_hash(const HermitianOperator& h0, const HermitianOperator& h1);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

std::string read_text(const std::string& path);
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace specshift::io
