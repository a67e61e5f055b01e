#pragma once

#include <string>

#include "saddleprec/dense_matrix.hpp"

namespace saddleprec {

/// Writes M in Matrix Market array format (real general, column-major
/// entries) with 17 significant digits, so identical matrices produce
/// byte-identical files.
void write_matrix_market_array(const std::string& path, const DenseMatrix& m);

/// Reads a Matrix Market array-format file (real general). Throws IoError on
/// malformed input or an unsupported header.
DenseMatrix read_matrix_market_array(const std::string& path);

/// Fixed-width float formatting used by every report writer: %.17g.
std::string format_double(double v);

}  // namespace saddleprec
