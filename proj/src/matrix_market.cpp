#include "saddleprec/matrix_market.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "saddleprec/errors.hpp"

namespace saddleprec {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_market_array(const std::string& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << " " << m.cols() << "\n";
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      out << format_double(m(i, j)) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

DenseMatrix read_matrix_market_array(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open for reading: " + path);

  std::string header;
  if (!std::getline(in, header)) throw IoError("empty file: " + path);
  {
    std::istringstream hs(header);
    std::string banner, object, fmt, field, symmetry;
    hs >> banner >> object >> fmt >> field >> symmetry;
    for (auto* s : {&object, &fmt, &field, &symmetry})
      for (char& c : *s) c = static_cast<char>(std::tolower(c));
    if (banner != "%%MatrixMarket" || object != "matrix" || fmt != "array" ||
        field != "real" || symmetry != "general")
      throw IoError("unsupported Matrix Market header in " + path + ": " +
                    header);
  }

  std::string line;
  std::size_t rows = 0, cols = 0;
  bool have_dims = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '%') continue;
    std::istringstream ls(line);
    if (ls >> rows >> cols) {
      have_dims = true;
      break;
    }
  }
  if (!have_dims) throw IoError("missing dimensions in " + path);

  Vector entries;
  entries.reserve(rows * cols);
  double v;
  while (in >> v) entries.push_back(v);
  if (entries.size() != rows * cols)
    throw IoError("entry count mismatch in " + path);

  DenseMatrix m(rows, cols);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = entries[idx++];
  if (!m.all_finite()) throw IoError("non-finite entry in " + path);
  return m;
}

}  // namespace saddleprec
