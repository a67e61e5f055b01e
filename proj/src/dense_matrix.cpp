#include "saddleprec/dense_matrix.hpp"

#include <cassert>
#include <cmath>
#include <utility>

#include "saddleprec/errors.hpp"
#include "saddleprec/kernels.hpp"

namespace saddleprec {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, Vector entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_)
    throw Error("DenseMatrix: entries length does not match rows*cols");
  if (!all_finite()) throw Error("DenseMatrix: non-finite entry");
}

DenseMatrix::DenseMatrix(
    std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error("DenseMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw Error("DenseMatrix: non-finite entry");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(const Vector& d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::block(std::size_t i0, std::size_t j0, std::size_t r,
                               std::size_t c) const {
  assert(i0 + r <= rows_ && j0 + c <= cols_);
  DenseMatrix b(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
  return b;
}

void DenseMatrix::set_block(std::size_t i0, std::size_t j0,
                            const DenseMatrix& m) {
  assert(i0 + m.rows() <= rows_ && j0 + m.cols() <= cols_);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      (*this)(i0 + i, j0 + j) = m(i, j);
}

Vector DenseMatrix::col(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void DenseMatrix::set_col(std::size_t j, const Vector& v) {
  assert(v.size() == rows_);
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  assert(rows_ == other.rows_ && cols_ == other.cols_);
  kernels::axpy(data_.size(), 1.0, other.data_.data(), data_.data());
  return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
  assert(rows_ == other.rows_ && cols_ == other.cols_);
  kernels::axpy(data_.size(), -1.0, other.data_.data(), data_.data());
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double a) {
  kernels::scal(data_.size(), a, data_.data());
  return *this;
}

double DenseMatrix::frobenius_norm() const {
  return std::sqrt(kernels::dot(data_.size(), data_.data(), data_.data()));
}

double DenseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

bool DenseMatrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

double DenseMatrix::symmetry_error() const {
  assert(square());
  double s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j) {
      const double d = (*this)(i, j) - (*this)(j, i);
      s += 2.0 * d * d;
    }
  return std::sqrt(s);
}

DenseMatrix DenseMatrix::symmetrized() const {
  assert(square());
  DenseMatrix s(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      s(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
  return s;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
  a += b;
  return a;
}

DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
  a -= b;
  return a;
}

DenseMatrix operator*(DenseMatrix a, double s) {
  a *= s;
  return a;
}

DenseMatrix operator*(double s, DenseMatrix a) {
  a *= s;
  return a;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  assert(a.cols() == b.rows());
  DenseMatrix c(a.rows(), b.cols());
  if (!a.empty() && !b.empty()) {
    kernels::gemm_acc(a.rows(), b.cols(), a.cols(), a.data(), a.cols(),
                      b.data(), b.cols(), c.data(), c.cols());
  }
  return c;
}

Vector operator*(const DenseMatrix& a, const Vector& x) {
  assert(a.cols() == x.size());
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    y[i] = kernels::dot(a.cols(), a.row_ptr(i), x.data());
  return y;
}

double dot(const Vector& x, const Vector& y) {
  assert(x.size() == y.size());
  return kernels::dot(x.size(), x.data(), y.data());
}

double norm2(const Vector& x) {
  return std::sqrt(kernels::dot(x.size(), x.data(), x.data()));
}

void axpy(double a, const Vector& x, Vector& y) {
  assert(x.size() == y.size());
  kernels::axpy(x.size(), a, x.data(), y.data());
}

void scale(Vector& x, double a) { kernels::scal(x.size(), a, x.data()); }

Vector operator-(const Vector& a, const Vector& b) {
  Vector r = a;
  axpy(-1.0, b, r);
  return r;
}

Vector operator+(const Vector& a, const Vector& b) {
  Vector r = a;
  axpy(1.0, b, r);
  return r;
}

}  // namespace saddleprec
