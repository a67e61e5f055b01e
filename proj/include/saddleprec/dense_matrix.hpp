#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace saddleprec {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles. Immutable-by-convention value type:
/// operations return new matrices, nothing mutates shared state.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols);  // zero-filled
  DenseMatrix(std::size_t rows, std::size_t cols, Vector entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(const Vector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
  const double* row_ptr(std::size_t i) const {
    return data_.data() + i * cols_;
  }
  const Vector& entries() const { return data_; }

  DenseMatrix transpose() const;
  DenseMatrix block(std::size_t i0, std::size_t j0, std::size_t r,
                    std::size_t c) const;
  void set_block(std::size_t i0, std::size_t j0, const DenseMatrix& m);
  Vector col(std::size_t j) const;
  void set_col(std::size_t j, const Vector& v);

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator-=(const DenseMatrix& other);
  DenseMatrix& operator*=(double a);

  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;
  /// ||M - M^T||_F; matrix must be square.
  double symmetry_error() const;
  /// (M + M^T)/2
  DenseMatrix symmetrized() const;

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(DenseMatrix a, double s);
DenseMatrix operator*(double s, DenseMatrix a);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
Vector operator*(const DenseMatrix& a, const Vector& x);

// Vector helpers on top of the kernel layer.
double dot(const Vector& x, const Vector& y);
double norm2(const Vector& x);
void axpy(double a, const Vector& x, Vector& y);  // y += a*x
void scale(Vector& x, double a);
Vector operator-(const Vector& a, const Vector& b);
Vector operator+(const Vector& a, const Vector& b);

}  // namespace saddleprec
