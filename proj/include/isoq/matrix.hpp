#pragma once
// Dense matrices over Q with the exact linear algebra the rest of the
// library needs: products, determinant, rank, inverse, characteristic
// polynomial and polynomial evaluation.

#include "isoq/poly.hpp"

#include <vector>

namespace isoq {

class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols)) {}
  static Matrix identity(int n);
  static Matrix diagonal(const std::vector<Rat>& d);
  static Matrix from_rows(const std::vector<std::vector<Rat>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rat& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Rat& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

  Matrix transpose() const;
  bool is_symmetric() const;
  Rat det() const;
  int rank() const;
  /// Throws std::domain_error when singular.
  Matrix inverse() const;
  /// Monic det(X I - A).
  Poly charpoly() const;
  /// f(A) by Horner's rule.
  Matrix eval(const Poly& f) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Rat& s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  /// Block-diagonal sum.
  static Matrix direct_sum(const std::vector<Matrix>& blocks);

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

}  // namespace isoq
