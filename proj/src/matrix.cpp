#include "isoq/matrix.hpp"

#include <stdexcept>

namespace isoq {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::diagonal(const std::vector<Rat>& d) {
  const int n = static_cast<int>(d.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw InputError("ragged matrix");
    for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_symmetric() const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

namespace {

// Row echelon form in place; returns rank and accumulates the determinant sign/pivots.
int eliminate(Matrix& m, Rat* det_out) {
  int rank = 0;
  Rat det = 1;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int pivot = -1;
    for (int i = rank; i < m.rows(); ++i)
      if (m(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) {
      det = 0;
      continue;
    }
    if (pivot != rank) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(rank, j));
      det = -det;
    }
    det *= m(rank, col);
    for (int i = rank + 1; i < m.rows(); ++i) {
      if (m(i, col) == 0) continue;
      const Rat factor = m(i, col) / m(rank, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= factor * m(rank, j);
    }
    ++rank;
  }
  if (det_out) *det_out = rank == m.rows() ? det : Rat(0);
  return rank;
}

}  // namespace

Rat Matrix::det() const {
  if (!is_square()) throw std::domain_error("det of non-square matrix");
  if (rows_ == 0) return 1;
  Matrix m = *this;
  Rat d;
  eliminate(m, &d);
  return d;
}

int Matrix::rank() const {
  Matrix m = *this;
  return eliminate(m, nullptr);
}

Matrix Matrix::inverse() const {
  if (!is_square()) throw std::domain_error("inverse of non-square matrix");
  const int n = rows_;
  Matrix aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
    aug(i, n + i) = 1;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && aug(pivot, col) == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular matrix");
    if (pivot != col)
      for (int j = 0; j < 2 * n; ++j) std::swap(aug(pivot, j), aug(col, j));
    const Rat inv = 1 / aug(col, col);
    for (int j = 0; j < 2 * n; ++j) aug(col, j) *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == col || aug(i, col) == 0) continue;
      const Rat factor = aug(i, col);
      for (int j = 0; j < 2 * n; ++j) aug(i, j) -= factor * aug(col, j);
    }
  }
  Matrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

Poly Matrix::charpoly() const {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  if (!is_square()) throw std::domain_error("charpoly of non-square matrix");
  const int n = rows_;
  std::vector<Rat> c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = 1;
  Matrix mk(n, n);
  for (int k = 1; k <= n; ++k) {
    Matrix next = (*this) * mk;
    for (int i = 0; i < n; ++i) next(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    mk = std::move(next);
    Matrix am = (*this) * mk;
    Rat tr = 0;
    for (int i = 0; i < n; ++i) tr += am(i, i);
    c[static_cast<std::size_t>(n - k)] = -tr / k;
  }
  return Poly(c);
}

Matrix Matrix::eval(const Poly& f) const {
  const int n = rows_;
  Matrix acc(n, n);
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * (*this);
    for (int j = 0; j < n; ++j) acc(j, j) += f.coeff(i);
  }
  return acc;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::domain_error("matrix shape mismatch");
  Matrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Rat& x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::domain_error("matrix shape mismatch");
  Matrix c = a;
  for (std::size_t i = 0; i < c.a_.size(); ++i) c.a_[i] += b.a_[i];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + Rat(-1) * b; }

Matrix operator*(const Rat& s, const Matrix& a) {
  Matrix c = a;
  for (auto& x : c.a_) x *= s;
  return c;
}

Matrix Matrix::direct_sum(const std::vector<Matrix>& blocks) {
  int n = 0, m = 0;
  for (auto& b : blocks) {
    n += b.rows();
    m += b.cols();
  }
  Matrix out(n, m);
  int r0 = 0, c0 = 0;
  for (auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

}  // namespace isoq
