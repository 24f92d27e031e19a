#include "qfid/matrix.hpp"

#include <sstream>

#include "qfid/error.hpp"

namespace qfid {

Mat Mat::from_rows(const std::vector<std::vector<FieldScalar>>& rows) {
  if (rows.empty()) return {};
  Mat m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw DimensionError("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::ket(std::size_t n, std::size_t i) {
  Mat m(n, 1);
  m(i, 0) = 1;
  return m;
}

Mat Mat::bra(std::size_t n, std::size_t i) {
  Mat m(1, n);
  m(0, i) = 1;
  return m;
}

Mat Mat::unit(std::size_t n, std::size_t i, std::size_t j) {
  Mat m(n, n);
  m(i, j) = 1;
  return m;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Mat::is_real() const {
  for (const auto& x : a_)
    if (!x.is_real()) return false;
  return true;
}

Mat Mat::adjoint() const {
  Mat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).conj();
  return r;
}

Mat Mat::conj() const {
  Mat r = *this;
  for (auto& x : r.a_) x = x.conj();
  return r;
}

Mat Mat::transpose() const {
  Mat r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

FieldScalar Mat::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square matrix");
  FieldScalar t;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
  Mat b(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionError("block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Mat Mat::operator-() const {
  Mat r = *this;
  for (auto& x : r.a_) x = -x;
  return r;
}

Mat& Mat::operator+=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix sum shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!o.a_[k].is_zero()) a_[k] += o.a_[k];
  return *this;
}

Mat& Mat::operator-=(const Mat& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix difference shape mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (!o.a_[k].is_zero()) a_[k] -= o.a_[k];
  return *this;
}

Mat& Mat::operator*=(const FieldScalar& s) {
  for (auto& x : a_)
    if (!x.is_zero()) x *= s;
  return *this;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_)
    throw DimensionError("matrix product " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " * " +
                         std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  Mat r(a.rows_, b.cols_);
  // Row-wise accumulation skips zero entries of a; the matrices here are sparse.
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const FieldScalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const FieldScalar& y = b(k, j);
        if (y.is_zero()) continue;
        r(i, j) += x * y;
      }
    }
  }
  return r;
}

std::string Mat::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_; ++i) {
    out << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ", ";
      out << (*this)(i, j).to_string();
    }
    out << "]\n";
  }
  return out.str();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const FieldScalar& x = a(i, j);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) {
          const FieldScalar& y = b(k, l);
          if (!y.is_zero()) r(i * b.rows() + k, j * b.cols() + l) = x * y;
        }
    }
  return r;
}

Mat outer(const Mat& ket, const Mat& bra) { return ket * bra.adjoint(); }

Mat direct_sum(const std::vector<Mat>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) {
    if (!b.is_square()) throw DimensionError("direct sum of non-square block");
    n += b.rows();
  }
  Mat r(n, n);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    r.set_block(off, off, b);
    off += b.rows();
  }
  return r;
}

RowEchelon rref(Mat a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    // Prefer a rational pivot: cheaper to invert and keeps entries small.
    std::size_t piv = a.rows();
    for (std::size_t i = row; i < a.rows(); ++i) {
      const FieldScalar& x = a(i, col);
      if (x.is_zero()) continue;
      if (piv == a.rows()) piv = i;
      if (x.is_real() && x.re().is_rational()) {
        piv = i;
        break;
      }
    }
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    FieldScalar inv = FieldScalar(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j)
      if (!a(row, j).is_zero()) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row) continue;
      FieldScalar f = a(i, col);
      if (f.is_zero()) continue;
      for (std::size_t j = col; j < a.cols(); ++j) {
        const FieldScalar& y = a(row, j);
        if (!y.is_zero()) a(i, j) -= f * y;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Mat& a) { return rref(a).pivots.size(); }

Mat nullspace(const Mat& a) {
  RowEchelon e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat basis(a.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t f = free_cols[k];
    basis(f, k) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) basis(e.pivots[r], k) = -e.r(r, f);
  }
  return basis;
}

Mat column_space_basis(const Mat& a) {
  RowEchelon e = rref(a);
  Mat b(a.rows(), e.pivots.size());
  for (std::size_t k = 0; k < e.pivots.size(); ++k)
    for (std::size_t i = 0; i < a.rows(); ++i) b(i, k) = a(i, e.pivots[k]);
  return b;
}

Mat solve(const Mat& a, const Mat& b) {
  if (!a.is_square() || a.rows() != b.rows()) throw DimensionError("solve: shape mismatch");
  const std::size_t n = a.rows();
  if (n == 0) return Mat(0, b.cols());
  Mat aug(n, n + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, n, b);
  RowEchelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw ArithmeticError("singular matrix");
  return e.r.block(0, n, n, b.cols());
}

Mat inverse(const Mat& a) { return solve(a, Mat::identity(a.rows())); }

bool is_invertible(const Mat& a) { return a.is_square() && rank(a) == a.rows(); }

Mat power(const Mat& a, unsigned long e) {
  if (!a.is_square()) throw DimensionError("power of a non-square matrix");
  Mat result = Mat::identity(a.rows());
  Mat base = a;
  bool first = true;
  while (e > 0) {
    if (e & 1UL) {
      result = first ? base : result * base;
      first = false;
    }
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

}  // namespace qfid
