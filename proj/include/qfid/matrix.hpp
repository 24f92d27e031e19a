#pragma once

// Dense row-major matrices over FieldScalar and exact Gaussian elimination.

#include <cstddef>
#include <string>
#include <vector>

#include "qfid/exactnum.hpp"

namespace qfid {

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  /// Row-major initialiser, mostly for tests: Mat::from_rows({{1, 0}, {0, 1}}).
  static Mat from_rows(const std::vector<std::vector<FieldScalar>>& rows);

  static Mat identity(std::size_t n);
  static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }
  /// Column vector |i> of length n (0-based index).
  static Mat ket(std::size_t n, std::size_t i);
  /// Row vector <i| of length n.
  static Mat bra(std::size_t n, std::size_t i);
  /// |i><j| in an n-dimensional space.
  static Mat unit(std::size_t n, std::size_t i, std::size_t j);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;
  bool is_real() const;

  FieldScalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const FieldScalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<FieldScalar>& data() const { return a_; }

  Mat adjoint() const;
  Mat conj() const;
  Mat transpose() const;
  FieldScalar trace() const;

  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);
  Mat column(std::size_t j) const { return block(0, j, rows_, 1); }

  Mat operator-() const;
  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(const FieldScalar& s);
  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, const FieldScalar& s) { return a *= s; }
  friend Mat operator*(const FieldScalar& s, Mat a) { return a *= s; }
  friend Mat operator*(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  /// One line per row, entries as parseable expressions.
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldScalar> a_;
};

Mat kron(const Mat& a, const Mat& b);
/// |ket><bra| for column vectors ket and bra.
Mat outer(const Mat& ket, const Mat& bra);
/// Block-diagonal direct sum of square blocks.
Mat direct_sum(const std::vector<Mat>& blocks);

/// Reduced row echelon form with its pivot columns.
struct RowEchelon {
  Mat r;
  std::vector<std::size_t> pivots;
};

RowEchelon rref(Mat a);
std::size_t rank(const Mat& a);
/// Columns form a basis of the nullspace (zero columns when trivial).
Mat nullspace(const Mat& a);
/// The pivot columns of a, a basis of its column space.
Mat column_space_basis(const Mat& a);
/// Solves a X = b for square invertible a; throws ArithmeticError when singular.
Mat solve(const Mat& a, const Mat& b);
Mat inverse(const Mat& a);
bool is_invertible(const Mat& a);
/// a^e by binary exponentiation.
Mat power(const Mat& a, unsigned long e);

}  // namespace qfid
