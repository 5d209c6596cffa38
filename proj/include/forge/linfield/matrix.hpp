#pragma once

#include <optional>
#include <vector>

#include "poly.hpp"

namespace forge
{

/// Dense matrix over a finite field, row-major.
class Matrix
{
public:
  Matrix() = default;
  Matrix(FieldPtr F, std::size_t rows, std::size_t cols)
      : F_(std::move(F)), rows_(rows), cols_(cols), a_(rows * cols, 0)
  {
  }

  static Matrix identity(FieldPtr F, std::size_t n)
  {
    Matrix m(std::move(F), n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(FieldPtr F, std::vector<std::vector<fe>> const &rows)
  {
    Matrix m(std::move(F), rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_)
        throw InvalidArgument("matrix: ragged rows");
      for (std::size_t j = 0; j < m.cols_; ++j) {
        if (rows[i][j] >= m.F_->q())
          throw InvalidArgument("matrix: entry outside the field");
        m(i, j) = rows[i][j];
      }
    }
    return m;
  }

  /// Companion matrix of a monic f: ones on the subdiagonal and the negated
  /// low coefficients in the last column.
  static Matrix companion(FieldPtr F, Poly const &f)
  {
    auto k = static_cast<std::size_t>(degree(f));
    Matrix m(F, k, k);
    for (std::size_t i = 0; i + 1 < k; ++i)
      m(i + 1, i) = 1;
    for (std::size_t i = 0; i < k; ++i)
      m(i, k - 1) = F->neg(f[i]);
    return m;
  }

  GaloisField const &field() const { return *F_; }
  FieldPtr const &field_ptr() const { return F_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  fe &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  fe operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::vector<fe> const &data() const { return a_; }

  bool operator==(Matrix const &o) const
  {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  Matrix operator*(Matrix const &o) const
  {
    if (cols_ != o.rows_)
      throw InvalidArgument("matrix: shape mismatch in product");
    Matrix r(F_, rows_, o.cols_);
    auto const &F = *F_;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        fe x = (*this)(i, k);
        if (x == 0)
          continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) = F.add(r(i, j), F.mul(x, o(k, j)));
      }
    return r;
  }

  Matrix operator+(Matrix const &o) const
  {
    Matrix r(F_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
      r.a_[i] = F_->add(a_[i], o.a_[i]);
    return r;
  }

  Matrix operator-(Matrix const &o) const
  {
    Matrix r(F_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
      r.a_[i] = F_->sub(a_[i], o.a_[i]);
    return r;
  }

  Matrix scaled(fe s) const
  {
    Matrix r(*this);
    for (auto &x : r.a_)
      x = F_->mul(x, s);
    return r;
  }

  Matrix transpose() const
  {
    Matrix r(F_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        r(j, i) = (*this)(i, j);
    return r;
  }

  Matrix pow(u64 k) const
  {
    Matrix r = identity(F_, rows_), b = *this;
    while (k) {
      if (k & 1)
        r = r * b;
      b = b * b;
      k >>= 1;
    }
    return r;
  }

  bool is_scalar() const
  {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? (*this)(0, 0) : 0))
          return false;
    return true;
  }

  /// Row-reduces in place; returns pivot columns and the determinant factor.
  struct Echelon
  {
    std::vector<std::size_t> pivots;
    fe det = 1;
  };

  Echelon reduce()
  {
    auto const &F = *F_;
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = rows_;
      for (std::size_t i = r; i < rows_; ++i)
        if ((*this)(i, c) != 0) {
          piv = i;
          break;
        }
      if (piv == rows_) {
        e.det = 0;
        continue;
      }
      if (piv != r) {
        for (std::size_t j = 0; j < cols_; ++j)
          std::swap((*this)(piv, j), (*this)(r, j));
        e.det = F.neg(e.det);
      }
      fe pv = (*this)(r, c);
      e.det = F.mul(e.det, pv);
      fe pinv = F.inv(pv);
      for (std::size_t j = 0; j < cols_; ++j)
        (*this)(r, j) = F.mul((*this)(r, j), pinv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c) == 0)
          continue;
        fe f = (*this)(i, c);
        for (std::size_t j = 0; j < cols_; ++j)
          (*this)(i, j) = F.sub((*this)(i, j), F.mul(f, (*this)(r, j)));
      }
      e.pivots.push_back(c);
      ++r;
    }
    if (e.pivots.size() < rows_)
      e.det = 0;
    return e;
  }

  fe det() const
  {
    if (!square())
      throw InvalidArgument("matrix: determinant of a non-square matrix");
    if (rows_ == 0)
      return 1;
    Matrix m(*this);
    auto e = m.reduce();
    return e.pivots.size() == rows_ ? e.det : 0;
  }

  std::size_t rank() const
  {
    Matrix m(*this);
    return m.reduce().pivots.size();
  }

  std::optional<Matrix> inverse() const
  {
    if (!square())
      throw InvalidArgument("matrix: inverse of a non-square matrix");
    std::size_t n = rows_;
    Matrix aug(F_, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        aug(i, j) = (*this)(i, j);
      aug(i, n + i) = 1;
    }
    auto e = aug.reduce();
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
      return std::nullopt;
    Matrix r(F_, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        r(i, j) = aug(i, n + j);
    return r;
  }

  /// Basis of {x : A x = 0}, returned as the columns of a matrix.
  Matrix nullspace() const
  {
    Matrix m(*this);
    auto e = m.reduce();
    std::vector<bool> is_pivot(cols_);
    for (auto c : e.pivots)
      is_pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < cols_; ++c)
      if (!is_pivot[c])
        free.push_back(c);
    Matrix basis(F_, cols_, free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
      basis(free[k], k) = 1;
      for (std::size_t r = 0; r < e.pivots.size(); ++r)
        basis(e.pivots[r], k) = F_->neg(m(r, free[k]));
    }
    return basis;
  }

  /// A solution X of this * X = B, with free variables set to zero.
  std::optional<Matrix> solve(Matrix const &b) const
  {
    Matrix aug(F_, rows_, cols_ + b.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j)
        aug(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j)
        aug(i, cols_ + j) = b(i, j);
    }
    auto e = aug.reduce();
    if (!e.pivots.empty() && e.pivots.back() >= cols_)
      return std::nullopt;
    Matrix x(F_, cols_, b.cols_);
    for (std::size_t r = 0; r < e.pivots.size(); ++r)
      for (std::size_t j = 0; j < b.cols_; ++j)
        x(e.pivots[r], j) = aug(r, cols_ + j);
    return x;
  }

  std::vector<fe> column(std::size_t j) const
  {
    std::vector<fe> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      v[i] = (*this)(i, j);
    return v;
  }

  std::vector<fe> apply(std::vector<fe> const &v) const
  {
    std::vector<fe> r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        r[i] = F_->add(r[i], F_->mul((*this)(i, j), v[j]));
    return r;
  }

  /// Row vector times matrix.
  std::vector<fe> apply_right(std::vector<fe> const &v) const
  {
    std::vector<fe> r(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (v[i] == 0)
        continue;
      for (std::size_t j = 0; j < cols_; ++j)
        r[j] = F_->add(r[j], F_->mul(v[i], (*this)(i, j)));
    }
    return r;
  }

private:
  FieldPtr F_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<fe> a_;
};

inline Matrix columns_to_matrix(FieldPtr F, std::size_t n, std::vector<std::vector<fe>> const &cols)
{
  Matrix m(std::move(F), n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      m(i, j) = cols[j][i];
  return m;
}

inline Matrix hcat(Matrix const &a, Matrix const &b)
{
  if (a.cols() == 0)
    return b;
  if (b.cols() == 0)
    return a;
  Matrix r(a.field_ptr(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j)
      r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

inline Matrix block_diagonal(FieldPtr F, std::vector<Matrix> const &blocks)
{
  std::size_t n = 0;
  for (auto const &b : blocks)
    n += b.rows();
  Matrix r(std::move(F), n, n);
  std::size_t off = 0;
  for (auto const &b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j)
        r(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return r;
}

/// h(A) by Horner's rule.
inline Matrix poly_eval(Poly const &h, Matrix const &a)
{
  Matrix r(a.field_ptr(), a.rows(), a.cols());
  for (std::size_t i = h.size(); i-- > 0;)
    r = r * a + Matrix::identity(a.field_ptr(), a.rows()).scaled(h[i]);
  return r;
}

} // namespace forge
