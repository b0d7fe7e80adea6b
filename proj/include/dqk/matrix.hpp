#pragma once

// Dense matrices over Scalar with exact (or tolerance-aware) elimination.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "dqk/error.hpp"
#include "dqk/scalar.hpp"

namespace dqk {

using Vector = std::vector<Scalar>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DomainError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_ints(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<Vector> out;
    for (const auto& r : rows) {
      Vector v;
      for (long x : r) v.emplace_back(x);
      out.push_back(std::move(v));
    }
    return from_rows(out);
  }

  static Matrix diagonal(const Vector& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const { return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  Vector col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<Vector> row_list() const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Entrywise scalar conjugation.
  Matrix conj() const {
    Matrix c(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) c.data_[k] = data_[k].conj();
    return c;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  bool is_zero() const {
    for (const auto& s : data_)
      if (!s.is_zero()) return false;
    return true;
  }

  bool is_square() const { return rows_ == cols_; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_exact() const {
    for (const auto& s : data_)
      if (!s.is_exact()) return false;
    return true;
  }

  bool is_real() const {
    for (const auto& s : data_)
      if (!s.is_real()) return false;
    return true;
  }

  const std::vector<Scalar>& data() const { return data_; }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] + b.data_[k];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] - b.data_[k];
    return c;
  }

  friend Matrix operator-(const Matrix& a) {
    Matrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = -a.data_[k];
    return c;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik.is_exact() && aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator*(const Scalar& s, const Matrix& a) {
    Matrix c(a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = s * a.data_[k];
    return c;
  }

  friend Vector operator*(const Matrix& a, const Vector& x) {
    if (a.cols_ != x.size()) throw DomainError("matrix-vector shape mismatch");
    Vector y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (a.data_[k] != b.data_[k]) return false;
    return true;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DomainError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

// ---------------------------------------------------------------------------
// Vector helpers

inline Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DomainError("vector size mismatch");
  Vector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DomainError("vector size mismatch");
  Vector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

inline Vector operator*(const Scalar& s, const Vector& a) {
  Vector c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}

/// Bilinear dot product (no conjugation).
inline Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DomainError("vector size mismatch");
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const Vector& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

inline Vector conj(const Vector& v) {
  Vector c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = v[i].conj();
  return c;
}

inline bool all_exact(const Vector& v) {
  for (const auto& s : v)
    if (!s.is_exact()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Elimination

struct EchelonForm {
  Matrix reduced;                   // reduced row echelon form, zero rows removed
  std::vector<std::size_t> pivots;  // pivot column of each row
};

namespace detail {

// Exact matrices pivot on the first nonzero entry; as soon as a float is
// present we pivot on the largest magnitude.
inline std::optional<std::size_t> find_pivot(const Matrix& m, std::size_t from_row, std::size_t col, bool by_magnitude) {
  std::optional<std::size_t> best;
  double best_mag = -1.0;
  for (std::size_t i = from_row; i < m.rows(); ++i) {
    const Scalar& s = m(i, col);
    if (s.is_zero()) continue;
    if (!by_magnitude) return i;
    double mag = s.magnitude();
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  return best;
}

inline void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace detail

inline EchelonForm rref(Matrix m) {
  const bool by_magnitude = !m.is_exact();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    auto p = detail::find_pivot(m, r, c, by_magnitude);
    if (!p) {
      for (std::size_t i = r; i < m.rows(); ++i) m(i, c) = m(i, c).is_exact() ? Scalar(0) : m(i, c) * Scalar(0);
      continue;
    }
    detail::swap_rows(m, r, *p);
    const Scalar inv = Scalar(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    m(r, c) = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const Scalar f = m(i, c);
      if (f.is_zero()) {
        m(i, c) = 0;
        continue;
      }
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
      m(i, c) = 0;
    }
    pivots.push_back(c);
    ++r;
  }
  return {m.block(0, 0, r, m.cols()), pivots};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

inline Scalar determinant(Matrix m) {
  if (!m.is_square()) throw DomainError("determinant of a non-square matrix");
  const bool by_magnitude = !m.is_exact();
  Scalar det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    auto p = detail::find_pivot(m, c, c, by_magnitude);
    if (!p) return by_magnitude ? det * Scalar(0) : Scalar(0);
    if (*p != c) {
      detail::swap_rows(m, c, *p);
      det = -det;
    }
    det *= m(c, c);
    const Scalar inv = Scalar(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      const Scalar f = m(i, c) * inv;
      if (f.is_zero()) continue;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Rows of the result form a basis of {x : m x = 0}.
inline Matrix nullspace(const Matrix& m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return Matrix(0, m.cols());
  return Matrix::from_rows(basis);
}

/// Some solution of a x = b, or nullopt when the system is inconsistent.
inline std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (a.rows() != b.size()) throw DomainError("solve: shape mismatch");
  Matrix aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
  auto e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vector x(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  return x;
}

inline Matrix inverse(const Matrix& a) {
  if (!a.is_square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix aug(n, 2 * n);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, Matrix::identity(n));
  auto e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw DomainError("matrix is singular");
  return e.reduced.block(0, n, n, n);
}

inline Matrix stack(const Matrix& top, const Matrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) throw DomainError("stack: column mismatch");
  Matrix m(top.rows() + bottom.rows(), top.cols());
  m.set_block(0, 0, top);
  m.set_block(top.rows(), 0, bottom);
  return m;
}

}  // namespace dqk
