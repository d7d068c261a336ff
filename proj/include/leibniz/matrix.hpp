#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leibniz/errors.hpp"
#include "leibniz/scalar.hpp"

namespace leibniz {

using Vector = std::vector<Scalar>;

inline Vector unit_vector(size_t n, size_t k) {
  Vector v(n);
  v[k] = 1;
  return v;
}

inline bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

inline Vector operator+(Vector a, const Vector& b) {
  for (size_t k = 0; k < a.size(); ++k)
    if (!b[k].is_zero()) a[k] += b[k];
  return a;
}

inline Vector operator-(Vector a, const Vector& b) {
  for (size_t k = 0; k < a.size(); ++k)
    if (!b[k].is_zero()) a[k] -= b[k];
  return a;
}

inline Vector operator*(const Scalar& c, Vector v) {
  for (auto& x : v)
    if (!x.is_zero()) x *= c;
  return v;
}

/// v += c * w, skipping zero entries of w.
inline void axpy(Vector& v, const Scalar& c, const Vector& w) {
  if (c.is_zero()) return;
  for (size_t k = 0; k < w.size(); ++k)
    if (!w[k].is_zero()) v[k] += c * w[k];
}

/// Dense row-major matrix over Scalar.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t k = 0; k < n; ++k) m(k, k) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<Vector>& rows, size_t cols) {
    Matrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw InputError("ragged row list");
      std::copy(rows[r].begin(), rows[r].end(), m.data_.begin() + r * cols);
    }
    return m;
  }

  static Matrix from_columns(const std::vector<Vector>& columns, size_t rows) {
    Matrix m(rows, columns.size());
    for (size_t c = 0; c < columns.size(); ++c) {
      if (columns[c].size() != rows) throw InputError("ragged column list");
      for (size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
    }
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Scalar& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Scalar> row_span(size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  Vector row(size_t r) const {
    auto s = row_span(r);
    return Vector(s.begin(), s.end());
  }
  Vector col(size_t c) const {
    Vector v(rows_);
    for (size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_col(size_t c, const Vector& v) {
    for (size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  bool is_zero() const { return leibniz::is_zero(data_); }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
      for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  /// Row-major flattening; the canonical vectorization of a matrix.
  const Vector& flat() const { return data_; }
  static Matrix unflatten(const Vector& v, size_t rows, size_t cols) {
    Matrix m(rows, cols);
    m.data_ = v;
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (size_t k = 0; k < data_.size(); ++k)
      if (!o.data_[k].is_zero()) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (size_t k = 0; k < data_.size(); ++k)
      if (!o.data_[k].is_zero()) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Scalar& c, Matrix m) {
    for (auto& x : m.data_)
      if (!x.is_zero()) x *= c;
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
    Matrix p(a.rows_, b.cols_);
    for (size_t r = 0; r < a.rows_; ++r)
      for (size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(r, k);
        if (x.is_zero()) continue;
        for (size_t c = 0; c < b.cols_; ++c) {
          const Scalar& y = b(k, c);
          if (!y.is_zero()) p(r, c) += x * y;
        }
      }
    return p;
  }

  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.size()) throw InputError("matrix-vector shape mismatch");
    Vector out(a.rows_);
    for (size_t r = 0; r < a.rows_; ++r)
      for (size_t c = 0; c < a.cols_; ++c)
        if (!a(r, c).is_zero() && !v[c].is_zero()) out[r] += a(r, c) * v[c];
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Scalar trace() const {
    Scalar t;
    for (size_t k = 0; k < std::min(rows_, cols_); ++k) t += (*this)(k, k);
    return t;
  }

  Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    Matrix b(nr, nc);
    for (size_t r = 0; r < nr; ++r)
      for (size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
    return b;
  }

  std::string str() const {
    std::string s = "[";
    for (size_t r = 0; r < rows_; ++r) {
      s += r ? ", [" : "[";
      for (size_t c = 0; c < cols_; ++c) s += (c ? ", " : "") + (*this)(r, c).str();
      s += "]";
    }
    return s + "]";
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
  }

  size_t rows_ = 0;
  size_t cols_ = 0;
  Vector data_;
};

inline Matrix power(const Matrix& m, unsigned k) {
  if (!m.square()) throw InputError("power of a non-square matrix");
  Matrix p = Matrix::identity(m.rows());
  for (unsigned j = 0; j < k; ++j) p = p * m;
  return p;
}

/// Incremental Gauss-Jordan reduction. Rows are kept fully reduced with unit
/// pivots, so the accumulated set is always in reduced row-echelon form up
/// to row order.
class RowReducer {
 public:
  explicit RowReducer(size_t cols) : cols_(cols) {}

  size_t cols() const { return cols_; }
  size_t rank() const { return rows_.size(); }

  /// Reduces v against the stored rows; returns the residual.
  Vector reduce(Vector v) const {
    for (size_t k = 0; k < rows_.size(); ++k) {
      const Scalar f = v[pivots_[k]];
      if (!f.is_zero()) axpy(v, -f, rows_[k]);
    }
    return v;
  }

  bool in_span(const Vector& v) const { return leibniz::is_zero(reduce(v)); }

  /// Adds v; returns true when it increased the rank.
  bool add(Vector v) {
    if (v.size() != cols_) throw InputError("row length mismatch");
    v = reduce(std::move(v));
    size_t p = 0;
    while (p < cols_ && v[p].is_zero()) ++p;
    if (p == cols_) return false;
    const Scalar inv = Scalar(1) / v[p];
    for (auto& x : v)
      if (!x.is_zero()) x *= inv;
    for (auto& r : rows_) {
      const Scalar f = r[p];
      if (!f.is_zero()) axpy(r, -f, v);
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  /// Rows sorted by pivot column: the canonical reduced row-echelon form.
  std::pair<std::vector<Vector>, std::vector<size_t>> sorted() const {
    std::vector<size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return pivots_[a] < pivots_[b]; });
    std::vector<Vector> rows;
    std::vector<size_t> piv;
    for (size_t k : order) {
      rows.push_back(rows_[k]);
      piv.push_back(pivots_[k]);
    }
    return {rows, piv};
  }

 private:
  size_t cols_;
  std::vector<Vector> rows_;
  std::vector<size_t> pivots_;
};

struct RrefResult {
  Matrix form;  // same shape as the input, zero rows at the bottom
  size_t rank = 0;
  std::vector<size_t> pivots;
};

inline RrefResult rref(const Matrix& m) {
  RowReducer red(m.cols());
  for (size_t r = 0; r < m.rows(); ++r) red.add(m.row(r));
  auto [rows, piv] = red.sorted();
  RrefResult out{Matrix(m.rows(), m.cols()), rows.size(), piv};
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < m.cols(); ++c) out.form(r, c) = rows[r][c];
  return out;
}

inline size_t rank(const Matrix& m) {
  RowReducer red(m.cols());
  for (size_t r = 0; r < m.rows(); ++r) red.add(m.row(r));
  return red.rank();
}

/// Linear subspace of Scalar^ambient stored by its canonical reduced
/// row-echelon basis (zero rows removed).
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace span(size_t ambient, const std::vector<Vector>& vectors) {
    RowReducer red(ambient);
    for (const auto& v : vectors) red.add(v);
    return from_reducer(red);
  }

  static Subspace from_reducer(const RowReducer& red) {
    auto [rows, piv] = red.sorted();
    Subspace s(red.cols());
    s.basis_ = Matrix::from_rows(rows, red.cols());
    s.pivots_ = std::move(piv);
    return s;
  }

  static Subspace full(size_t ambient) {
    std::vector<Vector> e;
    for (size_t k = 0; k < ambient; ++k) e.push_back(unit_vector(ambient, k));
    return span(ambient, e);
  }

  size_t ambient() const { return ambient_; }
  size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  const Matrix& basis() const { return basis_; }
  const std::vector<size_t>& pivots() const { return pivots_; }
  std::vector<Vector> vectors() const {
    std::vector<Vector> out;
    for (size_t r = 0; r < dim(); ++r) out.push_back(basis_.row(r));
    return out;
  }

  RowReducer reducer() const {
    RowReducer red(ambient_);
    for (size_t r = 0; r < dim(); ++r) red.add(basis_.row(r));
    return red;
  }

  bool contains(const Vector& v) const {
    if (v.size() != ambient_) throw InputError("ambient dimension mismatch");
    // Canonical RREF: reduce directly against the pivots.
    Vector w = v;
    for (size_t r = 0; r < dim(); ++r) {
      const Scalar f = w[pivots_[r]];
      if (!f.is_zero()) {
        auto row = basis_.row_span(r);
        for (size_t c = 0; c < ambient_; ++c)
          if (!row[c].is_zero()) w[c] -= f * row[c];
      }
    }
    return leibniz::is_zero(w);
  }

  bool contains(const Subspace& o) const {
    check_ambient(o);
    for (size_t r = 0; r < o.dim(); ++r)
      if (!contains(o.basis_.row(r))) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  void check_ambient(const Subspace& o) const {
    if (ambient_ != o.ambient_) throw InputError("ambient dimension mismatch");
  }

 private:
  size_t ambient_ = 0;
  Matrix basis_;
  std::vector<size_t> pivots_;
};

/// {v : m v = 0}, verified by multiplying every basis vector back.
inline Subspace kernel_of_rows(const RowReducer& red) {
  const size_t n = red.cols();
  auto [rows, piv] = red.sorted();
  std::vector<bool> is_pivot(n, false);
  for (size_t p : piv) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n);
    v[f] = 1;
    for (size_t r = 0; r < rows.size(); ++r) v[piv[r]] = -rows[r][f];
    basis.push_back(std::move(v));
  }
  for (const auto& v : basis)
    for (const auto& r : rows) {
      Scalar dot;
      for (size_t c = 0; c < n; ++c)
        if (!r[c].is_zero() && !v[c].is_zero()) dot += r[c] * v[c];
      if (!dot.is_zero()) throw InvariantViolation("kernel vector failed re-substitution");
    }
  return Subspace::span(n, basis);
}

inline Subspace kernel(const Matrix& m) {
  RowReducer red(m.cols());
  for (size_t r = 0; r < m.rows(); ++r) red.add(m.row(r));
  return kernel_of_rows(red);
}

/// Annihilator under the bilinear pairing sum(v_k w_k); ann(ann(V)) = V.
inline Subspace annihilator(const Subspace& s) {
  return kernel_of_rows(s.reducer());
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  a.check_ambient(b);
  RowReducer red = a.reducer();
  for (size_t r = 0; r < b.dim(); ++r) red.add(b.basis().row(r));
  return Subspace::from_reducer(red);
}

inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  a.check_ambient(b);
  return annihilator(subspace_sum(annihilator(a), annihilator(b)));
}

inline bool subspace_contains(const Subspace& a, const Subspace& b) { return a.contains(b); }

inline Matrix inverse(const Matrix& m) {
  if (!m.square()) throw InputError("inverse of a non-square matrix");
  const size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  RrefResult red = rref(aug);
  if (red.rank < n || red.pivots[n - 1] != n - 1) throw InputError("singular matrix");
  Matrix inv = red.form.block(0, n, n, n);
  if (!(m * inv == Matrix::identity(n)))
    throw InvariantViolation("inverse failed re-multiplication");
  return inv;
}

inline bool is_nilpotent_matrix(const Matrix& m) {
  if (!m.square()) throw InputError("nilpotency test of a non-square matrix");
  Matrix p = m;
  for (size_t k = 1; k < m.rows() && !p.is_zero(); ++k) p = p * m;
  return p.is_zero();
}

/// Sizes of the Jordan blocks of a nilpotent matrix, in decreasing order.
/// (#blocks of size >= k) = rank(m^{k-1}) - rank(m^k).
inline std::vector<size_t> jordan_block_sizes(const Matrix& m) {
  if (!is_nilpotent_matrix(m)) throw DomainError("jordan_block_sizes: matrix is not nilpotent");
  const size_t n = m.rows();
  std::vector<size_t> ranks{n};
  Matrix p = Matrix::identity(n);
  while (ranks.back() > 0) {
    p = p * m;
    ranks.push_back(rank(p));
  }
  // at_least[k] = number of blocks of size >= k
  std::vector<size_t> sizes;
  for (size_t k = ranks.size() - 1; k >= 1; --k) {
    size_t at_least = ranks[k - 1] - ranks[k];
    size_t at_least_next = k + 1 < ranks.size() ? ranks[k] - ranks[k + 1] : 0;
    for (size_t j = 0; j < at_least - at_least_next; ++j) sizes.push_back(k);
  }
  return sizes;
}

}  // namespace leibniz
