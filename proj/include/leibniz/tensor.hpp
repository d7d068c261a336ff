#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leibniz/errors.hpp"
#include "leibniz/matrix.hpp"
#include "leibniz/scalar.hpp"

namespace leibniz {

/// One structure constant gamma_{i,j}^t (1-based t).
struct Term {
  size_t t;
  Scalar c;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Structure constants of an n-dimensional algebra:
/// [e_i, e_j] = sum_t gamma_{i,j}^t e_t, indices 1-based as in e_1..e_n.
/// Each cell is kept sorted by t without zero coefficients.
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(size_t dim, std::vector<std::string> labels = {})
      : dim_(dim), cells_(dim * dim), labels_(std::move(labels)) {
    if (labels_.empty())
      for (size_t k = 1; k <= dim; ++k) labels_.push_back("e" + std::to_string(k));
    if (labels_.size() != dim) throw InputError("label count does not match dimension");
  }

  size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (labels.size() != dim_) throw InputError("label count does not match dimension");
    labels_ = std::move(labels);
  }

  /// Overwrites gamma_{i,j}^t.
  void set(size_t i, size_t j, size_t t, const Scalar& c) {
    auto& cell = cell_ref(i, j);
    check_index(t);
    auto it = std::lower_bound(cell.begin(), cell.end(), t,
                               [](const Term& a, size_t v) { return a.t < v; });
    if (it != cell.end() && it->t == t) {
      if (c.is_zero())
        cell.erase(it);
      else
        it->c = c;
    } else if (!c.is_zero()) {
      cell.insert(it, Term{t, c});
    }
  }

  /// gamma_{i,j}^t += c.
  void add(size_t i, size_t j, size_t t, const Scalar& c) { set(i, j, t, coefficient(i, j, t) + c); }

  /// [e_i, e_j] := v (dense, 0-based coordinates).
  void set_product(size_t i, size_t j, const Vector& v) {
    if (v.size() != dim_) throw InputError("product vector length mismatch");
    auto& cell = cell_ref(i, j);
    cell.clear();
    for (size_t t = 0; t < dim_; ++t)
      if (!v[t].is_zero()) cell.push_back(Term{t + 1, v[t]});
  }

  Scalar coefficient(size_t i, size_t j, size_t t) const {
    const auto& cell = cell_at(i, j);
    for (const auto& term : cell)
      if (term.t == t) return term.c;
    return Scalar();
  }

  const std::vector<Term>& cell(size_t i, size_t j) const { return cell_at(i, j); }

  /// [e_i, e_j] as a dense coefficient vector.
  Vector product(size_t i, size_t j) const {
    Vector v(dim_);
    for (const auto& term : cell_at(i, j)) v[term.t - 1] = term.c;
    return v;
  }

  /// Bilinear extension of the table.
  Vector bracket(const Vector& u, const Vector& v) const {
    if (u.size() != dim_ || v.size() != dim_) throw InputError("bracket: vector length mismatch");
    Vector out(dim_);
    for (size_t i = 0; i < dim_; ++i) {
      if (u[i].is_zero()) continue;
      for (size_t j = 0; j < dim_; ++j) {
        if (v[j].is_zero()) continue;
        const auto& cell = cells_[i * dim_ + j];
        if (cell.empty()) continue;
        Scalar uv = u[i] * v[j];
        for (const auto& term : cell) out[term.t - 1] += uv * term.c;
      }
    }
    return out;
  }

  /// [e_i, v] (0-based i).
  Vector bracket_basis_left(size_t i, const Vector& v) const {
    Vector out(dim_);
    for (size_t j = 0; j < dim_; ++j) {
      if (v[j].is_zero()) continue;
      for (const auto& term : cells_[i * dim_ + j]) out[term.t - 1] += v[j] * term.c;
    }
    return out;
  }

  /// [u, e_j] (0-based j).
  Vector bracket_basis_right(const Vector& u, size_t j) const {
    Vector out(dim_);
    for (size_t i = 0; i < dim_; ++i) {
      if (u[i].is_zero()) continue;
      for (const auto& term : cells_[i * dim_ + j]) out[term.t - 1] += u[i] * term.c;
    }
    return out;
  }

  /// Right multiplication R_x : y -> [y, x]; column j is [e_j, x].
  Matrix right_mult(const Vector& x) const {
    Matrix m(dim_, dim_);
    for (size_t j = 0; j < dim_; ++j) m.set_col(j, bracket_basis_left(j, x));
    return m;
  }

  /// Left multiplication L_x : y -> [x, y]; column j is [x, e_j].
  Matrix left_mult(const Vector& x) const {
    Matrix m(dim_, dim_);
    for (size_t j = 0; j < dim_; ++j) m.set_col(j, bracket_basis_right(x, j));
    return m;
  }

  size_t nonzero_count() const {
    size_t n = 0;
    for (const auto& c : cells_) n += c.size();
    return n;
  }

  /// (i, j, t, gamma) for every stored constant, ordered by (i, j, t).
  template <typename F>
  void for_each(F&& f) const {
    for (size_t i = 1; i <= dim_; ++i)
      for (size_t j = 1; j <= dim_; ++j)
        for (const auto& term : cells_[(i - 1) * dim_ + (j - 1)]) f(i, j, term.t, term.c);
  }

  /// Tensors compare by dimension and constants; labels are presentation only.
  friend bool operator==(const StructureTensor& a, const StructureTensor& b) {
    return a.dim_ == b.dim_ && a.cells_ == b.cells_;
  }

 private:
  void check_index(size_t k) const {
    if (k < 1 || k > dim_)
      throw InputError("basis index " + std::to_string(k) + " outside [1, " +
                       std::to_string(dim_) + "]");
  }
  std::vector<Term>& cell_ref(size_t i, size_t j) {
    check_index(i);
    check_index(j);
    return cells_[(i - 1) * dim_ + (j - 1)];
  }
  const std::vector<Term>& cell_at(size_t i, size_t j) const {
    check_index(i);
    check_index(j);
    return cells_[(i - 1) * dim_ + (j - 1)];
  }

  size_t dim_ = 0;
  std::vector<std::vector<Term>> cells_;
  std::vector<std::string> labels_;
};

}  // namespace leibniz
