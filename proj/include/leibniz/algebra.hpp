#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "leibniz/matrix.hpp"
#include "leibniz/tensor.hpp"

namespace leibniz {

// ---------------------------------------------------------------------------
// Leibniz identity

struct LeibnizViolation {
  std::array<size_t, 3> triple;  // 1-based (i, j, k)
  Vector defect;
};

struct LeibnizReport {
  bool pass = true;
  std::vector<LeibnizViolation> violations;
};

/// LI(x, y, z) = [x,[y,z]] - [[x,y],z] + [[x,z],y].
inline Vector leibniz_defect(const StructureTensor& t, const Vector& x, const Vector& y,
                             const Vector& z) {
  Vector d = t.bracket(x, t.bracket(y, z));
  d = d - t.bracket(t.bracket(x, y), z);
  return d + t.bracket(t.bracket(x, z), y);
}

/// Evaluates the defect on all n^3 basis triples. The defect is trilinear,
/// so vanishing on basis triples is equivalent to the Leibniz identity.
inline LeibnizReport leibniz_check(const StructureTensor& t, size_t max_violations = 64) {
  const size_t n = t.dim();
  LeibnizReport rep;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        Vector d(n);
        // [e_i, [e_j, e_k]]
        for (const auto& s : t.cell(j + 1, k + 1))
          for (const auto& u : t.cell(i + 1, s.t)) d[u.t - 1] += s.c * u.c;
        // - [[e_i, e_j], e_k]
        for (const auto& s : t.cell(i + 1, j + 1))
          for (const auto& u : t.cell(s.t, k + 1)) d[u.t - 1] -= s.c * u.c;
        // + [[e_i, e_k], e_j]
        for (const auto& s : t.cell(i + 1, k + 1))
          for (const auto& u : t.cell(s.t, j + 1)) d[u.t - 1] += s.c * u.c;
        if (!is_zero(d)) {
          rep.pass = false;
          if (rep.violations.size() < max_violations)
            rep.violations.push_back({{i + 1, j + 1, k + 1}, std::move(d)});
        }
      }
  return rep;
}

// ---------------------------------------------------------------------------
// Series

enum class SeriesKind { LowerCentral, Derived };

struct SeriesReport {
  SeriesKind kind = SeriesKind::LowerCentral;
  std::vector<Subspace> terms;  // terms[0] is the whole algebra
  std::vector<size_t> dims;
  bool reaches_zero() const { return !terms.empty() && terms.back().is_zero(); }
};

/// span{[u, e_j] : u in s}.
inline Subspace product_with_algebra(const StructureTensor& t, const Subspace& s) {
  RowReducer red(t.dim());
  for (const auto& u : s.vectors())
    for (size_t j = 0; j < t.dim(); ++j) red.add(t.bracket_basis_right(u, j));
  return Subspace::from_reducer(red);
}

/// span{[u, v] : u, v in s}.
inline Subspace product_with_self(const StructureTensor& t, const Subspace& s) {
  RowReducer red(t.dim());
  auto vs = s.vectors();
  for (const auto& u : vs)
    for (const auto& v : vs) red.add(t.bracket(u, v));
  return Subspace::from_reducer(red);
}

/// Iterates until the term stabilizes; the stable term is the last entry.
inline SeriesReport series(const StructureTensor& t, SeriesKind kind) {
  SeriesReport rep;
  rep.kind = kind;
  rep.terms.push_back(Subspace::full(t.dim()));
  while (!rep.terms.back().is_zero()) {
    Subspace next = kind == SeriesKind::LowerCentral ? product_with_algebra(t, rep.terms.back())
                                                     : product_with_self(t, rep.terms.back());
    if (next == rep.terms.back()) break;
    rep.terms.push_back(std::move(next));
  }
  for (const auto& s : rep.terms) rep.dims.push_back(s.dim());
  return rep;
}

inline SeriesReport lower_central_series(const StructureTensor& t) {
  return series(t, SeriesKind::LowerCentral);
}
inline SeriesReport derived_series(const StructureTensor& t) {
  return series(t, SeriesKind::Derived);
}

inline bool is_nilpotent_algebra(const StructureTensor& t) {
  return lower_central_series(t).reaches_zero();
}
inline bool is_solvable_algebra(const StructureTensor& t) {
  return derived_series(t).reaches_zero();
}

/// Smallest s with L^s = 0; nullopt for non-nilpotent algebras.
inline std::optional<size_t> nilindex(const StructureTensor& t) {
  auto rep = lower_central_series(t);
  if (!rep.reaches_zero()) return std::nullopt;
  return rep.terms.size();
}

// ---------------------------------------------------------------------------
// Annihilators, ideals, squares

struct Annihilators {
  Subspace right;  // {x : [y, x] = 0 for all y}
  Subspace left;   // {x : [x, y] = 0 for all y}
};

inline Annihilators annihilators(const StructureTensor& t) {
  const size_t n = t.dim();
  RowReducer right(n), left(n);
  // Row t of the stacked map x -> [e_i, x] has entries gamma_{i,j}^t over j.
  for (size_t i = 1; i <= n; ++i)
    for (size_t s = 1; s <= n; ++s) {
      Vector rrow(n), lrow(n);
      for (size_t j = 1; j <= n; ++j) {
        rrow[j - 1] = t.coefficient(i, j, s);
        lrow[j - 1] = t.coefficient(j, i, s);
      }
      right.add(std::move(rrow));
      left.add(std::move(lrow));
    }
  return {kernel_of_rows(right), kernel_of_rows(left)};
}

/// {x : [x, L] = [L, x] = 0}.
inline Subspace center(const StructureTensor& t) {
  auto ann = annihilators(t);
  return subspace_intersect(ann.right, ann.left);
}

inline bool is_ideal(const StructureTensor& t, const Subspace& u) {
  if (u.ambient() != t.dim()) throw InputError("is_ideal: ambient dimension mismatch");
  for (const auto& v : u.vectors())
    for (size_t j = 0; j < t.dim(); ++j) {
      if (!u.contains(t.bracket_basis_right(v, j))) return false;
      if (!u.contains(t.bracket_basis_left(j, v))) return false;
    }
  return true;
}

/// Smallest two-sided ideal containing s.
inline Subspace ideal_closure(const StructureTensor& t, const Subspace& s) {
  RowReducer red = s.reducer();
  std::vector<Vector> frontier = s.vectors();
  while (!frontier.empty()) {
    std::vector<Vector> next;
    for (const auto& v : frontier)
      for (size_t j = 0; j < t.dim(); ++j)
        for (Vector w : {t.bracket_basis_right(v, j), t.bracket_basis_left(j, v)})
          if (red.add(w)) next.push_back(std::move(w));
    frontier = std::move(next);
  }
  return Subspace::from_reducer(red);
}

/// Ideal generated by all squares [x, x]. By polarization the squares span
/// the same space as {[e_i, e_i], [e_i, e_j] + [e_j, e_i]}.
inline Subspace squares_ideal(const StructureTensor& t) {
  const size_t n = t.dim();
  std::vector<Vector> gens;
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = i; j <= n; ++j)
      gens.push_back(i == j ? t.product(i, i) : t.product(i, j) + t.product(j, i));
  return ideal_closure(t, Subspace::span(n, gens));
}

inline bool is_antisymmetric(const StructureTensor& t) {
  for (size_t i = 1; i <= t.dim(); ++i)
    for (size_t j = i; j <= t.dim(); ++j)
      if (!is_zero(t.product(i, j) + t.product(j, i))) return false;
  return true;
}

/// Leibniz plus antisymmetry is the Jacobi identity.
inline bool is_lie(const StructureTensor& t) { return is_antisymmetric(t) && leibniz_check(t, 1).pass; }

// ---------------------------------------------------------------------------
// Basis changes

/// Tensor in the basis e'_j = sum_i p(i, j) e_i, i.e. the columns of p:
/// [u, v]' = p^{-1} [p u, p v].
inline StructureTensor apply_basis_change(const StructureTensor& t, const Matrix& p) {
  const size_t n = t.dim();
  if (p.rows() != n || !p.square()) throw InputError("basis change has wrong shape");
  Matrix pinv = inverse(p);  // throws InputError when singular
  std::vector<Vector> cols;
  for (size_t j = 0; j < n; ++j) cols.push_back(p.col(j));
  StructureTensor out(n, t.labels());
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Vector b = t.bracket(cols[i], cols[j]);
      if (!is_zero(b)) out.set_product(i + 1, j + 1, pinv * b);
    }
  return out;
}

inline bool is_isomorphism(const StructureTensor& a, const StructureTensor& b, const Matrix& p) {
  if (a.dim() != b.dim()) return false;
  return apply_basis_change(a, p) == b;
}

// ---------------------------------------------------------------------------
// Natural grading

struct GradedTensor {
  std::vector<size_t> piece_dims;  // dim L_i = dim L^i / L^{i+1}
  std::vector<size_t> degree;      // degree of each adapted basis vector (1-based)
  Matrix representative_map;       // columns: coset representatives, by degree
  StructureTensor tensor;          // gr(L) on the representatives
  bool representative_map_is_isomorphism = false;
};

/// Basis adapted to a decreasing flag: for each term, the canonical RREF rows
/// of that term that are independent of the next term (plus the ones already
/// chosen) become its representatives.
inline std::pair<Matrix, std::vector<size_t>> adapted_basis(const std::vector<Subspace>& flag,
                                                            size_t n) {
  std::vector<Vector> cols;
  std::vector<size_t> degree;
  for (size_t i = 0; i < flag.size(); ++i) {
    if (flag[i].is_zero()) break;
    RowReducer red = i + 1 < flag.size() ? flag[i + 1].reducer() : RowReducer(n);
    for (const auto& v : flag[i].vectors())
      if (red.add(v)) {
        cols.push_back(v);
        degree.push_back(i + 1);
      }
  }
  if (cols.size() != n) throw InvariantViolation("flag does not start at the whole space");
  return {Matrix::from_columns(cols, n), degree};
}

inline GradedTensor natural_grading(const StructureTensor& t) {
  auto lcs = lower_central_series(t);
  if (!lcs.reaches_zero()) throw DomainError("natural_grading: algebra is not nilpotent");
  const size_t n = t.dim();
  GradedTensor g;
  for (size_t i = 0; i + 1 < lcs.terms.size(); ++i)
    g.piece_dims.push_back(lcs.dims[i] - lcs.dims[i + 1]);
  auto [p, degree] = adapted_basis(lcs.terms, n);
  g.representative_map = p;
  g.degree = degree;
  StructureTensor in_reps = apply_basis_change(t, p);
  g.tensor = StructureTensor(n, t.labels());
  in_reps.for_each([&](size_t i, size_t j, size_t s, const Scalar& c) {
    if (degree[s - 1] == degree[i - 1] + degree[j - 1]) g.tensor.set(i, j, s, c);
  });
  g.representative_map_is_isomorphism = (in_reps == g.tensor);
  return g;
}

}  // namespace leibniz
