#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/catalog.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/poly.hpp"
#include "leibniz/random.hpp"

namespace leibniz {

// ---------------------------------------------------------------------------
// Tables with polynomial structure constants

using SymVec = std::map<size_t, PolyExpr>;  // 0-based component -> coefficient

inline void sym_axpy(SymVec& v, const PolyExpr& c, const SymVec& w) {
  if (c.is_zero()) return;
  for (const auto& [k, x] : w) {
    PolyExpr& slot = v[k];
    slot += c * x;
    if (slot.is_zero()) v.erase(k);
  }
}

/// Like StructureTensor, with PolyExpr coefficients. Indices 1-based.
class SymTensor {
 public:
  SymTensor() = default;
  explicit SymTensor(size_t dim, std::vector<std::string> labels = {})
      : dim_(dim), cells_(dim * dim), labels_(std::move(labels)) {
    if (labels_.empty())
      for (size_t k = 1; k <= dim; ++k) labels_.push_back("e" + std::to_string(k));
  }
  static SymTensor from(const StructureTensor& t, size_t dim, std::vector<std::string> labels) {
    SymTensor s(dim, std::move(labels));
    t.for_each([&](size_t i, size_t j, size_t k, const Scalar& c) { s.set(i, j, k, PolyExpr(c)); });
    return s;
  }

  size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }

  void set(size_t i, size_t j, size_t t, const PolyExpr& c) {
    auto& cell = cells_[(i - 1) * dim_ + (j - 1)];
    if (c.is_zero())
      cell.erase(t - 1);
    else
      cell[t - 1] = c;
  }
  const SymVec& cell(size_t i, size_t j) const { return cells_[(i - 1) * dim_ + (j - 1)]; }
  PolyExpr get(size_t i, size_t j, size_t t) const {
    const auto& c = cell(i, j);
    auto it = c.find(t - 1);
    return it == c.end() ? PolyExpr() : it->second;
  }

  SymVec bracket(const SymVec& u, const SymVec& v) const {
    SymVec out;
    for (const auto& [a, ca] : u)
      for (const auto& [b, cb] : v) {
        const auto& c = cells_[a * dim_ + b];
        if (!c.empty()) sym_axpy(out, ca * cb, c);
      }
    return out;
  }
  static SymVec basis(size_t i) { return SymVec{{i - 1, PolyExpr(1)}}; }

  /// Defect LI(e_i, e_j, e_l) componentwise.
  SymVec defect(size_t i, size_t j, size_t l) const {
    SymVec ei = basis(i), ej = basis(j), el = basis(l);
    SymVec out = bracket(ei, cell(j, l));
    sym_axpy(out, PolyExpr(-1), bracket(cell(i, j), el));
    sym_axpy(out, PolyExpr(1), bracket(cell(i, l), ej));
    return out;
  }

  /// Substitutes an assignment; every coefficient must become constant.
  StructureTensor instantiate(const std::map<VarId, Scalar>& values) const {
    StructureTensor t(dim_, labels_);
    for (size_t i = 1; i <= dim_; ++i)
      for (size_t j = 1; j <= dim_; ++j)
        for (const auto& [k, c] : cell(i, j)) {
          PolyExpr v = c.partial(values);
          if (!v.is_constant()) throw InvariantViolation("instantiate: unassigned unknown in " + v.str());
          t.set(i, j, k + 1, v.constant_term());
        }
    return t;
  }

  /// Applies every substitution of a solved system.
  SymTensor substituted(const ConstraintSystem& s) const {
    SymTensor out = *this;
    for (auto& cell : out.cells_)
      for (auto it = cell.begin(); it != cell.end();) {
        for (const auto& [v, e] : s.substitutions()) it->second = it->second.substitute(v, e);
        if (it->second.is_zero())
          it = cell.erase(it);
        else
          ++it;
      }
    return out;
  }

 private:
  size_t dim_ = 0;
  std::vector<SymVec> cells_;
  std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// Skeletons

enum class SkeletonMode {
  Normal,  // strict normal form: diagonal weights, enumerated b_i in {0,1}
  Graded,  // Q preserves every graded piece; used for re-derivation
  Probe    // all products with Q unknown; Ann_r forced on the squares ideal
};

inline const char* mode_name(SkeletonMode m) {
  switch (m) {
    case SkeletonMode::Normal: return "normal";
    case SkeletonMode::Graded: return "graded";
    case SkeletonMode::Probe: return "probe";
  }
  return "?";
}

inline SkeletonMode parse_mode(const std::string& s) {
  if (s == "normal") return SkeletonMode::Normal;
  if (s == "graded") return SkeletonMode::Graded;
  if (s == "probe") return SkeletonMode::Probe;
  throw InputError("unknown mode '" + s + "' (normal, graded, probe)");
}

/// Degree of each basis vector in the lower central filtration, for algebras
/// whose filtration terms are spanned by basis vectors.
inline std::vector<size_t> basis_degrees(const StructureTensor& t) {
  auto lcs = lower_central_series(t);
  if (!lcs.reaches_zero()) throw DomainError("basis_degrees: algebra is not nilpotent");
  const size_t n = t.dim();
  std::vector<size_t> deg(n, 0);
  for (size_t k = 0; k < lcs.terms.size(); ++k) {
    const Subspace& s = lcs.terms[k];
    size_t coords = 0;
    for (size_t j = 0; j < n; ++j)
      if (s.contains(unit_vector(n, j))) {
        deg[j] = k + 1;
        ++coords;
      }
    if (coords != s.dim())
      throw DomainError("basis_degrees: lower central term " + std::to_string(k + 1) +
                        " is not spanned by basis vectors");
  }
  return deg;
}

/// Generator weights: e_t = [e_a, e_b] adds the weights of e_a and e_b.
/// ambiguous is set when two products give different weights.
struct WeightTable {
  std::vector<std::vector<long>> weight;  // per basis vector, per generator
  bool ambiguous = false;
};

inline WeightTable generator_weights(const StructureTensor& t, const std::vector<size_t>& gens) {
  const size_t n = t.dim();
  WeightTable w;
  w.weight.assign(n, {});
  for (size_t a = 0; a < gens.size(); ++a) {
    w.weight[gens[a] - 1].assign(gens.size(), 0);
    w.weight[gens[a] - 1][a] = 1;
  }
  for (bool changed = true; changed;) {
    changed = false;
    t.for_each([&](size_t i, size_t j, size_t s, const Scalar&) {
      if (w.weight[i - 1].empty() || w.weight[j - 1].empty()) return;
      std::vector<long> sum(gens.size());
      for (size_t a = 0; a < gens.size(); ++a) sum[a] = w.weight[i - 1][a] + w.weight[j - 1][a];
      auto& ws = w.weight[s - 1];
      if (ws.empty()) {
        ws = sum;
        changed = true;
      } else if (ws != sum && std::find(gens.begin(), gens.end(), s) == gens.end()) {
        w.ambiguous = true;
      }
    });
  }
  for (const auto& v : w.weight)
    if (v.empty()) throw DomainError("generator_weights: basis vector not reached from the generators");
  return w;
}

struct ExtensionSkeleton {
  StructureTensor nilradical;
  size_t n = 0, k = 0;
  SkeletonMode mode = SkeletonMode::Graded;
  std::vector<size_t> generators;  // 1-based, generator a pairs with x_{a}
  std::vector<size_t> degree;
  std::vector<int> b_choice;       // normal mode: b_i in {0, 1}
  bool weights_ambiguous = false;
  SymTensor table;                  // on e_1..e_n, x_1..x_k
  std::vector<PolyExpr> normalization;  // extra equations (= 0)
  std::vector<VarId> unknowns;
  std::vector<std::string> notes;

  size_t x(size_t a) const { return n + a; }  // 1-based index of x_a (a from 1)
};

inline std::vector<std::string> extension_labels(const StructureTensor& nil, size_t k) {
  auto l = nil.labels();
  if (k == 1) return (l.push_back("x"), l);
  if (k == 2) return (l.push_back("x"), l.push_back("y"), l);
  for (size_t a = 1; a <= k; ++a) l.push_back("x" + std::to_string(a));
  return l;
}

/// Unknown names: ex{a}[j][t] is the e_t-coefficient of [e_j, x_a],
/// xe{a}[j][t] that of [x_a, e_j], xx[a][b][t] that of [x_a, x_b].
inline std::string ex_name(size_t a, size_t j, size_t t) { return idx_name("ex" + std::to_string(a), {j, t}); }
inline std::string xe_name(size_t a, size_t j, size_t t) { return idx_name("xe" + std::to_string(a), {j, t}); }
inline std::string xx_name(size_t a, size_t b, size_t t) { return idx_name("xx", {a, b, t}); }

/// Builds the extension skeleton of N by k generators. The generators of N
/// are its degree-one basis vectors; x_a acts diagonally by 1 on the a-th.
inline ExtensionSkeleton build_skeleton(const StructureTensor& nil, size_t k, SkeletonMode mode,
                                        std::vector<int> b_choice = {}) {
  ExtensionSkeleton s;
  s.nilradical = nil;
  s.n = nil.dim();
  s.k = k;
  s.mode = mode;
  s.degree = basis_degrees(nil);
  const size_t n = s.n;
  for (size_t j = 1; j <= n; ++j)
    if (s.degree[j - 1] == 1) s.generators.push_back(j);
  if (k > s.generators.size())
    throw InputError("k = " + std::to_string(k) + " exceeds the number of generators (" +
                     std::to_string(s.generators.size()) +
                     "); dim Q is bounded by the maximal number of nil-independent derivations");
  s.table = SymTensor::from(nil, n + k, extension_labels(nil, k));
  if (k == 0) return s;
  auto unknown = [&](const std::string& name) {
    VarId v = var_id(name);
    s.unknowns.push_back(v);
    return PolyExpr::var(v);
  };
  auto same_degree = [&](size_t j) {
    std::vector<size_t> out;
    for (size_t t = 1; t <= n; ++t)
      if (s.degree[t - 1] == s.degree[j - 1]) out.push_back(t);
    return out;
  };
  auto is_gen = [&](size_t j) {
    return std::find(s.generators.begin(), s.generators.end(), j) != s.generators.end();
  };

  if (mode == SkeletonMode::Normal) {
    if (b_choice.empty()) b_choice.assign(k, 1);
    if (b_choice.size() != k) throw InputError("b_choice needs one entry per generator of Q");
    for (int b : b_choice)
      if (b != 0 && b != 1) throw InputError("b_i must be 0 or 1");
    s.b_choice = b_choice;
    std::vector<size_t> gens(s.generators.begin(), s.generators.begin() + k);
    auto w = generator_weights(nil, gens);
    s.weights_ambiguous = w.ambiguous;
    if (w.ambiguous) s.notes.push_back("generator weights are path-ambiguous; first path used");
    for (size_t a = 1; a <= k; ++a) {
      const size_t ga = s.generators[a - 1];
      for (size_t j = 1; j <= n; ++j) {
        if (j == ga) {
          s.table.set(j, s.x(a), j, PolyExpr(1));
          s.table.set(s.x(a), j, j, PolyExpr(Scalar(b_choice[a - 1] - 1)));
          continue;
        }
        if (!is_gen(j)) s.table.set(j, s.x(a), j, PolyExpr(Scalar(w.weight[j - 1][a - 1])));
        for (size_t t : same_degree(j)) s.table.set(s.x(a), j, t, unknown(xe_name(a, j, t)));
      }
    }
    return s;
  }

  for (size_t a = 1; a <= k; ++a)
    for (size_t j = 1; j <= n; ++j) {
      std::vector<size_t> targets;
      if (mode == SkeletonMode::Graded)
        targets = same_degree(j);
      else
        for (size_t t = 1; t <= n; ++t) targets.push_back(t);
      for (size_t t : targets) {
        // Normalization: x_a scales its own generator by 1 and the other
        // generators of Q by 0.
        bool fixed = false;
        for (size_t b = 1; b <= k; ++b)
          if (j == s.generators[b - 1] && t == j) {
            s.table.set(j, s.x(a), t, PolyExpr(a == b ? 1 : 0));
            fixed = true;
          }
        if (!fixed) s.table.set(j, s.x(a), t, unknown(ex_name(a, j, t)));
        s.table.set(s.x(a), j, t, unknown(xe_name(a, j, t)));
      }
    }
  if (mode == SkeletonMode::Probe) {
    for (size_t a = 1; a <= k; ++a)
      for (size_t b = 1; b <= k; ++b)
        for (size_t t = 1; t <= n; ++t) s.table.set(s.x(a), s.x(b), t, unknown(xx_name(a, b, t)));
    // Squares of N are squares of R, so they lie in Ann_r(R).
    for (const auto& v : squares_ideal(nil).vectors())
      for (size_t a = 1; a <= k; ++a) {
        SymVec sv;
        for (size_t j = 0; j < n; ++j)
          if (!v[j].is_zero()) sv[j] = PolyExpr(v[j]);
        SymVec img = s.table.bracket(SymTensor::basis(s.x(a)), sv);
        for (auto& [t, c] : img) s.normalization.push_back(c);
      }
    s.notes.push_back("Ann_r forced on the squares ideal of the nilradical");
    // The normalization gives [e_g, q] a nonzero e_g-coefficient for any q
    // with a Q-component, so Ann_r(R) lies in Ann_r(N). Symmetric sums
    // u.v + v.u are in Ann_r(R); their components off Ann_r(N) vanish.
    const Subspace annr = annihilators(nil).right;
    std::vector<Vector> off = annihilator(annr).vectors();  // functionals vanishing on Ann_r(N)
    auto force = [&](const SymVec& sum) {
      for (const auto& f : off) {
        PolyExpr e;
        for (const auto& [t, c] : sum)
          if (t < n && !f[t].is_zero()) e += f[t] * c;
        if (!e.is_zero()) s.normalization.push_back(e);
      }
    };
    for (size_t a = 1; a <= k; ++a) {
      for (size_t j = 1; j <= n; ++j) {
        SymVec sum = s.table.cell(s.x(a), j);
        sym_axpy(sum, PolyExpr(1), s.table.cell(j, s.x(a)));
        force(sum);
      }
      for (size_t b = a; b <= k; ++b) {
        SymVec sum = s.table.cell(s.x(a), s.x(b));
        sym_axpy(sum, PolyExpr(1), s.table.cell(s.x(b), s.x(a)));
        force(sum);
      }
    }
    s.notes.push_back("symmetric sums forced into Ann_r of the nilradical");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Constraints

struct GeneratedSystem {
  ConstraintSystem system;
  size_t triples = 0, equations = 0;
};

/// One equation per component of LI over every basis triple of R that
/// involves Q. Triples inside N must vanish identically (the nilradical is
/// checked), and any constant nonzero defect is reported with its triple.
inline GeneratedSystem generate_constraints(const ExtensionSkeleton& s,
                                            const std::set<VarId>& frozen = {}) {
  GeneratedSystem g;
  for (VarId v : s.unknowns) g.system.add_unknown(v);
  for (VarId v : frozen) g.system.freeze(v);
  const size_t N = s.table.dim();
  const auto& lab = s.table.labels();
  for (size_t i = 1; i <= N; ++i)
    for (size_t j = 1; j <= N; ++j)
      for (size_t l = 1; l <= N; ++l) {
        const bool inner = i <= s.n && j <= s.n && l <= s.n;
        ++g.triples;
        SymVec d = s.table.defect(i, j, l);
        for (auto& [t, c] : d) {
          if (c.is_zero()) continue;
          bool has_unknown = false;
          for (VarId v : c.variables()) has_unknown = has_unknown || !frozen.count(v);
          if (!has_unknown && c.variables().empty())
            throw CheckFailure("fixed part of the table violates the Leibniz identity at (" + lab[i - 1] +
                               "," + lab[j - 1] + "," + lab[l - 1] + ")");
          if (inner && !has_unknown && frozen.empty())
            throw CheckFailure("nilradical violates the Leibniz identity");
          g.system.add_equation(c);
          ++g.equations;
        }
      }
  for (const auto& e : s.normalization) {
    g.system.add_equation(e);
    ++g.equations;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Solving

struct ExtensionLeaf {
  std::string status;  // solved | infeasible | fragment-limit
  std::vector<std::string> path;
  std::vector<std::string> free_unknowns;
  std::vector<std::string> residual;  // remaining equations (frozen or outside fragment)
  std::optional<StructureTensor> tensor;  // free unknowns at 0
  std::map<std::string, Scalar> assignment;
  bool leibniz = false;
  ConstraintSystem system;
  SymTensor table;  // skeleton table the leaf belongs to
};

struct ExtensionSolution {
  std::vector<ExtensionLeaf> leaves;
  bool fragment_limit = false;
  size_t solved() const {
    size_t c = 0;
    for (const auto& l : leaves) c += l.status == "solved";
    return c;
  }
};

/// Free unknowns are sampled at 0, the documented base point; each sampled
/// leaf is passed through the Leibniz check.
inline ExtensionSolution solve_extension(const ExtensionSkeleton& s,
                                         EliminationOrder order = EliminationOrder::ByName) {
  ExtensionSolution out;
  std::vector<std::vector<int>> choices{s.b_choice};
  if (s.mode == SkeletonMode::Normal) {
    choices.clear();
    for (unsigned mask = 0; mask < (1u << s.k); ++mask) {
      std::vector<int> b(s.k);
      for (size_t a = 0; a < s.k; ++a) b[a] = (mask >> a) & 1;
      choices.push_back(b);
    }
  }
  for (const auto& b : choices) {
    ExtensionSkeleton sk = s.mode == SkeletonMode::Normal ? build_skeleton(s.nilradical, s.k, s.mode, b) : s;
    ConstraintSystem sys;
    try {
      sys = generate_constraints(sk).system;
    } catch (const CheckFailure& e) {
      ExtensionLeaf leaf;
      leaf.status = "infeasible";
      leaf.residual.push_back(e.what());
      if (!b.empty()) leaf.path.push_back("b = " + std::to_string(b[0]) + (b.size() > 1 ? "," + std::to_string(b[1]) : ""));
      out.leaves.push_back(std::move(leaf));
      continue;
    }
    for (auto& l : solve_system(sys, order)) {
      ExtensionLeaf leaf;
      leaf.path = l.path;
      if (s.mode == SkeletonMode::Normal) {
        std::string bs = "b =";
        for (int x : b) bs += " " + std::to_string(x);
        leaf.path.insert(leaf.path.begin(), bs);
      }
      const auto& ls = l.system;
      for (const auto& e : ls.equations()) leaf.residual.push_back(e.str() + " = 0");
      if (ls.status() == SystemStatus::Infeasible) {
        leaf.status = "infeasible";
      } else if (ls.status() == SystemStatus::Solved) {
        leaf.status = "solved";
        std::map<VarId, Scalar> free;
        for (VarId v : ls.free_unknowns()) {
          free[v] = Scalar();
          leaf.free_unknowns.push_back(var_name(v));
        }
        auto full = ls.assignment(free);
        for (const auto& [v, c] : full) leaf.assignment[var_name(v)] = c;
        for (VarId v : sk.unknowns)
          if (!full.count(v)) full[v] = Scalar();
        leaf.tensor = sk.table.instantiate(full);
        leaf.leibniz = leibniz_check(*leaf.tensor, 1).pass;
        if (!leaf.leibniz) throw InvariantViolation("solved leaf is not a Leibniz algebra");
      } else {
        leaf.status = "fragment-limit";
        out.fragment_limit = true;
      }
      leaf.system = ls;
      leaf.table = sk.table;
      out.leaves.push_back(std::move(leaf));
    }
  }
  return out;
}

/// Leaf tensor with every free unknown set to value.
inline StructureTensor leaf_instance(const ExtensionLeaf& leaf, const Scalar& value) {
  if (leaf.status != "solved") throw InputError("leaf_instance: leaf is not solved");
  std::map<VarId, Scalar> free;
  for (const auto& f : leaf.free_unknowns) free[var_id(f)] = value;
  auto full = leaf.system.assignment(free);
  for (VarId v : leaf.system.unknowns())
    if (!full.count(v)) full[v] = Scalar();
  return leaf.table.instantiate(full);
}

/// True when linear elimination of s reduces e to zero.
inline bool system_implies(const ConstraintSystem& s, const PolyExpr& e) {
  PolyExpr r = e;
  for (const auto& [v, x] : s.substitutions()) r = r.substitute(v, x);
  return r.is_zero();
}

/// The proofs' symbols for a two-generator skeleton: A_1, A_2, B_1, B_2 on
/// the generator block of R_x, R_y and mu[i][t] for [x, g], [y, g].
inline std::map<std::string, std::string> paper_aliases(const ExtensionSkeleton& s) {
  std::map<std::string, std::string> out;
  const auto& g = s.generators;
  if (s.k == 2 && g.size() >= 2) {
    out["A1"] = ex_name(1, g[0], g[1]);
    out["A2"] = ex_name(1, g[1], g[0]);
    out["B1"] = ex_name(2, g[0], g[1]);
    out["B2"] = ex_name(2, g[1], g[0]);
    for (size_t a = 1; a <= 2; ++a)
      for (size_t b = 0; b < 2; ++b)
        for (size_t t : {g[0], g[1]}) out[idx_name("mu", {2 * (a - 1) + b + 1, t})] = xe_name(a, g[b], t);
  }
  if (s.k == 1)
    for (size_t j : g)
      for (size_t t = 1; t <= s.n; ++t) out[idx_name("c", {j, t})] = xe_name(1, j, t);
  return out;
}

// ---------------------------------------------------------------------------
// Invariance of the graded pieces

inline bool check_invariance(const StructureTensor& r, const StructureTensor& nil,
                             const std::vector<Vector>& q_basis) {
  const size_t n = nil.dim(), N = r.dim();
  if (N < n) throw InputError("check_invariance: algebra smaller than its nilradical");
  auto deg = basis_degrees(nil);
  for (const auto& q : q_basis) {
    if (q.size() != N) throw InputError("check_invariance: q vector has wrong length");
    for (size_t j = 0; j < n; ++j) {
      Vector e = unit_vector(N, j);
      for (const Vector& img : {r.bracket(e, q), r.bracket(q, e)})
        for (size_t t = 0; t < N; ++t)
          if (!img[t].is_zero() && (t >= n || deg[t] != deg[j])) return false;
    }
  }
  return true;
}

inline bool check_invariance(const StructureTensor& r, const StructureTensor& nil) {
  std::vector<Vector> q;
  for (size_t a = nil.dim(); a < r.dim(); ++a) q.push_back(unit_vector(r.dim(), a));
  return check_invariance(r, nil, q);
}

// ---------------------------------------------------------------------------
// General forms of the codim-1 and codim-2 classifications

struct GeneralForm {
  std::string name;
  SymTensor table;
  std::vector<PolyExpr> restrictions;
  std::vector<std::string> symbols;
};

namespace detail {
inline PolyExpr sym(const std::string& name) { return PolyExpr::var(name); }
inline PolyExpr cst(const Scalar& c) { return PolyExpr(c); }
}  // namespace detail

/// L(a,b,g) with two extra generators; A1 and mu[4][n-1] left symbolic.
inline GeneralForm general_form_L2(size_t n, const Scalar& a, const Scalar& b, const Scalar& g) {
  using detail::cst;
  GeneralForm f;
  f.name = "L codim 2";
  const size_t x = n + 1, y = n + 2;
  f.table = SymTensor::from(detail::unified_L(n, a, b, g, 2), n + 2, detail::basis_labels(n, 2));
  const PolyExpr A = detail::sym("A1"), M = detail::sym(idx_name("mu", {4, n - 1}));
  f.symbols = {"A1", idx_name("mu", {4, n - 1})};
  const PolyExpr al = cst(a), be = cst(b), ga = cst(g), one(1);
  auto& t = f.table;
  t.set(1, x, 1, one);
  t.set(1, x, n - 1, A);
  t.set(1, y, n - 1, -A);
  t.set(2, x, 2, PolyExpr(2) + A * al);
  t.set(2, x, n, A * (one + be));
  t.set(2, y, 2, -A * al);
  t.set(2, y, n, -A * (one + be));
  for (size_t i = 3; i <= n - 2; ++i) {
    t.set(i, x, i, PolyExpr(Scalar(static_cast<long>(i))) + A * al);
    t.set(i, y, i, -A * al);
  }
  t.set(n - 1, y, n - 1, one);
  t.set(n, x, n, one + A * ga - A * al * (one + be));
  t.set(n, y, n, one - A * ga + A * al * (one + be));
  t.set(x, 1, 1, PolyExpr(-1));
  t.set(x, 1, n - 1, -A);
  t.set(y, 1, n - 1, -A * M);
  t.set(y, n - 1, n - 1, M);
  t.set(x, n, n, be + A * ga);
  t.set(y, n, 2, M * al);
  t.set(y, n, n, M * (one + A * ga));
  f.restrictions = {
      al + A * al * al,
      ga * (one + A * ga - A * al * (one + be)),
      ga * A - be * A * (ga - al * (one + be)),
      M * (one + M),
      (be + A * ga) * (one - A * ga + A * al * (one + be) + M * (one + A * ga)),
      ga * (be + A * ga),
      ga * M * al,
      ga * M * (one + A * ga),
      M * al * (one + be),
      be * (one + be + A * ga) + A * ga,
      M * (one + be * (one + A * ga) + A * ga),
  };
  return f;
}

/// G(a,b,g) with one extra generator; c[4][2] is the e_2-coefficient of [x, e_4].
inline GeneralForm general_form_G1(size_t n, const Scalar& a, const Scalar& b, const Scalar& g) {
  GeneralForm f;
  f.name = "G codim 1";
  const size_t x = n + 1;
  f.table = SymTensor::from(detail::unified_G(n, a, b, g, 1), n + 1, detail::basis_labels(n, 1));
  const PolyExpr c = detail::sym(idx_name("c", {4, 2}));
  f.symbols = {idx_name("c", {4, 2})};
  auto& t = f.table;
  t.set(1, x, 1, PolyExpr(1));
  t.set(2, x, 2, PolyExpr(2));
  for (size_t i = 3; i <= n; ++i) t.set(i, x, i, PolyExpr(Scalar(static_cast<long>(i) - 2)));
  t.set(x, 1, 1, PolyExpr(-1));
  for (size_t i = 3; i <= n; ++i) t.set(x, i, i, PolyExpr(Scalar(-(static_cast<long>(i) - 2))));
  t.set(x, 4, 2, c);
  f.restrictions = {c - PolyExpr(b)};
  return f;
}

/// G(a,b,g) with two extra generators; A1 left symbolic.
inline GeneralForm general_form_G2(size_t n, const Scalar& a, const Scalar& b, const Scalar& g) {
  using detail::cst;
  GeneralForm f;
  f.name = "G codim 2";
  const size_t x = n + 1, y = n + 2;
  f.table = SymTensor::from(detail::unified_G(n, a, b, g, 2), n + 2, detail::basis_labels(n, 2));
  const PolyExpr A = detail::sym("A1");
  f.symbols = {"A1"};
  const PolyExpr al = cst(a), be = cst(b), ga = cst(g), one(1);
  const PolyExpr sg(Scalar(n % 2 == 0 ? 1 : -1));
  auto& t = f.table;
  t.set(1, x, 1, one);
  t.set(1, x, 3, A);
  t.set(1, y, 3, -A);
  t.set(2, x, 2, PolyExpr(2) + A * be);
  t.set(2, y, 2, -A * be);
  t.set(3, y, 3, one);
  t.set(4, x, 4, one);
  t.set(4, x, 2, A * ga);
  t.set(4, y, 4, one);
  t.set(4, y, 2, -A * ga);
  for (size_t i = 5; i <= n - 1; ++i) {
    t.set(i, x, i, PolyExpr(Scalar(static_cast<long>(i) - 3)));
    t.set(i, y, i, one);
  }
  const PolyExpr enx = PolyExpr(Scalar(static_cast<long>(n) - 3)) - sg * A * al;
  const PolyExpr eny = one + sg * A * al;
  t.set(n, x, n, enx);
  t.set(n, y, n, eny);
  t.set(x, 1, 1, PolyExpr(-1));
  t.set(x, 1, 3, -A);
  t.set(y, 1, 3, A);
  t.set(y, 3, 3, PolyExpr(-1));
  t.set(x, 4, 4, PolyExpr(-1));
  t.set(x, 4, 2, be + A * ga);
  t.set(y, 4, 4, PolyExpr(-1));
  t.set(y, 4, 2, -A * ga);
  for (size_t i = 5; i <= n - 1; ++i) {
    t.set(x, i, i, PolyExpr(Scalar(-(static_cast<long>(i) - 3))));
    t.set(y, i, i, PolyExpr(-1));
  }
  t.set(x, n, n, -enx);
  t.set(y, n, n, -eny);
  f.restrictions = {PolyExpr(2) * A * ga - be - A * be * be, ga * (PolyExpr(2) + A * be),
                    al * (one - sg * A * al)};
  return f;
}

inline GeneralForm general_form_for(const FamilySpec& f, size_t n, const Params& p) {
  auto [a, b, g] = f.abg(p);
  if (f.nilradical == "L" && f.extra_dim == 2) return general_form_L2(n, a, b, g);
  if (f.nilradical == "G" && f.extra_dim == 1) return general_form_G1(n, a, b, g);
  if (f.nilradical == "G" && f.extra_dim == 2) return general_form_G2(n, a, b, g);
  throw InputError(f.name + " has no general form");
}

struct FormMembership {
  bool pass = false;
  std::map<std::string, Scalar> values;
  std::vector<std::string> mismatches;  // cells no symbol value can fix
};

/// Equates the table of r with the general form cell by cell, adds the
/// restriction system, and solves for the form's symbols.
inline FormMembership general_form_membership(const StructureTensor& r, const GeneralForm& f) {
  FormMembership m;
  if (r.dim() != f.table.dim()) throw InputError("general_form_membership: dimension mismatch");
  ConstraintSystem s;
  for (const auto& name : f.symbols) s.add_unknown(name);
  const auto& lab = f.table.labels();
  for (size_t i = 1; i <= r.dim(); ++i)
    for (size_t j = 1; j <= r.dim(); ++j)
      for (size_t t = 1; t <= r.dim(); ++t) {
        PolyExpr d = f.table.get(i, j, t) - PolyExpr(r.coefficient(i, j, t));
        if (d.is_zero()) continue;
        if (d.is_constant()) {
          m.mismatches.push_back("[" + lab[i - 1] + "," + lab[j - 1] + "] at " + lab[t - 1] + ": form - table = " +
                                 d.str());
          continue;
        }
        s.add_equation(d);
      }
  for (const auto& e : f.restrictions) s.add_equation(e);
  if (!m.mismatches.empty()) return m;
  for (const auto& leaf : solve_system(s)) {
    if (leaf.system.status() != SystemStatus::Solved) continue;
    std::map<VarId, Scalar> free;
    for (VarId v : leaf.system.free_unknowns()) free[v] = Scalar();
    for (const auto& [v, c] : leaf.system.assignment(free)) m.values[var_name(v)] = c;
    m.pass = true;
    return m;
  }
  m.mismatches.push_back("restriction system inconsistent with the table");
  return m;
}

// ---------------------------------------------------------------------------
// Nilradical certificates

struct NilradicalCertificate {
  bool ideal_check = false;
  bool nilpotency_check = false;
  std::vector<std::string> nonnilpotent_right_mults;  // witnesses
  std::vector<std::string> failures;
  size_t sampled_mixed_elements = 0;
  std::uint64_t seed = 0;
  bool valid() const { return ideal_check && nilpotency_check && failures.empty(); }
};

/// N = span(e_1..e_n) inside r. Checks N is a nilpotent ideal and that R_y
/// is not nilpotent for each basis vector of Q and for random y = q + m.
inline NilradicalCertificate nilradical_certificate(const StructureTensor& r, size_t n,
                                                    std::uint64_t seed = default_seed(), size_t samples = 50) {
  NilradicalCertificate c;
  c.seed = seed;
  const size_t N = r.dim();
  std::vector<Vector> nb;
  for (size_t j = 0; j < n; ++j) nb.push_back(unit_vector(N, j));
  c.ideal_check = is_ideal(r, Subspace::span(N, nb));
  StructureTensor sub(n);
  r.for_each([&](size_t i, size_t j, size_t t, const Scalar& v) {
    if (i <= n && j <= n && t <= n) sub.set(i, j, t, v);
  });
  c.nilpotency_check = c.ideal_check && is_nilpotent_algebra(sub);
  const auto& lab = r.labels();
  for (size_t a = n; a < N; ++a) {
    if (is_nilpotent_matrix(r.right_mult(unit_vector(N, a))))
      c.failures.push_back("R_" + lab[a] + " is nilpotent");
    else
      c.nonnilpotent_right_mults.push_back("R_" + lab[a]);
  }
  Sampler rng(seed);
  for (size_t s = 0; s < samples && N > n; ++s) {
    Vector y = rng.vector(n);
    Vector q = rng.nonzero_vector(N - n);
    y.insert(y.end(), q.begin(), q.end());
    ++c.sampled_mixed_elements;
    if (is_nilpotent_matrix(r.right_mult(y))) c.failures.push_back("R_y nilpotent for sample " + std::to_string(s));
  }
  if (c.failures.empty() && samples > 0)
    c.nonnilpotent_right_mults.push_back(std::to_string(c.sampled_mixed_elements) + " mixed samples");
  return c;
}

// ---------------------------------------------------------------------------
// Catalog verification

struct ExtensionVerification {
  std::string name;
  size_t n = 0;
  Params params;
  bool leibniz = false, solvable = false, non_nilpotent = false, nil_ideal = false;
  std::vector<std::string> leibniz_violations;
  NilradicalCertificate certificate;
  std::string form_name;
  FormMembership form;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

inline ExtensionVerification verify_catalog_extension(const std::string& name, size_t n, Params p = {},
                                                      Variant variant = Variant::Corrected,
                                                      std::uint64_t seed = default_seed()) {
  const FamilySpec& f = find_family(name);
  if (f.group != "solvable") throw InputError(name + " is not a solvable extension family");
  if (p.empty() && !f.param_names.empty()) p = f.sample_grid.front();
  ExtensionVerification v;
  v.name = f.name;
  v.n = n;
  v.params = p;
  StructureTensor r = f.build(n, p, variant);  // validates parity and domain
  auto li = leibniz_check(r, 8);
  v.leibniz = li.pass;
  const auto& lab = r.labels();
  for (const auto& viol : li.violations)
    v.leibniz_violations.push_back("(" + lab[viol.triple[0] - 1] + "," + lab[viol.triple[1] - 1] + "," +
                                   lab[viol.triple[2] - 1] + ")");
  v.solvable = is_solvable_algebra(r);
  v.non_nilpotent = !is_nilpotent_algebra(r);
  v.certificate = nilradical_certificate(r, n, seed);
  v.nil_ideal = v.certificate.ideal_check && v.certificate.nilpotency_check;
  GeneralForm form = general_form_for(f, n, p);
  v.form_name = form.name;
  v.form = general_form_membership(r, form);
  if (!v.leibniz) v.failures.push_back("leibniz");
  if (!v.solvable || !v.non_nilpotent) v.failures.push_back("solvable-non-nilpotent");
  if (!v.nil_ideal) v.failures.push_back("nilradical-ideal");
  if (!v.certificate.valid()) v.failures.push_back("nilradical-certificate");
  if (!v.form.pass) v.failures.push_back("general-form");
  return v;
}

// ---------------------------------------------------------------------------
// Re-derivation of the classification cases

struct CaseTarget {
  std::string family;
  Params params;
};

/// Catalog family of the given nilradical, (alpha, beta, gamma) and codim.
inline std::optional<CaseTarget> classified_target(const std::string& nil, const std::array<Scalar, 3>& abg,
                                                size_t k, size_t n) {
  for (const auto& f : registry()) {
    if (f.group != "solvable" || f.nilradical != nil || f.extra_dim != k) continue;
    Params p;
    for (const auto& name : f.param_names) {
      if (name == "alpha") p[name] = abg[0];
      if (name == "beta") p[name] = abg[1];
      if (name == "gamma") p[name] = abg[2];
    }
    try {
      f.validate(n, p);
    } catch (const InputError&) {
      continue;
    }
    if (f.abg(p) == abg) return CaseTarget{f.name, p};
  }
  return std::nullopt;
}

/// Basis change absorbing a free A_1: e_1' = e_1 + dA e_g2 (and for L also
/// e_2' = e_2 + dA (1 + beta) e_n), where dA is the leaf's A_1 minus the
/// target's.
inline Matrix absorbing_change(const StructureTensor& leaf, const StructureTensor& target, const std::string& nil,
                               size_t n, size_t k, const Scalar& beta) {
  Matrix p = Matrix::identity(leaf.dim());
  if (k != 2) return p;
  const size_t x = n + 1, g2 = nil == "L" ? n - 1 : 3;
  const Scalar dA = leaf.coefficient(1, x, g2) - target.coefficient(1, x, g2);
  p(g2 - 1, 0) += dA;
  if (nil == "L") p(n - 1, 1) += dA * (Scalar(1) + beta);
  return p;
}

struct RederivationReport {
  std::string nilradical;
  std::array<Scalar, 3> abg;
  size_t n = 0, k = 0;
  std::string target;
  Params target_params;
  size_t leaves = 0, solved = 0, infeasible = 0, fragment = 0;
  bool matched_at_zero = false;   // free unknowns at 0, after the absorbing change
  bool matched_at_one = false;    // free unknowns at 1, after the absorbing change
  std::vector<std::string> free_unknowns;
  std::vector<std::string> notes;
  bool pass() const {
    return !target.empty() && solved > 0 && fragment == 0 && matched_at_zero && matched_at_one;
  }
};

inline RederivationReport rederive(const std::string& nil, const Scalar& a, const Scalar& b, const Scalar& g,
                                   size_t n, size_t k) {
  if (nil != "L" && nil != "G") throw InputError("rederive: nilradical must be L or G");
  RederivationReport rep;
  rep.nilradical = nil;
  rep.abg = {a, b, g};
  rep.n = n;
  rep.k = k;
  StructureTensor N = build(nil, n, {{"a", a}, {"b", b}, {"g", g}});
  auto sol = solve_extension(build_skeleton(N, k, SkeletonMode::Graded));
  auto target = classified_target(nil, rep.abg, k, n);
  std::optional<StructureTensor> tt;
  if (target) {
    rep.target = target->family;
    rep.target_params = target->params;
    tt = find_family(target->family).build(n, target->params);
  } else {
    rep.notes.push_back("no catalog family for this case");
  }
  bool all0 = true, all1 = true;
  for (const auto& leaf : sol.leaves) {
    ++rep.leaves;
    if (leaf.status == "infeasible") ++rep.infeasible;
    if (leaf.status == "fragment-limit") ++rep.fragment;
    if (leaf.status != "solved") continue;
    ++rep.solved;
    for (const auto& f : leaf.free_unknowns) rep.free_unknowns.push_back(f);
    if (!tt) continue;
    for (int value : {0, 1}) {
      StructureTensor inst = leaf_instance(leaf, Scalar(value));
      Matrix p = absorbing_change(inst, *tt, nil, n, k, b);
      bool ok = is_isomorphism(inst, *tt, p);
      (value == 0 ? all0 : all1) = (value == 0 ? all0 : all1) && ok;
    }
  }
  rep.matched_at_zero = tt && rep.solved > 0 && all0;
  rep.matched_at_one = tt && rep.solved > 0 && all1;
  return rep;
}

/// (NF_{n-2} + <x>) + (NF_2 + <y>) on e_1..e_n, x, y.
inline StructureTensor split_sum_R2(size_t n) {
  StructureTensor t(n + 2, detail::basis_labels(n, 2));
  const size_t x = n + 1, y = n + 2;
  for (size_t i = 1; i <= n - 3; ++i) t.set(i, 1, i + 1, Scalar(1));
  for (size_t i = 1; i <= n - 2; ++i) t.set(i, x, i, Scalar(static_cast<long>(i)));
  t.set(x, 1, 1, Scalar(-1));
  t.set(n - 1, n - 1, n, Scalar(1));
  t.set(n - 1, y, n - 1, Scalar(1));
  t.set(n, y, n, Scalar(2));
  t.set(y, n - 1, n - 1, Scalar(-1));
  return t;
}

/// e_1' = e_1 - e_{n-1}, e_2' = e_2 - e_n takes R2 to the split sum.
inline bool split_check_R2(size_t n) {
  StructureTensor r = build("R2", n, {});
  Matrix p = Matrix::identity(n + 2);
  p(n - 2, 0) = Scalar(-1);
  p(n - 1, 1) = Scalar(-1);
  return is_isomorphism(r, split_sum_R2(n), p);
}

/// "v = c" when e is linear in one unknown, else "e = 0".
inline std::string solved_form(const PolyExpr& e) {
  auto vars = e.variables();
  if (vars.size() == 1 && e.degree() == 1) {
    VarId v = *vars.begin();
    Scalar c = e.terms().at(Monomial{v});
    return var_name(v) + " = " + (-e.constant_term() / c).str();
  }
  return e.str() + " = 0";
}

// ---------------------------------------------------------------------------
// Codimension-one probe

struct Codim1Probe {
  std::array<Scalar, 3> abg;
  size_t n = 0;
  bool infeasible = false;
  std::string culprit;        // first identity that made the system inconsistent
  std::string contradiction;
  std::vector<std::string> facts;     // parameter-only components of the culprit
  std::vector<std::string> violated;  // facts false at the row's values
  std::vector<ProofStep> log;
  size_t identities_used = 0;
  bool pass() const { return infeasible; }
};

/// Free-probe codim-1 extension of L(a,b,g). Identities are added one at a
/// time: the normalization, the derivation triples (e_i, e_j, x), then
/// LI(x, e_{n-1}, e_1), then the rest in lexicographic order. The first one
/// that makes the system inconsistent is re-evaluated with alpha, beta,
/// gamma symbolic in the nilradical, over the state just before it.
inline Codim1Probe codim1_probe_L(const Scalar& a, const Scalar& b, const Scalar& g, size_t n) {
  Codim1Probe rep;
  rep.abg = {a, b, g};
  rep.n = n;
  StructureTensor nil = build("L", n, {{"a", a}, {"b", b}, {"g", g}});
  auto sk = build_skeleton(nil, 1, SkeletonMode::Probe);
  const size_t x = n + 1, N = n + 1;
  using Triple = std::array<size_t, 3>;
  std::vector<Triple> order;
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = 1; j <= n; ++j) order.push_back({i, j, x});
  const Triple target{x, n - 1, 1};
  order.push_back(target);
  for (size_t i = 1; i <= N; ++i)
    for (size_t j = 1; j <= N; ++j)
      for (size_t l = 1; l <= N; ++l) {
        Triple t{i, j, l};
        if ((i <= n && j <= n) || t == target) continue;  // inner triples hold in N; (e,e,x) done
        order.push_back(t);
      }
  ConstraintSystem s;
  for (VarId v : sk.unknowns) s.add_unknown(v);
  for (const auto& e : sk.normalization) s.add_equation(e);
  s = linear_eliminate(s);
  const auto& lab = sk.table.labels();
  for (const auto& tr : order) {
    ConstraintSystem before = s;
    for (auto& [t, c] : sk.table.defect(tr[0], tr[1], tr[2]))
      if (!c.is_zero()) s.add_equation(c);
    s = linear_eliminate(s);
    ++rep.identities_used;
    if (s.status() != SystemStatus::Infeasible) continue;
    rep.infeasible = true;
    rep.culprit = "LI(" + lab[tr[0] - 1] + "," + lab[tr[1] - 1] + "," + lab[tr[2] - 1] + ")";
    rep.contradiction = s.equations().front().str() + " = 0";
    rep.log = s.log();
    SymTensor t = sk.table.substituted(before);
    const PolyExpr A = PolyExpr::var("alpha"), B = PolyExpr::var("beta"), G = PolyExpr::var("gamma");
    t.set(n - 1, 1, 2, A);
    t.set(1, n - 1, n, B);
    t.set(n - 1, n - 1, n, G);
    const std::set<VarId> params{var_id("alpha"), var_id("beta"), var_id("gamma")};
    const std::map<VarId, Scalar> row{{var_id("alpha"), a}, {var_id("beta"), b}, {var_id("gamma"), g}};
    for (const auto& [k, c] : t.defect(tr[0], tr[1], tr[2])) {
      bool only = true;
      for (VarId v : c.variables()) only = only && params.count(v);
      if (!only) continue;
      rep.facts.push_back(solved_form(c));
      if (!c.evaluate(row).is_zero()) rep.violated.push_back(solved_form(c));
      rep.log.push_back({"note", "", "", solved_form(c), {"deduced from " + rep.culprit}});
    }
    return rep;
  }
  // Linear elimination alone did not close the system: branch.
  for (const auto& leaf : solve_system(s)) {
    if (leaf.system.status() != SystemStatus::Infeasible) return rep;
  }
  rep.infeasible = true;
  rep.culprit = "branching";
  return rep;
}

/// dim Q = 1 rows only: the nilradical must admit exactly one nil-independent
/// derivation.
inline Codim1Probe probe_codim1_L(const Scalar& a, const Scalar& b, const Scalar& g, size_t n) {
  StructureTensor nil = build("L", n, {{"a", a}, {"b", b}, {"g", g}});
  auto m = max_nil_independent(nil);
  if (m.count != 1)
    throw InputError("probe_codim1_L: L(" + a.str() + "," + b.str() + "," + g.str() +
                     ") is not a dim Q = 1 row (maximal nil-independent count " + std::to_string(m.count) + ")");
  return codim1_probe_L(a, b, g, n);
}

// ---------------------------------------------------------------------------
// Lie probe over Lnr

struct LieProbe {
  size_t n = 0, r = 0;
  std::string x_on_enm2, x_on_enm1;  // [x, e_{n-2}], [x, e_{n-1}] from the two identities
  bool enm2_not_annr = false, enm1_not_annr = false;
  bool annr_zero = false;            // hence the squares ideal vanishes
  size_t free_unknowns = 0;
  size_t solved = 0, lie = 0, squares_zero = 0, fragment = 0;
  std::vector<std::string> notes;
  bool pass() const {
    return enm2_not_annr && enm1_not_annr && annr_zero && solved > 0 && lie == solved && squares_zero == solved &&
           fragment == 0;
  }
};

inline std::string sym_vec_str(const SymVec& v, const std::vector<std::string>& lab) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : v) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")" + lab[k];
  }
  return s;
}

inline LieProbe lie_probe(size_t n, size_t r) {
  LieProbe rep;
  rep.n = n;
  rep.r = r;
  StructureTensor nil = build("Lnr", n, {{"r", Scalar(static_cast<long>(r))}});
  auto sk = build_skeleton(nil, 2, SkeletonMode::Probe);
  auto gen = generate_constraints(sk);
  ConstraintSystem s = linear_eliminate(gen.system);
  if (s.status() == SystemStatus::Infeasible) {
    rep.notes.push_back("probe system infeasible: no extension");
    return rep;
  }
  rep.free_unknowns = s.free_unknowns().size();
  SymTensor t = sk.table.substituted(s);
  const auto& lab = t.labels();
  // basis index of e_i is i + 1
  const size_t x = n + 1, e0 = 1, e1 = 2, enm3 = n - 2, enm2 = n - 1, enm1 = n, erm1 = r;
  const SymVec X = SymTensor::basis(x);
  auto from_identity = [&](size_t u, size_t v, size_t target) {
    // LI(x, u, v) = 0 with [u, v] = c e_target gives
    // c [x, e_target] = [[x, u], v] - [[x, v], u].
    Scalar c = nil.coefficient(u, v, target);
    if (c.is_zero()) throw InvariantViolation("lie_probe: unexpected Lnr product");
    SymVec out = t.bracket(t.bracket(X, SymTensor::basis(u)), SymTensor::basis(v));
    sym_axpy(out, PolyExpr(-1), t.bracket(t.bracket(X, SymTensor::basis(v)), SymTensor::basis(u)));
    SymVec scaled;
    sym_axpy(scaled, PolyExpr(Scalar(1) / c), out);
    return scaled;
  };
  SymVec v2 = from_identity(e0, enm3, enm2);
  SymVec v1 = from_identity(e1, erm1, enm1);
  rep.x_on_enm2 = sym_vec_str(v2, lab);
  rep.x_on_enm1 = sym_vec_str(v1, lab);
  auto nonzero_const = [](const SymVec& v, size_t k) {
    auto it = v.find(k - 1);
    return it != v.end() && it->second.is_constant() && !it->second.is_zero();
  };
  rep.enm2_not_annr = nonzero_const(v2, enm2);
  rep.enm1_not_annr = nonzero_const(v1, enm1);
  // Ann_r(R) lies in Ann_r(N); it is zero when z -> ([x,z], [y,z]) is
  // injective there.
  RowReducer red(n);
  bool constant = true;
  const auto annr = annihilators(nil).right.vectors();
  std::vector<Vector> images;
  for (const auto& z : annr) {
    SymVec zs;
    for (size_t j = 0; j < n; ++j)
      if (!z[j].is_zero()) zs[j] = PolyExpr(z[j]);
    Vector img(2 * (n + 2));
    for (size_t a = 0; a < 2; ++a)
      for (const auto& [k, c] : t.bracket(SymTensor::basis(x + a), zs)) {
        if (!c.is_constant()) constant = false;
        img[a * (n + 2) + k] = c.constant_term();
      }
    images.push_back(img);
  }
  rep.annr_zero = constant && rank(Matrix::from_rows(images, 2 * (n + 2))) == annr.size();
  if (!constant) rep.notes.push_back("action on Ann_r(N) not determined by linear elimination");
  // Concrete leaves: the probe at two sample points and the graded solutions.
  auto check_leaf = [&](const StructureTensor& inst) {
    ++rep.solved;
    if (is_lie(inst)) ++rep.lie;
    if (squares_ideal(inst).is_zero()) ++rep.squares_zero;
  };
  if (s.status() == SystemStatus::Solved) {
    ExtensionLeaf leaf;
    leaf.status = "solved";
    leaf.system = s;
    leaf.table = sk.table;
    for (VarId v : s.free_unknowns()) leaf.free_unknowns.push_back(var_name(v));
    for (int value : {0, 1}) check_leaf(leaf_instance(leaf, Scalar(value)));
  } else {
    rep.notes.push_back("probe system left open after linear elimination");
  }
  for (const auto& leaf : solve_extension(build_skeleton(nil, 2, SkeletonMode::Graded)).leaves) {
    if (leaf.status == "fragment-limit") ++rep.fragment;
    if (leaf.status == "solved") check_leaf(*leaf.tensor);
  }
  return rep;
}

}  // namespace leibniz
