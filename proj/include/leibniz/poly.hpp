#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "leibniz/errors.hpp"
#include "leibniz/scalar.hpp"

namespace leibniz {

// ---------------------------------------------------------------------------
// Unknowns

using VarId = std::uint32_t;

/// Process-wide interning of unknown names. Ids are only an encoding; every
/// user-visible order is by name.
class VarTable {
 public:
  static VarTable& instance() {
    static VarTable t;
    return t;
  }
  VarId intern(const std::string& name) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    VarId id = static_cast<VarId>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    return id;
  }
  const std::string& name(VarId id) {
    std::lock_guard<std::mutex> lock(mu_);
    return names_.at(id);
  }

 private:
  std::mutex mu_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VarId> ids_;
};

inline VarId var_id(const std::string& name) { return VarTable::instance().intern(name); }
inline const std::string& var_name(VarId id) { return VarTable::instance().name(id); }

/// Sorted multiset of unknowns; {} is the constant monomial.
using Monomial = std::vector<VarId>;

// ---------------------------------------------------------------------------
// Polynomials

class PolyExpr {
 public:
  PolyExpr() = default;
  PolyExpr(const Scalar& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
  }
  PolyExpr(int c) : PolyExpr(Scalar(c)) {}  // NOLINT(google-explicit-constructor)

  static PolyExpr var(VarId v) {
    PolyExpr p;
    p.terms_.emplace(Monomial{v}, Scalar(1));
    return p;
  }
  static PolyExpr var(const std::string& name) { return var(var_id(name)); }

  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  Scalar constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Scalar() : it->second;
  }

  size_t degree() const {
    size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.size());
    return d;
  }

  std::set<VarId> variables() const {
    std::set<VarId> s;
    for (const auto& [m, c] : terms_) s.insert(m.begin(), m.end());
    return s;
  }
  bool contains(VarId v) const {
    for (const auto& [m, c] : terms_)
      if (std::binary_search(m.begin(), m.end(), v)) return true;
    return false;
  }

  /// Coefficient c when the only occurrence of v is the linear monomial c*v.
  std::optional<Scalar> isolated_linear_coefficient(VarId v) const {
    std::optional<Scalar> c;
    for (const auto& [m, k] : terms_) {
      if (!std::binary_search(m.begin(), m.end(), v)) continue;
      if (m.size() != 1) return std::nullopt;
      c = k;
    }
    return c;
  }

  PolyExpr& operator+=(const PolyExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  PolyExpr& operator-=(const PolyExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  PolyExpr operator-() const {
    PolyExpr p = *this;
    for (auto& [m, c] : p.terms_) c = -c;
    return p;
  }
  friend PolyExpr operator+(PolyExpr a, const PolyExpr& b) { return a += b; }
  friend PolyExpr operator-(PolyExpr a, const PolyExpr& b) { return a -= b; }
  friend PolyExpr operator*(const PolyExpr& a, const PolyExpr& b) {
    PolyExpr p;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m;
        m.reserve(ma.size() + mb.size());
        std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
        p.add_term(m, ca * cb);
      }
    return p;
  }
  friend PolyExpr operator*(const Scalar& s, PolyExpr p) {
    if (s.is_zero()) return PolyExpr();
    for (auto& [m, c] : p.terms_) c *= s;
    return p;
  }
  friend bool operator==(const PolyExpr& a, const PolyExpr& b) { return a.terms_ == b.terms_; }

  void add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Replaces every occurrence of v by e.
  PolyExpr substitute(VarId v, const PolyExpr& e) const {
    if (!contains(v)) return *this;
    PolyExpr out;
    for (const auto& [m, c] : terms_) {
      if (!std::binary_search(m.begin(), m.end(), v)) {
        out.add_term(m, c);
        continue;
      }
      PolyExpr term(c);
      Monomial rest;
      for (VarId u : m) {
        if (u == v)
          term = term * e;
        else
          rest.push_back(u);
      }
      PolyExpr r;
      r.terms_.emplace(rest, Scalar(1));
      out += term * r;
    }
    return out;
  }

  /// Full evaluation; every unknown must be assigned.
  Scalar evaluate(const std::map<VarId, Scalar>& values) const {
    Scalar s;
    for (const auto& [m, c] : terms_) {
      Scalar t = c;
      for (VarId v : m) {
        auto it = values.find(v);
        if (it == values.end()) throw InputError("evaluate: unassigned unknown " + var_name(v));
        t *= it->second;
      }
      s += t;
    }
    return s;
  }

  /// Partial evaluation: substitutes the assigned unknowns only.
  PolyExpr partial(const std::map<VarId, Scalar>& values) const {
    PolyExpr out;
    for (const auto& [m, c] : terms_) {
      Scalar k = c;
      Monomial rest;
      for (VarId v : m) {
        auto it = values.find(v);
        if (it == values.end())
          rest.push_back(v);
        else
          k *= it->second;
      }
      out.add_term(rest, k);
    }
    return out;
  }

  /// Scaled so that the first term in printing order has coefficient 1.
  PolyExpr monic() const {
    if (is_zero()) return *this;
    auto order = print_order();
    Scalar inv = Scalar(1) / terms_.at(order.front());
    return inv * *this;
  }

  /// Canonical text: terms by decreasing degree, then by unknown names.
  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (const auto& m : print_order()) {
      const Scalar& c = terms_.at(m);
      std::string cs = c.str();
      bool neg = c.is_real() && sgn(c.re()) < 0;
      bool complex = !c.is_real() && sgn(c.re()) != 0;
      if (complex) cs = "(" + cs + ")";
      if (neg) cs = cs.substr(1);
      if (!s.empty())
        s += neg ? " - " : " + ";
      else if (neg)
        s += "-";
      std::string mon;
      for (VarId v : m) mon += (mon.empty() ? "" : "*") + var_name(v);
      if (m.empty())
        s += cs;
      else if (cs == "1")
        s += mon;
      else if (cs == "i" || cs == "-i")
        s += cs + "*" + mon;
      else
        s += cs + "*" + mon;
    }
    return s;
  }

 private:
  std::vector<Monomial> print_order() const {
    std::vector<Monomial> ms;
    for (const auto& [m, c] : terms_) ms.push_back(m);
    auto names = [](const Monomial& m) {
      std::vector<std::string> v;
      for (VarId id : m) v.push_back(var_name(id));
      std::sort(v.begin(), v.end());
      return v;
    };
    std::sort(ms.begin(), ms.end(), [&](const Monomial& a, const Monomial& b) {
      if (a.size() != b.size()) return a.size() > b.size();
      return names(a) < names(b);
    });
    return ms;
  }

  std::map<Monomial, Scalar> terms_;
};

/// Unknown names used by the extension code. Indices are basis positions.
inline std::string idx_name(const std::string& stem, std::initializer_list<size_t> idx) {
  std::string s = stem;
  for (size_t k : idx) s += "[" + std::to_string(k) + "]";
  return s;
}

// ---------------------------------------------------------------------------
// Constraint systems

enum class SystemStatus { Open, Solved, Infeasible, Branched };

inline const char* status_name(SystemStatus s) {
  switch (s) {
    case SystemStatus::Open: return "open";
    case SystemStatus::Solved: return "solved";
    case SystemStatus::Infeasible: return "infeasible";
    case SystemStatus::Branched: return "branched";
  }
  return "?";
}

struct ProofStep {
  std::string kind;  // eliminate | branch | infeasible | residual | note
  std::string unknown;
  std::string expr;
  std::string equation;
  std::vector<std::string> cases;
};

/// Selection order for elimination candidates; the default is the documented
/// one, the reverse exists to test confluence.
enum class EliminationOrder { ByName, ReverseName };

class ConstraintSystem {
 public:
  ConstraintSystem() = default;

  void add_unknown(VarId v) {
    if (std::find(unknowns_.begin(), unknowns_.end(), v) == unknowns_.end()) unknowns_.push_back(v);
  }
  void add_unknown(const std::string& name) { add_unknown(var_id(name)); }
  /// Frozen symbols take part in equations but are never eliminated.
  void freeze(VarId v) { frozen_.insert(v); }
  bool is_frozen(VarId v) const { return frozen_.count(v) > 0; }

  void add_equation(PolyExpr e) {
    for (const auto& [v, s] : substitutions_) e = e.substitute(v, s);
    for (VarId v : e.variables()) add_unknown(v);
    equations_.push_back(std::move(e));
    if (status_ == SystemStatus::Solved) status_ = SystemStatus::Open;
  }

  const std::vector<VarId>& unknowns() const { return unknowns_; }
  const std::vector<PolyExpr>& equations() const { return equations_; }
  const std::vector<std::pair<VarId, PolyExpr>>& substitutions() const { return substitutions_; }
  const std::vector<ProofStep>& log() const { return log_; }
  SystemStatus status() const { return status_; }
  void set_status(SystemStatus s) { status_ = s; }
  bool fragment_limit() const { return fragment_limit_; }
  void set_fragment_limit() { fragment_limit_ = true; }
  void note(const std::string& text) { log_.push_back({"note", "", "", text, {}}); }
  const std::set<VarId>& frozen() const { return frozen_; }

  /// Unknowns that are neither frozen nor eliminated.
  std::vector<VarId> free_unknowns() const {
    std::vector<VarId> out;
    for (VarId v : unknowns_) {
      if (is_frozen(v)) continue;
      bool gone = false;
      for (const auto& [u, e] : substitutions_) gone = gone || u == v;
      if (!gone) out.push_back(v);
    }
    return out;
  }

  /// Equations whose unknowns are all frozen.
  std::vector<PolyExpr> residual_in_frozen() const {
    std::vector<PolyExpr> out;
    for (const auto& e : equations_) {
      auto vs = e.variables();
      if (!vs.empty() && std::all_of(vs.begin(), vs.end(), [&](VarId v) { return is_frozen(v); }))
        out.push_back(e);
    }
    return out;
  }

  /// Drops zero equations and duplicates (up to scaling); flags a nonzero
  /// constant equation as infeasible.
  void normalize() {
    std::vector<PolyExpr> kept;
    std::set<std::string> seen;
    for (auto& e : equations_) {
      if (e.is_zero()) continue;
      if (e.is_constant()) {
        status_ = SystemStatus::Infeasible;
        log_.push_back({"infeasible", "", "", e.str() + " = 0", {}});
        equations_ = {e};
        return;
      }
      PolyExpr m = e.monic();
      if (seen.insert(m.str()).second) kept.push_back(std::move(m));
    }
    equations_ = std::move(kept);
    if (equations_.empty() && status_ == SystemStatus::Open) status_ = SystemStatus::Solved;
  }

  /// Records v = e and applies it everywhere.
  void eliminate(VarId v, const PolyExpr& e, const std::string& source) {
    for (auto& eq : equations_) eq = eq.substitute(v, e);
    for (auto& [u, s] : substitutions_) s = s.substitute(v, e);
    substitutions_.emplace_back(v, e);
    log_.push_back({"eliminate", var_name(v), e.str(), source, {}});
  }

  /// Value of every eliminated unknown once the free ones are fixed.
  std::map<VarId, Scalar> assignment(const std::map<VarId, Scalar>& free_values) const {
    std::map<VarId, Scalar> out = free_values;
    for (const auto& [u, e] : substitutions_) out[u] = e.partial(free_values).constant_term();
    for (const auto& [u, e] : substitutions_)
      if (!e.partial(free_values).is_constant())
        throw InvariantViolation("substitution for " + var_name(u) + " depends on an unassigned unknown");
    return out;
  }

 private:
  std::vector<VarId> unknowns_;
  std::set<VarId> frozen_;
  std::vector<PolyExpr> equations_;
  std::vector<std::pair<VarId, PolyExpr>> substitutions_;
  std::vector<ProofStep> log_;
  SystemStatus status_ = SystemStatus::Open;
  bool fragment_limit_ = false;
};

/// Repeatedly solves c*u + p = 0 for an unknown u occurring only in that
/// linear monomial. Fully linear equations go first, then the unknown with
/// the smallest name, then the smallest equation index.
inline ConstraintSystem linear_eliminate(ConstraintSystem s,
                                         EliminationOrder order = EliminationOrder::ByName) {
  s.normalize();
  while (s.status() == SystemStatus::Open) {
    const auto& eqs = s.equations();
    struct Pick {
      bool linear;
      std::string name;
      size_t index;
      VarId v;
      Scalar c;
    };
    std::optional<Pick> best;
    auto better = [&](const Pick& a, const Pick& b) {
      if (a.linear != b.linear) return a.linear;
      if (a.name != b.name)
        return order == EliminationOrder::ByName ? a.name < b.name : a.name > b.name;
      return a.index < b.index;
    };
    for (size_t k = 0; k < eqs.size(); ++k) {
      const bool linear = eqs[k].degree() <= 1;
      if (best && best->linear && !linear) continue;
      for (VarId v : eqs[k].variables()) {
        if (s.is_frozen(v)) continue;
        auto c = eqs[k].isolated_linear_coefficient(v);
        if (!c) continue;
        Pick p{linear, var_name(v), k, v, *c};
        if (!best || better(p, *best)) best = p;
      }
    }
    if (!best) break;
    const PolyExpr& eq = eqs[best->index];
    std::string source = eq.str() + " = 0";
    PolyExpr rest = eq - best->c * PolyExpr::var(best->v);
    PolyExpr value = (Scalar(-1) / best->c) * rest;
    s.eliminate(best->v, value, source);
    s.normalize();
  }
  return s;
}

/// sqrt in Q(i) when it exists.
inline std::optional<Scalar> gaussian_sqrt(const Scalar& d) {
  auto rational_sqrt = [](const Rational& q) -> std::optional<Rational> {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class rn = sqrt(num), rd = sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
  };
  if (d.is_zero()) return Scalar();
  auto s = rational_sqrt(d.norm());
  if (!s) return std::nullopt;
  // x^2 = (re + |d|)/2, y = im / (2x); or x = 0 when re = -|d|.
  Rational x2 = (d.re() + *s) / 2;
  x2.canonicalize();
  auto x = rational_sqrt(x2);
  if (!x) return std::nullopt;
  if (sgn(*x) == 0) {
    auto y = rational_sqrt(-d.re());
    if (!y) return std::nullopt;
    return Scalar(Rational(0), *y);
  }
  Rational y = d.im() / (2 * *x);
  y.canonicalize();
  return Scalar(*x, y);
}

/// Factor sets recognised by the branching step: a common unknown factor
/// u * l = 0 with l linear, a monomial c*u*v = 0, or a univariate quadratic
/// with roots in Q(i). Returns the factors as equations (each = 0).
inline std::optional<std::vector<PolyExpr>> recognise_factored(const PolyExpr& e,
                                                               const ConstraintSystem& s) {
  auto vars = e.variables();
  bool any_free = false;
  for (VarId v : vars) any_free = any_free || !s.is_frozen(v);
  if (!any_free) return std::nullopt;
  // common unknown factor
  for (VarId u : vars) {
    bool all = true;
    for (const auto& [m, c] : e.terms()) all = all && std::binary_search(m.begin(), m.end(), u);
    if (!all) continue;
    PolyExpr rest;
    for (const auto& [m, c] : e.terms()) {
      Monomial r = m;
      r.erase(std::find(r.begin(), r.end(), u));
      rest.add_term(r, c);
    }
    if (rest.degree() <= 1) return std::vector<PolyExpr>{PolyExpr::var(u), rest};
  }
  // univariate quadratic
  if (vars.size() == 1 && e.degree() == 2) {
    VarId u = *vars.begin();
    Scalar a = e.terms().count(Monomial{u, u}) ? e.terms().at(Monomial{u, u}) : Scalar();
    Scalar b = e.terms().count(Monomial{u}) ? e.terms().at(Monomial{u}) : Scalar();
    Scalar c = e.constant_term();
    auto r = gaussian_sqrt(b * b - Scalar(4) * a * c);
    if (!r) return std::nullopt;
    Scalar x1 = (-b + *r) / (Scalar(2) * a), x2 = (-b - *r) / (Scalar(2) * a);
    std::vector<PolyExpr> f{PolyExpr::var(u) - PolyExpr(x1)};
    if (x2 != x1) f.push_back(PolyExpr::var(u) - PolyExpr(x2));
    return f;
  }
  return std::nullopt;
}

/// One child per factor, each re-eliminated. Singleton with the fragment
/// flag when nothing in the system has a recognised shape.
inline std::vector<ConstraintSystem> branch_on_factored(const ConstraintSystem& s,
                                                        EliminationOrder order = EliminationOrder::ByName) {
  const auto& eqs = s.equations();
  // Fewest unknowns first, then lowest degree, then index.
  std::vector<size_t> idx(eqs.size());
  for (size_t k = 0; k < idx.size(); ++k) idx[k] = k;
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    auto va = eqs[a].variables().size(), vb = eqs[b].variables().size();
    if (va != vb) return va < vb;
    return eqs[a].degree() < eqs[b].degree();
  });
  for (size_t k : idx) {
    auto f = recognise_factored(eqs[k], s);
    if (!f) continue;
    std::vector<ConstraintSystem> out;
    ProofStep step{"branch", "", "", eqs[k].str() + " = 0", {}};
    for (const auto& factor : *f) step.cases.push_back(factor.str() + " = 0");
    for (const auto& factor : *f) {
      ConstraintSystem c = s;
      c.set_status(SystemStatus::Open);
      ConstraintSystem tagged = c;
      // The branch step is logged in every child so each leaf log is complete.
      tagged.note("case " + factor.str() + " = 0 of " + eqs[k].str() + " = 0");
      tagged.add_equation(factor);
      out.push_back(linear_eliminate(std::move(tagged), order));
    }
    return out;
  }
  ConstraintSystem c = s;
  c.set_fragment_limit();
  return {c};
}

struct SolveLeaf {
  ConstraintSystem system;
  std::vector<std::string> path;  // branch choices leading here
};

/// linear_eliminate, then branch on factored equations until every leaf is
/// solved, infeasible, or outside the supported fragment.
inline std::vector<SolveLeaf> solve_system(const ConstraintSystem& s0,
                                           EliminationOrder order = EliminationOrder::ByName,
                                           size_t max_leaves = 4096) {
  std::vector<SolveLeaf> done;
  std::vector<SolveLeaf> stack{{linear_eliminate(s0, order), {}}};
  while (!stack.empty()) {
    SolveLeaf cur = std::move(stack.back());
    stack.pop_back();
    const auto st = cur.system.status();
    // Only frozen symbols left: nothing more to branch on.
    bool only_frozen = !cur.system.equations().empty();
    for (const auto& e : cur.system.equations())
      for (VarId v : e.variables()) only_frozen = only_frozen && cur.system.is_frozen(v);
    if (st != SystemStatus::Open || only_frozen || cur.system.fragment_limit()) {
      done.push_back(std::move(cur));
      continue;
    }
    auto kids = branch_on_factored(cur.system, order);
    if (kids.size() == 1 && kids[0].fragment_limit()) {
      done.push_back({kids[0], cur.path});
      continue;
    }
    // Push in reverse so the first factor is explored first.
    for (size_t k = kids.size(); k-- > 0;) {
      auto path = cur.path;
      path.push_back(kids[k].log().empty() ? "" : kids[k].log()[cur.system.log().size()].equation);
      stack.push_back({std::move(kids[k]), std::move(path)});
    }
    if (done.size() + stack.size() > max_leaves) throw DomainError("solve_system: branch limit exceeded");
  }
  return done;
}

}  // namespace leibniz
