#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/matrix.hpp"
#include "leibniz/scalar.hpp"
#include "leibniz/tensor.hpp"

namespace leibniz {

using Params = std::map<std::string, Scalar>;

/// Printed tables as they appear, or with the documented corrections applied.
/// Everything downstream uses Corrected; Printed exists so tests can show why
/// a correction was needed.
enum class Variant { Corrected, Printed };

inline std::string params_str(const Params& p) {
  std::string s;
  for (const auto& [k, v] : p) s += (s.empty() ? "" : ",") + k + "=" + v.str();
  return s;
}

inline const Scalar& param(const Params& p, const std::string& name) {
  auto it = p.find(name);
  if (it == p.end()) throw InputError("missing parameter '" + name + "'");
  return it->second;
}

// ---------------------------------------------------------------------------
// Nilradical tables

namespace detail {

inline void put(StructureTensor& t, size_t i, size_t j, std::vector<std::pair<size_t, Scalar>> terms) {
  Vector v(t.dim());
  for (auto& [k, c] : terms) v[k - 1] += c;
  t.set_product(i, j, v);
}

inline std::vector<std::string> basis_labels(size_t n, size_t extra) {
  std::vector<std::string> l;
  for (size_t k = 1; k <= n; ++k) l.push_back("e" + std::to_string(k));
  if (extra >= 1) l.push_back("x");
  if (extra >= 2) l.push_back("y");
  return l;
}

/// L(a, b, g) written into the first n coordinates of a tensor of size n + extra.
inline StructureTensor unified_L(size_t n, const Scalar& a, const Scalar& b, const Scalar& g,
                                 size_t extra = 0) {
  StructureTensor t(n + extra, basis_labels(n, extra));
  for (size_t i = 1; i <= n - 3; ++i) put(t, i, 1, {{i + 1, 1}});
  put(t, n - 1, 1, {{n, 1}, {2, a}});
  put(t, 1, n - 1, {{n, b}});
  put(t, n - 1, n - 1, {{n, g}});
  return t;
}

/// G(a, b, g). The pairs (i, n+2-i) of the last rule overlap; each ordered
/// pair is written once, literally.
inline StructureTensor unified_G(size_t n, const Scalar& a, const Scalar& b, const Scalar& g,
                                 size_t extra = 0) {
  StructureTensor t(n + extra, basis_labels(n, extra));
  put(t, 1, 1, {{2, 1}});
  for (size_t i = 3; i <= n - 1; ++i) put(t, i, 1, {{i + 1, 1}});
  put(t, 1, 3, {{4, -1}, {2, b}});
  for (size_t i = 4; i <= n - 1; ++i) put(t, 1, i, {{i + 1, -1}});
  put(t, 3, 3, {{2, g}});
  for (size_t i = 3; i <= n - 1; ++i) {
    Scalar sign = (i % 2 == 0) ? 1 : -1;
    t.add(i, n + 2 - i, n, sign * a);
  }
  return t;
}

inline StructureTensor lnr(size_t n, size_t r) {
  std::vector<std::string> labels;
  for (size_t k = 0; k < n; ++k) labels.push_back("e" + std::to_string(k));
  StructureTensor t(n, labels);
  auto e = [](size_t k) { return k + 1; };  // label e_k -> 1-based index
  for (size_t i = 1; i <= n - 3; ++i) {
    t.set(e(0), e(i), e(i + 1), 1);
    t.set(e(i), e(0), e(i + 1), -1);
  }
  for (size_t i = 1; i <= r - 1; ++i) {
    // (-1)^{i-1} for i <= (r-1)/2; the upper half is the antisymmetric image.
    Scalar c = (i % 2 == 1) ? 1 : -1;
    t.set(e(i), e(r - i), e(n - 1), c);
  }
  return t;
}

inline bool in_set(const Scalar& v, std::initializer_list<Scalar> allowed) {
  return std::find(allowed.begin(), allowed.end(), v) != allowed.end();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Family registry

struct FamilySpec {
  std::string name;        // canonical ASCII name, e.g. "L1(beta)"
  std::string display;     // name as printed in the literature
  std::string group;       // type-I | type-II | unified | lie | solvable
  std::string nilradical;  // "L" or "G" for families built on them
  size_t extra_dim = 0;    // total dimension is n + extra_dim
  size_t min_n = 5;
  bool n_odd = false;
  std::vector<std::string> param_names;
  std::string domain;  // human-readable parameter domain
  std::vector<std::string> corrections;
  std::function<void(size_t, const Params&)> validate_params;
  std::function<StructureTensor(size_t, const Params&, Variant)> builder;
  std::vector<Params> sample_grid;
  /// (alpha, beta, gamma) of the nilradical for L/G-based families.
  std::function<std::array<Scalar, 3>(const Params&)> abg;

  std::string stem() const { return name.substr(0, name.find('(')); }
  size_t dim(size_t n) const { return n + extra_dim; }

  void validate(size_t n, const Params& p) const {
    for (const auto& [k, v] : p)
      if (std::find(param_names.begin(), param_names.end(), k) == param_names.end())
        throw InputError(name + ": unknown parameter '" + k + "'");
    for (const auto& k : param_names)
      if (!p.count(k)) throw InputError(name + ": missing parameter '" + k + "'");
    if (n < min_n) throw InputError(name + ": n must be at least " + std::to_string(min_n));
    if (n_odd && n % 2 == 0)
      throw InputError(name + ": requires n odd (if n is even, then alpha = 0)");
    if (validate_params) validate_params(n, p);
  }

  StructureTensor build(size_t n, const Params& p, Variant v = Variant::Corrected) const {
    validate(n, p);
    return builder(n, p, v);
  }
};

namespace detail {

inline void require(bool ok, const std::string& family, const std::string& domain) {
  if (!ok) throw InputError(family + ": parameters outside the domain " + domain);
}

inline std::vector<Params> grid1(const std::string& k, std::initializer_list<Scalar> vs) {
  std::vector<Params> g;
  for (const auto& v : vs) g.push_back({{k, v}});
  return g;
}

inline std::vector<FamilySpec> make_registry() {
  std::vector<FamilySpec> out;
  const Scalar half = Scalar::frac(1, 2);

  auto abg_const = [](Scalar a, Scalar b, Scalar g) {
    return [=](const Params&) { return std::array<Scalar, 3>{a, b, g}; };
  };

  // ---- type I (literal tables) -------------------------------------------
  auto type1 = [&](std::string name, std::string display, std::vector<std::string> pn,
                   std::string domain, std::function<void(size_t, const Params&)> val,
                   std::function<std::array<Scalar, 3>(const Params&)> abg,
                   std::vector<Params> grid) {
    FamilySpec f;
    f.name = std::move(name);
    f.display = std::move(display);
    f.group = "type-I";
    f.nilradical = "";
    f.param_names = std::move(pn);
    f.domain = std::move(domain);
    f.validate_params = std::move(val);
    f.abg = abg;
    f.sample_grid = std::move(grid);
    // Printed shape shared by all five: chain, [e_{n-1},e_1], then optional rows.
    f.builder = [abg](size_t n, const Params& p, Variant) {
      auto [a, b, g] = abg(p);
      StructureTensor t(n);
      for (size_t i = 1; i <= n - 3; ++i) put(t, i, 1, {{i + 1, 1}});
      if (a.is_zero())
        put(t, n - 1, 1, {{n, 1}});
      else
        put(t, n - 1, 1, {{n, 1}, {2, 1}});
      if (!b.is_zero()) put(t, 1, n - 1, {{n, b}});
      if (!g.is_zero()) put(t, n - 1, n - 1, {{n, g}});
      return t;
    };
    out.push_back(std::move(f));
  };
  type1("L1(beta)", "L_n^{1,beta}", {"beta"}, "beta in C", nullptr,
        [](const Params& p) { return std::array<Scalar, 3>{0, param(p, "beta"), 0}; },
        grid1("beta", {0, -1, 2, half}));
  type1("L2(beta)", "L_n^{2,beta}", {"beta"}, "beta in {0, 1}",
        [](size_t, const Params& p) {
          require(in_set(param(p, "beta"), {0, 1}), "L2(beta)", "beta in {0, 1}");
        },
        [](const Params& p) { return std::array<Scalar, 3>{0, param(p, "beta"), 1}; },
        grid1("beta", {0, 1}));
  type1("L3(beta)", "L_n^{3,beta}", {"beta"}, "beta in {-1, 0, 1}",
        [](size_t, const Params& p) {
          require(in_set(param(p, "beta"), {-1, 0, 1}), "L3(beta)", "beta in {-1, 0, 1}");
        },
        [](const Params& p) { return std::array<Scalar, 3>{1, param(p, "beta"), 0}; },
        grid1("beta", {-1, 0, 1}));
  type1("L4(gamma)", "L_n^{4,gamma}", {"gamma"}, "gamma != 0",
        [](size_t, const Params& p) {
          require(!param(p, "gamma").is_zero(), "L4(gamma)", "gamma != 0");
        },
        [](const Params& p) { return std::array<Scalar, 3>{1, 0, param(p, "gamma")}; },
        grid1("gamma", {1, -1, 2, half}));
  type1("L5(beta,gamma)", "L_n^{5,beta,gamma}", {"beta", "gamma"},
        "(beta, gamma) in {(1, 1), (2, 4)}",
        [](size_t, const Params& p) {
          auto b = param(p, "beta"), g = param(p, "gamma");
          require((b == 1 && g == 1) || (b == 2 && g == 4), "L5(beta,gamma)",
                  "(beta, gamma) in {(1, 1), (2, 4)}");
        },
        [](const Params& p) {
          return std::array<Scalar, 3>{1, param(p, "beta"), param(p, "gamma")};
        },
        {{{"beta", 1}, {"gamma", 1}}, {{"beta", 2}, {"gamma", 4}}});

  // ---- type II (literal tables) ------------------------------------------
  auto type2 = [&](int idx, std::vector<std::string> pn, std::string domain, bool odd,
                   std::function<void(size_t, const Params&)> val,
                   std::function<std::array<Scalar, 3>(const Params&)> abg,
                   std::vector<Params> grid) {
    FamilySpec f;
    std::string stem = "Ltype2_" + std::to_string(idx);
    f.name = stem;
    if (!pn.empty()) {
      f.name += "(";
      for (size_t k = 0; k < pn.size(); ++k) f.name += (k ? "," : "") + pn[k];
      f.name += ")";
    }
    f.display = "L_n^" + std::to_string(idx);
    f.group = "type-II";
    f.n_odd = odd;
    f.param_names = std::move(pn);
    f.domain = std::move(domain);
    f.validate_params = std::move(val);
    f.abg = abg;
    f.sample_grid = grid.empty() ? std::vector<Params>{Params{}} : std::move(grid);
    if (idx == 4)
      f.corrections.push_back(
          "printed [e1,e1] = e1 is read as [e1,e1] = e2 (the printed product contradicts "
          "nilpotency and the G(0,2,1) correspondence)");
    f.builder = [abg, idx](size_t n, const Params& p, Variant v) {
      auto [a, b, g] = abg(p);
      StructureTensor t(n);
      if (idx == 4 && v == Variant::Printed)
        put(t, 1, 1, {{1, 1}});
      else
        put(t, 1, 1, {{2, 1}});
      for (size_t i = 3; i <= n - 1; ++i) put(t, i, 1, {{i + 1, 1}});
      if (b.is_zero())
        put(t, 1, 3, {{4, -1}});
      else
        put(t, 1, 3, {{2, b}, {4, -1}});
      for (size_t i = 4; i <= n - 1; ++i) put(t, 1, i, {{i + 1, -1}});
      if (!g.is_zero()) put(t, 3, 3, {{2, g}});
      if (!a.is_zero())
        for (size_t i = 3; i <= n - 1; ++i) put(t, i, n + 2 - i, {{n, (i % 2 == 0) ? 1 : -1}});
      return t;
    };
    out.push_back(std::move(f));
  };
  type2(1, {}, "none", false, nullptr, abg_const(0, 0, 0), {});
  type2(2, {}, "none", false, nullptr, abg_const(0, 1, 0), {});
  type2(3, {}, "none", false, nullptr, abg_const(0, 0, 1), {});
  type2(4, {}, "none", false, nullptr, abg_const(0, 2, 1), {});
  type2(5, {}, "n odd", true, nullptr, abg_const(1, 0, 0), {});
  type2(6, {"beta"}, "beta in {1, 2}, n odd", true,
        [](size_t, const Params& p) {
          require(in_set(param(p, "beta"), {1, 2}), "Ltype2_6(beta)", "beta in {1, 2}");
        },
        [](const Params& p) { return std::array<Scalar, 3>{1, param(p, "beta"), 0}; },
        grid1("beta", {1, 2}));
  type2(7, {"gamma"}, "gamma != 0, n odd", true,
        [](size_t, const Params& p) {
          require(!param(p, "gamma").is_zero(), "Ltype2_7(gamma)", "gamma != 0");
        },
        [](const Params& p) { return std::array<Scalar, 3>{1, 0, param(p, "gamma")}; },
        grid1("gamma", {1, -1, 2, half}));
  type2(8, {"beta", "gamma"}, "(beta, gamma) in {(-2, 1), (2, 1), (4, 2)}, n odd", true,
        [](size_t, const Params& p) {
          auto b = param(p, "beta"), g = param(p, "gamma");
          require((b == -2 && g == 1) || (b == 2 && g == 1) || (b == 4 && g == 2),
                  "Ltype2_8(beta,gamma)", "(beta, gamma) in {(-2, 1), (2, 1), (4, 2)}");
        },
        [](const Params& p) {
          return std::array<Scalar, 3>{1, param(p, "beta"), param(p, "gamma")};
        },
        {{{"beta", -2}, {"gamma", 1}}, {{"beta", 2}, {"gamma", 1}}, {{"beta", 4}, {"gamma", 2}}});

  // ---- unified families ---------------------------------------------------
  {
    std::vector<Params> grid;
    for (Scalar a : {0, 1})
      for (const Scalar& b : {Scalar(0), Scalar(-1), Scalar(1), Scalar(2), half})
        for (const Scalar& g : {Scalar(0), Scalar(1), Scalar(4)}) grid.push_back({{"a", a}, {"b", b}, {"g", g}});
    FamilySpec f;
    f.name = "L(a,b,g)";
    f.display = "L(alpha,beta,gamma)";
    f.group = "unified";
    f.param_names = {"a", "b", "g"};
    f.domain = "a in {0, 1}; b, g in C";
    f.validate_params = [](size_t, const Params& p) {
      require(in_set(param(p, "a"), {0, 1}), "L(a,b,g)", "a in {0, 1}");
    };
    f.abg = [](const Params& p) {
      return std::array<Scalar, 3>{param(p, "a"), param(p, "b"), param(p, "g")};
    };
    f.builder = [](size_t n, const Params& p, Variant) {
      return unified_L(n, param(p, "a"), param(p, "b"), param(p, "g"));
    };
    f.sample_grid = grid;
    out.push_back(f);

    grid.clear();
    for (Scalar a : {0, 1})
      for (const Scalar& b : {Scalar(0), Scalar(1), Scalar(2), Scalar(-2), Scalar(4), half})
        for (const Scalar& g : {Scalar(0), Scalar(1), Scalar(2)}) grid.push_back({{"a", a}, {"b", b}, {"g", g}});
    FamilySpec h;
    h.name = "G(a,b,g)";
    h.display = "G(alpha,beta,gamma)";
    h.group = "unified";
    h.param_names = {"a", "b", "g"};
    h.domain = "a in {0, 1}, a = 1 only for n odd; b, g in C";
    h.validate_params = [](size_t n, const Params& p) {
      require(in_set(param(p, "a"), {0, 1}), "G(a,b,g)", "a in {0, 1}");
      if (param(p, "a") == 1 && n % 2 == 0)
        throw InputError("G(a,b,g): if n is even, then alpha = 0");
    };
    h.abg = f.abg;
    h.builder = [](size_t n, const Params& p, Variant) {
      return unified_G(n, param(p, "a"), param(p, "b"), param(p, "g"));
    };
    h.sample_grid = grid;
    out.push_back(h);
  }

  // ---- quasi-filiform Lie family -----------------------------------------
  {
    FamilySpec f;
    f.name = "Lnr(n,r)";
    f.display = "frak L_{n,r}";
    f.group = "lie";
    f.param_names = {"r"};
    f.domain = "r odd, 3 <= r <= 2[(n-1)/2] - 1";
    f.validate_params = [](size_t n, const Params& p) {
      const Scalar& r = param(p, "r");
      bool ok = r.is_real() && r.re().get_den() == 1;
      if (ok) {
        long rv = r.re().get_num().get_si();
        long top = 2 * static_cast<long>((n - 1) / 2) - 1;
        ok = rv % 2 != 0 && rv >= 3 && rv <= top;
      }
      require(ok, "Lnr(n,r)", "r odd, 3 <= r <= 2[(n-1)/2] - 1");
    };
    f.builder = [](size_t n, const Params& p, Variant) {
      return lnr(n, param(p, "r").re().get_num().get_ui());
    };
    f.sample_grid = {};  // depends on n; see sample_params()
    out.push_back(f);
  }

  // ---- solvable extensions with L nilradical (codim 2) -------------------
  auto ext = [&](std::string name, std::string display, std::string nil, size_t extra,
                 bool odd, std::vector<std::string> pn, std::string domain,
                 std::function<void(size_t, const Params&)> val,
                 std::function<std::array<Scalar, 3>(const Params&)> abg,
                 std::vector<Params> grid, std::vector<std::string> corrections,
                 std::function<void(StructureTensor&, size_t, const Params&, Variant)> fill) {
    FamilySpec f;
    f.name = std::move(name);
    f.display = std::move(display);
    f.group = "solvable";
    f.nilradical = nil;
    f.extra_dim = extra;
    f.n_odd = odd;
    f.param_names = std::move(pn);
    f.domain = std::move(domain);
    f.validate_params = std::move(val);
    f.abg = abg;
    f.sample_grid = grid.empty() ? std::vector<Params>{Params{}} : std::move(grid);
    f.corrections = std::move(corrections);
    f.builder = [abg, nil, extra, fill](size_t n, const Params& p, Variant v) {
      auto [a, b, g] = abg(p);
      StructureTensor t = nil == "L" ? unified_L(n, a, b, g, extra) : unified_G(n, a, b, g, extra);
      fill(t, n, p, v);
      return t;
    };
    out.push_back(std::move(f));
  };

  ext("R1(beta)", "R^1_{n+2}(0,beta,0)", "L", 2, false, {"beta"}, "beta in {-1, 0}",
      [](size_t, const Params& p) {
        require(in_set(param(p, "beta"), {-1, 0}), "R1(beta)", "beta in {-1, 0}");
      },
      [](const Params& p) { return std::array<Scalar, 3>{0, param(p, "beta"), 0}; },
      grid1("beta", {-1, 0}), {},
      [](StructureTensor& t, size_t n, const Params& p, Variant) {
        const size_t x = n + 1, y = n + 2;
        const Scalar b = param(p, "beta");
        for (size_t i = 1; i <= n - 2; ++i) put(t, i, x, {{i, static_cast<long>(i)}});
        put(t, n, x, {{n, 1}});
        put(t, x, 1, {{1, -1}});
        put(t, x, n, {{n, b}});
        put(t, n - 1, y, {{n - 1, 1}});
        put(t, n, y, {{n, 1}});
        put(t, y, n - 1, {{n - 1, b}});
        put(t, y, n, {{n, b}});
      });

  ext("R2", "R^2_{n+2}(0,1,1)", "L", 2, false, {}, "none", nullptr, abg_const(0, 1, 1), {}, {},
      [](StructureTensor& t, size_t n, const Params&, Variant) {
        const size_t x = n + 1, y = n + 2;
        put(t, 1, x, {{1, 1}, {n - 1, -1}});
        put(t, 2, x, {{2, 2}, {n, -2}});
        for (size_t i = 3; i <= n - 2; ++i) put(t, i, x, {{i, static_cast<long>(i)}});
        put(t, x, 1, {{1, -1}, {n - 1, 1}});
        put(t, 1, y, {{n - 1, 1}});
        put(t, 2, y, {{n, 2}});
        put(t, n - 1, y, {{n - 1, 1}});
        put(t, n, y, {{n, 2}});
        put(t, y, 1, {{n - 1, -1}});
        put(t, y, n - 1, {{n - 1, -1}});
      });

  ext("R3", "R^3_{n+2}(1,-1,0)", "L", 2, false, {}, "none", nullptr, abg_const(1, -1, 0), {}, {},
      [](StructureTensor& t, size_t n, const Params&, Variant) {
        const size_t x = n + 1, y = n + 2;
        put(t, 1, x, {{1, 1}, {n - 1, -1}});
        for (size_t i = 2; i <= n - 2; ++i) put(t, i, x, {{i, static_cast<long>(i) - 1}});
        put(t, n, x, {{n, 1}});
        put(t, x, 1, {{1, -1}, {n - 1, 1}});
        put(t, x, n, {{n, -1}});
        put(t, 1, y, {{n - 1, 1}});
        for (size_t i = 2; i <= n - 2; ++i) put(t, i, y, {{i, 1}});
        put(t, n - 1, y, {{n - 1, 1}});
        put(t, n, y, {{n, 1}});
        put(t, y, 1, {{n - 1, -1}});
        put(t, y, n - 1, {{n - 1, -1}});
        put(t, y, n, {{2, -1}, {n, -1}});
      });

  ext("R4", "R^4_{n+2}(1,0,0)", "L", 2, false, {}, "none", nullptr, abg_const(1, 0, 0), {}, {},
      [](StructureTensor& t, size_t n, const Params&, Variant) {
        const size_t x = n + 1, y = n + 2;
        put(t, 1, x, {{1, 1}, {n - 1, -1}});
        put(t, 2, x, {{2, 1}, {n, -1}});
        for (size_t i = 3; i <= n - 2; ++i) put(t, i, x, {{i, static_cast<long>(i) - 1}});
        put(t, n, x, {{n, 2}});
        put(t, x, 1, {{1, -1}, {n - 1, 1}});
        put(t, 1, y, {{n - 1, 1}});
        put(t, 2, y, {{2, 1}, {n, 1}});
        for (size_t i = 3; i <= n - 2; ++i) put(t, i, y, {{i, 1}});
        put(t, n - 1, y, {{n - 1, 1}});
      });

  // ---- solvable extensions with G nilradical, codim 1 ---------------------
  auto hc1 = [&](int idx, Scalar c42, bool odd, std::vector<std::string> pn, std::string domain,
                 std::function<void(size_t, const Params&)> val,
                 std::function<std::array<Scalar, 3>(const Params&)> abg, std::vector<Params> grid,
                 std::string tag) {
    ext("Hc1_" + std::to_string(idx) + (pn.empty() ? "" : "(gamma)"),
        "H^" + std::to_string(idx) + "_{n+1}" + tag, "G", 1, odd, pn, domain, val, abg, grid, {},
        [c42, idx](StructureTensor& t, size_t n, const Params&, Variant) {
          const size_t x = n + 1;
          put(t, 1, x, {{1, 1}});
          put(t, 2, x, {{2, 2}});
          for (size_t i = 3; i <= n; ++i) put(t, i, x, {{i, static_cast<long>(i) - 2}});
          put(t, x, 1, {{1, -1}});
          for (size_t i = 3; i <= n; ++i) put(t, x, i, {{i, -(static_cast<long>(i) - 2)}});
          if (idx != 1 && idx != 3) put(t, x, 4, {{4, -2}, {2, c42}});
        });
  };
  hc1(1, 0, false, {}, "none", nullptr, abg_const(0, 0, 1), {}, "(0,0,1)");
  hc1(2, 2, true, {}, "n odd", nullptr, abg_const(1, 2, 0), {}, "(1,2,0)");
  hc1(3, 0, true, {"gamma"}, "gamma != 0, n odd",
      [](size_t, const Params& p) {
        require(!param(p, "gamma").is_zero(), "Hc1_3(gamma)", "gamma != 0");
      },
      [](const Params& p) { return std::array<Scalar, 3>{1, 0, param(p, "gamma")}; },
      grid1("gamma", {1, -1, 2, half}), "(1,0,gamma)");
  hc1(4, -2, true, {}, "n odd", nullptr, abg_const(1, -2, 1), {}, "(1,-2,1)");
  hc1(5, 4, true, {}, "n odd", nullptr, abg_const(1, 4, 2), {}, "(1,4,2)");

  // ---- solvable extensions with G nilradical, codim 2 ---------------------
  ext("Hc2_1", "H^1_{n+2}(0,0,0)", "G", 2, false, {}, "none", nullptr, abg_const(0, 0, 0), {}, {},
      [](StructureTensor& t, size_t n, const Params&, Variant) {
        const size_t x = n + 1, y = n + 2;
        put(t, 1, x, {{1, 1}});
        put(t, 2, x, {{2, 2}});
        put(t, x, 1, {{1, -1}});
        for (size_t i = 3; i <= n; ++i) {
          put(t, i, x, {{i, static_cast<long>(i) - 3}});
          put(t, x, i, {{i, -(static_cast<long>(i) - 3)}});
          put(t, i, y, {{i, 1}});
          put(t, y, i, {{i, -1}});
        }
      });

  ext("Hc2_2", "H^2_{n+2}(0,1,0)", "G", 2, false, {}, "none", nullptr, abg_const(0, 1, 0), {},
      {"printed [e2,x] = 2e2 is corrected to [e2,x] = e2 ((2 + A1 beta) e2 with A1 = -1)",
       "printed [y,e1] = e3 is corrected to [y,e1] = -e3 (A1 e3 with A1 = -1)"},
      [](StructureTensor& t, size_t n, const Params&, Variant v) {
        const size_t x = n + 1, y = n + 2;
        const bool printed = v == Variant::Printed;
        put(t, 1, x, {{1, 1}, {3, -1}});
        put(t, 2, x, {{2, printed ? 2 : 1}});
        for (size_t i = 4; i <= n; ++i) put(t, i, x, {{i, static_cast<long>(i) - 3}});
        put(t, x, 1, {{1, -1}, {3, 1}});
        put(t, x, 4, {{4, -1}, {2, 1}});
        for (size_t i = 5; i <= n; ++i) put(t, x, i, {{i, -(static_cast<long>(i) - 3)}});
        put(t, 1, y, {{3, 1}});
        for (size_t i = 2; i <= n; ++i) put(t, i, y, {{i, 1}});
        put(t, y, 1, {{3, printed ? 1 : -1}});
        for (size_t i = 3; i <= n; ++i) put(t, y, i, {{i, -1}});
      });

  ext("Hc2_3", "H^3_{n+2}(0,2,1)", "G", 2, false, {}, "none", nullptr, abg_const(0, 2, 1), {}, {},
      [](StructureTensor& t, size_t n, const Params&, Variant) {
        const size_t x = n + 1, y = n + 2;
        put(t, 1, x, {{1, 1}, {3, -1}});
        put(t, 4, x, {{4, 1}, {2, -1}});
        for (size_t i = 5; i <= n; ++i) put(t, i, x, {{i, static_cast<long>(i) - 3}});
        put(t, x, 1, {{1, -1}, {3, 1}});
        put(t, x, 4, {{4, -1}, {2, 1}});
        for (size_t i = 5; i <= n; ++i) put(t, x, i, {{i, -(static_cast<long>(i) - 3)}});
        put(t, 1, y, {{3, 1}});
        put(t, 2, y, {{2, 2}});
        put(t, 3, y, {{3, 1}});
        put(t, 4, y, {{4, 1}, {2, 1}});
        for (size_t i = 5; i <= n; ++i) put(t, i, y, {{i, 1}});
        put(t, y, 1, {{3, -1}});
        put(t, y, 3, {{3, -1}});
        put(t, y, 4, {{4, -1}, {2, 1}});
        for (size_t i = 5; i <= n; ++i) put(t, y, i, {{i, -1}});
      });

  const std::string en_fix =
      "printed [e_n,x] = (n-3)e_n, [x,e_n] = -(n-3)e_n are corrected to (n-4) "
      "(general form n - 3 - (-1)^n A1 alpha with A1 = -1, n odd)";
  ext("Hc2_4", "H^4_{n+2}(1,0,0)", "G", 2, true, {}, "n odd", nullptr, abg_const(1, 0, 0), {},
      {en_fix, "printed [e1,y] = -e3, [y,e1] = e3 are corrected to [e1,y] = e3, [y,e1] = -e3 "
               "(-A1 e3 and A1 e3 with A1 = -1)"},
      [](StructureTensor& t, size_t n, const Params&, Variant v) {
        const size_t x = n + 1, y = n + 2;
        const bool printed = v == Variant::Printed;
        const long en = printed ? static_cast<long>(n) - 3 : static_cast<long>(n) - 4;
        put(t, 1, x, {{1, 1}, {3, -1}});
        put(t, 2, x, {{2, 2}});
        for (size_t i = 4; i <= n - 1; ++i) put(t, i, x, {{i, static_cast<long>(i) - 3}});
        put(t, n, x, {{n, en}});
        put(t, x, 1, {{1, -1}, {3, 1}});
        for (size_t i = 4; i <= n - 1; ++i) put(t, x, i, {{i, -(static_cast<long>(i) - 3)}});
        put(t, x, n, {{n, -en}});
        put(t, 1, y, {{3, printed ? -1 : 1}});
        for (size_t i = 3; i <= n - 1; ++i) put(t, i, y, {{i, 1}});
        put(t, n, y, {{n, 2}});
        put(t, y, 1, {{3, printed ? 1 : -1}});
        for (size_t i = 3; i <= n - 1; ++i) put(t, y, i, {{i, -1}});
        put(t, y, n, {{n, -2}});
      });

  ext("Hc2_5", "H^5_{n+2}(1,1,0)", "G", 2, true, {}, "n odd", nullptr, abg_const(1, 1, 0), {},
      {en_fix},
      [](StructureTensor& t, size_t n, const Params&, Variant v) {
        const size_t x = n + 1, y = n + 2;
        const long en = v == Variant::Printed ? static_cast<long>(n) - 3 : static_cast<long>(n) - 4;
        put(t, 1, x, {{1, 1}, {3, -1}});
        put(t, 2, x, {{2, 1}});
        for (size_t i = 4; i <= n - 1; ++i) put(t, i, x, {{i, static_cast<long>(i) - 3}});
        put(t, n, x, {{n, en}});
        put(t, x, 1, {{1, -1}, {3, 1}});
        put(t, x, 4, {{4, -1}, {2, 1}});
        for (size_t i = 5; i <= n - 1; ++i) put(t, x, i, {{i, -(static_cast<long>(i) - 3)}});
        put(t, x, n, {{n, -en}});
        put(t, 1, y, {{3, 1}});
        for (size_t i = 2; i <= n - 1; ++i) put(t, i, y, {{i, 1}});
        put(t, n, y, {{n, 2}});
        put(t, y, 1, {{3, -1}});
        for (size_t i = 3; i <= n - 1; ++i) put(t, y, i, {{i, -1}});
        put(t, y, n, {{n, -2}});
      });

  ext("Hc2_6", "H^6_{n+2}(1,2,1)", "G", 2, true, {}, "n odd", nullptr, abg_const(1, 2, 1), {},
      {en_fix},
      [](StructureTensor& t, size_t n, const Params&, Variant v) {
        const size_t x = n + 1, y = n + 2;
        const long en = v == Variant::Printed ? static_cast<long>(n) - 3 : static_cast<long>(n) - 4;
        put(t, 1, x, {{1, 1}, {3, -1}});
        put(t, 4, x, {{4, 1}, {2, -1}});
        for (size_t i = 5; i <= n - 1; ++i) put(t, i, x, {{i, static_cast<long>(i) - 3}});
        put(t, n, x, {{n, en}});
        put(t, x, 1, {{1, -1}, {3, 1}});
        put(t, x, 4, {{4, -1}, {2, 1}});
        for (size_t i = 5; i <= n - 1; ++i) put(t, x, i, {{i, -(static_cast<long>(i) - 3)}});
        put(t, x, n, {{n, -en}});
        put(t, 1, y, {{3, 1}});
        put(t, 2, y, {{2, 2}});
        put(t, 3, y, {{3, 1}});
        put(t, 4, y, {{4, 1}, {2, 1}});
        for (size_t i = 5; i <= n - 1; ++i) put(t, i, y, {{i, 1}});
        put(t, n, y, {{n, 2}});
        put(t, y, 1, {{3, -1}});
        put(t, y, 3, {{3, -1}});
        put(t, y, 4, {{4, -1}, {2, 1}});
        for (size_t i = 5; i <= n - 1; ++i) put(t, y, i, {{i, -1}});
        put(t, y, n, {{n, -2}});
      });

  return out;
}

}  // namespace detail

inline const std::vector<FamilySpec>& registry() {
  static const std::vector<FamilySpec> r = detail::make_registry();
  return r;
}

/// Lookup by canonical name or by its stem ("L1", "Hc2_4", "L", "G", "Lnr").
inline const FamilySpec& find_family(const std::string& name) {
  std::string stem = name.substr(0, name.find('('));
  for (const auto& f : registry())
    if (f.name == name || f.stem() == stem) return f;
  std::string all;
  for (const auto& f : registry()) all += (all.empty() ? "" : ", ") + f.name;
  throw InputError("unknown family '" + name + "'; valid names: " + all);
}

/// Parameter samples used by sweeps. Lnr samples every admissible r.
inline std::vector<Params> sample_params(const FamilySpec& f, size_t n) {
  if (f.stem() == "Lnr") {
    std::vector<Params> g;
    for (long r = 3; r <= 2 * static_cast<long>((n - 1) / 2) - 1; r += 2) g.push_back({{"r", r}});
    return g;
  }
  std::vector<Params> g;
  for (const auto& p : f.sample_grid) {
    try {
      f.validate(n, p);
      g.push_back(p);
    } catch (const InputError&) {
    }
  }
  return g;
}

inline bool admissible_n(const FamilySpec& f, size_t n) {
  return n >= f.min_n && !(f.n_odd && n % 2 == 0);
}

/// Builds and enforces the Leibniz identity; also the Lie property for Lnr.
inline StructureTensor build(const std::string& name, size_t n, const Params& p) {
  const FamilySpec& f = find_family(name);
  StructureTensor t = f.build(n, p);
  auto rep = leibniz_check(t, 1);
  if (!rep.pass) {
    const auto& v = rep.violations.front();
    throw CheckFailure(f.name + " at n=" + std::to_string(n) + " [" + params_str(p) +
                       "] violates the Leibniz identity at (" + std::to_string(v.triple[0]) + "," +
                       std::to_string(v.triple[1]) + "," + std::to_string(v.triple[2]) + ")");
  }
  if (f.group == "lie" && !is_lie(t)) throw CheckFailure(f.name + ": completion is not a Lie algebra");
  return t;
}

inline std::vector<const FamilySpec*> list_families(const std::string& group = "",
                                                    const std::string& nilradical = "",
                                                    size_t extra_dim = SIZE_MAX) {
  std::vector<const FamilySpec*> out;
  for (const auto& f : registry()) {
    if (!group.empty() && f.group != group) continue;
    if (!nilradical.empty() && f.nilradical != nilradical) continue;
    if (extra_dim != SIZE_MAX && f.extra_dim != extra_dim) continue;
    out.push_back(&f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unified <-> classical names

inline const std::vector<std::pair<std::string, std::string>>& name_correspondence() {
  static const std::vector<std::pair<std::string, std::string>> t{
      {"L(0,beta,0)", "L1(beta)"},      {"L(0,beta,1)", "L2(beta)"},
      {"L(1,beta,0)", "L3(beta)"},      {"L(1,0,gamma)", "L4(gamma)"},
      {"L(1,beta,gamma)", "L5(beta,gamma)"},
      {"G(0,0,0)", "Ltype2_1"},         {"G(0,1,0)", "Ltype2_2"},
      {"G(0,0,1)", "Ltype2_3"},         {"G(0,2,1)", "Ltype2_4"},
      {"G(1,0,0)", "Ltype2_5"},         {"G(1,beta,0)", "Ltype2_6(beta)"},
      {"G(1,0,gamma)", "Ltype2_7(gamma)"}, {"G(1,beta,gamma)", "Ltype2_8(beta,gamma)"}};
  return t;
}

inline std::string resolve_name(const std::string& name) {
  std::string key;
  for (char c : name)
    if (c != ' ') key.push_back(c);
  for (const auto& [u, c] : name_correspondence()) {
    if (key == u) return c;
    if (key == c || key == c.substr(0, c.find('('))) return u;
  }
  std::string all;
  for (const auto& [u, c] : name_correspondence()) all += "\n  " + u + " <-> " + c;
  throw InputError("no correspondence for '" + name + "'; valid names:" + all);
}

/// Unified parameters (a, b, g) matching a classical family's parameters.
inline Params unified_params(const FamilySpec& f, const Params& p) {
  auto abg = f.abg(p);
  return {{"a", abg[0]}, {"b", abg[1]}, {"g", abg[2]}};
}

/// The nilradical tensor of an L/G-based family, in its own n-dim basis.
inline StructureTensor nilradical_of(const FamilySpec& f, size_t n, const Params& p) {
  if (f.nilradical.empty()) throw InputError(f.name + " is not built on an L/G nilradical");
  auto [a, b, g] = f.abg(p);
  return f.nilradical == "L" ? detail::unified_L(n, a, b, g) : detail::unified_G(n, a, b, g);
}

// ---------------------------------------------------------------------------
// Derivation table of Lnr

struct NamedMatrix {
  std::string name;
  Matrix m;
};

/// t_0, t_1, t_2, h_k, g_1, g_2 with columns d(e_0), ..., d(e_{n-1}).
inline std::vector<NamedMatrix> lnr_derivation_table(size_t n, size_t r) {
  find_family("Lnr").validate(n, {{"r", static_cast<long>(r)}});
  if (n <= 5) throw InputError("Lnr(5,3) has a different derivation algebra; need n > 5");
  auto m = [&] { return Matrix(n, n); };
  std::vector<NamedMatrix> out;
  Matrix t0 = m();
  t0(0, 0) = 1;
  for (size_t i = 2; i <= n - 2; ++i) t0(i, i) = static_cast<long>(i) - 1;
  t0(n - 1, n - 1) = static_cast<long>(r) - 2;
  out.push_back({"t0", t0});
  Matrix t1 = m();
  t1(1, 0) = 1;
  t1(n - 1, r) = 1;
  out.push_back({"t1", t1});
  Matrix t2 = m();
  for (size_t i = 1; i <= n - 2; ++i) t2(i, i) = 1;
  t2(n - 1, n - 1) = 2;
  out.push_back({"t2", t2});
  for (size_t k = 3; k <= n - 3; ++k) {
    if (k + 3 <= r && k % 2 == 0) continue;  // "k odd if k <= r-3"
    Matrix h = m();
    for (size_t i = 1; i + k + 2 <= n; ++i) h(k + i, i) = 1;
    out.push_back({"h" + std::to_string(k), h});
  }
  Matrix g1 = m();
  g1(r, 0) = 1;
  out.push_back({"g1", g1});
  Matrix g2 = m();
  g2(n - 1, 0) = 1;
  out.push_back({"g2", g2});
  return out;
}

}  // namespace leibniz
