// leibniz-cli: catalog, verification and extension runs over exact arithmetic.
// Exit codes: 0 success, 1 a check failed, 2 bad input.

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "leibniz/leibniz.hpp"

using namespace leibniz;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kSchema = 1;

// ---------------------------------------------------------------------------
// Reports

struct Check {
  std::string name;
  std::string status;  // pass | fail | inconclusive
  std::string detail;
};

struct Report {
  std::vector<std::string> command;
  std::optional<std::uint64_t> seed;
  std::vector<Check> checks;
  Json result = Json::object();
  std::vector<std::string> text;  // human-readable body
  double wall_time = 0;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    checks.push_back({name, ok ? "pass" : "fail", detail});
  }
  void inconclusive(const std::string& name, const std::string& detail) {
    checks.push_back({name, "inconclusive", detail});
  }
  void line(const std::string& s) { text.push_back(s); }
  bool failed() const {
    for (const auto& c : checks)
      if (c.status == "fail") return true;
    return false;
  }

  void emit(std::ostream& os, bool json, bool timing) const {
    if (json) {
      Json j;
      j["schema"] = kSchema;
      j["version"] = kVersion;
      j["command"] = command;
      j["seed"] = seed ? Json(*seed) : Json(nullptr);
      auto cs = Json::array();
      for (const auto& c : checks) cs.push_back({{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
      j["checks"] = cs;
      j["status"] = failed() ? "fail" : "pass";
      j["result"] = result;
      if (timing) j["wall_time_s"] = wall_time;
      os << j.dump(2) << "\n";
      return;
    }
    for (const auto& l : text) os << l << "\n";
    if (!checks.empty()) {
      os << "\n";
      for (const auto& c : checks)
        os << (c.status == "pass" ? "PASS " : c.status == "fail" ? "FAIL " : "INCONCLUSIVE ") << c.name
           << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    }
    if (seed) os << "seed: " << *seed << "\n";
    if (timing) os << "wall time: " << wall_time << " s\n";
  }
};

// ---------------------------------------------------------------------------
// Algebra sources

struct Source {
  std::string name;  // family name or file path
  std::vector<std::string> params;
  size_t n = 0;
  std::string file;
  std::string variant = "corrected";
};

struct Loaded {
  std::string label;
  StructureTensor tensor;
  const FamilySpec* family = nullptr;
  Params params;
  size_t n = 0;
};

Params parse_params(const std::vector<std::string>& items) {
  Params p;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--param expects name=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    if (p.count(key)) throw InputError("parameter '" + key + "' given twice");
    p[key] = Scalar::parse(item.substr(eq + 1));
  }
  return p;
}

Variant parse_variant(const std::string& v) {
  if (v == "corrected") return Variant::Corrected;
  if (v == "printed") return Variant::Printed;
  throw InputError("--variant must be corrected or printed");
}

std::string label_of(const FamilySpec& f, size_t n, const Params& p) {
  return f.stem() + (p.empty() ? "" : "[" + params_str(p) + "]") + " n=" + std::to_string(n);
}

/// Builds without the Leibniz gate so checks can report failures themselves.
Loaded load(const Source& s) {
  Loaded l;
  if (!s.file.empty()) {
    if (!s.name.empty()) throw InputError("give either a family name or --file, not both");
    l.tensor = read_tensor_file(s.file);
    l.label = s.file;
    l.n = l.tensor.dim();
    return l;
  }
  if (s.name.empty()) throw InputError("a family name or --file is required");
  if (s.n == 0) throw InputError("-n is required with a family name");
  l.family = &find_family(s.name);
  l.params = parse_params(s.params);
  l.n = s.n;
  l.tensor = l.family->build(s.n, l.params, parse_variant(s.variant));
  l.label = label_of(*l.family, s.n, l.params);
  return l;
}

Json vec_json(const Vector& v) {
  auto a = Json::array();
  for (const auto& c : v) a.push_back(c.str());
  return a;
}

std::string vec_str(const Vector& v, const std::vector<std::string>& labels) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    std::string c = v[k].str();
    if (!s.empty()) s += c[0] == '-' ? " - " : " + ";
    else if (c[0] == '-') s += "-";
    if (c[0] == '-') c = c.substr(1);
    s += (c == "1" ? "" : (c.find_first_of("+-") != std::string::npos ? "(" + c + ")" : c) + " ") + labels[k];
  }
  return s.empty() ? "0" : s;
}

std::vector<std::string> product_lines(const StructureTensor& t) {
  std::vector<std::string> out;
  const auto& lab = t.labels();
  for (size_t i = 1; i <= t.dim(); ++i)
    for (size_t j = 1; j <= t.dim(); ++j)
      if (!t.cell(i, j).empty())
        out.push_back("[" + lab[i - 1] + "," + lab[j - 1] + "] = " + vec_str(t.product(i, j), lab));
  return out;
}

std::string triple_str(const StructureTensor& t, const std::array<size_t, 3>& tr) {
  const auto& lab = t.labels();
  return "(" + lab[tr[0] - 1] + "," + lab[tr[1] - 1] + "," + lab[tr[2] - 1] + ")";
}

// ---------------------------------------------------------------------------
// catalog

void run_catalog(Report& r, const std::string& group, const std::string& nil, int codim, const std::string& resolve) {
  if (!resolve.empty()) {
    std::string other = resolve_name(resolve);
    r.result["name"] = resolve;
    r.result["counterpart"] = other;
    r.line(resolve + " <-> " + other);
    return;
  }
  auto list = list_families(group, nil, codim < 0 ? SIZE_MAX : static_cast<size_t>(codim));
  auto arr = Json::array();
  for (const auto* f : list) {
    Json j;
    j["name"] = f->name;
    j["display"] = f->display;
    j["group"] = f->group;
    j["nilradical"] = f->nilradical;
    j["extra_dim"] = f->extra_dim;
    j["min_n"] = f->min_n;
    j["n_odd"] = f->n_odd;
    j["params"] = f->param_names;
    j["domain"] = f->domain;
    j["corrections"] = f->corrections;
    arr.push_back(j);
    std::string line = f->name;
    line.resize(std::max<size_t>(line.size(), 22), ' ');
    line += f->group;
    line.resize(std::max<size_t>(line.size(), 32), ' ');
    line += "dim n+" + std::to_string(f->extra_dim) + (f->n_odd ? ", n odd" : "");
    if (!f->domain.empty()) line += ", " + f->domain;
    if (!f->corrections.empty()) line += " [" + std::to_string(f->corrections.size()) + " correction(s)]";
    r.line(line);
  }
  r.result["families"] = arr;
  r.result["count"] = list.size();
  r.line(std::to_string(list.size()) + " families");
}

// ---------------------------------------------------------------------------
// build

void run_build(Report& r, const Source& s, const std::string& out) {
  Loaded l = load(s);
  Json tj = tensor_to_json(l.tensor);
  r.result["algebra"] = l.label;
  r.result["tensor"] = tj;
  auto li = leibniz_check(l.tensor, 1);
  r.check("leibniz", li.pass, li.pass ? "" : "violated at " + triple_str(l.tensor, li.violations.front().triple));
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw InputError("cannot write " + out);
    f << Json(tj).dump(2) << "\n";
    r.line("wrote " + out);
  }
  r.line(l.label + ", dim " + std::to_string(l.tensor.dim()));
  for (const auto& p : product_lines(l.tensor)) r.line("  " + p);
}

// ---------------------------------------------------------------------------
// verify

const std::vector<std::string> kAllChecks{"leibniz", "series", "nilpotent", "quasi-filiform", "lie", "extension"};

std::vector<std::string> default_checks(const FamilySpec* f) {
  if (!f) return {"leibniz", "series"};
  if (f->group == "solvable") return {"leibniz", "series", "extension"};
  if (f->group == "lie") return {"leibniz", "series", "nilpotent", "quasi-filiform", "lie"};
  return {"leibniz", "series", "nilpotent", "quasi-filiform"};
}

std::vector<Check> verify_one(const Loaded& l, const std::vector<std::string>& checks, std::uint64_t seed, Json& out) {
  std::vector<Check> res;
  auto add = [&](const std::string& name, bool ok, const std::string& d = "") {
    res.push_back({name, ok ? "pass" : "fail", d});
  };
  const auto& t = l.tensor;
  for (const auto& c : checks) {
    if (c == "leibniz") {
      auto li = leibniz_check(t, 4);
      std::string d;
      for (const auto& v : li.violations) d += (d.empty() ? "violated at " : ", ") + triple_str(t, v.triple);
      add(c, li.pass, d);
    } else if (c == "series") {
      auto lcs = lower_central_series(t), ds = derived_series(t);
      out["lower_central_dims"] = lcs.dims;
      out["derived_dims"] = ds.dims;
      bool mono = true;
      for (size_t k = 0; k < ds.dims.size() && k < lcs.dims.size(); ++k) mono = mono && ds.dims[k] <= lcs.dims[k];
      add(c, mono, "lower central " + seq_str(lcs.dims) + ", derived " + seq_str(ds.dims));
    } else if (c == "nilpotent") {
      add(c, is_nilpotent_algebra(t));
    } else if (c == "quasi-filiform") {
      auto idx = nilindex(t);
      const size_t n = t.dim();
      // L^{n-2} != 0 and L^{n-1} = 0
      auto dims = lower_central_series(t).dims;
      bool ok = dims.size() >= n - 1 && dims[n - 3] > 0 && (dims.size() < n - 1 || dims[n - 2] == 0);
      add(c, ok, idx ? "nilindex " + std::to_string(*idx) : "not nilpotent");
    } else if (c == "lie") {
      add(c, is_lie(t));
    } else if (c == "extension") {
      if (!l.family || l.family->group != "solvable") throw InputError("check 'extension' needs a solvable catalog family");
      auto v = verify_catalog_extension(l.family->name, l.n, l.params, Variant::Corrected, seed);
      add("extension.leibniz", v.leibniz, v.leibniz_violations.empty() ? "" : "violated at " + v.leibniz_violations.front());
      add("extension.solvable-non-nilpotent", v.solvable && v.non_nilpotent);
      add("extension.nilradical-ideal", v.nil_ideal);
      add("extension.nilradical-certificate", v.certificate.valid(),
          std::to_string(v.certificate.sampled_mixed_elements) + " mixed samples" +
              (v.certificate.failures.empty() ? "" : "; " + v.certificate.failures.front()));
      std::string fd;
      for (const auto& [k, x] : v.form.values) fd += (fd.empty() ? "" : ", ") + k + " = " + x.str();
      for (const auto& m : v.form.mismatches) fd += (fd.empty() ? "" : "; ") + m;
      add("extension.general-form", v.form.pass, v.form_name + (fd.empty() ? "" : ": " + fd));
    } else {
      std::string all;
      for (const auto& k : kAllChecks) all += (all.empty() ? "" : ", ") + k;
      throw InputError("unknown check '" + c + "'; valid: " + all);
    }
  }
  return res;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void run_verify(Report& r, const Source& s, const std::string& checks, bool all, std::uint64_t seed) {
  if (all) {
    if (!s.name.empty() || !s.file.empty()) throw InputError("--all sweeps the whole catalog; drop the family name");
    struct Item {
      std::string key;
      std::vector<Check> checks;
    };
    std::vector<std::future<std::vector<Item>>> jobs;
    for (const auto& f : registry()) {
      jobs.push_back(std::async(std::launch::async, [&f, &checks, seed] {
        std::vector<Item> items;
        for (size_t n = 5; n <= 10; ++n) {
          if (!admissible_n(f, n)) continue;
          for (const auto& p : sample_params(f, n)) {
            Loaded l;
            l.family = &f;
            l.params = p;
            l.n = n;
            try {
              l.tensor = f.build(n, p);
            } catch (const InputError&) {
              continue;  // outside the domain at this n
            }
            Json sink;
            auto cs = checks.empty() ? default_checks(&f) : split_list(checks);
            items.push_back({label_of(f, n, p), verify_one(l, cs, seed, sink)});
          }
        }
        return items;
      }));
    }
    std::vector<Item> items;
    for (auto& j : jobs)
      for (auto& it : j.get()) items.push_back(std::move(it));
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.key < b.key; });
    auto arr = Json::array();
    size_t failed = 0;
    for (const auto& it : items) {
      bool ok = true;
      auto cj = Json::array();
      std::string bad;
      for (const auto& c : it.checks) {
        cj.push_back({{"name", c.name}, {"status", c.status}, {"detail", c.detail}});
        if (c.status == "fail") {
          ok = false;
          bad += (bad.empty() ? "" : ", ") + c.name;
        }
      }
      failed += !ok;
      arr.push_back({{"item", it.key}, {"checks", cj}});
      r.line((ok ? "ok    " : "FAIL  ") + it.key + (bad.empty() ? "" : "  [" + bad + "]"));
    }
    r.result["items"] = arr;
    r.seed = seed;
    r.check("sweep", failed == 0,
            std::to_string(items.size() - failed) + "/" + std::to_string(items.size()) + " items pass");
    return;
  }
  Loaded l = load(s);
  auto cs = checks.empty() ? default_checks(l.family) : split_list(checks);
  if (std::find(cs.begin(), cs.end(), "extension") != cs.end()) r.seed = seed;
  r.result["algebra"] = l.label;
  for (auto& c : verify_one(l, cs, seed, r.result)) r.checks.push_back(c);
  r.line(l.label);
}

// ---------------------------------------------------------------------------
// derive

void run_derive(Report& r, const Source& s) {
  Loaded l = load(s);
  const auto& t = l.tensor;
  auto der = derivation_space(t);
  auto inner = inner_derivations(t);
  r.result["algebra"] = l.label;
  r.result["der_dim"] = der.dim();
  r.result["inner_dim"] = inner.dim();
  r.line(l.label);
  r.line("dim Der = " + std::to_string(der.dim()) + ", dim Inner = " + std::to_string(inner.dim()));
  bool all_der = true;
  for (const auto& d : der.basis) all_der = all_der && is_derivation(t, d);
  r.check("derivation-identity", all_der, std::to_string(der.dim()) + " basis matrices re-verified");
  r.check("inner-in-der", subspace_contains(der.as_subspace(), inner.as_subspace()));
  if (is_nilpotent_algebra(t)) {
    auto m = max_nil_independent(t);
    r.result["nil_independent"] = {{"count", m.count}, {"status", m.cert.status}, {"lower", m.cert.lower},
                                   {"upper", m.cert.upper}, {"block_dims", m.cert.block_dims},
                                   {"kernel_dim", m.cert.kernel_basis.size()}};
    r.line("maximal nil-independent derivations: " + std::to_string(m.count) + " (" + m.cert.status + ")");
    if (!m.full()) r.inconclusive("nil-independence", "bounds " + std::to_string(m.cert.lower) + ".." +
                                                          std::to_string(m.cert.upper));
  }
  if (l.family && (l.family->stem() == "L" || l.family->stem() == "G")) {
    auto [a, b, g] = l.family->abg(l.params);
    auto rep = l.family->stem() == "L" ? check_family_L(a, b, g, l.n) : check_family_G(a, b, g, l.n);
    r.result["family_dim"] = rep.family_dim;
    std::string d = "dim " + std::to_string(rep.family_dim) + " vs " + std::to_string(rep.der_dim);
    if (!rep.separating_side.empty()) d += ", separating matrix " + rep.separating_side;
    r.check("parametrized-family", rep.equal, d);
    std::string fc;
    for (const auto& c : rep.failed_constraints) fc += (fc.empty() ? "" : "; ") + c;
    r.check("family-constraints", rep.constraints_hold, fc);
  }
  if (l.family && l.family->stem() == "Lnr") {
    size_t rr = std::stoul(param(l.params, "r").str());
    auto table = lnr_derivation_table(l.n, rr);
    std::string bad;
    for (const auto& nm : table)
      if (!is_derivation(t, nm.m)) bad += (bad.empty() ? "" : ", ") + nm.name;
    r.check("derivation-table", bad.empty(), std::to_string(table.size()) + " listed maps" +
                                                (bad.empty() ? "" : "; not derivations: " + bad));
  }
}

// ---------------------------------------------------------------------------
// table1

void run_table1(Report& r, size_t n) {
  if (n == 0) throw InputError("-n is required");
  auto rows = table1(n);
  auto arr = Json::array();
  size_t bad = 0;
  for (const auto& row : rows) {
    std::string computed = row.skipped ? "skipped (n even)" : seq_str(row.computed);
    arr.push_back({{"row", row.label}, {"expected", row.expected}, {"computed", row.computed},
                   {"skipped", row.skipped}, {"full_certificates", row.certificates_full},
                   {"restrictions_hold", row.restrictions_hold}, {"pass", row.pass()}});
    bad += !row.pass();
    std::string line = row.label;
    line.resize(std::max<size_t>(line.size(), 26), ' ');
    r.line(line + " bound " + std::to_string(row.expected) + "  computed " + computed +
           (row.pass() ? "" : "  MISMATCH") + (row.restrictions_hold ? "" : "  (restriction column differs)"));
  }
  r.result["n"] = n;
  r.result["rows"] = arr;
  r.check("table", bad == 0, std::to_string(rows.size() - bad) + "/" + std::to_string(rows.size()) + " rows");
}

// ---------------------------------------------------------------------------
// extend

Json leaf_json(const ExtensionLeaf& leaf, bool with_log) {
  Json j;
  j["status"] = leaf.status;
  j["path"] = leaf.path;
  j["free_unknowns"] = leaf.free_unknowns;
  j["residual"] = leaf.residual;
  Json a = Json::object();
  for (const auto& [k, v] : leaf.assignment) a[k] = v.str();
  j["assignment"] = a;
  if (leaf.tensor) j["tensor"] = tensor_to_json(*leaf.tensor);
  if (with_log) {
    auto lg = Json::array();
    for (const auto& s : leaf.system.log())
      lg.push_back({{"kind", s.kind}, {"unknown", s.unknown}, {"expr", s.expr}, {"equation", s.equation},
                    {"cases", s.cases}});
    j["log"] = lg;
  }
  return j;
}

std::string step_str(const ProofStep& s) {
  std::string out = s.kind;
  if (!s.unknown.empty()) out += " " + s.unknown + " = " + s.expr;
  if (!s.equation.empty()) out += "  from " + s.equation;
  for (const auto& c : s.cases) out += "  | " + c;
  return out;
}

void run_extend(Report& r, const Source& s, size_t k, const std::string& mode_text, bool log) {
  SkeletonMode mode = parse_mode(mode_text);
  Loaded l = load(s);
  if (l.family && l.family->group == "solvable") throw InputError("extend takes a nilradical, not an extension family");
  const auto& nil = l.tensor;
  r.result["nilradical"] = l.label;
  r.result["k"] = k;
  r.result["mode"] = mode_name(mode);
  const bool is_L = l.family && l.family->stem() == "L";
  const bool is_Lnr = l.family && l.family->stem() == "Lnr";

  if (mode == SkeletonMode::Probe && k == 1 && is_L) {
    auto [a, b, g] = l.family->abg(l.params);
    const bool theorem_row = max_nil_independent(nil).count == 1;
    auto p = codim1_probe_L(a, b, g, l.n);
    r.result["verdict"] = p.infeasible ? "infeasible" : "consistent";
    r.result["culprit"] = p.culprit;
    r.result["contradiction"] = p.contradiction;
    r.result["facts"] = p.facts;
    r.result["violated"] = p.violated;
    r.result["identities_used"] = p.identities_used;
    r.line(p.infeasible ? "infeasible" : "consistent");
    if (p.infeasible) {
      r.line("first inconsistent identity: " + p.culprit + " after " + std::to_string(p.identities_used) + " identities");
      for (const auto& f : p.facts) r.line("  deduced: " + f);
      for (const auto& f : p.violated) r.line("  fails at this row: " + f);
    }
    if (log) {
      auto lg = Json::array();
      for (const auto& st : p.log) {
        lg.push_back(step_str(st));
        r.line("  " + step_str(st));
      }
      r.result["log"] = lg;
    }
    if (theorem_row) r.check("no-codim-1-extension", p.infeasible);
    return;
  }

  if (mode == SkeletonMode::Probe && k == 2 && is_Lnr) {
    auto rr = static_cast<size_t>(std::stoul(param(l.params, "r").str()));
    auto p = lie_probe(l.n, rr);
    r.result["x_on_e_n-2"] = p.x_on_enm2;
    r.result["x_on_e_n-1"] = p.x_on_enm1;
    r.result["annr_zero"] = p.annr_zero;
    r.result["solved"] = p.solved;
    r.result["lie"] = p.lie;
    r.result["notes"] = p.notes;
    r.line("[x, e_{n-2}] = " + p.x_on_enm2);
    r.line("[x, e_{n-1}] = " + p.x_on_enm1);
    r.line("solved instances " + std::to_string(p.solved) + ", Lie " + std::to_string(p.lie));
    for (const auto& nt : p.notes) r.line("note: " + nt);
    r.check("e_{n-2} outside Ann_r(R)", p.enm2_not_annr);
    r.check("e_{n-1} outside Ann_r(R)", p.enm1_not_annr);
    r.check("Ann_r(R) = 0, squares ideal = 0", p.annr_zero && p.squares_zero == p.solved);
    r.check("solved leaves are Lie", p.solved > 0 && p.lie == p.solved && p.fragment == 0);
    return;
  }

  auto sk = build_skeleton(nil, k, mode);
  auto sol = solve_extension(sk);
  auto leaves = Json::array();
  size_t i = 0;
  for (const auto& leaf : sol.leaves) {
    leaves.push_back(leaf_json(leaf, log));
    std::string path;
    for (const auto& p : leaf.path) path += (path.empty() ? "" : "; ") + p;
    r.line("leaf " + std::to_string(++i) + ": " + leaf.status + (path.empty() ? "" : "  [" + path + "]"));
    if (!leaf.free_unknowns.empty()) {
      std::string fu;
      for (const auto& f : leaf.free_unknowns) fu += (fu.empty() ? "" : ", ") + f;
      r.line("  free (set to 0): " + fu);
    }
    if (leaf.tensor)
      for (const auto& p : product_lines(*leaf.tensor)) r.line("  " + p);
    if (log)
      for (const auto& st : leaf.system.log()) r.line("  | " + step_str(st));
  }
  r.result["leaves"] = leaves;
  r.result["solved"] = sol.solved();
  r.line(std::to_string(sol.solved()) + " solved of " + std::to_string(sol.leaves.size()) + " leaves");
  if (sol.fragment_limit) r.inconclusive("fragment", "some branches left the supported equation shapes");
  for (size_t j = 0; j < sol.leaves.size(); ++j)
    if (sol.leaves[j].tensor) r.check("leaf " + std::to_string(j + 1) + " leibniz", sol.leaves[j].leibniz);
  if (mode == SkeletonMode::Graded && l.family && (l.family->stem() == "L" || l.family->stem() == "G")) {
    auto [a, b, g] = l.family->abg(l.params);
    if (classified_target(l.family->stem(), {a, b, g}, k, l.n)) {
      auto rep = rederive(l.family->stem(), a, b, g, l.n, k);
      r.result["target"] = rep.target;
      r.check("matches " + rep.target, rep.pass(),
              rep.solved == 0 ? "no solved leaf" : std::string("free unknowns at 0 and 1"));
    }
  }
}

// ---------------------------------------------------------------------------
// fingerprint

Json fingerprint_json(const Fingerprint& f) {
  Json j;
  for (const auto& [k, v] : fingerprint_fields(f)) j[k] = v;
  return j;
}

std::vector<std::pair<std::string, StructureTensor>> classified_list(const std::string& name, size_t n) {
  std::vector<const FamilySpec*> fams;
  if (name == "type-I" || name == "type-II") fams = list_families(name);
  else if (name == "R") fams = list_families("solvable", "L", 2);
  else if (name == "H1") fams = list_families("solvable", "G", 1);
  else if (name == "H2") fams = list_families("solvable", "G", 2);
  else throw InputError("--pairwise list must be one of type-I, type-II, R, H1, H2");
  std::vector<std::pair<std::string, StructureTensor>> out;
  for (const auto* f : fams) {
    if (!admissible_n(*f, n)) continue;
    for (const auto& p : sample_params(*f, n)) out.push_back({label_of(*f, n, p), f->build(n, p)});
  }
  if (out.empty()) throw InputError("no admissible members of " + name + " at n = " + std::to_string(n));
  return out;
}

void run_fingerprint(Report& r, const Source& s, const std::string& pairwise) {
  if (!pairwise.empty()) {
    if (s.n == 0) throw InputError("-n is required with --pairwise");
    auto list = classified_list(pairwise, s.n);
    auto rep = pairwise_distinguish(list);
    auto members = Json::array();
    for (size_t i = 0; i < rep.names.size(); ++i)
      members.push_back({{"name", rep.names[i]}, {"fingerprint", fingerprint_json(rep.fingerprints[i])}});
    auto pairs = Json::array();
    for (const auto& p : rep.pairs) {
      Json j{{"a", rep.names[p.i]}, {"b", rep.names[p.j]}};
      if (p.collision) {
        j["verdict"] = "collision";
        j["marker"] = "needs-manual-argument";
      } else {
        j["verdict"] = "distinguished";
        j["field"] = p.field;
        j["values"] = {p.left, p.right};
      }
      pairs.push_back(j);
      r.line(rep.names[p.i] + "  vs  " + rep.names[p.j] + ": " +
             (p.collision ? "collision (needs-manual-argument)" : p.field + " " + p.left + " / " + p.right));
    }
    r.result["list"] = pairwise;
    r.result["members"] = members;
    r.result["pairs"] = pairs;
    r.result["collisions"] = rep.collisions();
    r.line(std::to_string(rep.pairs.size()) + " pairs, " + std::to_string(rep.collisions()) +
           " collisions; collisions are not isomorphism proofs");
    r.check("report-complete", rep.pairs.size() == rep.names.size() * (rep.names.size() - 1) / 2);
    return;
  }
  Loaded l = load(s);
  auto f = fingerprint(l.tensor);
  r.result["algebra"] = l.label;
  r.result["fingerprint"] = fingerprint_json(f);
  r.line(l.label);
  for (const auto& [k, v] : fingerprint_fields(f)) r.line("  " + k + ": " + v);
}

// ---------------------------------------------------------------------------
// charseq, grade

void run_charseq(Report& r, const Source& s, size_t samples, std::uint64_t seed) {
  Loaded l = load(s);
  auto cs = characteristic_sequence(l.tensor, samples, seed);
  r.seed = seed;
  r.result["algebra"] = l.label;
  r.result["sequence"] = cs.sequence;
  r.result["witness"] = vec_json(cs.witness);
  r.result["samples_tried"] = cs.samples_tried;
  r.result["lower_bound_only"] = true;
  r.line(l.label);
  r.line("C(L) >= " + seq_str(cs.sequence) + "  witness " + vec_str(cs.witness, l.tensor.labels()));
  r.line(std::to_string(cs.samples_tried) + " elements outside L^2 tried; maximality is not certified");
}

void run_grade(Report& r, const Source& s) {
  Loaded l = load(s);
  auto g = natural_grading(l.tensor);
  r.result["algebra"] = l.label;
  r.result["piece_dims"] = g.piece_dims;
  r.result["degree"] = g.degree;
  r.result["representative_map_is_isomorphism"] = g.representative_map_is_isomorphism;
  r.result["graded"] = tensor_to_json(g.tensor);
  r.line(l.label);
  r.line("graded pieces " + seq_str(g.piece_dims));
  r.line(g.representative_map_is_isomorphism
             ? "naturally graded (the chosen representatives give an isomorphism onto gr)"
             : "the chosen representatives are not an isomorphism onto gr (not a proof either way)");
  for (const auto& p : product_lines(g.tensor)) r.line("  " + p);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Leibniz algebras with quasi-filiform nilradicals"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  bool json = false, timing = false;
  std::optional<std::uint64_t> seed_opt;
  app.add_flag("--json", json, "Machine-readable report");
  app.add_flag("--timing", timing, "Include wall time in the report");
  app.add_option("--seed", seed_opt, "Seed for sampled checks (default: LEIBNIZ_SEED or built-in)");

  Source src;
  auto add_source = [&](CLI::App* sub) {
    sub->add_option("name", src.name, "Family name, e.g. L, G, Lnr, L1, R2, Hc2_4");
    sub->add_option("-n", src.n, "Nilradical dimension");
    sub->add_option("--param", src.params, "Parameter as name=value (repeatable)");
    sub->add_option("--file", src.file, "Algebra JSON file");
    sub->add_option("--variant", src.variant, "corrected (default) or printed tables");
  };

  std::string group, nil_filter, resolve;
  int codim = -1;
  auto* catalog = app.add_subcommand("catalog", "List families");
  catalog->add_option("--group", group, "type-I, type-II, unified, lie, solvable");
  catalog->add_option("--nilradical", nil_filter, "L or G");
  catalog->add_option("--codim", codim, "Extension codimension");
  catalog->add_option("--resolve", resolve, "Print the unified/classical counterpart of a name");

  std::string out_file;
  auto* buildc = app.add_subcommand("build", "Print an algebra's structure constants");
  add_source(buildc);
  buildc->add_option("-o,--output", out_file, "Write algebra JSON here");

  std::string checks;
  bool all = false;
  auto* verify = app.add_subcommand("verify", "Run checks on an algebra or sweep the catalog");
  add_source(verify);
  verify->add_option("--checks", checks, "Comma list: leibniz, series, nilpotent, quasi-filiform, lie, extension");
  verify->add_flag("--all", all, "Sweep every family over n = 5..10 and its sample grid");

  auto* derive = app.add_subcommand("derive", "Derivation algebra and nil-independence");
  add_source(derive);

  size_t table_n = 0;
  auto* t1 = app.add_subcommand("table1", "Complementary dimension bounds for L and G");
  t1->add_option("-n", table_n, "Dimension (>= 6)")->required();

  size_t k = 1;
  std::string mode = "graded";
  bool log = false;
  auto* extend = app.add_subcommand("extend", "Solve for solvable extensions of a nilradical");
  add_source(extend);
  extend->add_option("-k", k, "Codimension");
  extend->add_option("--mode", mode, "normal, graded or probe");
  extend->add_flag("--log", log, "Print the elimination log");

  std::string pairwise;
  auto* fp = app.add_subcommand("fingerprint", "Isomorphism invariants");
  add_source(fp);
  fp->add_option("--pairwise", pairwise, "Compare a classified list: type-I, type-II, R, H1, H2");

  size_t samples = 200;
  auto* cs = app.add_subcommand("charseq", "Characteristic sequence (lower bound)");
  add_source(cs);
  cs->add_option("--samples", samples, "Random elements tried besides the basis");

  auto* grade = app.add_subcommand("grade", "Natural grading");
  add_source(grade);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Report r;
  for (int a = 1; a < argc; ++a) r.command.push_back(argv[a]);
  const auto start = std::chrono::steady_clock::now();
  try {
    const std::uint64_t seed = seed_opt ? *seed_opt : default_seed();
    if (*catalog) run_catalog(r, group, nil_filter, codim, resolve);
    else if (*buildc) run_build(r, src, out_file);
    else if (*verify) run_verify(r, src, checks, all, seed);
    else if (*derive) run_derive(r, src);
    else if (*t1) run_table1(r, table_n);
    else if (*extend) run_extend(r, src, k, mode, log);
    else if (*fp) run_fingerprint(r, src, pairwise);
    else if (*cs) run_charseq(r, src, samples, seed);
    else if (*grade) run_grade(r, src);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const CheckFailure& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.emit(std::cout, json, timing);
  return r.failed() ? 1 : 0;
}
