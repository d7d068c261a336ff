// One line per acceptance criterion. Thresholds are fixed below.
//
//   acceptance [--expect-fail 1,2,6,7]
//
// Without --expect-fail the exit code is 0 iff every criterion passes. With
// it, the exit code is 0 iff exactly the listed criteria fail, so ctest
// catches regressions in either direction while the documented failures
// stay visible in the output.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "leibniz/leibniz.hpp"

using namespace leibniz;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kMutationRate = 0.99;      // share of mutations that must be caught
constexpr size_t kMutations = 500;
constexpr double kPerAlgebraSeconds = 1.0;
constexpr double kSweepSeconds = 120.0;
constexpr size_t kMinFamilyCases = 12;
constexpr size_t kCharSeqSamples = 200;
constexpr size_t kBasisChanges = 100;
constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string join(const std::vector<std::string>& v, size_t limit = 6) {
  std::string s;
  for (size_t k = 0; k < v.size() && k < limit; ++k) s += (k ? "; " : "") + v[k];
  if (v.size() > limit) s += "; ... (" + std::to_string(v.size() - limit) + " more)";
  return s;
}

std::string abg_str(const std::array<Scalar, 3>& a) {
  return "(" + a[0].str() + "," + a[1].str() + "," + a[2].str() + ")";
}

// 1. Catalog integrity ------------------------------------------------------

Outcome catalog_integrity() {
  Outcome o;
  std::vector<std::string> bad;
  std::vector<std::pair<const FamilySpec*, std::pair<size_t, Params>>> built;
  size_t count = 0;
  double slowest = 0;
  auto start = Clock::now();
  for (const auto& f : registry()) {
    for (size_t n = 5; n <= 10; ++n) {
      if (!admissible_n(f, n)) continue;
      for (const auto& p : sample_params(f, n)) {
        auto t0 = Clock::now();
        ++count;
        try {
          build(f.name, n, p);
          built.push_back({&f, {n, p}});
        } catch (const std::exception& e) {
          bad.push_back(f.stem() + " n=" + std::to_string(n));
        }
        slowest = std::max(slowest, since(t0));
      }
    }
  }
  const double sweep = since(start);
  Sampler rng(kSeed);
  size_t caught = 0;
  for (size_t k = 0; k < kMutations; ++k) {
    const auto& [f, np] = built[rng.index(built.size())];
    StructureTensor t = f->build(np.first, np.second);
    std::vector<std::array<size_t, 3>> cells;
    t.for_each([&](size_t i, size_t j, size_t s, const Scalar&) { cells.push_back({i, j, s}); });
    auto c = cells[rng.index(cells.size())];
    t.add(c[0], c[1], c[2], rng.nonzero());
    caught += !leibniz_check(t, 1).pass;
  }
  const double rate = static_cast<double>(caught) / kMutations;
  o.pass = bad.empty() && rate >= kMutationRate && slowest < kPerAlgebraSeconds && sweep < kSweepSeconds;
  std::ostringstream d;
  d << count - bad.size() << "/" << count << " builds Leibniz";
  if (!bad.empty()) d << " (failing: " << join(bad) << ")";
  d << "; mutations caught " << caught << "/" << kMutations << "; slowest " << slowest << " s, sweep " << sweep
    << " s";
  o.detail = d.str();
  return o;
}

// 2. Derivation families ----------------------------------------------------

Outcome derivation_families() {
  Outcome o;
  size_t cases = 0, ok = 0, corrected_ok = 0;
  std::vector<std::string> bad;
  std::set<std::string> shapes;
  for (const auto& row : table1_rows()) {
    for (const auto& p : row.samples) {
      auto a = param(p, "a"), b = param(p, "b"), g = param(p, "g");
      const bool odd_only = row.family == "G" && !a.is_zero();
      for (size_t n : odd_only ? std::vector<size_t>{7, 9} : std::vector<size_t>{7, 8}) {
        ++cases;
        FamilyReport r = row.family == "L" ? check_family_L(a, b, g, n)
                                           : check_family_G(a, b, g, n, Variant::Printed);
        if (r.pass()) {
          ++ok;
          shapes.insert(row.label);
        } else {
          bad.push_back(r.family + " n=" + std::to_string(n) +
                        (r.equal ? "" : " (" + r.separating_side + ")"));
        }
        if (row.family == "G") corrected_ok += check_family_G(a, b, g, n, Variant::Corrected).pass();
        else corrected_ok += r.pass();
      }
    }
  }
  o.pass = bad.empty() && cases >= kMinFamilyCases && shapes.size() == table1_rows().size();
  o.detail = std::to_string(ok) + "/" + std::to_string(cases) + " printed families equal Der";
  if (!bad.empty()) o.detail += " (failing: " + join(bad, 4) + ")";
  o.detail += "; corrected G family: " + std::to_string(corrected_ok) + "/" + std::to_string(cases);
  return o;
}

// 3. Complementary dimensions ----------------------------------------------

Outcome table_one() {
  Outcome o;
  size_t rows = 0, ok = 0, skipped = 0;
  std::vector<std::string> bad;
  for (size_t n : {8u, 9u})
    for (const auto& r : table1(n)) {
      ++rows;
      if (r.skipped) {
        ++skipped;
        continue;
      }
      if (r.pass() && r.certificates_full) ++ok;
      else bad.push_back(r.label + " n=" + std::to_string(n));
    }
  o.pass = bad.empty();
  o.detail = std::to_string(table1_rows().size()) + " printed rows; " + std::to_string(ok) + " row runs match with full certificates, " +
             std::to_string(skipped) + " parity skips at n=8";
  if (!bad.empty()) o.detail += " (failing: " + join(bad) + ")";
  return o;
}

// 4. Toral kernel -----------------------------------------------------------

Outcome toral_kernel_criterion() {
  Outcome o;
  size_t checked = 0;
  std::vector<std::string> bad;
  for (const auto& row : table1_rows()) {
    const auto& p = row.samples.front();
    for (size_t n : {7u, 8u}) {
      if (row.family == "G" && !param(p, "a").is_zero() && n % 2 == 0) continue;
      auto t = nilradical_tensor(row.family, n, p);
      auto r = max_nil_independent(t);
      auto der = derivation_space(t);
      const size_t gen2 = row.family == "L" ? n - 2 : 2;
      bool ok = r.full() && toral_kernel(r, n) == diagonal_vanishing(der, {{0, 0}, {gen2, gen2}});
      for (const auto& k : r.cert.kernel_basis) ok = ok && is_nilpotent_matrix(k);
      ++checked;
      if (!ok) bad.push_back(row.label + " n=" + std::to_string(n));
    }
  }
  o.pass = bad.empty();
  o.detail = std::to_string(checked - bad.size()) + "/" + std::to_string(checked) +
             " kernels equal {a_1 = b_g = 0} with polarization certificates";
  if (!bad.empty()) o.detail += " (failing: " + join(bad) + ")";
  return o;
}

// 5. No codimension-one extension of the dim Q = 1 L rows -------------------

Outcome codim_one() {
  Outcome o;
  size_t ok = 0, total = 0;
  std::vector<std::string> bad;
  for (const auto& row : table1_rows()) {
    if (row.family != "L" || !row.exact) continue;
    const auto& p = row.samples.front();
    for (size_t n : {6u, 7u}) {
      ++total;
      auto r = probe_codim1_L(param(p, "a"), param(p, "b"), param(p, "g"), n);
      bool a0 = false, b1 = false;
      for (const auto& s : r.log) {
        a0 = a0 || s.equation == "alpha = 0";
        b1 = b1 || s.equation == "beta = 1";
      }
      if (r.infeasible && a0 && b1) ++ok;
      else bad.push_back(row.label + " n=" + std::to_string(n));
    }
  }
  o.pass = bad.empty() && total == 10;
  o.detail = std::to_string(ok) + "/" + std::to_string(total) +
             " probes infeasible with alpha = 0, beta = 1 in the log";
  if (!bad.empty()) o.detail += " (failing: " + join(bad) + ")";
  return o;
}

// 6. Extension families -----------------------------------------------------

Outcome extension_families() {
  Outcome o;
  size_t ok = 0, total = 0;
  std::vector<std::string> bad;
  for (const auto* f : list_families("solvable")) {
    size_t done = 0;
    for (size_t n = 6; n <= 10 && done < 2; ++n) {
      if (!admissible_n(*f, n)) continue;
      ++done;
      ++total;
      auto v = verify_catalog_extension(f->name, n, {}, Variant::Corrected, kSeed);
      if (v.pass()) ++ok;
      else bad.push_back(f->stem() + " n=" + std::to_string(n) + " [" + join(v.failures) + "]");
    }
  }
  o.pass = bad.empty() && total == 30;
  o.detail = std::to_string(ok) + "/" + std::to_string(total) + " (family, n) pass all five sub-checks";
  if (!bad.empty()) o.detail += " (failing: " + join(bad) + ")";
  return o;
}

// 7. Re-derivation ----------------------------------------------------------

Outcome rederivation() {
  Outcome o;
  struct Case {
    std::string nil;
    int a, b, g;
    size_t k, n;
  };
  std::vector<Case> cases{{"L", 0, 0, 0, 2, 7},  {"L", 0, -1, 0, 2, 7}, {"L", 0, 1, 1, 2, 7},
                          {"L", 1, -1, 0, 2, 7}, {"L", 1, 0, 0, 2, 7},  {"G", 0, 0, 1, 1, 7},
                          {"G", 1, 2, 0, 1, 7},  {"G", 1, 0, 1, 1, 7},  {"G", 1, -2, 1, 1, 7},
                          {"G", 1, 4, 2, 1, 7}};
  size_t ok = 0;
  std::vector<std::string> bad;
  for (const auto& c : cases) {
    auto r = rederive(c.nil, c.a, c.b, c.g, c.n, c.k);
    if (r.pass()) ++ok;
    else
      bad.push_back(c.nil + abg_str(r.abg) + " k=" + std::to_string(c.k) + " -> " + r.target + ": " +
                    std::to_string(r.solved) + " solved, " + std::to_string(r.infeasible) + " infeasible");
  }
  o.pass = bad.empty();
  o.detail = std::to_string(ok) + "/" + std::to_string(cases.size()) + " cases reach the catalog family";
  if (!bad.empty()) o.detail += " (failing: " + join(bad) + ")";
  return o;
}

// 8. Splitting of R2 --------------------------------------------------------

bool split_entry_for_entry(size_t n) {
  StructureTensor r = build("R2", n, {});
  Matrix p = Matrix::identity(n + 2);
  p(n - 2, 0) = Scalar(-1);  // e_1' = e_1 - e_{n-1}
  p(n - 1, 1) = Scalar(-1);  // e_2' = e_2 - e_n
  StructureTensor t = apply_basis_change(r, p);
  const size_t N = n + 2;
  std::vector<Vector> a, b;
  for (size_t k = 1; k <= n - 2; ++k) a.push_back(unit_vector(N, k - 1));
  a.push_back(unit_vector(N, n));
  for (size_t k : {n - 1, n, n + 2}) b.push_back(unit_vector(N, k - 1));
  Subspace I1 = Subspace::span(N, a), I2 = Subspace::span(N, b);
  bool ok = is_ideal(t, I1) && is_ideal(t, I2) && subspace_intersect(I1, I2).is_zero() &&
            subspace_sum(I1, I2).dim() == N;
  StructureTensor nf(N, t.labels()), rest(N, t.labels());
  t.for_each([&](size_t i, size_t j, size_t k, const Scalar& c) {
    auto in1 = [&](size_t x) { return x <= n - 2 || x == n + 1; };
    if (in1(i) && in1(j) && in1(k)) nf.set(i, j, k, c);
    else if (!in1(i) && !in1(j) && !in1(k)) rest.set(i, j, k, c);
    else ok = false;  // a product crossing the two summands
  });
  StructureTensor s = split_sum_R2(n);
  StructureTensor s1(N, t.labels()), s2(N, t.labels());
  s.for_each([&](size_t i, size_t j, size_t k, const Scalar& c) {
    (i <= n - 2 || i == n + 1 ? s1 : s2).set(i, j, k, c);
  });
  return ok && nf == s1 && rest == s2;
}

Outcome remark_split() {
  Outcome o;
  bool a = split_entry_for_entry(6), b = split_entry_for_entry(8);
  o.pass = a && b;
  o.detail = std::string("n=6 ") + (a ? "splits" : "does not split") + ", n=8 " + (b ? "splits" : "does not split") +
             " into the printed summands";
  return o;
}

// 9. Characteristic sequences -----------------------------------------------

Outcome char_sequences() {
  Outcome o;
  size_t ok = 0, total = 0;
  std::vector<std::string> bad;
  for (const auto& group : {"type-I", "type-II"})
    for (const auto* f : list_families(group))
      for (size_t n = 6; n <= 9; ++n) {
        if (!admissible_n(*f, n)) continue;
        for (const auto& p : sample_params(*f, n)) {
          ++total;
          auto t = build(f->name, n, p);
          const std::vector<size_t> expect{n - 2, 2};
          auto e1 = jordan_block_sizes(t.right_mult(unit_vector(n, 0)));
          auto cs = characteristic_sequence(t, kCharSeqSamples, kSeed + total);
          if (e1 == expect && cs.sequence == expect) ++ok;
          else bad.push_back(f->stem() + " n=" + std::to_string(n) + " C(e1)=" + seq_str(e1) + " max=" + seq_str(cs.sequence));
        }
      }
  o.pass = bad.empty();
  o.detail = std::to_string(ok) + "/" + std::to_string(total) + " algebras: C(e1) = (n-2,2), no sample above it in " +
             std::to_string(kCharSeqSamples) + " draws";
  if (!bad.empty()) o.detail += " (failing: " + join(bad) + ")";
  return o;
}

// 10. Lie probe -------------------------------------------------------------

Outcome lie_probes() {
  Outcome o;
  std::vector<std::string> parts;
  for (size_t n : {7u, 9u}) {
    auto p = lie_probe(n, 3);
    o.pass = o.pass && p.pass();
    parts.push_back("(" + std::to_string(n) + ",3): " + (p.pass() ? "certified" : "not certified") + ", " +
                    std::to_string(p.lie) + "/" + std::to_string(p.solved) + " leaves Lie");
  }
  o.detail = join(parts);
  return o;
}

// 11. Invariance suite ------------------------------------------------------

Outcome invariance_suite() {
  Outcome o;
  Sampler rng(kSeed);
  size_t algebras = 0, stable = 0;
  std::vector<std::string> bad;
  for (const auto& f : registry()) {
    size_t n = 6;
    while (!admissible_n(f, n)) ++n;
    if (n > 8) continue;
    for (const auto& p : sample_params(f, n)) {
      StructureTensor t = f.build(n, p);
      auto fp = fingerprint(t);
      bool ok = true;
      for (size_t k = 0; k < kBasisChanges && ok; ++k)
        ok = fingerprint(apply_basis_change(t, rng.invertible(t.dim()))) == fp;
      ++algebras;
      if (ok) ++stable;
      else bad.push_back(f.stem() + " n=" + std::to_string(n));
      break;  // one parameter point per family
    }
  }
  std::vector<std::string> lists;
  bool complete = true;
  for (auto [name, group, nil, k, n] : std::vector<std::tuple<std::string, std::string, std::string, size_t, size_t>>{
           {"type-I", "type-I", "", SIZE_MAX, 7},
           {"type-II", "type-II", "", SIZE_MAX, 7},
           {"R", "solvable", "L", 2, 6},
           {"H1", "solvable", "G", 1, 7},
           {"H2", "solvable", "G", 2, 7}}) {
    std::vector<std::pair<std::string, StructureTensor>> members;
    for (const auto* f : list_families(group, nil, k))
      for (const auto& p : sample_params(*f, n)) members.push_back({f->stem() + "[" + params_str(p) + "]", f->build(n, p)});
    auto rep = pairwise_distinguish(members);
    complete = complete && rep.pairs.size() == members.size() * (members.size() - 1) / 2;
    lists.push_back(name + " " + std::to_string(rep.pairs.size()) + " pairs/" + std::to_string(rep.collisions()) +
                    " collisions");
  }
  o.pass = bad.empty() && complete;
  o.detail = std::to_string(stable) + "/" + std::to_string(algebras) + " algebras stable under " +
             std::to_string(kBasisChanges) + " basis changes; " + join(lists);
  if (!bad.empty()) o.detail += " (failing: " + join(bad) + ")";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::optional<std::set<int>> expected_failures;
  for (int a = 1; a < argc; ++a) {
    std::string s = argv[a];
    if (s == "--expect-fail" && a + 1 < argc) {
      expected_failures.emplace();
      std::stringstream ss(argv[++a]);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) expected_failures->insert(std::stoi(item));
    } else {
      std::cerr << "usage: acceptance [--expect-fail i,j,...]\n";
      return 2;
    }
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"catalog integrity", catalog_integrity},
      {"derivation families", derivation_families},
      {"complementary dimensions", table_one},
      {"toral kernel", toral_kernel_criterion},
      {"no codim-1 extension", codim_one},
      {"extension families", extension_families},
      {"re-derivation", rederivation},
      {"R2 splitting", remark_split},
      {"characteristic sequences", char_sequences},
      {"Lie probe", lie_probes},
      {"invariance suite", invariance_suite}};
  std::set<int> failed;
  for (size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << criteria[k].first << ": " << o.detail << " ["
              << since(t0) << " s]" << std::endl;
  }
  if (!expected_failures) return failed.empty() ? 0 : 1;
  if (failed == *expected_failures) {
    std::cout << "failures match the documented set" << std::endl;
    return 0;
  }
  std::cout << "failures differ from the documented set" << std::endl;
  return 1;
}
