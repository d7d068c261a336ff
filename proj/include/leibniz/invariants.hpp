#pragma once

#include <algorithm>
#include <future>
#include <string>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/derivations.hpp"
#include "leibniz/random.hpp"

namespace leibniz {

// ---------------------------------------------------------------------------
// Characteristic sequences

/// Lower bound for C(L): the lexicographic maximum of the Jordan type of
/// R_x over the sampled x outside L^2. Maximality over all of L \ L^2 is not
/// claimed.
struct CharSequence {
  std::vector<size_t> sequence;
  Vector witness;
  size_t samples_tried = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<size_t>> basis_sequences;  // C(e_k) for the generators e_k outside L^2
};

inline std::string seq_str(const std::vector<size_t>& s) {
  std::string out = "(";
  for (size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + ")";
}

/// Restricted to nilpotent algebras: a solvable extension may have no
/// x outside L^2 with nilpotent R_x.
inline CharSequence characteristic_sequence(const StructureTensor& t, size_t extra_samples = 200,
                                            std::uint64_t seed = default_seed()) {
  if (!is_nilpotent_algebra(t)) throw DomainError("characteristic_sequence: algebra is not nilpotent");
  const size_t n = t.dim();
  CharSequence cs;
  cs.seed = seed;
  const Subspace l2 = product_with_algebra(t, Subspace::full(n));
  auto consider = [&](const Vector& x) {
    if (l2.contains(x)) return false;
    Matrix r = t.right_mult(x);
    if (!is_nilpotent_matrix(r)) return false;
    ++cs.samples_tried;
    auto s = jordan_block_sizes(r);
    if (cs.witness.empty() || std::lexicographical_compare(cs.sequence.begin(), cs.sequence.end(), s.begin(), s.end())) {
      cs.sequence = s;
      cs.witness = x;
    }
    return true;
  };
  for (size_t k = 0; k < n; ++k) {
    Vector e = unit_vector(n, k);
    if (consider(e)) cs.basis_sequences.push_back(jordan_block_sizes(t.right_mult(e)));
  }
  Sampler rng(seed);
  for (size_t s = 0; s < extra_samples; ++s) consider(rng.nonzero_vector(n));
  if (cs.witness.empty()) throw DomainError("characteristic_sequence: no x outside L^2 with nilpotent R_x");
  return cs;
}

// ---------------------------------------------------------------------------
// Fingerprints

struct Fingerprint {
  size_t dim = 0;
  std::vector<size_t> lower_central_dims;
  std::vector<size_t> derived_dims;
  size_t dim_ann_r = 0;
  size_t dim_ann_l = 0;
  size_t dim_center = 0;
  size_t dim_der = 0;
  size_t dim_inner = 0;
  size_t dim_squares_ideal = 0;
  bool is_lie_flag = false;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

inline Fingerprint fingerprint(const StructureTensor& t) {
  Fingerprint f;
  f.dim = t.dim();
  f.lower_central_dims = lower_central_series(t).dims;
  f.derived_dims = derived_series(t).dims;
  auto ann = annihilators(t);
  f.dim_ann_r = ann.right.dim();
  f.dim_ann_l = ann.left.dim();
  f.dim_center = center(t).dim();
  f.dim_der = derivation_space(t).dim();
  f.dim_inner = inner_derivations(t).dim();
  f.dim_squares_ideal = squares_ideal(t).dim();
  f.is_lie_flag = is_lie(t);
  return f;
}

/// (field name, printed value) in comparison order.
inline std::vector<std::pair<std::string, std::string>> fingerprint_fields(const Fingerprint& f) {
  auto list = [](const std::vector<size_t>& v) { return seq_str(v); };
  return {{"dim", std::to_string(f.dim)},
          {"lower_central_dims", list(f.lower_central_dims)},
          {"derived_dims", list(f.derived_dims)},
          {"dim_ann_r", std::to_string(f.dim_ann_r)},
          {"dim_ann_l", std::to_string(f.dim_ann_l)},
          {"dim_center", std::to_string(f.dim_center)},
          {"dim_der", std::to_string(f.dim_der)},
          {"dim_inner", std::to_string(f.dim_inner)},
          {"dim_squares_ideal", std::to_string(f.dim_squares_ideal)},
          {"is_lie", f.is_lie_flag ? "true" : "false"}};
}

// ---------------------------------------------------------------------------
// Pairwise distinction

struct PairVerdict {
  size_t i = 0, j = 0;
  bool collision = true;       // no field differs; not a proof of isomorphism
  std::string field;           // first differing field
  std::string left, right;     // its two values
};

struct DistinctionReport {
  std::vector<std::string> names;
  std::vector<Fingerprint> fingerprints;
  std::vector<PairVerdict> pairs;  // i < j, row-major
  size_t collisions() const {
    return static_cast<size_t>(std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.collision; }));
  }
  const PairVerdict& at(size_t i, size_t j) const {
    if (i > j) std::swap(i, j);
    for (const auto& p : pairs)
      if (p.i == i && p.j == j) return p;
    throw InputError("distinction report has no pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
  }
};

inline PairVerdict compare_fingerprints(const Fingerprint& a, const Fingerprint& b) {
  PairVerdict v;
  auto fa = fingerprint_fields(a), fb = fingerprint_fields(b);
  for (size_t k = 0; k < fa.size(); ++k)
    if (fa[k].second != fb[k].second) {
      v.collision = false;
      v.field = fa[k].first;
      v.left = fa[k].second;
      v.right = fb[k].second;
      break;
    }
  return v;
}

/// Fingerprints are computed concurrently, one task per algebra.
inline DistinctionReport pairwise_distinguish(const std::vector<std::pair<std::string, StructureTensor>>& algebras) {
  DistinctionReport rep;
  if (algebras.empty()) return rep;
  const size_t d = algebras.front().second.dim();
  for (const auto& [name, t] : algebras)
    if (t.dim() != d) throw InputError("pairwise_distinguish: " + name + " has dimension " + std::to_string(t.dim()) +
                                       ", expected " + std::to_string(d));
  std::vector<std::future<Fingerprint>> jobs;
  for (const auto& [name, t] : algebras) {
    rep.names.push_back(name);
    jobs.push_back(std::async(std::launch::async, [&t] { return fingerprint(t); }));
  }
  for (auto& j : jobs) rep.fingerprints.push_back(j.get());
  for (size_t i = 0; i < algebras.size(); ++i)
    for (size_t j = i + 1; j < algebras.size(); ++j) {
      PairVerdict v = compare_fingerprints(rep.fingerprints[i], rep.fingerprints[j]);
      v.i = i;
      v.j = j;
      rep.pairs.push_back(v);
    }
  return rep;
}

}  // namespace leibniz
