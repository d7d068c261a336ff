#include <gtest/gtest.h>

#include "leibniz/catalog.hpp"
#include "leibniz/derivations.hpp"

using namespace leibniz;

namespace {

StructureTensor L(size_t n, int a, int b, int g) { return build("L", n, {{"a", a}, {"b", b}, {"g", g}}); }
StructureTensor G(size_t n, int a, int b, int g) { return build("G", n, {{"a", a}, {"b", b}, {"g", g}}); }

}  // namespace

TEST(Der, Abelian) {
  EXPECT_EQ(derivation_space(StructureTensor(3)).dim(), 9u);
  EXPECT_EQ(inner_derivations(StructureTensor(3)).dim(), 0u);
}

TEST(Der, L000) {
  auto t = L(6, 0, 0, 0);
  auto der = derivation_space(t);
  EXPECT_EQ(der.dim(), 10u);
  for (const auto& d : der.basis) EXPECT_TRUE(is_derivation(t, d));
  auto inner = inner_derivations(t);
  EXPECT_TRUE(der.as_subspace().contains(inner.as_subspace()));
  std::vector<Matrix> rs;
  for (size_t i = 0; i < 6; ++i) rs.push_back(t.right_mult(unit_vector(6, i)));
  std::vector<Vector> flat;
  for (const auto& m : rs) flat.push_back(m.flat());
  EXPECT_EQ(inner.dim(), Subspace::span(36, flat).dim());
}

TEST(Der, PreservesLowerCentralSeries) {
  for (const auto& t : {L(7, 1, 0, 2), G(7, 1, 2, 1), build("Lnr", 7, {{"r", 3}})}) {
    auto lcs = lower_central_series(t);
    for (const auto& d : derivation_space(t).basis)
      for (const auto& term : lcs.terms)
        for (const auto& v : term.vectors()) EXPECT_TRUE(term.contains(d * v));
  }
}

TEST(Der, LnrTableLiesInDer) {
  for (auto [n, r] : {std::pair<size_t, size_t>{7, 3}, {9, 5}, {9, 3}}) {
    auto t = build("Lnr", n, {{"r", static_cast<long>(r)}});
    auto der = derivation_space(t).as_subspace();
    for (const auto& nm : lnr_derivation_table(n, r)) {
      EXPECT_TRUE(is_derivation(t, nm.m)) << nm.name;
      EXPECT_TRUE(der.contains(nm.m.flat())) << nm.name;
    }
  }
}

TEST(Families, LFamilyMatchesSolver) {
  for (auto [a, b, g, n] : std::vector<std::array<int, 4>>{
           {0, 1, 1, 7}, {1, 0, 0, 7}, {0, 0, 0, 6}, {0, -1, 0, 8}, {1, -1, 0, 9}, {1, 2, 4, 6}}) {
    auto r = check_family_L(a, b, g, n);
    EXPECT_TRUE(r.pass()) << r.family << " n=" << n;
  }
  EXPECT_EQ(check_family_L(0, 0, 0, 6).der_dim, 10u);
}

TEST(Families, GFamilyMatchesSolver) {
  for (auto [a, b, g, n] : std::vector<std::array<int, 4>>{{0, 0, 1, 7}, {1, 2, 1, 7}, {0, 0, 0, 6}, {0, 2, 1, 8}}) {
    auto r = check_family_G(a, b, g, n);
    EXPECT_TRUE(r.pass()) << r.family << " n=" << n;
  }
  EXPECT_THROW(check_family_G(1, 0, 0, 8), InputError);
}

TEST(Families, PrintedGFamilyMissesDerivationsAtAlphaOne) {
  auto r = check_family_G(1, 0, 0, 7, Variant::Printed);
  EXPECT_FALSE(r.equal);
  EXPECT_EQ(r.separating_side, "family-not-der");
}

TEST(FlagBlocks, InnerIsNilpotent) {
  auto t = L(7, 0, 0, 0);
  auto b = flag_blocks(t, t.right_mult(unit_vector(7, 0)));
  EXPECT_TRUE(b.nilpotent);
}

TEST(FlagBlocks, DiagonalEntriesDecide) {
  auto t = L(7, 0, 0, 0);
  auto der = derivation_space(t);
  // pick a derivation with a_1 != 0 and keep only that
  bool seen_a1 = false, seen_b = false;
  for (const auto& d : der.basis) {
    if (!d(0, 0).is_zero()) {
      seen_a1 = true;
      EXPECT_FALSE(flag_blocks(t, d).nilpotent);
    }
  }
  auto t2 = L(7, 0, -1, 0);
  for (const auto& d : derivation_space(t2).basis)
    if (!d(5, 5).is_zero() && d(0, 0).is_zero()) {
      seen_b = true;
      EXPECT_FALSE(flag_blocks(t2, d).nilpotent);
    }
  EXPECT_TRUE(seen_a1);
  EXPECT_TRUE(seen_b);
  EXPECT_THROW(flag_blocks(t, Matrix::identity(7)), InputError);
}

TEST(NilIndependence, PrintedExamples) {
  EXPECT_EQ(max_nil_independent(L(7, 1, 0, 0)).count, 2u);
  EXPECT_EQ(max_nil_independent(G(7, 0, 0, 1)).count, 1u);
  auto ab = max_nil_independent(StructureTensor(3));
  EXPECT_EQ(ab.count, 3u);
  EXPECT_TRUE(max_nil_independent(L(7, 1, 0, 0)).full());
}

TEST(NilIndependence, KernelIsTheVanishingDiagonal) {
  for (size_t n : {7u, 8u}) {
    for (const auto& t : {L(n, 0, 0, 0), L(n, 0, 1, 1), L(n, 1, 0, 0)}) {
      auto r = max_nil_independent(t);
      auto der = derivation_space(t);
      EXPECT_EQ(toral_kernel(r, n), diagonal_vanishing(der, {{0, 0}, {n - 2, n - 2}}));
      for (const auto& k : r.cert.kernel_basis) EXPECT_TRUE(is_nilpotent_matrix(k));
    }
    for (const auto& t : {G(n, 0, 0, 0), G(n, 0, 1, 0)}) {
      auto r = max_nil_independent(t);
      EXPECT_EQ(toral_kernel(r, n), diagonal_vanishing(derivation_space(t), {{0, 0}, {2, 2}}));
    }
  }
}

TEST(Table1, AllRowsAtEightAndNine) {
  for (size_t n : {8u, 9u}) {
    auto rows = table1(n);
    ASSERT_EQ(rows.size(), 20u);
    for (const auto& r : rows) {
      EXPECT_TRUE(r.pass()) << r.label << " n=" << n;
      if (!r.skipped) { EXPECT_TRUE(r.certificates_full) << r.label; }
    }
  }
}

TEST(Table1, PrintedRestrictionColumn) {
  // The L rows and the alpha = 0 G rows agree with the computed derivations.
  for (const auto& r : table1(9)) {
    if (r.label.rfind("G(1", 0) == 0) continue;
    EXPECT_TRUE(r.restrictions_hold) << r.label;
  }
}
