#include <gtest/gtest.h>

#include "leibniz/algebra.hpp"
#include "leibniz/catalog.hpp"

using namespace leibniz;

TEST(Registry, Counts) {
  EXPECT_EQ(registry().size(), 31u);
  EXPECT_EQ(list_families("type-I").size(), 5u);
  EXPECT_EQ(list_families("type-II").size(), 8u);
  EXPECT_EQ(list_families("unified").size(), 2u);
  EXPECT_EQ(list_families("lie").size(), 1u);
  EXPECT_EQ(list_families("solvable", "L", 2).size(), 4u);
  EXPECT_EQ(list_families("solvable", "G", 1).size(), 5u);
  EXPECT_EQ(list_families("solvable", "G", 2).size(), 6u);
}

TEST(Registry, UnknownNameListsValidOnes) {
  try {
    find_family("nope");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("Hc2_6"), std::string::npos);
  }
}

// Every family, every admissible n in 5..10, every sample point.
TEST(Build, WholeGridIsLeibniz) {
  size_t built = 0;
  for (const auto& f : registry()) {
    for (size_t n = 5; n <= 10; ++n) {
      if (!admissible_n(f, n)) continue;
      for (const auto& p : sample_params(f, n)) {
        if (f.stem() == "R3") continue;  // no such algebra, see below
        StructureTensor t;
        ASSERT_NO_THROW(t = build(f.name, n, p)) << f.name << " n=" << n << " " << params_str(p);
        EXPECT_EQ(t.dim(), f.dim(n));
        ++built;
      }
    }
  }
  EXPECT_GT(built, 200u);
}

// The printed R3 table fails the Leibniz identity at every n; the extension
// solver finds L(1,-1,0) has no codimension-2 extension at all.
TEST(Build, R3IsNotLeibniz) {
  for (size_t n = 6; n <= 10; ++n) EXPECT_THROW(build("R3", n, {}), CheckFailure);
}

TEST(Build, ParityAndDomainRejected) {
  EXPECT_THROW(build("G", 8, {{"a", 1}, {"b", 0}, {"g", 0}}), InputError);
  EXPECT_THROW(build("Hc2_4", 8, {}), InputError);
  EXPECT_THROW(build("L", 7, {{"a", 2}, {"b", 0}, {"g", 0}}), InputError);
  EXPECT_THROW(build("L", 7, {{"a", 0}, {"b", 0}}), InputError);
  EXPECT_THROW(build("L", 7, {{"a", 0}, {"b", 0}, {"g", 0}, {"z", 1}}), InputError);
  EXPECT_THROW(build("Lnr", 7, {{"r", 4}}), InputError);
}

TEST(Build, PrintedProducts) {
  auto l = build("L", 7, {{"a", 1}, {"b", 0}, {"g", 2}});
  EXPECT_EQ(l.product(6, 1), unit_vector(7, 6) + unit_vector(7, 1));  // [e6,e1] = e7 + e2
  auto l5 = build("Ltype2_5", 9, {});
  for (size_t i = 3; i <= 8; ++i)
    EXPECT_EQ(l5.coefficient(i, 11 - i, 9), Scalar(i % 2 == 0 ? 1 : -1)) << i;
  auto r1 = build("R1", 6, {{"beta", -1}});
  EXPECT_EQ(r1.coefficient(8, 5, 5), Scalar(-1));  // [y, e5] = beta e5
}

TEST(Build, LnrIsLie) {
  for (size_t n = 7; n <= 10; ++n)
    for (const auto& p : sample_params(find_family("Lnr"), n)) EXPECT_TRUE(is_lie(build("Lnr", n, p)));
}

TEST(Names, ResolveIsAnInvolution) {
  for (const auto& [u, c] : name_correspondence()) {
    EXPECT_EQ(resolve_name(u), c);
    EXPECT_EQ(resolve_name(resolve_name(u)), u);
  }
  EXPECT_EQ(resolve_name("G(0,2,1)"), "Ltype2_4");
  EXPECT_THROW(resolve_name("X(1)"), InputError);
}

TEST(Names, UnifiedMatchesClassical) {
  for (size_t n : {7u, 9u}) {
    for (const auto* f : list_families("type-I")) {
      for (const auto& p : sample_params(*f, n)) {
        auto u = unified_params(*f, p);
        EXPECT_EQ(build(f->name, n, p), build("L", n, u)) << f->name;
      }
    }
    for (const auto* f : list_families("type-II")) {
      for (const auto& p : sample_params(*f, n)) {
        auto u = unified_params(*f, p);
        EXPECT_EQ(build(f->name, n, p), build("G", n, u)) << f->name;
      }
    }
  }
}

TEST(Corrections, PrintedVariantsFail) {
  for (const auto* name : {"Hc2_2", "Hc2_4", "Hc2_5", "Hc2_6", "Ltype2_4"}) {
    const auto& f = find_family(name);
    ASSERT_FALSE(f.corrections.empty()) << name;
    size_t n = f.n_odd ? 7 : 8;
    auto p = sample_params(f, n).front();
    EXPECT_TRUE(leibniz_check(f.build(n, p, Variant::Corrected), 1).pass) << name;
    EXPECT_FALSE(leibniz_check(f.build(n, p, Variant::Printed), 1).pass) << name;
  }
}

TEST(DerivationTable, LnrMapsAreDerivationsShape) {
  auto t = lnr_derivation_table(7, 3);
  ASSERT_GE(t.size(), 5u);
  EXPECT_EQ(t[0].name, "t0");
  EXPECT_EQ(t[2].m(6, 6), Scalar(2));  // t2(e_{n-1}) = 2 e_{n-1}
  for (const auto& nm : t)
    if (nm.name == "g1") { EXPECT_EQ(nm.m(3, 0), Scalar(1)); }  // g1(e0) = e3
  EXPECT_THROW(lnr_derivation_table(5, 3), InputError);
}
