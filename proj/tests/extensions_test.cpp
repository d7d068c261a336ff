#include <gtest/gtest.h>

#include "leibniz/extensions.hpp"

using namespace leibniz;

namespace {

StructureTensor L(size_t n, const Scalar& a, const Scalar& b, const Scalar& g) {
  return build("L", n, {{"a", a}, {"b", b}, {"g", g}});
}
StructureTensor G(size_t n, const Scalar& a, const Scalar& b, const Scalar& g) {
  return build("G", n, {{"a", a}, {"b", b}, {"g", g}});
}

PolyExpr alias(const ExtensionSkeleton& s, const std::string& name) {
  return PolyExpr::var(paper_aliases(s).at(name));
}

}  // namespace

TEST(Grading, DegreesOfL) {
  auto d = basis_degrees(L(7, 0, 0, 0));
  EXPECT_EQ(d[0], 1u);
  EXPECT_EQ(d[5], 1u);  // e_{n-1} is a generator
  EXPECT_EQ(d[1], 2u);
  EXPECT_EQ(d[6], 2u);
  EXPECT_THROW(basis_degrees(build("R1", 6, {{"beta", 0}})), DomainError);
}

TEST(Skeleton, NormalFormWeights) {
  const size_t n = 6;
  auto s = build_skeleton(L(n, 0, 0, 0), 2, SkeletonMode::Normal, {0, 0});
  EXPECT_EQ(s.generators, (std::vector<size_t>{1, n - 1}));
  EXPECT_EQ(s.table.get(1, s.x(1), 1), PolyExpr(1));
  EXPECT_EQ(s.table.get(n - 1, s.x(2), n - 1), PolyExpr(1));
  EXPECT_EQ(s.table.get(2, s.x(1), 2), PolyExpr(2));
}

TEST(Skeleton, KZeroIsTheNilradical) {
  auto n = L(7, 1, 0, 2);
  auto s = build_skeleton(n, 0, SkeletonMode::Graded);
  EXPECT_EQ(s.table.dim(), 7u);
  EXPECT_EQ(s.table.instantiate({}), n);
  EXPECT_TRUE(generate_constraints(s).system.equations().empty());
}

TEST(Skeleton, TooManyGeneratorsRejected) {
  EXPECT_THROW(build_skeleton(L(7, 0, 0, 0), 3, SkeletonMode::Graded), InputError);
  EXPECT_THROW(parse_mode("free"), InputError);
}

TEST(Skeleton, ProbeHasTheUnknownCoefficients) {
  const size_t n = 6;
  auto s = build_skeleton(L(n, 0, 0, 1), 1, SkeletonMode::Probe);
  std::set<VarId> u(s.unknowns.begin(), s.unknowns.end());
  for (size_t t = 1; t <= n; ++t) {
    EXPECT_TRUE(u.count(var_id(xe_name(1, 1, t)))) << t;
    EXPECT_TRUE(u.count(var_id(xe_name(1, n - 1, t)))) << t;
  }
}

TEST(Invariance, CatalogAlgebras) {
  EXPECT_TRUE(check_invariance(build("R1", 6, {{"beta", 0}}), L(6, 0, 0, 0)));
  auto h6 = build("Hc2_6", 7, {});
  EXPECT_TRUE(check_invariance(h6, G(7, 1, 2, 1)));
  auto bad = build("R1", 6, {{"beta", 0}});
  bad.set(7, 2, 1, 1);  // [x, e2] = e1 leaves N_2
  EXPECT_FALSE(check_invariance(bad, L(6, 0, 0, 0)));
}

TEST(Constraints, LCaseOneDeductions) {
  const size_t n = 7;
  auto s = build_skeleton(L(n, 0, 0, 0), 2, SkeletonMode::Graded);
  auto sys = linear_eliminate(generate_constraints(s).system);
  const std::string m1 = idx_name("mu", {1, n - 1}), m2 = idx_name("mu", {2, n - 1});
  EXPECT_TRUE(system_implies(sys, alias(s, m2)));
  EXPECT_TRUE(system_implies(sys, alias(s, m1) + alias(s, "A1")));
}

TEST(Constraints, GDeducesB1) {
  auto s = build_skeleton(G(7, 0, 0, 0), 2, SkeletonMode::Graded);
  auto sys = linear_eliminate(generate_constraints(s).system);
  EXPECT_TRUE(system_implies(sys, alias(s, "B1") + alias(s, "A1")));
}

TEST(Constraints, InconsistentFixedPartNamesTriple) {
  auto s = build_skeleton(L(7, 0, 0, 0), 2, SkeletonMode::Normal, {0, 0});
  s.table.set(2, s.x(1), 2, PolyExpr(5));  // wrong weight for e2
  try {
    generate_constraints(s);
    FAIL();
  } catch (const CheckFailure& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("at ("), std::string::npos);
    EXPECT_NE(what.find(",x)"), std::string::npos) << what;
  }
}

TEST(Solve, LZeroZeroZero) {
  auto r = rederive("L", 0, 0, 0, 6, 2);
  EXPECT_EQ(r.target, "R1(beta)");
  EXPECT_TRUE(r.pass());
  EXPECT_FALSE(r.free_unknowns.empty());  // the A1 gauge
}

TEST(Solve, GZeroOneZeroForcesA1) {
  auto sol = solve_extension(build_skeleton(G(6, 0, 1, 0), 2, SkeletonMode::Graded));
  ASSERT_EQ(sol.solved(), 1u);
  const auto& leaf = sol.leaves.front();
  auto s = build_skeleton(G(6, 0, 1, 0), 2, SkeletonMode::Graded);
  EXPECT_EQ(leaf.assignment.at(paper_aliases(s).at("A1")), Scalar(-1));
  EXPECT_TRUE(is_isomorphism(*leaf.tensor, build("Hc2_2", 6, {}), Matrix::identity(8)));
}

TEST(Solve, GCodimOne) {
  auto r = rederive("G", 0, 0, 1, 6, 1);
  EXPECT_EQ(r.target, "Hc1_1");
  EXPECT_TRUE(r.pass());
}

TEST(Solve, NoExtensionForL1Minus10) {
  auto sol = solve_extension(build_skeleton(L(7, 1, -1, 0), 2, SkeletonMode::Graded));
  EXPECT_EQ(sol.solved(), 0u);
  EXPECT_FALSE(sol.fragment_limit);
}

TEST(Solve, ElimOrderConfluent) {
  auto s = build_skeleton(L(7, 1, 0, 0), 2, SkeletonMode::Graded);
  auto a = solve_extension(s, EliminationOrder::ByName);
  auto b = solve_extension(s, EliminationOrder::ReverseName);
  ASSERT_EQ(a.solved(), 1u);
  ASSERT_EQ(b.solved(), 1u);
  EXPECT_EQ(*a.leaves[0].tensor, *b.leaves[0].tensor);
}

TEST(Codim1, DimQOneRowsInfeasible) {
  for (size_t n : {6u, 7u}) {
    for (auto [a, b, g] : std::vector<std::array<int, 3>>{{0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {1, 1, 1}, {1, 2, 4}}) {
      auto p = probe_codim1_L(a, b, g, n);
      EXPECT_TRUE(p.infeasible);
      EXPECT_NE(std::find(p.facts.begin(), p.facts.end(), "alpha = 0"), p.facts.end());
      EXPECT_NE(std::find(p.facts.begin(), p.facts.end(), "beta = 1"), p.facts.end());
      EXPECT_FALSE(p.violated.empty());
    }
  }
}

TEST(Codim1, NotATheoremRow) { EXPECT_THROW(probe_codim1_L(0, 0, 0, 6), InputError); }

TEST(Verify, AllExtensionFamilies) {
  for (const auto* f : list_families("solvable")) {
    for (size_t n : {7u, 9u}) {
      auto v = verify_catalog_extension(f->name, n);
      if (f->stem() == "R3") {
        EXPECT_FALSE(v.leibniz);
        continue;
      }
      EXPECT_TRUE(v.pass()) << f->name << " n=" << n;
      EXPECT_EQ(v.certificate.sampled_mixed_elements, 50u);
    }
  }
  EXPECT_THROW(verify_catalog_extension("Hc2_4", 8), InputError);
  EXPECT_THROW(verify_catalog_extension("L", 8), InputError);
}

TEST(Verify, FormMembershipCatchesAWrongEntry) {
  auto t = build("R2", 7, {});
  auto form = general_form_L2(7, 0, 1, 1);
  ASSERT_TRUE(general_form_membership(t, form).pass);
  t.set(8, 2, 2, 1);  // [x, e2] is not free in the form
  EXPECT_FALSE(general_form_membership(t, form).pass);
}

TEST(Verify, CertificateRejectsNilpotentQ) {
  auto n = L(6, 0, 0, 0);
  StructureTensor t(7);
  n.for_each([&](size_t i, size_t j, size_t k, const Scalar& c) { t.set(i, j, k, c); });
  auto c = nilradical_certificate(t, 6, 1, 10);
  EXPECT_FALSE(c.valid());
}

TEST(Split, R2DecomposesAtSixAndEight) {
  EXPECT_TRUE(split_check_R2(6));
  EXPECT_TRUE(split_check_R2(8));
}

TEST(Lie, ProbeCertifies) {
  for (size_t n : {7u, 9u}) {
    auto p = lie_probe(n, 3);
    EXPECT_TRUE(p.pass()) << n;
  }
  auto even = lie_probe(6, 3);
  EXPECT_TRUE(even.enm2_not_annr && even.enm1_not_annr);
  EXPECT_THROW(lie_probe(7, 4), InputError);
}
