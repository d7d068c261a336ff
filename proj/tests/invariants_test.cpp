#include <gtest/gtest.h>

#include "leibniz/algebra.hpp"
#include "leibniz/catalog.hpp"
#include "leibniz/invariants.hpp"

using namespace leibniz;

namespace {

StructureTensor L(size_t n, int a, int b, int g) { return build("L", n, {{"a", a}, {"b", b}, {"g", g}}); }
StructureTensor G(size_t n, int a, int b, int g) { return build("G", n, {{"a", a}, {"b", b}, {"g", g}}); }

}  // namespace

TEST(CharSeq, PrintedExamples) {
  for (const auto& t : {L(8, 0, 0, 0), G(8, 0, 0, 0)}) {
    auto c = characteristic_sequence(t, 50, 1);
    EXPECT_EQ(c.sequence, (std::vector<size_t>{6, 2}));
    EXPECT_EQ(jordan_block_sizes(t.right_mult(c.witness)), c.sequence);
  }
  EXPECT_EQ(characteristic_sequence(StructureTensor(4), 5, 1).sequence, (std::vector<size_t>{1, 1, 1, 1}));
  EXPECT_THROW(characteristic_sequence(build("R1", 6, {{"beta", 0}}), 5, 1), DomainError);
}

TEST(CharSeq, E1AttainsTheMaximum) {
  for (size_t n = 6; n <= 9; ++n) {
    std::vector<StructureTensor> ts{L(n, 0, 0, 0), L(n, 0, 1, 1), L(n, 1, 0, 0), G(n, 0, 0, 1), G(n, 0, 2, 1)};
    if (n % 2) ts.push_back(G(n, 1, 4, 2));
    for (const auto& t : ts) {
      std::vector<size_t> expect{n - 2, 2};
      EXPECT_EQ(jordan_block_sizes(t.right_mult(unit_vector(n, 0))), expect);
      EXPECT_EQ(characteristic_sequence(t, 200, n).sequence, expect);
    }
  }
}

TEST(Fingerprint, DistinguishesPrintedPairs) {
  auto a = fingerprint(L(7, 0, 0, 0)), b = fingerprint(L(7, 0, 0, 1));
  EXPECT_NE(a.dim_ann_r, b.dim_ann_r);
  auto c = fingerprint(build("L1", 7, {{"beta", 0}})), d = fingerprint(build("L3", 7, {{"beta", 0}}));
  EXPECT_FALSE(c == d);
}

TEST(Fingerprint, InvariantUnderBasisChange) {
  Sampler s(17);
  for (const auto& t : {L(7, 1, 0, 2), G(7, 1, 2, 1), build("R2", 6, {}), build("Hc1_5", 7, {})}) {
    auto f = fingerprint(t);
    for (int k = 0; k < 10; ++k) EXPECT_EQ(fingerprint(apply_basis_change(t, s.invertible(t.dim()))), f);
  }
}

TEST(Pairwise, ReportIsComplete) {
  std::vector<std::pair<std::string, StructureTensor>> list;
  for (const auto* f : list_families("solvable", "G", 2))
    list.push_back({f->name, f->build(7, sample_params(*f, 7).front())});
  auto r = pairwise_distinguish(list);
  EXPECT_EQ(r.pairs.size(), 15u);
  for (const auto& p : r.pairs)
    if (!p.collision) { EXPECT_NE(p.left, p.right); }
}

TEST(Pairwise, SelfIsACollision) {
  auto t = build("R4", 6, {});
  auto r = pairwise_distinguish({{"a", t}, {"b", t}});
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_TRUE(r.pairs[0].collision);
  EXPECT_EQ(r.collisions(), 1u);
}

TEST(Pairwise, DimensionMismatch) {
  EXPECT_THROW(pairwise_distinguish({{"a", L(6, 0, 0, 0)}, {"b", L(7, 0, 0, 0)}}), InputError);
}
