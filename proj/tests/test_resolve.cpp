#include <gtest/gtest.h>

#include "dcx/corpus.hpp"
#include "dcx/resolve.hpp"
#include "support.hpp"

using namespace dcx;

namespace {

std::vector<std::size_t> constant(std::size_t value, std::size_t count) { return std::vector<std::size_t>(count, value); }

void expect_exact_cone_below_top(const Resolution& res) {
  const auto dims = homology_dims(cone(res.augmentation_map()));
  for (const auto& [i, d] : dims) EXPECT_GT(i, res.top) << "cone homology in degree " << i;
}

}  // namespace

TEST(Resolve, FreeModulesTerminate) {
  auto a = corpus_ring("fat");
  auto res = minimal_free_resolution(module_free(a, 2), 5);
  EXPECT_TRUE(res.complete);
  EXPECT_EQ(res.betti(), (std::vector<std::size_t>{2, 0}));
  EXPECT_TRUE(res.certificate().is_exact());
  EXPECT_EQ(*res.betti_at(7), 0u);
}

TEST(Resolve, ResidueFieldOverDualNumbers) {
  auto a = corpus_ring("d2");
  auto res = minimal_free_resolution(residue_field(a), 8);
  EXPECT_EQ(res.betti(), constant(1, 9));
  EXPECT_TRUE(res.minimal);
  for (int i = 1; i <= 8; ++i) EXPECT_EQ(res.free.diff(i).at(0, 0), parse_element(*a, "x"));
  ASSERT_TRUE(res.periodicity.has_value());
  EXPECT_EQ(res.periodicity->period, 1);
  EXPECT_LE(res.periodicity->start, 1);
  EXPECT_EQ(res.certificate().kind, Certificate::Kind::Periodic);
  EXPECT_EQ(*res.betti_at(1000), 1u);
  expect_exact_cone_below_top(res);
}

TEST(Resolve, ResidueFieldOverFat) {
  auto a = corpus_ring("fat");
  auto res = minimal_free_resolution(residue_field(a), 8);
  std::vector<std::size_t> expected;
  for (int i = 0; i <= 8; ++i) expected.push_back(std::size_t{1} << i);
  EXPECT_EQ(res.betti(), expected);
  EXPECT_TRUE(res.minimal);
  EXPECT_FALSE(res.periodicity.has_value());
  EXPECT_EQ(res.certificate().kind, Certificate::Kind::UpToBound);
}

TEST(Resolve, HypersurfacePeriodTwo) {
  auto a = corpus_ring("d3");
  auto res = minimal_free_resolution(residue_field(a), 6);
  EXPECT_EQ(res.betti(), constant(1, 7));
  ASSERT_TRUE(res.periodicity.has_value());
  auto om1 = res.syzygy(1), om3 = res.syzygy(3);
  ASSERT_TRUE(om1 && om3);
  EXPECT_TRUE(is_isomorphic(*om1, *om3).yes());
  EXPECT_FALSE(is_isomorphic(*om1, *res.syzygy(2)).yes());
  EXPECT_EQ(res.periodicity->period, 2);
}

TEST(Resolve, BudgetGivesPartialResult) {
  auto a = corpus_ring("fat");
  ResolveOptions o;
  o.rank_budget = 100;
  auto res = minimal_free_resolution(residue_field(a), 20, o);
  EXPECT_TRUE(res.budget_exceeded);
  EXPECT_EQ(res.top, 5);  // 1 + 2 + ... + 32 = 63, adding 64 exceeds 100
  EXPECT_EQ(res.certificate().kind, Certificate::Kind::UpToBound);
  EXPECT_EQ(res.certificate().bound, 5);
}

TEST(Resolve, ComplexesAndShifts) {
  auto a = corpus_ring("d2");
  auto k = residue_field(a);
  ResolveOptions o;
  o.window = 5;
  auto module_res = minimal_free_resolution(k, 5);
  auto complex_res = resolve_complex(complex_of_module(k, 0), o);
  EXPECT_EQ(module_res.betti(), complex_res.betti());
  auto shifted = resolve_complex(complex_of_module(k, 3), o);
  EXPECT_EQ(shifted.free.lo, 3);
  EXPECT_EQ(shifted.betti(), module_res.betti());

  // R --x--> R in degrees 1, 0 has homology k (+) Σk
  RingMatrix p = RingMatrix::zero(*a, 1, 1);
  p.at(0, 0) = parse_element(*a, "x");
  Complex x(a, {{1, module_free(a, 1)}, {0, module_free(a, 1)}}, {{1, p.to_kmatrix(*a)}});
  auto res = resolve_complex(x, o);
  // X is already minimal free: the resolution reproduces it.
  EXPECT_EQ(res.betti()[0], 1u);
  EXPECT_EQ(res.betti()[1], 1u);
  EXPECT_TRUE(res.complete);
  expect_exact_cone_below_top(res);

  // The sum of shifted resolutions of k and Σk has betti 1, 2, 2, ...
  auto direct = resolve_complex(direct_sum(complex_of_module(k, 0), complex_of_module(k, 1)), o);
  EXPECT_EQ(direct.betti()[0], 1u);
  for (int i = 1; i <= direct.top; ++i) EXPECT_EQ(direct.betti()[static_cast<std::size_t>(i)], 2u);
  expect_exact_cone_below_top(direct);
}

TEST(ResolveProperties, AugmentationIsQuasiIsoAndMinimal) {
  std::mt19937_64 rng(0xDC0DE);
  for (const char* name : {"d2", "d3", "ci2", "fat"}) {
    auto a = corpus_ring(name);
    for (int t = 0; t < 4; ++t) {
      auto m = dcx::testing::random_module(a, rng);
      if (m.is_zero()) continue;
      auto res = minimal_free_resolution(m, 4);
      EXPECT_TRUE(res.minimal);
      EXPECT_EQ(res.betti()[0], module_invariants(m).min_gens);
      expect_exact_cone_below_top(res);
      if (res.periodicity) {
        for (int i = res.periodicity->start; i + res.periodicity->period <= res.top; ++i)
          EXPECT_EQ(res.free.rank(i), res.free.rank(i + res.periodicity->period));
      }
    }
    auto x = dcx::testing::random_free_complex(a, rng, -1, 3);
    if (homology(x).is_exact()) continue;
    ResolveOptions o;
    o.window = 3;
    auto res = resolve_complex(x, o);
    EXPECT_TRUE(res.minimal);
    expect_exact_cone_below_top(res);
  }
}
