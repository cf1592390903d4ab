#include <gtest/gtest.h>

#include "dcx/corpus.hpp"
#include "dcx/derived.hpp"
#include "support.hpp"

using namespace dcx;

namespace {

Complex mod(const FgModule& m, int deg = 0) { return complex_of_module(m, deg); }

Complex ring(const Algebra::Ptr& a) { return mod(module_free(a, 1)); }

Complex k_of(const Algebra::Ptr& a, int deg = 0) { return mod(residue_field(a), deg); }

// R --x--> R in degrees 1, 0 over k[x]/(x^2); homology k (+) Σk.
Complex two_term(const Algebra::Ptr& a) {
  RingMatrix p = RingMatrix::zero(*a, 1, 1);
  p.at(0, 0) = parse_element(*a, "x");
  return Complex(a, {{1, module_free(a, 1)}, {0, module_free(a, 1)}}, {{1, p.to_kmatrix(*a)}});
}

DerivedOptions window(int w) {
  DerivedOptions o;
  o.window = w;
  return o;
}

}  // namespace

TEST(Derived, RHomFromRingIsIdentity) {
  std::mt19937_64 rng(11);
  for (const char* name : {"d2", "ci2", "fat"}) {
    auto a = corpus_ring(name);
    auto y = dcx::testing::random_free_complex(a, rng, -1, 3);
    auto d = rhom(ring(a), y);
    EXPECT_TRUE(d.certificate.is_exact());
    auto expected = homology_dims(y);
    for (int n = -4; n <= 4; ++n) {
      auto it = expected.find(n);
      EXPECT_EQ(*d.homology_dim(n), it == expected.end() ? 0u : it->second) << name << " degree " << n;
    }
  }
}

TEST(Derived, HomFromResidueFieldIsSocle) {
  for (const auto& name : corpus_names()) {
    auto a = corpus_ring(name);
    auto d = rhom(k_of(a), ring(a), window(2));
    EXPECT_EQ(*d.homology_dim(0), module_invariants(module_free(a, 1)).socle_dim) << name;
  }
}

TEST(Derived, ExtOfResidueFieldOverDualNumbers) {
  auto a = corpus_ring("d2");
  auto d = rhom(k_of(a), ring(a), window(6));
  // R is self-injective: Ext^i(k, R) vanishes for i > 0.
  EXPECT_TRUE(d.certificate.is_exact());
  for (int i = 1; i <= 40; ++i) EXPECT_EQ(*d.homology_dim(-i), 0u);
  auto dk = rhom(k_of(a), k_of(a), window(6));
  EXPECT_EQ(dk.certificate.kind, Certificate::Kind::Periodic);
  for (int i = 0; i <= 50; ++i) EXPECT_EQ(*dk.homology_dim(-i), 1u) << i;
}

TEST(Derived, RHomShiftsWithSecondArgument) {
  std::mt19937_64 rng(12);
  int checked = 0;
  for (const char* name : {"d2", "d3", "ci2", "fat"}) {
    auto a = corpus_ring(name);
    auto x = mod(dcx::testing::random_module(a, rng));
    auto y = dcx::testing::random_free_complex(a, rng, 0, 2);
    if (homology(y).is_exact() || homology(x).is_exact()) continue;
    auto base = rhom(x, y, window(4));
    for (int n = -3; n <= 3; ++n) {
      auto sh = rhom(x, shift(y, n), window(4));
      for (int m = base.exact_lo; m <= base.exact_hi; ++m)
        EXPECT_EQ(sh.homology_dim(m + n), base.homology_dim(m)) << name << " n=" << n << " m=" << m;
    }
    ++checked;
  }
  EXPECT_GE(checked, 2);
}

TEST(Derived, TensorWithRingIsIdentity) {
  std::mt19937_64 rng(13);
  for (const char* name : {"d3", "fat", "triv"}) {
    auto a = corpus_ring(name);
    auto y = mod(dcx::testing::random_module(a, rng), 2);
    auto d = dtensor(ring(a), y);
    EXPECT_TRUE(d.certificate.is_exact());
    auto expected = homology_dims(y);
    for (int n = -2; n <= 6; ++n) {
      auto it = expected.find(n);
      EXPECT_EQ(*d.homology_dim(n), it == expected.end() ? 0u : it->second);
    }
  }
}

TEST(Derived, TorOfResidueFieldOverDualNumbers) {
  auto a = corpus_ring("d2");
  auto d = dtensor(k_of(a), k_of(a), window(6));
  EXPECT_EQ(d.certificate.kind, Certificate::Kind::Periodic);
  for (int i = 0; i <= 60; ++i) EXPECT_EQ(*d.homology_dim(i), 1u) << i;
  EXPECT_EQ(*d.homology_dim(-1), 0u);
}

TEST(Derived, TensorCommutesOnHomology) {
  std::mt19937_64 rng(14);
  for (const char* name : {"d2", "d3", "ci2", "fat", "fat3"}) {
    auto a = corpus_ring(name);
    for (int t = 0; t < 3; ++t) {
      auto x = mod(dcx::testing::random_module(a, rng));
      auto y = mod(dcx::testing::random_module(a, rng), 1);
      auto xy = dtensor(x, y, window(3));
      auto yx = dtensor(y, x, window(3));
      const int hi = std::min(xy.exact_hi, yx.exact_hi);
      for (int n = 0; n <= hi; ++n) EXPECT_EQ(xy.homology_dim(n), yx.homology_dim(n)) << name << " degree " << n;
    }
  }
}

TEST(Derived, ModuleComplexMatchesChain) {
  auto a = corpus_ring("ci2");
  auto d = rhom(k_of(a), ring(a), window(3));
  auto c = d.module_complex(d.exact_lo, d.exact_hi);
  auto dims = homology_dims(c);
  for (int n = d.exact_lo + 1; n < d.exact_hi; ++n) {
    auto it = dims.find(n);
    EXPECT_EQ(it == dims.end() ? 0u : it->second, *d.homology_dim(n)) << n;
  }
  EXPECT_THROW(d.module_complex(d.exact_lo - 5, d.exact_hi), Error);
}

// ---------------------------------------------------------------------------

TEST(Invariants, DepthAndDimension) {
  for (const auto& name : corpus_names()) {
    auto a = corpus_ring(name);
    EXPECT_EQ(depth(ring(a)), 0) << name;
    EXPECT_EQ(depth(k_of(a)), 0) << name;
    EXPECT_EQ(kdim(ring(a)), 0) << name;
  }
  auto a = corpus_ring("fat");
  for (int n = -4; n <= 4; ++n) {
    EXPECT_EQ(depth(k_of(a, n)), -n);
    EXPECT_EQ(kdim(k_of(a, n)), -n);
    EXPECT_TRUE(is_cohen_macaulay(k_of(a, n)));
  }
  EXPECT_THROW(depth(Complex(a)), Error);
  EXPECT_THROW(kdim(Complex(a)), Error);
}

TEST(Invariants, NonCohenMacaulayTwoTermComplex) {
  auto a = corpus_ring("d2");
  auto x = two_term(a);
  EXPECT_EQ(depth(x), -1);
  EXPECT_EQ(kdim(x), 0);
  EXPECT_FALSE(is_cohen_macaulay(x));
  EXPECT_EQ(type_of(x), 1u);
}

TEST(Invariants, BettiNumbersOfResidueFieldOverFat) {
  auto a = corpus_ring("fat");
  auto b = betti_numbers(k_of(a), 0, 8);
  for (int i = 0; i <= 8; ++i) EXPECT_EQ(*b.at(i), std::size_t{1} << i);
  EXPECT_THROW(betti_numbers(k_of(a), 0, 40), Error);
}

TEST(Invariants, BassNumbersOfCanonicalModule) {
  for (const auto& name : corpus_names()) {
    auto a = corpus_ring(name);
    auto w = mod(canonical_module(a));
    auto mu = bass_numbers(w, 0, 40, window(3));
    EXPECT_EQ(*mu.at(0), 1u) << name;
    for (int i = 1; i <= 40; ++i) EXPECT_EQ(*mu.at(i), 0u) << name << " " << i;
    EXPECT_TRUE(is_injective_module(canonical_module(a)));
  }
}

TEST(Invariants, Types) {
  EXPECT_EQ(type_of(k_of(corpus_ring("ci2"))), 1u);
  EXPECT_EQ(type_of(ring(corpus_ring("fat"))), 2u);
  for (const char* name : {"d2", "d3", "d4"}) EXPECT_EQ(type_of(ring(corpus_ring(name))), 1u) << name;
  EXPECT_EQ(type_of(ring(corpus_ring("fat3"))), 3u);
}

TEST(Invariants, Reports) {
  auto fat = corpus_ring("fat");
  auto r = invariants(ring(fat));
  EXPECT_EQ(r.depth, 0);
  EXPECT_EQ(r.kdim, 0);
  EXPECT_EQ(r.type, 2u);
  EXPECT_TRUE(r.cm);
  EXPECT_TRUE(r.betti.certificate.is_exact());
  EXPECT_EQ(r.betti.values.front(), 1u);

  auto k = invariants(k_of(corpus_ring("d2")));
  EXPECT_EQ(k.type, 1u);
  EXPECT_EQ(k.amp, 0);
  EXPECT_EQ(k.bass.certificate.kind, Certificate::Kind::Periodic);
  EXPECT_EQ(*k.bass.at(100), 1u);

  auto c = invariants(mod(canonical_module(fat), 3));
  EXPECT_EQ(c.inf, 3);
  EXPECT_EQ(c.sup, 3);
  EXPECT_EQ(c.depth, -3);
  EXPECT_EQ(c.kdim, -3);
  EXPECT_TRUE(c.bass.certificate.is_exact());
}

TEST(Invariants, FreeAndInjectiveModules) {
  auto a = corpus_ring("ci2");
  EXPECT_TRUE(is_free_module(module_free(a, 2)));
  EXPECT_FALSE(is_free_module(residue_field(a)));
  EXPECT_TRUE(is_injective_module(module_free(a, 1)));  // Gorenstein
  EXPECT_FALSE(is_injective_module(residue_field(a)));
  auto fat = corpus_ring("fat");
  EXPECT_FALSE(is_injective_module(module_free(fat, 1)));
}

// ---------------------------------------------------------------------------

TEST(InvariantProperties, ShiftEquivariance) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> pick(-5, 5);
  int checked = 0;
  for (const char* name : {"d2", "d3", "ci2", "fat"}) {
    auto a = corpus_ring(name);
    for (int t = 0; t < 3; ++t) {
      auto x = dcx::testing::random_free_complex(a, rng, 0, 3);
      if (homology(x).is_exact()) continue;
      const int n = pick(rng);
      auto o = window(3);
      auto base = invariants(x, o), sh = invariants(shift(x, n), o);
      EXPECT_EQ(sh.inf, base.inf + n);
      EXPECT_EQ(sh.sup, base.sup + n);
      EXPECT_EQ(sh.depth, base.depth - n);
      EXPECT_EQ(sh.kdim, base.kdim - n);
      EXPECT_EQ(sh.type, base.type);
      EXPECT_EQ(sh.amp, base.amp);
      EXPECT_EQ(sh.cm, base.cm);
      EXPECT_LE(base.depth, base.kdim);
      ++checked;
    }
  }
  EXPECT_GE(checked, 6);
}

TEST(InvariantProperties, QuasiIsomorphismInvariance) {
  std::mt19937_64 rng(22);
  int checked = 0;
  for (const char* name : {"d2", "ci2", "fat", "prod"}) {
    auto a = corpus_ring(name);
    for (int t = 0; t < 2; ++t) {
      auto x = dcx::testing::random_free_complex(a, rng, -1, 3);
      if (homology(x).is_exact()) continue;
      ResolveOptions ro;
      ro.window = 2;
      auto res = resolve_complex(x, ro);
      ASSERT_TRUE(res.complete);
      auto f = res.free.to_complex();
      auto o = window(2);
      auto ix = invariants(x, o), iff = invariants(f, o);
      EXPECT_EQ(ix.depth, iff.depth);
      EXPECT_EQ(ix.kdim, iff.kdim);
      EXPECT_EQ(ix.type, iff.type);
      EXPECT_EQ(ix.betti.values, iff.betti.values);
      const int last = std::min(ix.bass.last(), iff.bass.last());
      for (int m = ix.bass.first; m <= last; ++m) EXPECT_EQ(ix.bass.at(m), iff.bass.at(m));
      ++checked;
    }
  }
  EXPECT_GE(checked, 4);
}

TEST(InvariantProperties, TwoRoutesForBassAndBetti) {
  std::mt19937_64 rng(23);
  for (const char* name : {"d2", "d3", "d4", "ci2", "fat", "fat3", "triv"}) {
    auto a = corpus_ring(name);
    for (int t = 0; t < 3; ++t) {
      auto m = dcx::testing::random_module(a, rng);
      if (m.is_zero()) continue;
      const auto mi = module_invariants(m);
      auto o = window(3);
      EXPECT_EQ(*bass_numbers(mod(m), 0, 0, o).at(0), mi.socle_dim) << name;
      EXPECT_EQ(*betti_numbers(mod(m), 0, 0, o).at(0), mi.min_gens) << name;
      // Betti numbers through Tor(k, M) against the ranks of a resolution of M.
      auto res = minimal_free_resolution(m, 3);
      auto beta = betti_numbers(mod(m), 0, std::min(res.top, 3), o);
      for (int i = 0; i <= beta.last(); ++i) EXPECT_EQ(*beta.at(i), res.free.rank(i)) << name << " " << i;
      // Bass numbers of M against Betti numbers of its k-dual.
      auto dual_res = minimal_free_resolution(k_dual(m), 3);
      auto mu = bass_numbers(mod(m), 0, std::min(dual_res.top, 3), o);
      for (int i = 0; i <= mu.last(); ++i) EXPECT_EQ(*mu.at(i), dual_res.free.rank(i)) << name << " " << i;
    }
  }
}

TEST(InvariantProperties, ModulesAreCohenMacaulay) {
  std::mt19937_64 rng(24);
  for (const auto& name : corpus_names()) {
    auto a = corpus_ring(name);
    auto m = dcx::testing::random_module(a, rng);
    if (m.is_zero()) continue;
    EXPECT_EQ(depth(mod(m)), 0) << name;
    EXPECT_TRUE(is_cohen_macaulay(mod(m, 2))) << name;
  }
}
