#include <gtest/gtest.h>

#include "dcx/corpus.hpp"
#include "dcx/sdc.hpp"
#include "support.hpp"

using namespace dcx;

namespace {

Complex mod(const FgModule& m, int deg = 0) { return complex_of_module(m, deg); }
Complex ring(const Algebra::Ptr& a, int deg = 0) { return mod(module_free(a, 1), deg); }
Complex k_of(const Algebra::Ptr& a, int deg = 0) { return mod(residue_field(a), deg); }
Complex omega(const Algebra::Ptr& a, int deg = 0) { return mod(canonical_module(a), deg); }

void expect_honest(const SdcVerdict& v) {
  if (v.holds == Tri::False) {
    EXPECT_TRUE(v.certificate.is_exact()) << v.witness;
    EXPECT_FALSE(v.witness.empty());
  }
}

}  // namespace

TEST(Semidualizing, Examples) {
  auto d2 = corpus_ring("d2");
  auto fat = corpus_ring("fat");
  auto r = is_semidualizing(ring(fat));
  EXPECT_EQ(r.holds, Tri::True);
  EXPECT_TRUE(r.certificate.is_exact());

  auto k = is_semidualizing(k_of(d2));
  EXPECT_EQ(k.holds, Tri::False);
  EXPECT_NE(k.witness.find("H_-1"), std::string::npos) << k.witness;
  expect_honest(k);

  auto w = is_semidualizing(omega(fat));
  EXPECT_EQ(w.holds, Tri::True);
  EXPECT_TRUE(w.certificate.conclusive());

  EXPECT_EQ(is_semidualizing(k_of(fat)).holds, Tri::False);
  EXPECT_EQ(is_semidualizing(ring(fat, 4)).holds, Tri::True);
  EXPECT_THROW(is_semidualizing(Complex(fat)), Error);
}

TEST(Semidualizing, FreeOfRankTwo) {
  // Hom(R^2, R^2) is R^4: H_0 is too large for the homothety to be onto.
  auto a = corpus_ring("d2");
  auto v = is_semidualizing(mod(module_free(a, 2)));
  EXPECT_EQ(v.holds, Tri::False);
  expect_honest(v);
}

TEST(Semidualizing, ShiftsOfRing) {
  auto fat = corpus_ring("fat");
  EXPECT_TRUE(is_shift_of_ring(ring(fat, 5)));
  EXPECT_FALSE(is_shift_of_ring(omega(fat)));
  EXPECT_TRUE(is_shift_of_ring(omega(corpus_ring("d3"))));
  EXPECT_FALSE(is_shift_of_ring(Complex(fat)));
}

TEST(Semidualizing, DualizingDirect) {
  auto fat = corpus_ring("fat");
  EXPECT_EQ(is_dualizing_direct(omega(fat)).holds, Tri::True);
  EXPECT_EQ(is_dualizing_direct(ring(fat)).holds, Tri::False);
  EXPECT_EQ(is_dualizing_direct(omega(fat, 2)).holds, Tri::True);
  EXPECT_EQ(is_dualizing_direct(ring(corpus_ring("ci2"))).holds, Tri::True);
}

// ---------------------------------------------------------------------------

TEST(GcDimension, Examples) {
  auto fat = corpus_ring("fat");
  for (const Complex& c : {ring(fat), omega(fat)}) {
    auto r = gc_dimension(c, ring(fat));
    ASSERT_TRUE(r.finite()) << r.witness;
    EXPECT_EQ(r.g, 0);
    EXPECT_TRUE(r.certificate.conclusive());
    auto self = gc_dimension(c, c);
    ASSERT_TRUE(self.finite()) << self.witness;
    EXPECT_EQ(self.g, 0);
  }
  auto wk = gc_dimension(omega(fat), k_of(fat));
  ASSERT_TRUE(wk.finite()) << wk.witness;
  EXPECT_EQ(wk.g, 0);
  EXPECT_TRUE(wk.certificate.conclusive());

  auto rk = gc_dimension(ring(fat), k_of(fat));
  EXPECT_EQ(rk.value, GcDimResult::Value::Infinite) << rk.witness;
  EXPECT_TRUE(rk.certificate.is_exact());

  auto d2 = corpus_ring("d2");
  auto gk = gc_dimension(ring(d2), k_of(d2));
  ASSERT_TRUE(gk.finite()) << gk.witness;
  EXPECT_EQ(gk.g, 0);
  EXPECT_THROW(gc_dimension(k_of(d2), ring(d2)), Error);
}

TEST(GcDimension, ShiftLaw) {
  auto a = corpus_ring("ci2");
  for (int n = -2; n <= 2; ++n) {
    auto r = gc_dimension(ring(a), k_of(a, n));
    ASSERT_TRUE(r.finite()) << r.witness;
    EXPECT_EQ(r.g, n);
    auto w = gc_dimension(omega(corpus_ring("fat"), n), k_of(corpus_ring("fat")));
    ASSERT_TRUE(w.finite());
    EXPECT_EQ(w.g, 0);
  }
}

TEST(Grade, Examples) {
  auto fat = corpus_ring("fat");
  EXPECT_EQ(grade_c(omega(fat), omega(fat)), 0);
  EXPECT_EQ(grade_c(omega(fat, 3), ring(fat)), -3);
  EXPECT_EQ(grade_c(omega(fat), k_of(fat)), 0);
  EXPECT_EQ(grade_c(ring(fat), ring(fat)), 0);
}

// ---------------------------------------------------------------------------

TEST(Auslander, Examples) {
  auto fat = corpus_ring("fat");
  auto w_r = auslander_membership(omega(fat), ring(fat));
  EXPECT_EQ(w_r.holds, Tri::True) << w_r.witness;
  EXPECT_TRUE(w_r.certificate.conclusive());

  std::mt19937_64 rng(31);
  for (int t = 0; t < 3; ++t) {
    auto x = dcx::testing::random_free_complex(fat, rng, 0, 2);
    if (homology(x).is_exact()) continue;
    auto v = auslander_membership(ring(fat), x);
    EXPECT_EQ(v.holds, Tri::True) << v.witness;
  }
  auto rk = auslander_membership(ring(fat), k_of(fat));
  EXPECT_EQ(rk.holds, Tri::True) << rk.witness;

  auto wk = auslander_membership(omega(fat), k_of(fat));
  EXPECT_EQ(wk.holds, Tri::False);
  expect_honest(wk);

  auto d3 = corpus_ring("d3");
  auto g = auslander_membership(omega(d3), k_of(d3));
  EXPECT_EQ(g.holds, Tri::True) << g.witness;
  EXPECT_TRUE(g.certificate.conclusive());
}

// ---------------------------------------------------------------------------

TEST(SdcProperties, FormulasAtFiniteDimension) {
  std::mt19937_64 rng(41);
  int finite = 0;
  for (const char* name : {"d2", "d3", "ci2", "fat", "triv"}) {
    auto a = corpus_ring(name);
    for (const Complex& c : {ring(a), omega(a)}) {
      if (is_semidualizing(c).holds != Tri::True) continue;
      for (int t = 0; t < 3; ++t) {
        auto m = dcx::testing::random_module(a, rng);
        if (m.is_zero()) continue;
        auto x = mod(m, t - 1);
        auto r = gc_dimension(c, x);
        if (r.value == GcDimResult::Value::Infinite) EXPECT_TRUE(r.certificate.is_exact());
        if (!r.finite() || !r.certificate.conclusive()) continue;
        ++finite;
        // G_C-dim X = depth R - depth X, and inf RHom(X, C) = depth X - depth C.
        EXPECT_EQ(r.g, depth(ring(a)) - depth(x)) << name;
        auto d = rhom(x, c);
        EXPECT_EQ(*d.inf(), depth(x) - depth(c)) << name;
        auto sh = gc_dimension(c, shift(x, 2));
        ASSERT_TRUE(sh.finite());
        EXPECT_EQ(sh.g, r.g + 2);
      }
    }
  }
  EXPECT_GE(finite, 5);
}

TEST(SdcProperties, DualizingImpliesTypeOneCohenMacaulay) {
  for (const auto& name : corpus_names()) {
    auto a = corpus_ring(name);
    for (const Complex& c : {ring(a), omega(a), k_of(a)}) {
      auto v = is_dualizing_direct(c);
      if (v.holds != Tri::True) continue;
      EXPECT_NE(is_semidualizing(c).holds, Tri::False) << name;
      EXPECT_EQ(type_of(c), 1u) << name;
      EXPECT_TRUE(is_cohen_macaulay(c)) << name;
    }
  }
}

TEST(SdcProperties, FalseVerdictsAreExact) {
  std::mt19937_64 rng(43);
  for (const char* name : {"d2", "ci2", "fat", "fat3"}) {
    auto a = corpus_ring(name);
    for (int t = 0; t < 3; ++t) {
      auto m = dcx::testing::random_module(a, rng);
      if (m.is_zero()) continue;
      expect_honest(is_semidualizing(mod(m)));
      expect_honest(auslander_membership(omega(a), mod(m)));
      expect_honest(auslander_membership(ring(a), mod(m)));
    }
  }
}

// G_C-dim over R against G-dim over R ⋉ C with the module inflated, both 0 or ∞.
TEST(SdcProperties, TrivialExtensionCrossCheck) {
  std::mt19937_64 rng(44);
  int compared = 0;
  for (const char* name : {"d2", "fat"}) {
    auto a = corpus_ring(name);
    auto w = canonical_module(a);
    auto t = trivial_extension(a, w);
    auto inflate = [&](const FgModule& m) {
      std::vector<Mat> acts;
      for (std::size_t b = 0; b < t->dim(); ++b)
        acts.push_back(b < a->dim() ? m.action(b) : Mat(a->field(), m.dim(), m.dim()));
      return FgModule(t, std::move(acts));
    };
    std::vector<FgModule> pool = {module_free(a, 1), residue_field(a), w};
    for (int i = 0; i < 2; ++i) pool.push_back(dcx::testing::random_module(a, rng));
    for (const auto& m : pool) {
      if (m.is_zero()) continue;
      auto over_r = gc_dimension(mod(w), mod(m));
      auto over_t = gc_dimension(ring(t), mod(inflate(m)));
      if (!over_r.certificate.conclusive() || !over_t.certificate.conclusive()) continue;
      EXPECT_EQ(over_r.finite(), over_t.finite()) << name << ": " << over_r.witness << " / " << over_t.witness;
      if (over_r.finite() && over_t.finite()) EXPECT_EQ(over_r.g, over_t.g);
      ++compared;
    }
  }
  EXPECT_GE(compared, 4);
}
