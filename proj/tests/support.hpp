#pragma once

// Seeded generators shared by the property suites.

#include <random>

#include "dcx/corpus.hpp"
#include "dcx/cplx.hpp"

namespace dcx::testing {

inline Mat random_element(const Algebra& a, std::mt19937_64& rng, bool in_m) {
  std::uniform_int_distribution<long long> coef(0, a.field().is_prime() ? a.field().characteristic() - 1 : 5);
  Mat e(a.field(), a.dim(), 1);
  const Mat& m = a.local().m_basis;
  for (std::size_t t = 0; t < m.cols(); ++t) e.axpy(Scalar(a.field(), coef(rng)), m.col(t));
  if (!in_m) e.axpy(Scalar(a.field(), 1 + coef(rng) % 3), a.unit());
  return e;
}

/// Presentation matrix with entries in m, occasionally a unit entry.
inline RingMatrix random_presentation(const Algebra& a, std::mt19937_64& rng, std::size_t max_rows = 3,
                                      std::size_t max_cols = 3) {
  std::uniform_int_distribution<std::size_t> rows(1, max_rows), cols(1, max_cols);
  std::uniform_int_distribution<int> coin(0, 7);
  RingMatrix p = RingMatrix::zero(a, rows(rng), cols(rng));
  for (auto& e : p.entries) {
    const int c = coin(rng);
    if (c == 0) continue;
    e = random_element(a, rng, c != 1);
  }
  return p;
}

inline FgModule random_module(const Algebra::Ptr& a, std::mt19937_64& rng) {
  return module_from_presentation(a, random_presentation(*a, rng));
}

/// Free complex F_{base+len-1} -> ... -> F_base with random minimal-looking
/// differentials; the second differential is drawn from the kernel of the first.
inline Complex random_free_complex(const Algebra::Ptr& a, std::mt19937_64& rng, int base, int len) {
  std::uniform_int_distribution<std::size_t> rk(1, 2);
  const Field& f = a->field();
  std::map<int, FgModule> entries;
  std::map<int, Mat> diffs;
  std::vector<std::size_t> ranks;
  for (int t = 0; t < len; ++t) ranks.push_back(rk(rng));
  for (int t = 0; t < len; ++t) entries.emplace(base + t, module_free(a, ranks[t]));
  Mat prev;
  for (int t = 1; t < len; ++t) {
    Mat d(f, ranks[t - 1] * a->dim(), ranks[t] * a->dim());
    Mat kernel = t == 1 ? Mat::identity(f, ranks[0] * a->dim()) : kernel_basis(prev);
    std::uniform_int_distribution<long long> coef(0, 100);
    for (std::size_t j = 0; j < ranks[t]; ++j) {
      Mat v(f, d.rows(), 1);
      for (std::size_t c = 0; c < kernel.cols(); ++c) v.axpy(Scalar(f, coef(rng)), kernel.col(c));
      // keep the image inside m F so the complex stays minimal when possible
      const Mat& gens = a->local().m_generators;
      if (gens.cols() > 0) {
        Mat shrink = Mat::repeat_diag(a->mult_by(gens.col(j % gens.cols())), ranks[t - 1]);
        Mat w = shrink * v;
        if (t == 1 || (prev * w).is_zero()) v = w;
      }
      for (std::size_t b = 0; b < a->dim(); ++b)
        d.set_block(0, j * a->dim() + b, Mat::repeat_diag(a->mult(b), ranks[t - 1]) * v);
    }
    diffs.emplace(base + t, d);
    prev = d;
  }
  return Complex(a, std::move(entries), std::move(diffs));
}

}  // namespace dcx::testing
