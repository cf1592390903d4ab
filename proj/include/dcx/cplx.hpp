#pragma once

// Bounded chain complexes of modules. Homological indexing: the differential
// in degree i goes X_i -> X_{i-1}.
//
// Sign conventions, fixed once:
//   shift      (Σ^n X)_i = X_{i-n},  ∂^{Σ^n X}_i = (-1)^n ∂^X_{i-n}
//   Hom        Hom(X, Y)_n = ∏_i Hom(X_i, Y_{i+n}),  ∂f = ∂_Y f - (-1)^n f ∂_X
//   tensor     (X ⊗ Y)_n = ⊕_i X_i ⊗ Y_{n-i},  ∂(x ⊗ y) = ∂x ⊗ y + (-1)^{|x|} x ⊗ ∂y
//   cone       cone(f)_n = X_{n-1} ⊕ Y_n,  ∂(x, y) = (-∂x, f(x) + ∂y)
// With these, Hom(X, Σ^n Y) = Σ^n Hom(X, Y) and (Σ^n X) ⊗ Y = Σ^n (X ⊗ Y)
// hold on the nose, differentials included.

#include <map>
#include <optional>

#include "dcx/fgmod.hpp"

namespace dcx {

class Complex {
 public:
  Complex() = default;
  /// The zero complex over `algebra`.
  explicit Complex(Algebra::Ptr algebra);
  /// `diffs[i]` is X_i -> X_{i-1}; missing differentials are zero. Zero
  /// entries are dropped. With `validate`, checks shapes, that each
  /// differential is a module map, and ∂∂ = 0 (InvalidComplex otherwise).
  Complex(Algebra::Ptr algebra, std::map<int, FgModule> entries, std::map<int, Mat> diffs, bool validate = true);

  const Algebra::Ptr& algebra() const { return algebra_; }
  const Field& field() const { return algebra_->field(); }
  /// X_i; the zero module outside the support.
  const FgModule& entry(int i) const;
  /// X_i -> X_{i-1}; a zero matrix of the right shape when absent.
  Mat diff(int i) const;
  const std::map<int, FgModule>& entries() const { return entries_; }
  const std::map<int, Mat>& diffs() const { return diffs_; }
  /// Lowest / highest degree with a nonzero entry.
  std::optional<int> lo() const;
  std::optional<int> hi() const;
  bool has_zero_entries() const { return entries_.empty(); }

 private:
  Algebra::Ptr algebra_;
  FgModule zero_;
  std::map<int, FgModule> entries_;
  std::map<int, Mat> diffs_;
};

struct ChainMap {
  Complex source;
  Complex target;
  std::map<int, Mat> components;  ///< f_i: X_i -> Y_i; absent means zero

  Mat component(int i) const;
};

/// Validates shapes, module linearity and f ∂ = ∂ f; throws InvalidComplex.
ChainMap chain_map(Complex source, Complex target, std::map<int, Mat> components);
ChainMap identity_map(const Complex& x);
ChainMap zero_map(const Complex& source, const Complex& target);

struct Homology {
  std::map<int, Subquotient> modules;  ///< nonzero homology only
  std::optional<int> inf;              ///< empty means +∞ (exact complex)
  std::optional<int> sup;              ///< empty means -∞

  std::size_t dim(int i) const;
  bool is_exact() const { return modules.empty(); }
  /// sup - inf; empty for exact complexes.
  std::optional<int> amp() const;
  const FgModule& module(int i) const { return modules.at(i).module; }
};

Homology homology(const Complex& x);
/// Homology dimensions only, degree -> dim, zero degrees omitted.
std::map<int, std::size_t> homology_dims(const Complex& x);

/// M concentrated in degree n.
Complex complex_of_module(const FgModule& m, int n = 0);
Complex shift(const Complex& x, int n);
ChainMap shift(const ChainMap& f, int n);
Complex cone(const ChainMap& f);
Complex direct_sum(const Complex& x, const Complex& y);

Complex hom_complex(const Complex& x, const Complex& y);
Complex tensor_complex(const Complex& x, const Complex& y);

/// True when every induced map on homology is an isomorphism.
bool is_quasi_iso(const ChainMap& f);

/// Maps induced on homology, as matrices between the homology bases.
std::map<int, Mat> induced_on_homology(const ChainMap& f, const Homology& hs, const Homology& ht);

/// τ_{≥e}: X_i for i > e, Z_e in degree e; with the inclusion into X.
ChainMap truncate_below(const Complex& x, int e);
/// τ_{≤h}: X_i for i < h, X_h / B_h in degree h; with the projection from X.
ChainMap truncate_above(const Complex& x, int h);

/// Finite-dimensional complex of vector spaces; the k-level shadow used for
/// large derived computations.
struct KComplex {
  std::map<int, std::size_t> dims;
  std::map<int, Mat> diffs;  ///< degree i: dims[i-1] x dims[i]

  std::size_t dim(int i) const;
  /// Rank of the differential leaving degree i.
  std::size_t rank_of(int i) const;
  std::size_t homology_dim(int i) const;
  /// Nonzero homology dimensions over [lo, hi], each rank computed once.
  std::map<int, std::size_t> homology_dims(int lo, int hi) const;
  /// Throws InvalidComplex unless shapes match and ∂∂ = 0.
  void validate() const;
};

KComplex k_shadow(const Complex& x);

}  // namespace dcx
