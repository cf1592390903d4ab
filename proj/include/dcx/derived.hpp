#pragma once

// Derived Hom and tensor through minimal free resolutions of the first
// argument, with certificates describing what is known past the computed
// window, and the numerical invariants built on them.

#include <memory>
#include <optional>

#include "dcx/resolve.hpp"

namespace dcx {

struct DerivedOptions {
  /// Resolution window above the top entry; negative selects 2·dim R + 4.
  int window = -1;
  std::size_t rank_budget = kDefaultRankBudget;
  std::size_t degree_dim_budget = 2048;
  std::uint64_t seed = 0xDC0DE;

  ResolveOptions resolve_options() const;
  int effective_window(const Algebra& a) const { return window >= 0 ? window : 2 * static_cast<int>(a.dim()) + 4; }
};

/// Hom(F, Y) or F ⊗ Y for a resolution F of the first argument, kept as a
/// k-level complex over the degrees where it was built.
struct DerivedComplex {
  enum class Kind { Hom, Tensor };
  Kind kind = Kind::Hom;
  std::shared_ptr<const Resolution> resolution;
  Complex other;
  KComplex chain;
  /// layout[n][i]: offset in chain degree n of the summand built on F_i.
  std::map<int, std::map<int, std::size_t>> layout;
  /// Homology is computed exactly on [exact_lo, exact_hi].
  int exact_lo = 0;
  int exact_hi = -1;
  std::map<int, std::size_t> homology;  ///< nonzero dims inside the exact range
  /// What is known outside the exact range: Exact means zero there,
  /// Periodic means it repeats (see homology_dim), UpToBound means unknown.
  Certificate certificate;
  /// For Periodic: H_n = H_{n+p} for n ≤ anchor - p (Hom) or H_n = H_{n-p} for n ≥ anchor + p (Tensor).
  int anchor = 0;

  /// Homology dimension in any degree, or nullopt when undetermined.
  std::optional<std::size_t> homology_dim(int n) const;
  /// sup / inf of homology; nullopt when the homology vanishes (±∞) and
  /// throws WindowExceeded when the certificate does not determine them.
  std::optional<int> sup() const;
  std::optional<int> inf() const;
  /// The module-level complex in degrees [lo, hi] (entries are sums of copies of Y's entries).
  Complex module_complex(int lo, int hi) const;
};

/// RHom(X, Y). Homology is certified at least down to `need_down_to` when given.
DerivedComplex rhom(const Complex& x, const Complex& y, const DerivedOptions& opts = {},
                    std::optional<int> need_down_to = std::nullopt);
/// X ⊗^L Y. Homology is certified at least up to `need_up_to` when given.
DerivedComplex dtensor(const Complex& x, const Complex& y, const DerivedOptions& opts = {},
                       std::optional<int> need_up_to = std::nullopt);

/// Memoized minimal resolution of k, extended on demand; safe to call concurrently.
std::shared_ptr<const Resolution> residue_resolution(const Algebra::Ptr& a, int upto, const DerivedOptions& opts = {});

/// A window of integers m -> value with a certificate for the rest.
struct NumberSequence {
  int first = 0;
  std::vector<std::size_t> values;
  Certificate certificate;

  int last() const { return first + static_cast<int>(values.size()) - 1; }
  std::optional<std::size_t> at(int m) const;
};

/// True when the module is injective: Ext^1(k, M) = 0.
bool is_injective_module(const FgModule& m, const DerivedOptions& opts = {});
/// True when M is free (equivalently flat or projective over a local ring).
bool is_free_module(const FgModule& m);

int depth(const Complex& x, const DerivedOptions& opts = {});
int kdim(const Complex& x);
/// μ^m for m in [lo, hi]; throws WindowExceeded when some value is undetermined.
NumberSequence bass_numbers(const Complex& x, int lo, int hi, const DerivedOptions& opts = {});
/// β_m for m in [lo, hi]; throws WindowExceeded when some value is undetermined.
NumberSequence betti_numbers(const Complex& x, int lo, int hi, const DerivedOptions& opts = {});
/// The largest determined prefix starting at the first possibly nonzero index.
NumberSequence bass_window(const Complex& x, const DerivedOptions& opts = {});
NumberSequence betti_window(const Complex& x, const DerivedOptions& opts = {});
std::size_t type_of(const Complex& x, const DerivedOptions& opts = {});
bool is_cohen_macaulay(const Complex& x, const DerivedOptions& opts = {});

struct DerivedInvariants {
  int inf = 0;
  int sup = 0;
  int amp = 0;
  int depth = 0;
  int kdim = 0;
  std::size_t type = 0;
  NumberSequence bass;
  NumberSequence betti;
  bool cm = false;
};

DerivedInvariants invariants(const Complex& x, const DerivedOptions& opts = {});

}  // namespace dcx
