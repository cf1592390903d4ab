#pragma once

// Minimal free resolutions of modules and bounded complexes.
//
// A resolution F -> X is built upward from the lowest entry of X by killing
// cycles of the mapping cone: in degree i the new generators cover
//   Z_i = {(f, x) in F_{i-1} (+) X_i : ∂f = 0, φ(f) = ∂x}
// modulo boundaries of X and m Z_i, and each generator e gets ∂e = f, φ(e) = x.
// Above the top entry of X the Z_i are ordinary syzygy modules.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dcx/certificate.hpp"
#include "dcx/cplx.hpp"

namespace dcx {

inline constexpr std::size_t kDefaultRankBudget = 4096;

struct ResolveOptions {
  /// Degrees resolved above the top entry of the target; negative selects 2·dim R + 4.
  int window = -1;
  /// Bound on the total free rank.
  std::size_t rank_budget = kDefaultRankBudget;
  /// Bound on the k-dimension of a single free module; keeps dense matrices tractable.
  std::size_t degree_dim_budget = 2048;
  /// Look for a syzygy recurrence.
  bool detect_periodicity = true;
  /// Syzygies larger than this are not compared for periodicity.
  std::size_t periodicity_dim_limit = 64;
  std::uint64_t seed = 0xDC0DE;

  int effective_window(const Algebra& a) const { return window >= 0 ? window : 2 * static_cast<int>(a.dim()) + 4; }
};

/// Degreewise free complex with differentials given by ring matrices.
struct FreeComplex {
  Algebra::Ptr algebra;
  int lo = 0;
  std::vector<std::size_t> ranks;      ///< ranks[t] = rank F_{lo+t}
  std::vector<RingMatrix> diffs;       ///< diffs[t]: F_{lo+t} -> F_{lo+t-1}; diffs[0] is empty

  int hi() const { return lo + static_cast<int>(ranks.size()) - 1; }
  std::size_t rank(int deg) const;
  /// ranks(deg-1) x ranks(deg) ring matrix; zero matrix outside the range.
  RingMatrix diff(int deg) const;
  /// k-matrix of the differential in degree deg.
  Mat kdiff(int deg) const;
  /// The module-level complex (free modules with regular actions).
  Complex to_complex() const;
};

struct PeriodicityCert {
  int start = 0;
  int period = 1;
  Mat witness;  ///< isomorphism Ω_start -> Ω_{start+period}
};

struct Resolution {
  Complex target;
  FreeComplex free;
  /// φ_i as a k-matrix X_i x (dim R · rank F_i).
  std::map<int, Mat> augmentation;
  bool minimal = true;
  /// The resolution stopped because F became zero: it is complete.
  bool complete = false;
  bool budget_exceeded = false;
  /// Betti numbers are exact for degrees in [free.lo, top]. Beyond top they
  /// are known only through `periodicity` or `complete`.
  int top = 0;
  std::optional<PeriodicityCert> periodicity;

  /// Ranks in degrees free.lo .. top.
  std::vector<std::size_t> betti() const;
  /// Rank in any degree, using the certificate past `top`; nullopt when unknown.
  std::optional<std::size_t> betti_at(int deg) const;
  Certificate certificate() const;
  /// The augmentation as a chain map of module complexes (degrees ≤ top).
  ChainMap augmentation_map() const;
  /// Syzygy module Z_i (i > top entry of the target), as a submodule of F_{i-1};
  /// for a module concentrated in degree s, Z_s is the module itself.
  std::optional<FgModule> syzygy(int i) const;

  /// Bases of Z_i in F_{i-1} (+) X_i, kept while small enough to compare.
  std::map<int, Mat> cycles;
};

Resolution minimal_free_resolution(const FgModule& m, int depth_n, const ResolveOptions& opts = {});
Resolution resolve_complex(const Complex& x, const ResolveOptions& opts = {});
/// Continues a resolution up to degree `upto` (within budgets).
void extend_resolution(Resolution& res, int upto, const ResolveOptions& opts = {});
std::optional<PeriodicityCert> detect_periodicity(const Resolution& res, const ResolveOptions& opts = {});

}  // namespace dcx
