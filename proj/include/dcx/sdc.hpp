#pragma once

// Semidualizing and dualizing complexes, G_C-dimension, C-grade and the
// Auslander class, decided inside certified windows.
//
// False answers always come with an Exact witness: a degree where a map fails
// to be an isomorphism, or a nonzero homology class that no member of the
// class can have. True answers carry the weakest certificate they used.

#include <optional>
#include <string>

#include "dcx/derived.hpp"

namespace dcx {

struct SdcVerdict {
  enum class Claim { Semidualizing, Dualizing, AuslanderClass };
  Claim claim = Claim::Semidualizing;
  Tri holds = Tri::Unknown;
  Certificate certificate;
  std::string witness;
};

std::string_view to_string(SdcVerdict::Claim c);

struct GcDimResult {
  enum class Value { Finite, Infinite, Unknown };
  Value value = Value::Unknown;
  int g = 0;  ///< meaningful when Finite
  Certificate certificate;
  std::string witness;
  /// When Finite: a bounded complex quasi-isomorphic to RHom(X, C) on the verified window.
  std::optional<Complex> dagger;

  bool finite() const { return value == Value::Finite; }
  std::string to_string() const;
};

/// The homothety R -> RHom(C, C) is a quasi-isomorphism.
SdcVerdict is_semidualizing(const Complex& c, const DerivedOptions& opts = {});
/// amp C = 0 and the homology module is free of rank one.
bool is_shift_of_ring(const Complex& c);
/// amp C = 0 and the homology module is isomorphic to Hom_k(R, k).
SdcVerdict is_dualizing_direct(const Complex& c);

/// G_C-dim X = inf C - inf RHom(X, C) when the biduality map is a
/// quasi-isomorphism and RHom(X, C) is bounded. Throws NotSemidualizing when C
/// is certified not semidualizing.
GcDimResult gc_dimension(const Complex& c, const Complex& x, const DerivedOptions& opts = {});
/// -sup RHom(X, C).
int grade_c(const Complex& c, const Complex& x, const DerivedOptions& opts = {});
/// X -> RHom(C, C ⊗^L X) is a quasi-isomorphism and C ⊗^L X is bounded.
SdcVerdict auslander_membership(const Complex& c, const Complex& x, const DerivedOptions& opts = {});

}  // namespace dcx
