#pragma once

// The built-in rings: pt, d2, d3, d4, ci2, fat, fat3, prod, triv.

#include <string>
#include <vector>

#include "dcx/fgmod.hpp"

namespace dcx {

inline const Field& default_field() {
  static const Field f = Field::prime(101);
  return f;
}

const std::vector<std::string>& corpus_names();
/// Throws ValidationError for unknown names.
Algebra::Ptr corpus_ring(const std::string& name, const Field& field = default_field());

/// Hom_k(R, k), the canonical module of an Artinian local ring.
FgModule canonical_module(const Algebra::Ptr& a);

}  // namespace dcx
