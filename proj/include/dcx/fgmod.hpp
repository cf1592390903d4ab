#pragma once

// Finitely generated modules over an Artinian local algebra, stored as
// finite-dimensional representations: a k-basis plus one action matrix per
// algebra basis element.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dcx/algebra.hpp"

namespace dcx {

class FgModule {
 public:
  FgModule() = default;
  /// `actions[i]` is the action of algebra basis element e_i. With
  /// `validate`, checks the unit and the module axiom against the structure
  /// constants and throws InvalidModule with a witness pair on failure.
  FgModule(Algebra::Ptr algebra, std::vector<Mat> actions, bool validate = true);

  static FgModule zero(Algebra::Ptr algebra);

  const Algebra::Ptr& algebra() const { return data_->algebra; }
  const Field& field() const { return data_->algebra->field(); }
  std::size_t dim() const { return data_->dim; }
  bool is_zero() const { return data_->dim == 0; }
  const Mat& action(std::size_t i) const { return data_->actions[i]; }
  const std::vector<Mat>& actions() const { return data_->actions; }
  /// Actions of the minimal generators of m, in the order of LocalData::m_generators.
  const std::vector<Mat>& generator_actions() const { return data_->gen_actions; }
  /// Action of an arbitrary ring element.
  Mat action_of(const Mat& element) const;

 private:
  struct Data {
    Algebra::Ptr algebra;
    std::size_t dim = 0;
    std::vector<Mat> actions;
    std::vector<Mat> gen_actions;
  };
  std::shared_ptr<const Data> data_;
};

bool same_algebra(const FgModule& a, const FgModule& b);
/// Throws AlgebraMismatch unless both modules live over the same algebra object.
void require_same_algebra(const FgModule& a, const FgModule& b, const char* where);

struct ModuleHom {
  FgModule source;
  FgModule target;
  Mat matrix;  ///< target.dim x source.dim
};

/// True when `matrix` intertwines the actions.
bool is_module_hom(const FgModule& source, const FgModule& target, const Mat& matrix);

/// Matrix of ring elements; entry (i, j) is a coordinate column.
struct RingMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Mat> entries;  ///< row-major

  static RingMatrix zero(const Algebra& a, std::size_t rows, std::size_t cols);
  const Mat& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  Mat& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  /// k-matrix of A^cols -> A^rows; free basis ordered (generator, algebra basis).
  Mat to_kmatrix(const Algebra& a) const;
  /// k-matrix of N^cols -> N^rows acting through N's module structure.
  Mat act_on(const FgModule& n) const;
  bool all_in_maximal_ideal(const Algebra& a) const;
};

FgModule module_free(const Algebra::Ptr& a, std::size_t rank);
/// coker(A^cols -> A^rows).
FgModule module_from_presentation(const Algebra::Ptr& a, const RingMatrix& presentation);
FgModule residue_field(const Algebra::Ptr& a);
/// Hom_k(M, k) with the transposed action.
FgModule k_dual(const FgModule& m);
FgModule direct_sum(const std::vector<FgModule>& parts);
FgModule repeat(const FgModule& m, std::size_t copies);
/// Module over tensor_algebras(A, B) built from an A-module and a B-module.
FgModule external_tensor(const Algebra::Ptr& ab, const FgModule& m, const FgModule& n);

/// A subquotient K / I of a module, with a lift of its basis into the ambient space.
struct Subquotient {
  FgModule module;
  Mat lift;            ///< ambient.dim x module.dim representatives
  std::size_t sub_dim = 0;  ///< dim I
  Coordinates coords;  ///< over [basis(I) | lift]

  /// Coordinates in `module` of ambient vectors lying in K.
  Mat project(const Mat& vectors) const;
};

/// K / I for A-stable subspaces I <= K of M (column bases). Stability is trusted.
Subquotient subquotient(const FgModule& m, const Mat& k, const Mat& i);
Subquotient submodule(const FgModule& m, const Mat& k);
Subquotient quotient(const FgModule& m, const Mat& i);

/// mM as a column basis.
Mat radical_subspace(const FgModule& m);
/// (0 :_M m) as a column basis.
Mat socle_subspace(const FgModule& m);

struct HomModule {
  FgModule module;
  Mat basis;  ///< columns are column-major vec(f), f: target.dim x source.dim
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;

  /// The k-linear map represented by basis column j (or a combination).
  Mat unvec(const Mat& coordinates) const;
};

HomModule hom_module(const FgModule& m, const FgModule& n);
FgModule tensor_modules(const FgModule& m, const FgModule& n);
/// M ⊗_R N as a quotient of M ⊗_k N (Kronecker ordering), keeping the projection.
Subquotient tensor_subquotient(const FgModule& m, const FgModule& n);

struct ModuleInvariants {
  std::size_t length = 0;
  std::size_t min_gens = 0;
  std::size_t socle_dim = 0;
  std::size_t annihilator_dim = 0;
};

ModuleInvariants module_invariants(const FgModule& m);

struct IsoResult {
  enum class Answer { Yes, No, Unknown };
  Answer answer = Answer::Unknown;
  std::optional<Mat> witness;  ///< invertible module map M -> N when Yes
  std::string reason;          ///< distinguishing invariant when No

  bool yes() const { return answer == Answer::Yes; }
  bool no() const { return answer == Answer::No; }
};

inline constexpr std::uint64_t kDefaultSeed = 0xDC0DE;

/// Cheap invariants first, then a search of Hom(M, N) for an invertible
/// element: basis elements, seeded random combinations, and exhaustive
/// enumeration when the space is small enough.
IsoResult is_isomorphic(const FgModule& m, const FgModule& n, std::uint64_t seed = kDefaultSeed);

}  // namespace dcx
