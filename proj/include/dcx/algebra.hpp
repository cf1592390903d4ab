#pragma once

// Finite-dimensional commutative local algebras over an exact field.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dcx/exact.hpp"

namespace dcx {

class FgModule;

/// Maximal ideal data of an Artinian local algebra. All subspaces are given
/// as column bases in algebra coordinates.
struct LocalData {
  Mat m_basis;          ///< basis of m (dim R - 1 columns)
  Mat m_generators;     ///< basis of a complement of m^2 in m; minimal ideal generators
  Mat socle_basis;      ///< soc(R) = (0 :_R m)
  Mat residue_map;      ///< 1 x dim row: the quotient map R -> R/m = k
  int nilpotency_index = 1;  ///< least N with m^N = 0

  std::size_t embedding_dimension() const { return m_generators.cols(); }
};

/// A named ring element used when parsing polynomial strings.
struct NamedElement {
  std::string name;
  Mat coords;
};

/// Structure constants c[i][j][t]: e_i * e_j = sum_t c[i][j][t] e_t.
using StructureTable = std::vector<std::vector<std::vector<Scalar>>>;

class Algebra {
 public:
  using Ptr = std::shared_ptr<const Algebra>;

  /// Validates commutativity, associativity, the unit and the Artinian local
  /// condition. Throws NotCommutative / NotAssociative / NotLocal /
  /// NotArtinianLocal with the offending basis elements named.
  static Ptr from_structure(const Field& field, std::vector<std::string> labels, const StructureTable& table,
                            const Mat& unit, std::vector<NamedElement> generators = {});

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Mat& unit() const noexcept { return unit_; }
  const LocalData& local() const noexcept { return local_; }
  const std::vector<NamedElement>& generators() const noexcept { return generators_; }

  /// Multiplication by basis element e_i, as a dim x dim matrix.
  const Mat& mult(std::size_t i) const { return mult_[i]; }
  /// Multiplication by an arbitrary element (a column of coordinates).
  Mat mult_by(const Mat& element) const;
  Mat product(const Mat& a, const Mat& b) const { return mult_by(a) * b; }
  Mat basis_vector(std::size_t i) const;
  Scalar structure_constant(std::size_t i, std::size_t j, std::size_t t) const { return mult_[i].at(t, j); }
  /// An element is a unit iff its multiplication map is invertible.
  bool is_unit(const Mat& element) const;
  bool in_maximal_ideal(const Mat& element) const;

  StructureTable table() const;
  /// Identical structure constants, labels and field.
  bool same_structure(const Algebra& other) const;

 private:
  Algebra() : field_(Field::rational()) {}
  void compute_local_data();

  Field field_;
  std::vector<std::string> labels_;
  std::vector<Mat> mult_;
  Mat unit_;
  std::vector<NamedElement> generators_;
  LocalData local_;
};

/// Exponent vector of a monomial in the quotient's variables.
using Monomial = std::vector<int>;

/// k[vars]/(relations) for monomial relations; basis of standard monomials in
/// degree-lexicographic order. Throws NotArtinian when a variable has no pure
/// power among the relations.
Algebra::Ptr algebra_from_monomial_quotient(const Field& field, const std::vector<std::string>& vars,
                                            const std::vector<Monomial>& relations);
/// Same, with relations written as "x^2", "x*y".
Algebra::Ptr algebra_from_monomial_quotient(const Field& field, const std::vector<std::string>& vars,
                                            const std::vector<std::string>& relations);

/// A (x) B with basis (a_i (x) b_j) in row-major order.
Algebra::Ptr tensor_algebras(const Algebra::Ptr& a, const Algebra::Ptr& b);

/// A |x M: the algebra on A (+) M with M squaring to zero.
Algebra::Ptr trivial_extension(const Algebra::Ptr& a, const FgModule& m);

/// Local data recomputed from scratch (same as Algebra::local()).
LocalData local_data(const Algebra& a);

/// Parses a polynomial string ("2*x^2 - x*y + 1") over the algebra's named
/// generators. Throws ParseError on unknown symbols.
Mat parse_element(const Algebra& a, std::string_view text);

/// True when phi (dim B x dim A) is a unital algebra isomorphism A -> B.
bool is_algebra_isomorphism(const Algebra& a, const Algebra& b, const Mat& phi);

}  // namespace dcx
