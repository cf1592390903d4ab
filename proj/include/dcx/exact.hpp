#pragma once

// Exact scalars and dense matrices over F_p or Q.
//
// Matrices keep one of two storages depending on the field: machine integers
// reduced mod p, or GMP rationals. Hot loops (products, row reduction) are
// written once per storage; everything above this layer is field-agnostic.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dcx/errors.hpp"

namespace dcx {

class Field {
 public:
  enum class Kind { Prime, Rational };

  static Field prime(std::int64_t p);
  static Field rational() { return Field(Kind::Rational, 0); }

  Kind kind() const noexcept { return kind_; }
  bool is_prime() const noexcept { return kind_ == Kind::Prime; }
  std::int64_t characteristic() const noexcept { return p_; }
  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }
  friend bool operator!=(const Field& a, const Field& b) noexcept { return !(a == b); }

 private:
  Field(Kind kind, std::int64_t p) : kind_(kind), p_(p) {}
  Kind kind_;
  std::int64_t p_;
};

/// A single field element; carries its field so arithmetic is self-checking.
class Scalar {
 public:
  Scalar() : field_(Field::prime(2)) {}
  Scalar(const Field& f, long long value);
  static Scalar rational(const Field& f, const mpq_class& q);

  const Field& field() const noexcept { return field_; }
  bool is_zero() const;
  bool is_one() const;
  std::int64_t residue() const noexcept { return v_; }
  const mpq_class& value_q() const noexcept { return q_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  Field field_;
  std::int64_t v_ = 0;
  mpq_class q_;
};

class Mat {
 public:
  Mat() : field_(Field::prime(2)) {}
  Mat(const Field& f, std::size_t rows, std::size_t cols);

  static Mat zero(const Field& f, std::size_t rows, std::size_t cols) { return Mat(f, rows, cols); }
  static Mat identity(const Field& f, std::size_t n);
  /// Column vector from integer entries (reduced into the field).
  static Mat column(const Field& f, const std::vector<long long>& entries);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Scalar at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& s);
  void set_int(std::size_t i, std::size_t j, long long v);
  bool is_zero_at(std::size_t i, std::size_t j) const;
  bool is_zero() const;

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(const Scalar& s) const;
  /// this += s * o
  void axpy(const Scalar& s, const Mat& o);
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);
  /// this[r0.., c0..] += s * b
  void add_block(std::size_t r0, std::size_t c0, const Mat& b, const Scalar& s);
  Mat col(std::size_t j) const { return block(0, j, rows_, 1); }
  Mat select_cols(const std::vector<std::size_t>& idx) const;
  Mat select_rows(const std::vector<std::size_t>& idx) const;

  static Mat hstack(const Mat& a, const Mat& b);
  static Mat vstack(const Mat& a, const Mat& b);
  static Mat kron(const Mat& a, const Mat& b);
  /// Block diagonal with `copies` copies of `a`.
  static Mat repeat_diag(const Mat& a, std::size_t copies);

  std::string to_string() const;

  // Storage access for the linear-algebra kernels.
  std::vector<std::int64_t>& fp_data() { return fp_; }
  const std::vector<std::int64_t>& fp_data() const { return fp_; }
  std::vector<mpq_class>& q_data() { return q_; }
  const std::vector<mpq_class>& q_data() const { return q_; }

 private:
  void check_same(const Mat& o, const char* what) const;

  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> fp_;
  std::vector<mpq_class> q_;
};

struct Rref {
  Mat reduced;
  std::vector<std::size_t> pivots;
};

Rref rref(const Mat& a);
std::size_t rank(const Mat& a);
/// Columns form a basis of {x : A x = 0}.
Mat kernel_basis(const Mat& a);
/// Some x with A x = b, or nothing when inconsistent. b may have several columns.
std::optional<Mat> solve(const Mat& a, const Mat& b);
std::optional<Mat> inverse(const Mat& a);
/// Linearly independent subset of the columns of `a` spanning its column space.
Mat image_basis(const Mat& a);
/// Standard basis vectors completing the column space of `sub` to k^n.
Mat complement_basis(const Mat& sub, std::size_t n);
/// Columns of `span` completing the column space of `sub` inside that of `span`.
/// `sub` must lie in the column space of `span`.
Mat relative_complement(const Mat& sub, const Mat& span);

/// Coordinates with respect to a fixed basis (full column rank).
class Coordinates {
 public:
  Coordinates() = default;
  explicit Coordinates(const Mat& basis);

  std::size_t size() const noexcept { return left_inverse_.rows(); }
  const Mat& basis() const noexcept { return basis_; }
  /// Coordinates of vectors assumed to lie in the span; no membership check.
  Mat of(const Mat& vectors) const { return left_inverse_ * vectors; }
  bool contains(const Mat& vectors) const;

 private:
  Mat basis_;
  Mat left_inverse_;
};

}  // namespace dcx
