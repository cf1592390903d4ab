#include "dcx/exact.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace dcx {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::NotCommutative: return "NotCommutative";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NotLocal: return "NotLocal";
    case ErrorKind::NotArtinianLocal: return "NotArtinianLocal";
    case ErrorKind::NotArtinian: return "NotArtinian";
    case ErrorKind::InvalidModule: return "InvalidModule";
    case ErrorKind::InvalidComplex: return "InvalidComplex";
    case ErrorKind::ZeroComplex: return "ZeroComplex";
    case ErrorKind::NotSemidualizing: return "NotSemidualizing";
    case ErrorKind::NotModule: return "NotModule";
    case ErrorKind::WindowExceeded: return "WindowExceeded";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = mod(a, p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw Error(ErrorKind::ValidationError, "division by zero in F_p");
  return mod(t, p);
}

bool is_prime_number(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------
// Field / Scalar

Field Field::prime(std::int64_t p) {
  if (!is_prime_number(p) || p >= (std::int64_t{1} << 31))
    throw Error(ErrorKind::ValidationError, "characteristic " + std::to_string(p) + " is not a supported prime");
  return Field(Kind::Prime, p);
}

std::string Field::name() const {
  return is_prime() ? "F_" + std::to_string(p_) : "Q";
}

Scalar::Scalar(const Field& f, long long value) : field_(f) {
  if (f.is_prime())
    v_ = mod(value, f.characteristic());
  else
    q_ = mpz_class(static_cast<long>(value));
}

Scalar Scalar::rational(const Field& f, const mpq_class& q) {
  Scalar s(f, 0);
  if (f.is_prime()) {
    mpz_class num = q.get_num() % f.characteristic();
    mpz_class den = q.get_den() % f.characteristic();
    s.v_ = mod(num.get_si(), f.characteristic());
    s.v_ = mod(s.v_ * inv_mod(den.get_si(), f.characteristic()), f.characteristic());
  } else {
    s.q_ = q;
    s.q_.canonicalize();
  }
  return s;
}

bool Scalar::is_zero() const { return field_.is_prime() ? v_ == 0 : sgn(q_) == 0; }
bool Scalar::is_one() const { return field_.is_prime() ? v_ == 1 : q_ == 1; }

Scalar Scalar::operator+(const Scalar& o) const {
  Scalar r(*this);
  if (field_.is_prime()) r.v_ = (v_ + o.v_) % field_.characteristic();
  else r.q_ = q_ + o.q_;
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  Scalar r(*this);
  if (field_.is_prime()) r.v_ = mod(v_ - o.v_, field_.characteristic());
  else r.q_ = q_ - o.q_;
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  Scalar r(*this);
  if (field_.is_prime()) r.v_ = (v_ * o.v_) % field_.characteristic();
  else r.q_ = q_ * o.q_;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::ValidationError, "inverse of zero");
  Scalar r(*this);
  if (field_.is_prime()) r.v_ = inv_mod(v_, field_.characteristic());
  else r.q_ = 1 / q_;
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }
Scalar Scalar::operator-() const { return Scalar(field_, 0) - *this; }

bool Scalar::operator==(const Scalar& o) const {
  return field_.is_prime() ? v_ == o.v_ : q_ == o.q_;
}

std::string Scalar::to_string() const {
  return field_.is_prime() ? std::to_string(v_) : q_.get_str();
}

// ---------------------------------------------------------------------------
// Mat basics

Mat::Mat(const Field& f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols) {
  if (f.is_prime()) fp_.assign(rows * cols, 0);
  else q_.assign(rows * cols, mpq_class(0));
}

Mat Mat::identity(const Field& f, std::size_t n) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set_int(i, i, 1);
  return m;
}

Mat Mat::column(const Field& f, const std::vector<long long>& entries) {
  Mat m(f, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m.set_int(i, 0, entries[i]);
  return m;
}

Scalar Mat::at(std::size_t i, std::size_t j) const {
  if (field_.is_prime()) return Scalar(field_, fp_[i * cols_ + j]);
  return Scalar::rational(field_, q_[i * cols_ + j]);
}

void Mat::set(std::size_t i, std::size_t j, const Scalar& s) {
  if (field_.is_prime()) fp_[i * cols_ + j] = s.residue();
  else q_[i * cols_ + j] = s.value_q();
}

void Mat::set_int(std::size_t i, std::size_t j, long long v) {
  if (field_.is_prime()) fp_[i * cols_ + j] = mod(v, field_.characteristic());
  else q_[i * cols_ + j] = mpz_class(static_cast<long>(v));
}

bool Mat::is_zero_at(std::size_t i, std::size_t j) const {
  return field_.is_prime() ? fp_[i * cols_ + j] == 0 : sgn(q_[i * cols_ + j]) == 0;
}

bool Mat::is_zero() const {
  if (field_.is_prime()) return std::all_of(fp_.begin(), fp_.end(), [](std::int64_t v) { return v == 0; });
  return std::all_of(q_.begin(), q_.end(), [](const mpq_class& v) { return sgn(v) == 0; });
}

void Mat::check_same(const Mat& o, const char* what) const {
  if (field_ != o.field_) throw Error(ErrorKind::FieldMismatch, what);
}

Mat Mat::operator*(const Mat& o) const {
  check_same(o, "matrix product");
  if (cols_ != o.rows_)
    throw Error(ErrorKind::DimensionMismatch, "product of " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                                  " by " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  Mat r(field_, rows_, o.cols_);
  if (field_.is_prime()) {
    const std::int64_t p = field_.characteristic();
    // With p < 2^16 each product is below 2^32, so a row of up to 2^31 terms
    // accumulates without overflow; larger p reduces every step.
    const bool small = p < (1 << 16);
    std::vector<std::uint64_t> acc(o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < cols_; ++k) {
        const std::uint64_t a = static_cast<std::uint64_t>(fp_[i * cols_ + k]);
        if (a == 0) continue;
        const std::int64_t* brow = &o.fp_[k * o.cols_];
        if (small) {
          for (std::size_t j = 0; j < o.cols_; ++j) acc[j] += a * static_cast<std::uint64_t>(brow[j]);
        } else {
          for (std::size_t j = 0; j < o.cols_; ++j)
            acc[j] = (acc[j] + a * static_cast<std::uint64_t>(brow[j])) % static_cast<std::uint64_t>(p);
        }
      }
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.fp_[i * o.cols_ + j] = static_cast<std::int64_t>(acc[j] % static_cast<std::uint64_t>(p));
    }
  } else {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const mpq_class& a = q_[i * cols_ + k];
        if (sgn(a) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r.q_[i * o.cols_ + j] += a * o.q_[k * o.cols_ + j];
      }
  }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  Mat r(*this);
  r.axpy(Scalar(field_, 1), o);
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  Mat r(*this);
  r.axpy(Scalar(field_, -1), o);
  return r;
}

Mat Mat::scaled(const Scalar& s) const {
  Mat r(field_, rows_, cols_);
  r.axpy(s, *this);
  return r;
}

void Mat::axpy(const Scalar& s, const Mat& o) {
  check_same(o, "axpy");
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "axpy shape");
  if (s.is_zero()) return;
  if (field_.is_prime()) {
    const std::int64_t p = field_.characteristic(), c = s.residue();
    for (std::size_t i = 0; i < fp_.size(); ++i)
      if (o.fp_[i] != 0) fp_[i] = (fp_[i] + c * o.fp_[i]) % p;
  } else {
    for (std::size_t i = 0; i < q_.size(); ++i)
      if (sgn(o.q_[i]) != 0) q_[i] += s.value_q() * o.q_[i];
  }
}

bool Mat::operator==(const Mat& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && fp_ == o.fp_ && q_ == o.q_;
}

Mat Mat::transpose() const {
  Mat r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (field_.is_prime()) r.fp_[j * rows_ + i] = fp_[i * cols_ + j];
      else r.q_[j * rows_ + i] = q_[i * cols_ + j];
    }
  return r;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorKind::DimensionMismatch, "block out of range");
  Mat r(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      if (field_.is_prime()) r.fp_[i * nc + j] = fp_[(r0 + i) * cols_ + c0 + j];
      else r.q_[i * nc + j] = q_[(r0 + i) * cols_ + c0 + j];
    }
  return r;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  check_same(b, "set_block");
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error(ErrorKind::DimensionMismatch, "set_block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) {
      if (field_.is_prime()) fp_[(r0 + i) * cols_ + c0 + j] = b.fp_[i * b.cols_ + j];
      else q_[(r0 + i) * cols_ + c0 + j] = b.q_[i * b.cols_ + j];
    }
}

void Mat::add_block(std::size_t r0, std::size_t c0, const Mat& b, const Scalar& s) {
  check_same(b, "add_block");
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error(ErrorKind::DimensionMismatch, "add_block out of range");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) {
      if (field_.is_prime()) {
        const std::int64_t v = b.fp_[i * b.cols_ + j];
        if (v == 0) continue;
        std::int64_t& t = fp_[(r0 + i) * cols_ + c0 + j];
        t = (t + s.residue() * v) % field_.characteristic();
      } else {
        q_[(r0 + i) * cols_ + c0 + j] += s.value_q() * b.q_[i * b.cols_ + j];
      }
    }
}

Mat Mat::select_cols(const std::vector<std::size_t>& idx) const {
  Mat r(field_, rows_, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) r.set_block(0, j, col(idx[j]));
  return r;
}

Mat Mat::select_rows(const std::vector<std::size_t>& idx) const {
  Mat r(field_, idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) r.set_block(i, 0, block(idx[i], 0, 1, cols_));
  return r;
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
  a.check_same(b, "hstack");
  if (a.rows_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "hstack rows");
  Mat r(a.field_, a.rows_, a.cols_ + b.cols_);
  r.set_block(0, 0, a);
  r.set_block(0, a.cols_, b);
  return r;
}

Mat Mat::vstack(const Mat& a, const Mat& b) {
  a.check_same(b, "vstack");
  if (a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "vstack cols");
  Mat r(a.field_, a.rows_ + b.rows_, a.cols_);
  r.set_block(0, 0, a);
  r.set_block(a.rows_, 0, b);
  return r;
}

Mat Mat::kron(const Mat& a, const Mat& b) {
  a.check_same(b, "kron");
  Mat r(a.field_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (!a.is_zero_at(i, j)) r.add_block(i * b.rows_, j * b.cols_, b, a.at(i, j));
  return r;
}

Mat Mat::repeat_diag(const Mat& a, std::size_t copies) {
  Mat r(a.field_, a.rows_ * copies, a.cols_ * copies);
  for (std::size_t c = 0; c < copies; ++c) r.set_block(c * a.rows_, c * a.cols_, a);
  return r;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).to_string();
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Row reduction

namespace {

// Reduced row-echelon form in place. Elimination only touches the nonzero
// columns of the pivot row, which keeps sparse differentials cheap.
void rref_fp(std::vector<std::int64_t>& a, std::size_t rows, std::size_t cols, std::int64_t p,
             std::vector<std::size_t>& pivots) {
  std::size_t r = 0;
  std::vector<std::size_t> nz;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (a[i * cols + c] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((piv + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(r * cols));
    std::int64_t* prow = &a[r * cols];
    const std::int64_t inv = inv_mod(prow[c], p);
    nz.clear();
    for (std::size_t j = c; j < cols; ++j)
      if (prow[j] != 0) {
        prow[j] = (prow[j] * inv) % p;
        nz.push_back(j);
      }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      std::int64_t* row = &a[i * cols];
      const std::int64_t f = row[c];
      if (f == 0) continue;
      const std::int64_t nf = p - f;
      for (std::size_t j : nz) row[j] = (row[j] + nf * prow[j]) % p;
    }
    pivots.push_back(c);
    ++r;
  }
}

void rref_q(std::vector<mpq_class>& a, std::size_t rows, std::size_t cols, std::vector<std::size_t>& pivots) {
  std::size_t r = 0;
  std::vector<std::size_t> nz;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (sgn(a[i * cols + c]) != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[r * cols + j]);
    const mpq_class inv = 1 / a[r * cols + c];
    nz.clear();
    for (std::size_t j = c; j < cols; ++j)
      if (sgn(a[r * cols + j]) != 0) {
        a[r * cols + j] *= inv;
        nz.push_back(j);
      }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const mpq_class f = a[i * cols + c];
      if (sgn(f) == 0) continue;
      for (std::size_t j : nz) a[i * cols + j] -= f * a[r * cols + j];
    }
    pivots.push_back(c);
    ++r;
  }
}

}  // namespace

Rref rref(const Mat& a) {
  Rref out{a, {}};
  if (a.field().is_prime())
    rref_fp(out.reduced.fp_data(), a.rows(), a.cols(), a.field().characteristic(), out.pivots);
  else
    rref_q(out.reduced.q_data(), a.rows(), a.cols(), out.pivots);
  return out;
}

std::size_t rank(const Mat& a) {
  // Reducing the shorter side is cheaper.
  if (a.rows() > a.cols()) return rref(a.transpose()).pivots.size();
  return rref(a).pivots.size();
}

Mat kernel_basis(const Mat& a) {
  const Rref r = rref(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : r.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat k(a.field(), n, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    k.set_int(free_cols[f], f, 1);
    for (std::size_t pi = 0; pi < r.pivots.size(); ++pi)
      if (!r.reduced.is_zero_at(pi, free_cols[f])) k.set(r.pivots[pi], f, -r.reduced.at(pi, free_cols[f]));
  }
  return k;
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows())
    throw Error(ErrorKind::DimensionMismatch, "solve: A has " + std::to_string(a.rows()) + " rows, b has " +
                                                  std::to_string(b.rows()));
  const Rref r = rref(Mat::hstack(a, b));
  for (std::size_t c : r.pivots)
    if (c >= a.cols()) return std::nullopt;
  Mat x(a.field(), a.cols(), b.cols());
  for (std::size_t pi = 0; pi < r.pivots.size(); ++pi)
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(r.pivots[pi], j, r.reduced.at(pi, a.cols() + j));
  return x;
}

std::optional<Mat> inverse(const Mat& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return solve(a, Mat::identity(a.field(), a.rows()));
}

Mat image_basis(const Mat& a) { return a.select_cols(rref(a).pivots); }

Mat complement_basis(const Mat& sub, std::size_t n) {
  if (sub.rows() != n) throw Error(ErrorKind::DimensionMismatch, "complement_basis");
  const Rref r = rref(Mat::hstack(sub, Mat::identity(sub.field(), n)));
  std::vector<std::size_t> picks;
  for (std::size_t c : r.pivots)
    if (c >= sub.cols()) picks.push_back(c - sub.cols());
  return Mat::identity(sub.field(), n).select_cols(picks);
}

Mat relative_complement(const Mat& sub, const Mat& span) {
  const Rref r = rref(Mat::hstack(sub, span));
  std::vector<std::size_t> picks;
  for (std::size_t c : r.pivots)
    if (c >= sub.cols()) picks.push_back(c - sub.cols());
  return span.select_cols(picks);
}

Coordinates::Coordinates(const Mat& basis) : basis_(basis) {
  // Independent rows of the basis give an invertible square block.
  const Rref r = rref(basis.transpose());
  if (r.pivots.size() != basis.cols()) throw Error(ErrorKind::ValidationError, "Coordinates: basis is not independent");
  const Mat square = basis.select_rows(r.pivots);
  const Mat inv = *inverse(square);
  left_inverse_ = Mat(basis.field(), basis.cols(), basis.rows());
  for (std::size_t k = 0; k < r.pivots.size(); ++k) left_inverse_.set_block(0, r.pivots[k], inv.col(k));
}

bool Coordinates::contains(const Mat& vectors) const { return basis_ * of(vectors) == vectors; }

}  // namespace dcx
