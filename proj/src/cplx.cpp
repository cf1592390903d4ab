#include "dcx/cplx.hpp"

#include <algorithm>

namespace dcx {

namespace {

Scalar sign(const Field& f, int n) { return Scalar(f, (n % 2 == 0) ? 1 : -1); }

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidComplex, msg); }

}  // namespace

Complex::Complex(Algebra::Ptr algebra) : algebra_(std::move(algebra)), zero_(FgModule::zero(algebra_)) {}

Complex::Complex(Algebra::Ptr algebra, std::map<int, FgModule> entries, std::map<int, Mat> diffs, bool validate)
    : Complex(std::move(algebra)) {
  for (auto& [i, m] : entries) {
    if (m.is_zero()) continue;
    if (validate) require_same_algebra(zero_, m, "complex entry");
    entries_.emplace(i, std::move(m));
  }
  for (auto& [i, d] : diffs) {
    const std::size_t rows = entry(i - 1).dim(), cols = entry(i).dim();
    if (d.rows() != rows || d.cols() != cols)
      invalid("differential in degree " + std::to_string(i) + " has shape " + std::to_string(d.rows()) + "x" +
              std::to_string(d.cols()) + ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
    if (rows == 0 || cols == 0 || d.is_zero()) continue;
    diffs_.emplace(i, std::move(d));
  }
  if (!validate) return;
  for (const auto& [i, d] : diffs_) {
    if (!is_module_hom(entry(i), entry(i - 1), d))
      invalid("differential in degree " + std::to_string(i) + " is not R-linear");
    if (auto next = diffs_.find(i - 1); next != diffs_.end() && !(next->second * d).is_zero())
      invalid("composite of differentials in degrees " + std::to_string(i) + " and " + std::to_string(i - 1) +
              " is nonzero");
  }
}

const FgModule& Complex::entry(int i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? zero_ : it->second;
}

Mat Complex::diff(int i) const {
  auto it = diffs_.find(i);
  if (it != diffs_.end()) return it->second;
  return Mat(field(), entry(i - 1).dim(), entry(i).dim());
}

std::optional<int> Complex::lo() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.begin()->first;
}

std::optional<int> Complex::hi() const {
  if (entries_.empty()) return std::nullopt;
  return entries_.rbegin()->first;
}

// ---------------------------------------------------------------------------

Mat ChainMap::component(int i) const {
  auto it = components.find(i);
  if (it != components.end()) return it->second;
  return Mat(source.field(), target.entry(i).dim(), source.entry(i).dim());
}

ChainMap chain_map(Complex source, Complex target, std::map<int, Mat> components) {
  ChainMap f{std::move(source), std::move(target), {}};
  for (auto& [i, c] : components) {
    if (c.rows() != f.target.entry(i).dim() || c.cols() != f.source.entry(i).dim())
      invalid("chain map component in degree " + std::to_string(i) + " has the wrong shape");
    if (!is_module_hom(f.source.entry(i), f.target.entry(i), c))
      invalid("chain map component in degree " + std::to_string(i) + " is not R-linear");
    if (!c.empty()) f.components.emplace(i, std::move(c));
  }
  std::vector<int> degrees;
  for (const auto& [i, m] : f.source.entries()) degrees.push_back(i), degrees.push_back(i + 1);
  for (int i : degrees)
    if (f.target.diff(i) * f.component(i) != f.component(i - 1) * f.source.diff(i))
      invalid("chain map does not commute with the differentials in degree " + std::to_string(i));
  return f;
}

ChainMap identity_map(const Complex& x) {
  std::map<int, Mat> c;
  for (const auto& [i, m] : x.entries()) c.emplace(i, Mat::identity(x.field(), m.dim()));
  return ChainMap{x, x, std::move(c)};
}

ChainMap zero_map(const Complex& source, const Complex& target) { return ChainMap{source, target, {}}; }

// ---------------------------------------------------------------------------

std::size_t Homology::dim(int i) const {
  auto it = modules.find(i);
  return it == modules.end() ? 0 : it->second.module.dim();
}

std::optional<int> Homology::amp() const {
  if (!inf || !sup) return std::nullopt;
  return *sup - *inf;
}

Homology homology(const Complex& x) {
  Homology h;
  for (const auto& [i, m] : x.entries()) {
    const Mat k = kernel_basis(x.diff(i));
    const Mat b = x.diff(i + 1);
    Mat im = b.cols() ? image_basis(b) : Mat(x.field(), m.dim(), 0);
    if (k.cols() == im.cols()) continue;
    h.modules.emplace(i, subquotient(m, k, im));
  }
  if (!h.modules.empty()) {
    h.inf = h.modules.begin()->first;
    h.sup = h.modules.rbegin()->first;
  }
  return h;
}

std::map<int, std::size_t> homology_dims(const Complex& x) {
  std::map<int, std::size_t> out;
  for (const auto& [i, m] : x.entries()) {
    const std::size_t d = m.dim() - rank(x.diff(i)) - rank(x.diff(i + 1));
    if (d) out[i] = d;
  }
  return out;
}

// ---------------------------------------------------------------------------

Complex complex_of_module(const FgModule& m, int n) { return Complex(m.algebra(), {{n, m}}, {}, false); }

Complex shift(const Complex& x, int n) {
  std::map<int, FgModule> e;
  std::map<int, Mat> d;
  for (const auto& [i, m] : x.entries()) e.emplace(i + n, m);
  for (const auto& [i, m] : x.diffs()) d.emplace(i + n, m.scaled(sign(x.field(), n)));
  return Complex(x.algebra(), std::move(e), std::move(d), false);
}

ChainMap shift(const ChainMap& f, int n) {
  std::map<int, Mat> c;
  for (const auto& [i, m] : f.components) c.emplace(i + n, m);
  return ChainMap{shift(f.source, n), shift(f.target, n), std::move(c)};
}

Complex cone(const ChainMap& f) {
  const Complex& x = f.source;
  const Complex& y = f.target;
  const Field& fld = x.field();
  std::map<int, FgModule> e;
  std::vector<int> degrees;
  for (const auto& [i, m] : x.entries()) degrees.push_back(i + 1);
  for (const auto& [i, m] : y.entries()) degrees.push_back(i);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
  for (int n : degrees) e.emplace(n, direct_sum({x.entry(n - 1), y.entry(n)}));
  std::map<int, Mat> d;
  for (int n : degrees) {
    const std::size_t xs = x.entry(n - 1).dim(), ys = y.entry(n).dim();
    const std::size_t xt = x.entry(n - 2).dim(), yt = y.entry(n - 1).dim();
    Mat m(fld, xt + yt, xs + ys);
    m.add_block(0, 0, x.diff(n - 1), Scalar(fld, -1));
    m.set_block(xt, 0, f.component(n - 1));
    m.set_block(xt, xs, y.diff(n));
    d.emplace(n, std::move(m));
  }
  return Complex(x.algebra(), std::move(e), std::move(d), false);
}

Complex direct_sum(const Complex& x, const Complex& y) {
  std::map<int, FgModule> e;
  std::vector<int> degrees;
  for (const auto& [i, m] : x.entries()) degrees.push_back(i);
  for (const auto& [i, m] : y.entries()) degrees.push_back(i);
  for (int n : degrees) e.emplace(n, direct_sum({x.entry(n), y.entry(n)}));
  std::map<int, Mat> d;
  for (const auto& [n, m] : e) {
    Mat dm(x.field(), x.entry(n - 1).dim() + y.entry(n - 1).dim(), m.dim());
    dm.set_block(0, 0, x.diff(n));
    dm.set_block(x.entry(n - 1).dim(), x.entry(n).dim(), y.diff(n));
    d.emplace(n, std::move(dm));
  }
  return Complex(x.algebra(), std::move(e), std::move(d), false);
}

// ---------------------------------------------------------------------------
// Hom and tensor of module complexes. Degree-n entries are direct sums over
// the pairs (i, j) that contribute, ordered by the degree of the first factor.

namespace {

struct HomPiece {
  int i;  // source degree
  int j;  // target degree
  HomModule hom;
  Coordinates coords;
  std::size_t offset;
};

struct TensorPiece {
  int i;
  int j;
  Subquotient sq;
  std::size_t offset;
};

template <typename Piece>
const Piece* find_piece(const std::vector<Piece>& pieces, int i) {
  for (const auto& p : pieces)
    if (p.i == i) return &p;
  return nullptr;
}

}  // namespace

Complex hom_complex(const Complex& x, const Complex& y) {
  require_same_algebra(x.entry(0), y.entry(0), "hom_complex");
  if (x.has_zero_entries() || y.has_zero_entries()) return Complex(x.algebra());
  const Field& f = x.field();
  std::map<int, std::vector<HomPiece>> pieces;
  std::map<int, FgModule> e;
  for (int n = *y.lo() - *x.hi(); n <= *y.hi() - *x.lo(); ++n) {
    std::vector<FgModule> parts;
    std::size_t off = 0;
    for (const auto& [i, xi] : x.entries()) {
      const FgModule& yj = y.entry(i + n);
      if (yj.is_zero()) continue;
      HomModule h = hom_module(xi, yj);
      if (h.basis.cols() == 0) continue;
      Coordinates c(h.basis);
      parts.push_back(h.module);
      pieces[n].push_back({i, i + n, std::move(h), std::move(c), off});
      off += parts.back().dim();
    }
    if (!parts.empty()) e.emplace(n, direct_sum(parts));
  }
  std::map<int, Mat> d;
  for (const auto& [n, src] : pieces) {
    auto tgt_it = pieces.find(n - 1);
    if (tgt_it == pieces.end()) continue;
    const auto& tgt = tgt_it->second;
    Mat m(f, e.at(n - 1).dim(), e.at(n).dim());
    for (const auto& p : src) {
      const std::size_t dx = p.hom.source_dim, dy = p.hom.target_dim;
      // f -> ∂_Y f, landing in Hom(X_i, Y_{i+n-1})
      if (const HomPiece* q = find_piece(tgt, p.i)) {
        Mat v = Mat::kron(Mat::identity(f, dx), y.diff(p.j)) * p.hom.basis;
        m.set_block(q->offset, p.offset, q->coords.of(v));
      }
      // f -> -(-1)^n f ∂_X, landing in Hom(X_{i+1}, Y_{i+n})
      if (const HomPiece* q = find_piece(tgt, p.i + 1)) {
        Mat v = Mat::kron(x.diff(p.i + 1).transpose(), Mat::identity(f, dy)) * p.hom.basis;
        m.add_block(q->offset, p.offset, q->coords.of(v), -sign(f, n));
      }
    }
    d.emplace(n, std::move(m));
  }
  return Complex(x.algebra(), std::move(e), std::move(d), false);
}

Complex tensor_complex(const Complex& x, const Complex& y) {
  require_same_algebra(x.entry(0), y.entry(0), "tensor_complex");
  if (x.has_zero_entries() || y.has_zero_entries()) return Complex(x.algebra());
  const Field& f = x.field();
  std::map<int, std::vector<TensorPiece>> pieces;
  std::map<int, FgModule> e;
  for (int n = *x.lo() + *y.lo(); n <= *x.hi() + *y.hi(); ++n) {
    std::vector<FgModule> parts;
    std::size_t off = 0;
    for (const auto& [i, xi] : x.entries()) {
      const FgModule& yj = y.entry(n - i);
      if (yj.is_zero()) continue;
      Subquotient sq = tensor_subquotient(xi, yj);
      if (sq.module.is_zero()) continue;
      parts.push_back(sq.module);
      pieces[n].push_back({i, n - i, std::move(sq), off});
      off += parts.back().dim();
    }
    if (!parts.empty()) e.emplace(n, direct_sum(parts));
  }
  std::map<int, Mat> d;
  for (const auto& [n, src] : pieces) {
    auto tgt_it = pieces.find(n - 1);
    if (tgt_it == pieces.end()) continue;
    const auto& tgt = tgt_it->second;
    Mat m(f, e.at(n - 1).dim(), e.at(n).dim());
    for (const auto& p : src) {
      const std::size_t dx = x.entry(p.i).dim(), dy = y.entry(p.j).dim();
      if (const TensorPiece* q = find_piece(tgt, p.i - 1)) {
        Mat v = Mat::kron(x.diff(p.i), Mat::identity(f, dy)) * p.sq.lift;
        m.set_block(q->offset, p.offset, q->sq.project(v));
      }
      if (const TensorPiece* q = find_piece(tgt, p.i)) {
        Mat v = Mat::kron(Mat::identity(f, dx), y.diff(p.j)) * p.sq.lift;
        m.add_block(q->offset, p.offset, q->sq.project(v), sign(f, p.i));
      }
    }
    d.emplace(n, std::move(m));
  }
  return Complex(x.algebra(), std::move(e), std::move(d), false);
}

// ---------------------------------------------------------------------------

bool is_quasi_iso(const ChainMap& f) { return homology(cone(f)).is_exact(); }

std::map<int, Mat> induced_on_homology(const ChainMap& f, const Homology& hs, const Homology& ht) {
  std::map<int, Mat> out;
  for (const auto& [i, s] : hs.modules) {
    auto t = ht.modules.find(i);
    if (t == ht.modules.end()) {
      out.emplace(i, Mat(f.source.field(), 0, s.module.dim()));
      continue;
    }
    out.emplace(i, t->second.project(f.component(i) * s.lift));
  }
  for (const auto& [i, t] : ht.modules)
    if (!out.count(i)) out.emplace(i, Mat(f.source.field(), t.module.dim(), 0));
  return out;
}

ChainMap truncate_below(const Complex& x, int e) {
  std::map<int, FgModule> entries;
  std::map<int, Mat> diffs, incl;
  const Subquotient z = submodule(x.entry(e), kernel_basis(x.diff(e)));
  entries.emplace(e, z.module);
  incl.emplace(e, z.lift);
  for (const auto& [i, m] : x.entries()) {
    if (i <= e) continue;
    entries.emplace(i, m);
    incl.emplace(i, Mat::identity(x.field(), m.dim()));
    diffs.emplace(i, i == e + 1 ? z.project(x.diff(i)) : x.diff(i));
  }
  Complex t(x.algebra(), std::move(entries), std::move(diffs), false);
  return ChainMap{std::move(t), x, std::move(incl)};
}

ChainMap truncate_above(const Complex& x, int h) {
  std::map<int, FgModule> entries;
  std::map<int, Mat> diffs, proj;
  const Mat b = x.diff(h + 1);
  const Subquotient q = quotient(x.entry(h), b.cols() ? image_basis(b) : Mat(x.field(), x.entry(h).dim(), 0));
  entries.emplace(h, q.module);
  proj.emplace(h, q.project(Mat::identity(x.field(), x.entry(h).dim())));
  diffs.emplace(h, x.diff(h) * q.lift);
  for (const auto& [i, m] : x.entries()) {
    if (i >= h) continue;
    entries.emplace(i, m);
    proj.emplace(i, Mat::identity(x.field(), m.dim()));
    diffs.emplace(i, x.diff(i));
  }
  Complex t(x.algebra(), std::move(entries), std::move(diffs), false);
  return ChainMap{x, std::move(t), std::move(proj)};
}

// ---------------------------------------------------------------------------

std::size_t KComplex::dim(int i) const {
  auto it = dims.find(i);
  return it == dims.end() ? 0 : it->second;
}

std::size_t KComplex::rank_of(int i) const {
  auto it = diffs.find(i);
  return it == diffs.end() ? 0 : rank(it->second);
}

std::size_t KComplex::homology_dim(int i) const { return dim(i) - rank_of(i) - rank_of(i + 1); }

std::map<int, std::size_t> KComplex::homology_dims(int lo, int hi) const {
  std::map<int, std::size_t> out;
  if (hi < lo) return out;
  std::size_t above = rank_of(hi + 1);
  for (int i = hi; i >= lo; --i) {
    const std::size_t here = rank_of(i);
    const std::size_t h = dim(i) - here - above;
    if (h) out[i] = h;
    above = here;
  }
  return out;
}

void KComplex::validate() const {
  for (const auto& [i, d] : diffs) {
    if (d.rows() != dim(i - 1) || d.cols() != dim(i)) invalid("k-complex differential shape in degree " + std::to_string(i));
    auto next = diffs.find(i - 1);
    if (next != diffs.end() && !(next->second * d).is_zero())
      invalid("k-complex: composite of differentials nonzero in degree " + std::to_string(i));
  }
}

KComplex k_shadow(const Complex& x) {
  KComplex k;
  for (const auto& [i, m] : x.entries()) k.dims[i] = m.dim();
  for (const auto& [i, d] : x.diffs()) k.diffs[i] = d;
  return k;
}

}  // namespace dcx
