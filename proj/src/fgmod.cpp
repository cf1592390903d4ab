#include "dcx/fgmod.hpp"

#include <cmath>
#include <random>

namespace dcx {

FgModule::FgModule(Algebra::Ptr algebra, std::vector<Mat> actions, bool validate) {
  if (!algebra) throw Error(ErrorKind::InvalidModule, "module without an algebra");
  const Algebra& a = *algebra;
  if (actions.size() != a.dim())
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(a.dim()) + " action matrices, got " +
                                                  std::to_string(actions.size()));
  auto data = std::make_shared<Data>();
  data->dim = actions[0].rows();
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].field() != a.field()) throw Error(ErrorKind::FieldMismatch, "action over another field");
    if (actions[i].rows() != data->dim || actions[i].cols() != data->dim)
      throw Error(ErrorKind::DimensionMismatch, "action of " + a.labels()[i] + " is not square of size " +
                                                    std::to_string(data->dim));
  }
  data->algebra = std::move(algebra);
  data->actions = std::move(actions);
  data_ = data;
  if (validate && data->dim > 0) {
    if (action_of(a.unit()) != Mat::identity(a.field(), data->dim))
      throw Error(ErrorKind::InvalidModule, "unit does not act as the identity");
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = i; j < a.dim(); ++j)
        if (action_of(a.mult(i).col(j)) != data->actions[i] * data->actions[j])
          throw Error(ErrorKind::InvalidModule,
                      "action of " + a.labels()[i] + "*" + a.labels()[j] + " is not the composite of the actions");
  }
  const Mat& gens = a.local().m_generators;
  for (std::size_t g = 0; g < gens.cols(); ++g) data->gen_actions.push_back(action_of(gens.col(g)));
}

FgModule FgModule::zero(Algebra::Ptr algebra) {
  std::vector<Mat> actions(algebra->dim(), Mat(algebra->field(), 0, 0));
  return FgModule(std::move(algebra), std::move(actions), false);
}

Mat FgModule::action_of(const Mat& element) const {
  Mat r(field(), dim(), dim());
  for (std::size_t i = 0; i < element.rows(); ++i)
    if (!element.is_zero_at(i, 0)) r.axpy(element.at(i, 0), data_->actions[i]);
  return r;
}

bool same_algebra(const FgModule& a, const FgModule& b) {
  return a.algebra() == b.algebra() || a.algebra()->same_structure(*b.algebra());
}

void require_same_algebra(const FgModule& a, const FgModule& b, const char* where) {
  if (a.field() != b.field()) throw Error(ErrorKind::FieldMismatch, std::string(where) + ": modules over different fields");
  if (!same_algebra(a, b)) throw Error(ErrorKind::AlgebraMismatch, std::string(where) + ": modules over different algebras");
}

bool is_module_hom(const FgModule& source, const FgModule& target, const Mat& matrix) {
  if (matrix.rows() != target.dim() || matrix.cols() != source.dim()) return false;
  for (std::size_t g = 0; g < source.generator_actions().size(); ++g)
    if (target.generator_actions()[g] * matrix != matrix * source.generator_actions()[g]) return false;
  return true;
}

// ---------------------------------------------------------------------------

RingMatrix RingMatrix::zero(const Algebra& a, std::size_t rows, std::size_t cols) {
  RingMatrix r;
  r.rows = rows;
  r.cols = cols;
  r.entries.assign(rows * cols, Mat(a.field(), a.dim(), 1));
  return r;
}

Mat RingMatrix::to_kmatrix(const Algebra& a) const {
  const std::size_t n = a.dim();
  Mat out(a.field(), rows * n, cols * n);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (!at(i, j).is_zero()) out.set_block(i * n, j * n, a.mult_by(at(i, j)));
  return out;
}

Mat RingMatrix::act_on(const FgModule& n) const {
  const std::size_t d = n.dim();
  Mat out(n.field(), rows * d, cols * d);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (!at(i, j).is_zero()) out.set_block(i * d, j * d, n.action_of(at(i, j)));
  return out;
}

bool RingMatrix::all_in_maximal_ideal(const Algebra& a) const {
  for (const auto& e : entries)
    if (!a.in_maximal_ideal(e)) return false;
  return true;
}

// ---------------------------------------------------------------------------

FgModule module_free(const Algebra::Ptr& a, std::size_t rank) {
  std::vector<Mat> actions;
  for (std::size_t i = 0; i < a->dim(); ++i) actions.push_back(Mat::repeat_diag(a->mult(i), rank));
  return FgModule(a, std::move(actions), false);
}

FgModule module_from_presentation(const Algebra::Ptr& a, const RingMatrix& presentation) {
  FgModule free = module_free(a, presentation.rows);
  return quotient(free, image_basis(presentation.to_kmatrix(*a))).module;
}

FgModule residue_field(const Algebra::Ptr& a) {
  std::vector<Mat> actions;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    Mat m(a->field(), 1, 1);
    m.set(0, 0, a->local().residue_map.at(0, i));
    actions.push_back(m);
  }
  return FgModule(a, std::move(actions), false);
}

FgModule k_dual(const FgModule& m) {
  std::vector<Mat> actions;
  for (const auto& x : m.actions()) actions.push_back(x.transpose());
  return FgModule(m.algebra(), std::move(actions), false);
}

FgModule direct_sum(const std::vector<FgModule>& parts) {
  if (parts.empty()) throw Error(ErrorKind::ValidationError, "direct_sum of nothing");
  const auto& a = parts[0].algebra();
  std::size_t total = 0;
  for (const auto& p : parts) {
    require_same_algebra(parts[0], p, "direct_sum");
    total += p.dim();
  }
  std::vector<Mat> actions(a->dim(), Mat(a->field(), total, total));
  std::size_t off = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < a->dim(); ++i) actions[i].set_block(off, off, p.action(i));
    off += p.dim();
  }
  return FgModule(a, std::move(actions), false);
}

FgModule repeat(const FgModule& m, std::size_t copies) {
  std::vector<Mat> actions;
  for (const auto& x : m.actions()) actions.push_back(Mat::repeat_diag(x, copies));
  return FgModule(m.algebra(), std::move(actions), false);
}

FgModule external_tensor(const Algebra::Ptr& ab, const FgModule& m, const FgModule& n) {
  const std::size_t na = m.algebra()->dim(), nb = n.algebra()->dim();
  if (ab->dim() != na * nb) throw Error(ErrorKind::AlgebraMismatch, "external_tensor: algebra is not A (x) B");
  std::vector<Mat> actions;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) actions.push_back(Mat::kron(m.action(i), n.action(j)));
  return FgModule(ab, std::move(actions), false);
}

// ---------------------------------------------------------------------------

Mat Subquotient::project(const Mat& vectors) const {
  return coords.of(vectors).block(sub_dim, 0, lift.cols(), vectors.cols());
}

Subquotient subquotient(const FgModule& m, const Mat& k, const Mat& i) {
  const Field& f = m.field();
  Mat ib = i.cols() ? image_basis(i) : Mat(f, m.dim(), 0);
  Mat lift = relative_complement(ib, k);
  Subquotient s;
  s.lift = lift;
  s.sub_dim = ib.cols();
  s.coords = Coordinates(Mat::hstack(ib, lift));
  std::vector<Mat> actions;
  for (std::size_t t = 0; t < m.algebra()->dim(); ++t) actions.push_back(s.project(m.action(t) * lift));
  s.module = FgModule(m.algebra(), std::move(actions), false);
  return s;
}

Subquotient submodule(const FgModule& m, const Mat& k) { return subquotient(m, k, Mat(m.field(), m.dim(), 0)); }

Subquotient quotient(const FgModule& m, const Mat& i) {
  return subquotient(m, Mat::identity(m.field(), m.dim()), i);
}

Mat radical_subspace(const FgModule& m) {
  Mat all(m.field(), m.dim(), 0);
  for (const auto& g : m.generator_actions()) all = Mat::hstack(all, g);
  return image_basis(all);
}

Mat socle_subspace(const FgModule& m) {
  Mat all(m.field(), 0, m.dim());
  for (const auto& g : m.generator_actions()) all = Mat::vstack(all, g);
  return kernel_basis(all);
}

// ---------------------------------------------------------------------------

Mat HomModule::unvec(const Mat& coordinates) const {
  const Mat v = basis * coordinates;
  Mat f(v.field(), target_dim, source_dim);
  for (std::size_t j = 0; j < source_dim; ++j)
    for (std::size_t i = 0; i < target_dim; ++i)
      if (!v.is_zero_at(j * target_dim + i, 0)) f.set(i, j, v.at(j * target_dim + i, 0));
  return f;
}

HomModule hom_module(const FgModule& m, const FgModule& n) {
  require_same_algebra(m, n, "hom_module");
  const Field& f = m.field();
  const std::size_t dm = m.dim(), dn = n.dim();
  HomModule h;
  h.source_dim = dm;
  h.target_dim = dn;
  Mat constraints(f, 0, dm * dn);
  for (std::size_t g = 0; g < m.generator_actions().size(); ++g) {
    Mat c = Mat::kron(Mat::identity(f, dm), n.generator_actions()[g]) -
            Mat::kron(m.generator_actions()[g].transpose(), Mat::identity(f, dn));
    constraints = Mat::vstack(constraints, c);
  }
  h.basis = kernel_basis(constraints);
  Coordinates coords(h.basis);
  std::vector<Mat> actions;
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i)
    actions.push_back(coords.of(Mat::kron(Mat::identity(f, dm), n.action(i)) * h.basis));
  h.module = FgModule(m.algebra(), std::move(actions), false);
  return h;
}

FgModule tensor_modules(const FgModule& m, const FgModule& n) { return tensor_subquotient(m, n).module; }

Subquotient tensor_subquotient(const FgModule& m, const FgModule& n) {
  require_same_algebra(m, n, "tensor_modules");
  const Field& f = m.field();
  const std::size_t dm = m.dim(), dn = n.dim();
  std::vector<Mat> actions;
  for (std::size_t i = 0; i < m.algebra()->dim(); ++i)
    actions.push_back(Mat::kron(m.action(i), Mat::identity(f, dn)));
  FgModule big(m.algebra(), std::move(actions), false);
  Mat relations(f, dm * dn, 0);
  for (std::size_t g = 0; g < m.generator_actions().size(); ++g)
    relations = Mat::hstack(relations, Mat::kron(m.generator_actions()[g], Mat::identity(f, dn)) -
                                           Mat::kron(Mat::identity(f, dm), n.generator_actions()[g]));
  return quotient(big, relations);
}

ModuleInvariants module_invariants(const FgModule& m) {
  ModuleInvariants inv;
  inv.length = m.dim();
  inv.min_gens = m.dim() - radical_subspace(m).cols();
  inv.socle_dim = socle_subspace(m).cols();
  const Algebra& a = *m.algebra();
  const std::size_t d2 = m.dim() * m.dim();
  Mat vecs(m.field(), d2, a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t c = 0; c < m.dim(); ++c)
        if (!m.action(i).is_zero_at(r, c)) vecs.set(c * m.dim() + r, i, m.action(i).at(r, c));
  inv.annihilator_dim = kernel_basis(vecs).cols();
  return inv;
}

// ---------------------------------------------------------------------------

namespace {

// dim m^i M for i = 1, 2, ... until zero.
std::vector<std::size_t> radical_filtration(const FgModule& m) {
  std::vector<std::size_t> dims;
  Mat cur = Mat::identity(m.field(), m.dim());
  while (cur.cols() > 0) {
    Mat next(m.field(), m.dim(), 0);
    for (const auto& g : m.generator_actions()) next = Mat::hstack(next, g * cur);
    cur = image_basis(next);
    dims.push_back(cur.cols());
    if (m.generator_actions().empty()) break;
  }
  return dims;
}

// Enumeration of all of Hom(M, N) is attempted only below this many elements.
constexpr double kExhaustiveLimit = 2.0e5;
constexpr int kRandomTrials = 200;

}  // namespace

IsoResult is_isomorphic(const FgModule& m, const FgModule& n, std::uint64_t seed) {
  require_same_algebra(m, n, "is_isomorphic");
  IsoResult r;
  auto differ = [&](const std::string& what) {
    r.answer = IsoResult::Answer::No;
    r.reason = what;
    return r;
  };
  if (m.dim() != n.dim()) return differ("length");
  if (m.dim() == 0) {
    r.answer = IsoResult::Answer::Yes;
    r.witness = Mat(m.field(), 0, 0);
    return r;
  }
  const auto im = module_invariants(m), in = module_invariants(n);
  if (im.min_gens != in.min_gens) return differ("minimal number of generators");
  if (im.socle_dim != in.socle_dim) return differ("socle dimension");
  if (im.annihilator_dim != in.annihilator_dim) return differ("annihilator");
  if (radical_filtration(m) != radical_filtration(n)) return differ("radical filtration");

  const HomModule h = hom_module(m, n);
  const std::size_t hd = h.basis.cols();
  if (hd != hom_module(m, m).basis.cols() || hd != hom_module(n, m).basis.cols())
    return differ("dimension of Hom");
  const Field& f = m.field();
  auto accept = [&](const Mat& c) {
    Mat map = h.unvec(c);
    if (rank(map) == m.dim()) {
      r.answer = IsoResult::Answer::Yes;
      r.witness = map;
      return true;
    }
    return false;
  };
  for (std::size_t j = 0; j < hd; ++j) {
    Mat c(f, hd, 1);
    c.set_int(j, 0, 1);
    if (accept(c)) return r;
  }
  std::mt19937_64 rng(seed);
  const long long bound = f.is_prime() ? f.characteristic() : 7;
  std::uniform_int_distribution<long long> dist(f.is_prime() ? 0 : -bound, bound - 1);
  for (int t = 0; t < kRandomTrials; ++t) {
    Mat c(f, hd, 1);
    for (std::size_t j = 0; j < hd; ++j) c.set_int(j, 0, dist(rng));
    if (accept(c)) return r;
  }
  if (f.is_prime() && std::pow(static_cast<double>(f.characteristic()), static_cast<double>(hd)) <= kExhaustiveLimit) {
    std::vector<long long> digits(hd, 0);
    while (true) {
      std::size_t j = 0;
      while (j < hd && ++digits[j] == f.characteristic()) digits[j++] = 0;
      if (j == hd) break;
      Mat c(f, hd, 1);
      for (std::size_t t = 0; t < hd; ++t) c.set_int(t, 0, digits[t]);
      if (accept(c)) return r;
    }
    return differ("no invertible element in Hom");
  }
  r.answer = IsoResult::Answer::Unknown;
  r.reason = "no invertible element found among sampled homomorphisms";
  return r;
}

}  // namespace dcx
