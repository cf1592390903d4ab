#include "dcx/resolve.hpp"

#include <numeric>

namespace dcx {

namespace {

// (repeat_diag(l, copies)) * v without materializing the block diagonal.
Mat act_blockwise(const Mat& l, std::size_t copies, const Mat& v) {
  const std::size_t n = l.rows();
  Mat out(v.field(), v.rows(), v.cols());
  for (std::size_t t = 0; t < copies; ++t) out.set_block(t * n, 0, l * v.block(t * n, 0, n, v.cols()));
  return out;
}

Mat stack_or_empty(const Field& f, std::size_t rows, const Mat& m) { return m.cols() ? m : Mat(f, rows, 0); }

}  // namespace

std::size_t FreeComplex::rank(int deg) const {
  if (deg < lo || deg > hi()) return 0;
  return ranks[static_cast<std::size_t>(deg - lo)];
}

RingMatrix FreeComplex::diff(int deg) const {
  if (deg <= lo || deg > hi()) return RingMatrix::zero(*algebra, rank(deg - 1), rank(deg));
  return diffs[static_cast<std::size_t>(deg - lo)];
}

Mat FreeComplex::kdiff(int deg) const { return diff(deg).to_kmatrix(*algebra); }

Complex FreeComplex::to_complex() const {
  std::map<int, FgModule> e;
  std::map<int, Mat> d;
  for (int i = lo; i <= hi(); ++i) {
    if (rank(i) == 0) continue;
    e.emplace(i, module_free(algebra, rank(i)));
    if (rank(i - 1) > 0) d.emplace(i, kdiff(i));
  }
  return Complex(algebra, std::move(e), std::move(d), false);
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> Resolution::betti() const {
  std::vector<std::size_t> out;
  for (int i = free.lo; i <= top; ++i) out.push_back(free.rank(i));
  return out;
}

std::optional<std::size_t> Resolution::betti_at(int deg) const {
  if (deg < free.lo) return 0;
  if (deg <= top) return free.rank(deg);
  if (complete) return 0;
  if (periodicity && deg >= periodicity->start) {
    const int reduced = periodicity->start + (deg - periodicity->start) % periodicity->period;
    if (reduced <= top) return free.rank(reduced);
  }
  return std::nullopt;
}

Certificate Resolution::certificate() const {
  if (complete) return Certificate::exact();
  if (periodicity) return Certificate::periodic(periodicity->start, periodicity->period);
  return Certificate::up_to_bound(top);
}

ChainMap Resolution::augmentation_map() const {
  std::map<int, Mat> comps;
  for (const auto& [i, m] : augmentation)
    if (i <= top) comps.emplace(i, m);
  return ChainMap{free.to_complex(), target, std::move(comps)};
}

std::optional<FgModule> Resolution::syzygy(int i) const {
  auto it = cycles.find(i);
  if (it == cycles.end()) return std::nullopt;
  FgModule ambient = direct_sum({module_free(free.algebra, free.rank(i - 1)), target.entry(i)});
  return submodule(ambient, it->second).module;
}

// ---------------------------------------------------------------------------

namespace {

// One cover step in degree i. Returns false when a budget stops it.
bool resolve_step(Resolution& res, int i, const ResolveOptions& opts) {
  const Algebra& a = *res.free.algebra;
  const Field& f = a.field();
  const std::size_t n = a.dim();
  const Complex& x = res.target;
  const std::size_t rprev = res.free.rank(i - 1);
  const std::size_t fa = n * rprev;
  const FgModule& xi = x.entry(i);
  const std::size_t vdim = fa + xi.dim();
  if (vdim > opts.degree_dim_budget) return false;

  // Z_i = {(f, x) : ∂f = 0, φ(f) = ∂x}
  const std::size_t rows1 = n * res.free.rank(i - 2);
  const std::size_t rows2 = x.entry(i - 1).dim();
  Mat constraints(f, rows1 + rows2, vdim);
  if (rprev > 0 && rows1 > 0) constraints.set_block(0, 0, res.free.kdiff(i - 1));
  if (auto it = res.augmentation.find(i - 1); it != res.augmentation.end() && rows2 > 0)
    constraints.set_block(rows1, 0, it->second);
  if (xi.dim() > 0 && rows2 > 0) constraints.add_block(rows1, fa, x.diff(i), Scalar(f, -1));
  const Mat z = kernel_basis(constraints);

  // Covered part: boundaries of X plus m Z.
  Mat covered(f, vdim, 0);
  if (xi.dim() > 0 && x.entry(i + 1).dim() > 0) {
    Mat b(f, vdim, x.entry(i + 1).dim());
    b.set_block(fa, 0, x.diff(i + 1));
    covered = image_basis(b);
  }
  const Mat& gens = a.local().m_generators;
  for (std::size_t g = 0; g < gens.cols() && z.cols() > 0; ++g) {
    Mat gz(f, vdim, z.cols());
    if (fa > 0) gz.set_block(0, 0, act_blockwise(a.mult_by(gens.col(g)), rprev, z.block(0, 0, fa, z.cols())));
    if (xi.dim() > 0) gz.set_block(fa, 0, xi.generator_actions()[g] * z.block(fa, 0, xi.dim(), z.cols()));
    covered = image_basis(Mat::hstack(covered, gz));
  }
  const Mat fresh = z.cols() ? relative_complement(stack_or_empty(f, vdim, covered), z) : z;
  const std::size_t r = fresh.cols();

  std::size_t total = std::accumulate(res.free.ranks.begin(), res.free.ranks.end(), std::size_t{0});
  if (total + r > opts.rank_budget) return false;

  RingMatrix d = RingMatrix::zero(a, rprev, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t l = 0; l < rprev; ++l) {
      d.at(l, j) = fresh.block(l * n, j, n, 1);
      if (!a.in_maximal_ideal(d.at(l, j))) res.minimal = false;
    }
  if (xi.dim() > 0) {
    Mat phi(f, xi.dim(), n * r);
    for (std::size_t j = 0; j < r; ++j) {
      const Mat xj = fresh.block(fa, j, xi.dim(), 1);
      for (std::size_t t = 0; t < n; ++t) phi.set_block(0, j * n + t, xi.action(t) * xj);
    }
    res.augmentation[i] = phi;
  }
  res.free.ranks.push_back(r);
  res.free.diffs.push_back(std::move(d));
  if (vdim <= opts.periodicity_dim_limit * 4 && z.cols() <= opts.periodicity_dim_limit) res.cycles[i] = z;
  res.top = i;
  const int hi_x = x.hi() ? *x.hi() : res.free.lo;
  if (r == 0 && i > hi_x) res.complete = true;
  return true;
}

void run(Resolution& res, int upto, const ResolveOptions& opts) {
  for (int i = res.top + 1; i <= upto && !res.complete; ++i) {
    if (!resolve_step(res, i, opts)) {
      res.budget_exceeded = true;
      break;
    }
  }
  if (opts.detect_periodicity && !res.complete) res.periodicity = detect_periodicity(res, opts);
}

}  // namespace

Resolution resolve_complex(const Complex& x, const ResolveOptions& opts) {
  Resolution res;
  res.target = x;
  res.free.algebra = x.algebra();
  if (x.has_zero_entries()) {
    res.complete = true;
    return res;
  }
  res.free.lo = *x.lo();
  res.top = res.free.lo - 1;
  run(res, *x.hi() + opts.effective_window(*x.algebra()), opts);
  return res;
}

Resolution minimal_free_resolution(const FgModule& m, int depth_n, const ResolveOptions& opts) {
  ResolveOptions o = opts;
  o.window = depth_n;
  return resolve_complex(complex_of_module(m, 0), o);
}

void extend_resolution(Resolution& res, int upto, const ResolveOptions& opts) {
  if (res.complete || upto <= res.top) return;
  res.budget_exceeded = false;
  run(res, upto, opts);
}

std::optional<PeriodicityCert> detect_periodicity(const Resolution& res, const ResolveOptions& opts) {
  if (res.target.has_zero_entries() || !res.minimal) return std::nullopt;
  // Candidates: syzygies above the target, plus the module itself when the
  // target is a single module.
  const int hi_x = *res.target.hi();
  const bool single = *res.target.lo() == hi_x;
  std::vector<std::pair<int, FgModule>> omegas;
  for (int j = single ? hi_x : hi_x + 1; j <= res.top; ++j) {
    auto it = res.cycles.find(j);
    if (it == res.cycles.end() || it->second.cols() > opts.periodicity_dim_limit) continue;
    auto syz = res.syzygy(j);
    if (!syz || syz->is_zero()) continue;
    for (const auto& [i, om] : omegas) {
      if (om.dim() != syz->dim()) continue;
      IsoResult iso = is_isomorphic(om, *syz, opts.seed);
      if (iso.yes()) return PeriodicityCert{i, j - i, *iso.witness};
    }
    omegas.emplace_back(j, *syz);
  }
  return std::nullopt;
}

}  // namespace dcx
