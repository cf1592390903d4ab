#include "dcx/sdc.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>

namespace dcx {

std::string_view to_string(SdcVerdict::Claim c) {
  switch (c) {
    case SdcVerdict::Claim::Semidualizing:
      return "semidualizing";
    case SdcVerdict::Claim::Dualizing:
      return "dualizing";
    case SdcVerdict::Claim::AuslanderClass:
      return "auslander_class";
  }
  return "";
}

std::string GcDimResult::to_string() const {
  switch (value) {
    case Value::Finite:
      return "Finite(" + std::to_string(g) + ")";
    case Value::Infinite:
      return "Infinite";
    case Value::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

namespace {

std::pair<int, int> homology_range_or_throw(const Complex& x, const char* what) {
  const auto h = homology_dims(x);
  if (h.empty()) throw Error(ErrorKind::ZeroComplex, std::string(what) + " has no homology");
  return {h.begin()->first, h.rbegin()->first};
}

DerivedOptions on_demand(const DerivedOptions& opts) {
  DerivedOptions o = opts;
  o.window = 0;
  return o;
}

Mat kdiff(const Field& f, const KComplex& k, int n) {
  if (auto it = k.diffs.find(n); it != k.diffs.end()) return it->second;
  return Mat(f, k.dim(n - 1), k.dim(n));
}

// Whether a degree-n component of a chain map S -> T induces an isomorphism on H_n.
bool iso_on_homology(const Field& f, const KComplex& s, const KComplex& t, const Mat& map, int n) {
  const std::size_t hs = s.homology_dim(n), ht = t.homology_dim(n);
  if (hs != ht) return false;
  if (ht == 0) return true;
  const Mat zs = s.dim(n - 1) ? kernel_basis(kdiff(f, s, n)) : Mat::identity(f, s.dim(n));
  const Mat bt = t.dim(n + 1) ? image_basis(kdiff(f, t, n + 1)) : Mat(f, t.dim(n), 0);
  return rank(Mat::hstack(bt, map * zs)) - bt.cols() == ht;
}

// A degree below the exact range where periodic homology is nonzero (Hom kind),
// or above it (Tensor kind).
std::optional<int> periodic_nonzero(const DerivedComplex& d) {
  if (d.certificate.kind != Certificate::Kind::Periodic) return std::nullopt;
  const int p = d.certificate.period;
  for (int t = 1; t <= p; ++t) {
    const int n = d.kind == DerivedComplex::Kind::Hom ? d.exact_lo - t : d.exact_hi + t;
    if (auto v = d.homology_dim(n); v && *v) return n;
  }
  return std::nullopt;
}

std::size_t hdim(const DerivedComplex& d, int n) {
  auto it = d.homology.find(n);
  return it == d.homology.end() ? 0 : it->second;
}

// Nonzero homology of d inside its exact range but outside [lo, hi].
bool homology_outside(const DerivedComplex& d, int lo, int hi) {
  for (const auto& [n, v] : d.homology)
    if (v && (n < lo || n > hi)) return true;
  return false;
}

SdcVerdict verdict(SdcVerdict::Claim claim, Tri holds, Certificate cert, std::string witness) {
  return SdcVerdict{claim, holds, cert, std::move(witness)};
}

void require_not_refuted(const Complex& c, const DerivedOptions& opts) {
  const SdcVerdict sd = is_semidualizing(c, opts);
  if (sd.holds == Tri::False) throw Error(ErrorKind::NotSemidualizing, sd.witness);
}

int valid_top(const Resolution& r) { return r.complete ? std::numeric_limits<int>::max() : r.top - 1; }

}  // namespace

// ---------------------------------------------------------------------------

namespace {

void append(std::string& key, const Mat& m) {
  key += std::to_string(m.rows()) + 'x' + std::to_string(m.cols()) + ':';
  if (m.field().is_prime())
    for (auto v : m.fp_data()) key += std::to_string(v) + ',';
  else
    for (const auto& v : m.q_data()) key += v.get_str() + ',';
  key += ';';
}

// Exact content of C and the options, so equal inputs share one verdict.
std::string semidualizing_key(const Complex& c, const DerivedOptions& opts) {
  const Algebra& a = *c.algebra();
  std::string key = a.field().name() + '|' + std::to_string(opts.effective_window(a)) + '|' +
                    std::to_string(opts.rank_budget) + '|' + std::to_string(opts.degree_dim_budget) + '|' +
                    std::to_string(opts.seed) + '|';
  for (std::size_t i = 0; i < a.dim(); ++i) append(key, a.mult(i));
  for (const auto& [deg, m] : c.entries()) {
    key += 'E' + std::to_string(deg);
    for (const Mat& act : m.actions()) append(key, act);
  }
  for (const auto& [deg, d] : c.diffs()) {
    key += 'D' + std::to_string(deg);
    append(key, d);
  }
  return key;
}

SdcVerdict semidualizing_uncached(const Complex& c, const DerivedOptions& opts);

}  // namespace

SdcVerdict is_semidualizing(const Complex& c, const DerivedOptions& opts) {
  static std::mutex mu;
  static std::map<std::string, SdcVerdict> memo;
  const std::string key = semidualizing_key(c, opts);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  SdcVerdict v = semidualizing_uncached(c, opts);
  std::lock_guard<std::mutex> lock(mu);
  if (memo.size() > 256) memo.clear();
  memo.emplace(key, v);
  return v;
}

namespace {

SdcVerdict semidualizing_uncached(const Complex& c, const DerivedOptions& opts) {
  using Claim = SdcVerdict::Claim;
  homology_range_or_throw(c, "C");
  const DerivedComplex d = rhom(c, c, opts, -1);
  const Resolution& res = *d.resolution;
  const Algebra& a = *c.algebra();
  const Field& f = a.field();
  const std::size_t n = a.dim();
  if (d.exact_lo > 0) return verdict(Claim::Semidualizing, Tri::Unknown, Certificate::up_to_bound(res.top), "resolution budget");

  // Report the offending degree nearest to 0.
  std::optional<std::pair<int, std::size_t>> off_zero;
  for (const auto& [deg, v] : d.homology)
    if (deg != 0 && (!off_zero || std::abs(deg) < std::abs(off_zero->first))) off_zero = {deg, v};
  if (off_zero)
    return verdict(Claim::Semidualizing, Tri::False, Certificate::exact(),
                   "H_" + std::to_string(off_zero->first) + " RHom(C,C) has dimension " + std::to_string(off_zero->second));
  if (auto bad = periodic_nonzero(d))
    return verdict(Claim::Semidualizing, Tri::False, Certificate::exact(),
                   "periodic nonzero H_" + std::to_string(*bad) + " RHom(C,C)");
  if (hdim(d, 0) != n)
    return verdict(Claim::Semidualizing, Tri::False, Certificate::exact(),
                   "H_0 RHom(C,C) has dimension " + std::to_string(hdim(d, 0)) + ", R has " + std::to_string(n));

  // χ(1) is the augmentation F -> C read as a degree-0 element of Hom(F, C).
  const Mat u = a.unit();
  const auto& lay = d.layout.at(0);
  Mat chi1(f, d.chain.dim(0), 1);
  for (const auto& [i, off] : lay) {
    const Mat& aug = res.augmentation.at(i);
    const std::size_t dc = c.entry(i).dim();
    for (std::size_t l = 0; l < res.free.rank(i); ++l) chi1.set_block(off + l * dc, 0, aug.block(0, l * n, dc, n) * u);
  }
  Mat image(f, d.chain.dim(0), n);
  for (std::size_t b = 0; b < n; ++b)
    for (const auto& [i, off] : lay) {
      const std::size_t dc = c.entry(i).dim();
      const Mat& act = c.entry(i).action(b);
      for (std::size_t l = 0; l < res.free.rank(i); ++l)
        image.set_block(off + l * dc, b, act * chi1.block(off + l * dc, 0, dc, 1));
    }
  const Mat bnd = d.chain.dim(1) ? image_basis(kdiff(f, d.chain, 1)) : Mat(f, d.chain.dim(0), 0);
  if (rank(Mat::hstack(bnd, image)) - bnd.cols() != n)
    return verdict(Claim::Semidualizing, Tri::False, Certificate::exact(), "homothety is not injective on H_0");
  return verdict(Claim::Semidualizing, Tri::True, d.certificate, "");
}

}  // namespace

bool is_shift_of_ring(const Complex& c) {
  const Homology h = homology(c);
  if (h.modules.size() != 1) return false;
  const FgModule& m = h.modules.begin()->second.module;
  if (m.dim() != c.algebra()->dim()) return false;
  return is_isomorphic(m, module_free(c.algebra(), 1)).yes();
}

SdcVerdict is_dualizing_direct(const Complex& c) {
  using Claim = SdcVerdict::Claim;
  const Homology h = homology(c);
  if (h.modules.empty()) return verdict(Claim::Dualizing, Tri::False, Certificate::exact(), "zero complex");
  if (h.modules.size() != 1)
    return verdict(Claim::Dualizing, Tri::False, Certificate::exact(), "amplitude " + std::to_string(*h.amp()));
  const FgModule& m = h.modules.begin()->second.module;
  const IsoResult iso = is_isomorphic(m, k_dual(module_free(c.algebra(), 1)));
  switch (iso.answer) {
    case IsoResult::Answer::Yes:
      return verdict(Claim::Dualizing, Tri::True, Certificate::exact(), "");
    case IsoResult::Answer::No:
      return verdict(Claim::Dualizing, Tri::False, Certificate::exact(), "homology not isomorphic to Hom_k(R,k): " + iso.reason);
    case IsoResult::Answer::Unknown:
      break;
  }
  return verdict(Claim::Dualizing, Tri::Unknown, Certificate::up_to_bound(0), "isomorphism search inconclusive");
}

// ---------------------------------------------------------------------------

GcDimResult gc_dimension(const Complex& c, const Complex& x, const DerivedOptions& opts) {
  const auto [inf_c, sup_c] = homology_range_or_throw(c, "C");
  const auto [inf_x, sup_x] = homology_range_or_throw(x, "X");
  require_not_refuted(c, opts);
  const Algebra& a = *c.algebra();
  const Field& f = a.field();
  const std::size_t n_r = a.dim();
  const DerivedOptions o = on_demand(opts);

  GcDimResult out;
  auto infinite = [&](std::string why) {
    out.value = GcDimResult::Value::Infinite;
    out.certificate = Certificate::exact();
    out.witness = std::move(why);
    return out;
  };
  auto unknown = [&](int bound, std::string why) {
    out.value = GcDimResult::Value::Unknown;
    out.certificate = Certificate::up_to_bound(bound);
    out.witness = std::move(why);
    return out;
  };

  // In the class X ≃ RHom(RHom(X,C),C), so sup X = sup C - inf RHom(X,C).
  const int floor = sup_c - sup_x;
  const DerivedComplex d = rhom(x, c, o, floor - 1);
  const Resolution& fres = *d.resolution;
  if (d.exact_lo > floor - 1) return unknown(fres.top, "resolution of X stopped by budget");
  for (const auto& [n, v] : d.homology)
    if (v && n < floor)
      return infinite("H_" + std::to_string(n) + " RHom(X,C) is nonzero below sup C - sup X = " + std::to_string(floor));
  if (auto bad = periodic_nonzero(d)) return infinite("periodic nonzero H_" + std::to_string(*bad) + " RHom(X,C)");
  if (hdim(d, floor) == 0) return infinite("H_" + std::to_string(floor) + " RHom(X,C) vanishes");

  // Biduality through the good truncation Y = τ_{≥floor} Hom(F, C).
  const ChainMap tr = truncate_below(d.module_complex(floor - 1, d.exact_hi + 1), floor);
  const Complex& y = tr.source;
  const DerivedComplex d2 = rhom(y, c, o, inf_x - 1);
  const Resolution& gres = *d2.resolution;
  if (auto bad = periodic_nonzero(d2)) return infinite("periodic nonzero H_" + std::to_string(*bad) + " of the bidual");

  const int lo = std::max(d2.exact_lo, fres.free.lo);
  const int hi = std::min(d2.exact_hi, valid_top(fres));
  if (lo > inf_x || hi < sup_x) return unknown(std::min(hi, fres.top), "window does not cover the homology of X");

  const KComplex kf = k_shadow(fres.free.to_complex());
  const Mat u = a.unit();
  for (int n = lo; n <= hi; ++n) {
    const std::size_t rf = fres.free.rank(n);
    Mat delta(f, d2.chain.dim(n), n_r * rf);
    if (rf > 0)
      for (const auto& [j, off2] : d2.layout.at(n)) {
        const auto& lay1 = d.layout.at(j);
        auto it1 = lay1.find(n);
        if (it1 == lay1.end()) continue;
        const FgModule& cj = c.entry(n + j);
        const std::size_t dc = cj.dim();
        const Mat& aug = gres.augmentation.at(j);
        const Mat incl = tr.component(j);
        const std::size_t dy = y.entry(j).dim();
        const Scalar sg(f, ((n * j) % 2 == 0) ? 1 : -1);
        for (std::size_t m = 0; m < gres.free.rank(j); ++m) {
          const Mat eps = incl * (aug.block(0, m * n_r, dy, n_r) * u);
          for (std::size_t l = 0; l < rf; ++l) {
            const Mat v = eps.block(it1->second + l * dc, 0, dc, 1);
            for (std::size_t b = 0; b < n_r; ++b)
              delta.set_block(off2 + m * dc, l * n_r + b, (cj.action(b) * v).scaled(sg));
          }
        }
      }
    if (!iso_on_homology(f, kf, d2.chain, delta, n)) return infinite("biduality map fails in degree " + std::to_string(n));
  }

  out.value = GcDimResult::Value::Finite;
  out.g = inf_c - floor;
  const bool covered = d.certificate.conclusive() && d2.certificate.conclusive() && !homology_outside(d2, lo, hi);
  out.certificate = covered ? weakest(d.certificate, d2.certificate) : Certificate::up_to_bound(hi);
  out.witness = "biduality verified in degrees [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
  out.dagger = y;
  return out;
}

int grade_c(const Complex& c, const Complex& x, const DerivedOptions& opts) {
  const auto [inf_c, sup_c] = homology_range_or_throw(c, "C");
  const auto [inf_x, sup_x] = homology_range_or_throw(x, "X");
  (void)inf_c;
  (void)sup_x;
  const DerivedComplex d = rhom(x, c, on_demand(opts), sup_c - inf_x);
  const auto s = d.sup();
  if (!s) throw Error(ErrorKind::ValidationError, "RHom(X,C) vanished for nonzero X and C");
  return -*s;
}

SdcVerdict auslander_membership(const Complex& c, const Complex& x, const DerivedOptions& opts) {
  using Claim = SdcVerdict::Claim;
  const auto [inf_c, sup_c] = homology_range_or_throw(c, "C");
  const auto [inf_x, sup_x] = homology_range_or_throw(x, "X");
  require_not_refuted(c, opts);
  const Algebra& a = *c.algebra();
  const Field& f = a.field();
  const std::size_t n_r = a.dim();
  const DerivedOptions o = on_demand(opts);

  // In the class sup X = sup RHom(C, C ⊗^L X) = sup(C ⊗^L X) - inf C.
  const int ceiling = sup_x + inf_c;
  const DerivedComplex t = dtensor(x, c, o, ceiling + 1 + (sup_c - inf_c));
  const Resolution& fres = *t.resolution;
  if (t.exact_hi < ceiling)
    return verdict(Claim::AuslanderClass, Tri::Unknown, Certificate::up_to_bound(fres.top), "resolution of X stopped by budget");
  for (const auto& [n, v] : t.homology)
    if (v && n > ceiling)
      return verdict(Claim::AuslanderClass, Tri::False, Certificate::exact(),
                     "H_" + std::to_string(n) + " (C ⊗^L X) is nonzero above sup X + inf C = " + std::to_string(ceiling));
  if (auto bad = periodic_nonzero(t))
    return verdict(Claim::AuslanderClass, Tri::False, Certificate::exact(),
                   "periodic nonzero H_" + std::to_string(*bad) + " (C ⊗^L X)");
  if (hdim(t, ceiling) == 0)
    return verdict(Claim::AuslanderClass, Tri::False, Certificate::exact(),
                   "H_" + std::to_string(ceiling) + " (C ⊗^L X) vanishes");

  const ChainMap tr = truncate_above(t.module_complex(t.exact_lo, ceiling + 1), ceiling);
  const Complex& tp = tr.target;
  const DerivedComplex w = rhom(c, tp, o, inf_x - 1);
  const Resolution& gres = *w.resolution;
  if (auto bad = periodic_nonzero(w))
    return verdict(Claim::AuslanderClass, Tri::False, Certificate::exact(),
                   "periodic nonzero H_" + std::to_string(*bad) + " RHom(C, C ⊗^L X)");

  // Past the verified part of C ⊗^L X only degrees ≤ exact_hi - sup C are reliable.
  const bool t_bounded = t.certificate.conclusive();
  const int lo = std::max(w.exact_lo, fres.free.lo);
  int hi = std::min(w.exact_hi, valid_top(fres));
  if (!t_bounded) hi = std::min(hi, t.exact_hi - sup_c);
  if (lo > inf_x || hi < sup_x)
    return verdict(Claim::AuslanderClass, Tri::Unknown, Certificate::up_to_bound(hi), "window does not cover the homology of X");

  const KComplex kf = k_shadow(fres.free.to_complex());
  const Mat u = a.unit();
  for (int n = lo; n <= hi; ++n) {
    const std::size_t rf = fres.free.rank(n);
    Mat gamma(f, w.chain.dim(n), n_r * rf);
    if (rf > 0)
      for (const auto& [p, off2] : w.layout.at(n)) {
        const auto& layt = t.layout.at(n + p);
        auto it = layt.find(n);
        if (it == layt.end()) continue;
        const FgModule& cp = c.entry(p);
        const std::size_t dc = cp.dim(), dt = tp.entry(n + p).dim();
        const Mat& aug = gres.augmentation.at(p);
        const Mat proj = tr.component(n + p);
        for (std::size_t m = 0; m < gres.free.rank(p); ++m) {
          const Mat yv = aug.block(0, m * n_r, dc, n_r) * u;
          for (std::size_t l = 0; l < rf; ++l) {
            const Mat pr = proj.block(0, it->second + l * dc, dt, dc);
            for (std::size_t b = 0; b < n_r; ++b) gamma.set_block(off2 + m * dt, l * n_r + b, pr * (cp.action(b) * yv));
          }
        }
      }
    if (!iso_on_homology(f, kf, w.chain, gamma, n))
      return verdict(Claim::AuslanderClass, Tri::False, Certificate::exact(),
                     "X -> RHom(C, C ⊗^L X) fails in degree " + std::to_string(n));
  }
  const bool covered = t_bounded && w.certificate.conclusive() && !homology_outside(w, lo, hi);
  return verdict(Claim::AuslanderClass, Tri::True,
                 covered ? weakest(t.certificate, w.certificate) : Certificate::up_to_bound(hi),
                 "verified in degrees [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

}  // namespace dcx
