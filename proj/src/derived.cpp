#include "dcx/derived.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

namespace dcx {

ResolveOptions DerivedOptions::resolve_options() const {
  ResolveOptions r;
  r.window = window;
  r.rank_budget = rank_budget;
  r.degree_dim_budget = degree_dim_budget;
  r.seed = seed;
  return r;
}

namespace {

Scalar sign(const Field& f, int n) { return Scalar(f, (n % 2 == 0) ? 1 : -1); }

[[noreturn]] void window_exceeded(const std::string& what) { throw Error(ErrorKind::WindowExceeded, what); }

bool is_residue_complex(const Complex& x) {
  if (x.entries().size() != 1 || *x.lo() != 0) return false;
  const FgModule& m = x.entry(0);
  if (m.dim() != 1) return false;
  for (const auto& g : m.generator_actions())
    if (!g.is_zero()) return false;
  return true;
}

std::optional<std::pair<int, int>> homology_range(const Complex& x) {
  const auto h = homology_dims(x);
  if (h.empty()) return std::nullopt;
  return std::make_pair(h.begin()->first, h.rbegin()->first);
}

// Offsets of the summands of one degree, keyed by the degree of the free factor.
using Layout = std::map<int, std::size_t>;

// Hom(F, Y) restricted to free degrees ≤ top, built in degrees [nlo, nhi].
KComplex build_hom_chain(const Resolution& res, const Complex& y, int nlo, int nhi, std::map<int, Layout>& layouts) {
  const FreeComplex& fc = res.free;
  const Field& f = y.field();
  KComplex k;
  for (int n = nlo; n <= nhi; ++n) {
    std::size_t off = 0;
    Layout lay;
    for (int i = fc.lo; i <= res.top; ++i) {
      const std::size_t r = fc.rank(i), dy = y.entry(i + n).dim();
      if (r == 0 || dy == 0) continue;
      lay[i] = off;
      off += r * dy;
    }
    if (off) k.dims[n] = off;
    layouts[n] = std::move(lay);
  }
  for (int n = nlo + 1; n <= nhi; ++n) {
    const Layout& src = layouts[n];
    const Layout& dst = layouts[n - 1];
    if (src.empty() || dst.empty()) continue;
    Mat d(f, k.dim(n - 1), k.dim(n));
    for (const auto& [i, off] : src) {
      const int j = i + n;
      const std::size_t r = fc.rank(i), dy = y.entry(j).dim();
      if (auto it = dst.find(i); it != dst.end()) {
        const Mat dyj = y.diff(j);
        const std::size_t dy1 = y.entry(j - 1).dim();
        for (std::size_t l = 0; l < r; ++l) d.set_block(it->second + l * dy1, off + l * dy, dyj);
      }
      if (auto it = dst.find(i + 1); it != dst.end()) {
        const RingMatrix dd = fc.diff(i + 1);
        const FgModule& yj = y.entry(j);
        for (std::size_t lp = 0; lp < dd.cols; ++lp)
          for (std::size_t l = 0; l < dd.rows; ++l)
            if (!dd.at(l, lp).is_zero())
              d.add_block(it->second + lp * dy, off + l * dy, yj.action_of(dd.at(l, lp)), -sign(f, n));
      }
    }
    k.diffs[n] = std::move(d);
  }
  return k;
}

// F ⊗ Y restricted to free degrees ≤ top, built in degrees [nlo, nhi].
KComplex build_tensor_chain(const Resolution& res, const Complex& y, int nlo, int nhi,
                            std::map<int, Layout>& layouts) {
  const FreeComplex& fc = res.free;
  const Field& f = y.field();
  KComplex k;
  for (int n = nlo; n <= nhi; ++n) {
    std::size_t off = 0;
    Layout lay;
    for (int i = fc.lo; i <= res.top; ++i) {
      const std::size_t r = fc.rank(i), dy = y.entry(n - i).dim();
      if (r == 0 || dy == 0) continue;
      lay[i] = off;
      off += r * dy;
    }
    if (off) k.dims[n] = off;
    layouts[n] = std::move(lay);
  }
  for (int n = nlo + 1; n <= nhi; ++n) {
    const Layout& src = layouts[n];
    const Layout& dst = layouts[n - 1];
    if (src.empty() || dst.empty()) continue;
    Mat d(f, k.dim(n - 1), k.dim(n));
    for (const auto& [i, off] : src) {
      const int j = n - i;
      const std::size_t r = fc.rank(i), dy = y.entry(j).dim();
      if (auto it = dst.find(i - 1); it != dst.end()) {
        const RingMatrix dd = fc.diff(i);
        const FgModule& yj = y.entry(j);
        for (std::size_t l = 0; l < dd.cols; ++l)
          for (std::size_t lt = 0; lt < dd.rows; ++lt)
            if (!dd.at(lt, l).is_zero()) d.set_block(it->second + lt * dy, off + l * dy, yj.action_of(dd.at(lt, l)));
      }
      if (auto it = dst.find(i); it != dst.end()) {
        const Mat dyj = y.diff(j).scaled(sign(f, i));
        const std::size_t dy1 = y.entry(j - 1).dim();
        for (std::size_t l = 0; l < r; ++l) d.set_block(it->second + l * dy1, off + l * dy, dyj);
      }
    }
    k.diffs[n] = std::move(d);
  }
  return k;
}

std::shared_ptr<const Resolution> resolve_first(const Complex& x, int upto, const DerivedOptions& opts) {
  if (is_residue_complex(x)) return residue_resolution(x.algebra(), upto, opts);
  ResolveOptions ro = opts.resolve_options();
  ro.window = std::max(0, upto - *x.hi());
  return std::make_shared<Resolution>(resolve_complex(x, ro));
}

// The single homology module of Y when it has amplitude zero.
std::optional<std::pair<int, FgModule>> concentrated_homology(const Complex& y) {
  const Homology h = homology(y);
  if (h.modules.size() != 1) return std::nullopt;
  return std::make_pair(h.modules.begin()->first, h.modules.begin()->second.module);
}

DerivedComplex zero_result(DerivedComplex::Kind kind, const Complex& y) {
  DerivedComplex d;
  d.kind = kind;
  d.other = y;
  d.certificate = Certificate::exact();
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------

std::shared_ptr<const Resolution> residue_resolution(const Algebra::Ptr& a, int upto, const DerivedOptions& opts) {
  using Key = std::tuple<const Algebra*, std::size_t, std::size_t>;
  static std::mutex mu;
  static std::map<Key, std::pair<Algebra::Ptr, std::shared_ptr<const Resolution>>> cache;
  const Key key{a.get(), opts.rank_budget, opts.degree_dim_budget};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  ResolveOptions ro = opts.resolve_options();
  if (it != cache.end()) {
    const auto& cur = it->second.second;
    if (cur->top >= upto || cur->complete || cur->budget_exceeded) return cur;
    auto next = std::make_shared<Resolution>(*cur);
    extend_resolution(*next, upto, ro);
    it->second.second = next;
    return next;
  }
  ro.window = std::max(upto, 0);
  auto res = std::make_shared<Resolution>(resolve_complex(complex_of_module(residue_field(a), 0), ro));
  cache[key] = {a, res};
  return res;
}

bool is_free_module(const FgModule& m) {
  return m.dim() == module_invariants(m).min_gens * m.algebra()->dim();
}

bool is_injective_module(const FgModule& m, const DerivedOptions& opts) {
  if (m.is_zero()) return true;
  auto res = residue_resolution(m.algebra(), 2, opts);
  if (res->top < 2 && !res->complete) window_exceeded("resolution of k too short for an injectivity test");
  std::map<int, Layout> layouts;
  const KComplex k = build_hom_chain(*res, complex_of_module(m, 0), -2, 0, layouts);
  return k.homology_dim(-1) == 0;
}

DerivedComplex rhom(const Complex& x, const Complex& y, const DerivedOptions& opts, std::optional<int> need_down_to) {
  if (x.has_zero_entries() || y.has_zero_entries()) return zero_result(DerivedComplex::Kind::Hom, y);
  const auto yrange = homology_range(y);
  const auto xrange = homology_range(x);
  if (!yrange || !xrange) return zero_result(DerivedComplex::Kind::Hom, y);
  const Algebra& a = *x.algebra();
  const int b = *y.hi(), ay = *y.lo();
  int upto = *x.hi() + opts.effective_window(a);
  if (need_down_to) upto = std::max(upto, b + 1 - *need_down_to);

  // Injective homology of Y bounds the answer below: H_t = Hom(H_{s-t}(X), H).
  std::optional<int> injective_floor;
  if (yrange->first == yrange->second) {
    if (auto ch = concentrated_homology(y); ch && is_injective_module(ch->second, opts)) {
      injective_floor = ch->first - xrange->second;
      upto = std::max(upto, b + 1 - *injective_floor);
    }
  }

  DerivedComplex d;
  d.kind = DerivedComplex::Kind::Hom;
  d.other = y;
  d.resolution = resolve_first(x, upto, opts);
  const Resolution& res = *d.resolution;
  d.exact_hi = b - res.free.lo;
  if (res.complete) {
    d.exact_lo = ay - res.top;
    d.certificate = Certificate::exact();
  } else {
    d.exact_lo = b + 1 - res.top;
    if (injective_floor && d.exact_lo <= *injective_floor) {
      d.certificate = Certificate::exact();
    } else if (res.periodicity) {
      const int s0 = res.periodicity->start, p = res.periodicity->period;
      d.anchor = ay - s0 - 1;
      d.certificate = d.exact_lo + p - 1 <= d.anchor ? Certificate::periodic(s0, p) : Certificate::up_to_bound(res.top);
    } else {
      d.certificate = Certificate::up_to_bound(res.top);
    }
  }
  if (d.exact_lo <= d.exact_hi) {
    d.chain = build_hom_chain(res, y, d.exact_lo - 1, d.exact_hi + 1, d.layout);
    d.homology = d.chain.homology_dims(d.exact_lo, d.exact_hi);
  }
  return d;
}

DerivedComplex dtensor(const Complex& x, const Complex& y, const DerivedOptions& opts, std::optional<int> need_up_to) {
  if (x.has_zero_entries() || y.has_zero_entries()) return zero_result(DerivedComplex::Kind::Tensor, y);
  const auto yrange = homology_range(y);
  const auto xrange = homology_range(x);
  if (!yrange || !xrange) return zero_result(DerivedComplex::Kind::Tensor, y);
  const Algebra& a = *x.algebra();
  const int ay = *y.lo(), by = *y.hi();
  int upto = *x.hi() + opts.effective_window(a);
  if (need_up_to) upto = std::max(upto, *need_up_to + 1 - ay);

  // Free homology of Y: H_n = H_{n-s}(X)^r vanishes above sup X + s.
  std::optional<int> flat_ceiling;
  if (yrange->first == yrange->second) {
    if (auto ch = concentrated_homology(y); ch && is_free_module(ch->second)) {
      flat_ceiling = xrange->second + ch->first;
      upto = std::max(upto, *flat_ceiling + 1 - ay);
    }
  }

  DerivedComplex d;
  d.kind = DerivedComplex::Kind::Tensor;
  d.other = y;
  d.resolution = resolve_first(x, upto, opts);
  const Resolution& res = *d.resolution;
  d.exact_lo = res.free.lo + ay;
  if (res.complete) {
    d.exact_hi = res.top - 1 + by;
    d.certificate = Certificate::exact();
  } else {
    d.exact_hi = res.top + ay - 1;
    if (flat_ceiling && d.exact_hi >= *flat_ceiling) {
      d.certificate = Certificate::exact();
    } else if (res.periodicity) {
      const int s0 = res.periodicity->start, p = res.periodicity->period;
      d.anchor = by + s0 + 1;
      d.certificate = d.anchor + p - 1 <= d.exact_hi ? Certificate::periodic(s0, p) : Certificate::up_to_bound(res.top);
    } else {
      d.certificate = Certificate::up_to_bound(res.top);
    }
  }
  if (d.exact_lo <= d.exact_hi) {
    d.chain = build_tensor_chain(res, y, d.exact_lo - 1, d.exact_hi + 1, d.layout);
    d.homology = d.chain.homology_dims(d.exact_lo, d.exact_hi);
  }
  return d;
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> DerivedComplex::homology_dim(int n) const {
  auto lookup = [&](int m) -> std::size_t {
    auto it = homology.find(m);
    return it == homology.end() ? 0 : it->second;
  };
  if (n >= exact_lo && n <= exact_hi) return lookup(n);
  const bool hom = kind == Kind::Hom;
  if (hom ? n > exact_hi : n < exact_lo) return 0;
  switch (certificate.kind) {
    case Certificate::Kind::Exact:
      return 0;
    case Certificate::Kind::Periodic: {
      const int p = certificate.period;
      int m = n;
      if (hom) {
        while (m < exact_lo) m += p;
        if (m > anchor) return std::nullopt;
      } else {
        while (m > exact_hi) m -= p;
        if (m < anchor) return std::nullopt;
      }
      return lookup(m);
    }
    case Certificate::Kind::UpToBound:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<int> DerivedComplex::sup() const {
  if (kind == Kind::Hom) {
    for (auto it = homology.rbegin(); it != homology.rend(); ++it) return it->first;
    if (certificate.kind == Certificate::Kind::UpToBound) window_exceeded("sup of derived Hom beyond the window");
    return std::nullopt;
  }
  if (certificate.kind == Certificate::Kind::Exact) {
    if (homology.empty()) return std::nullopt;
    return homology.rbegin()->first;
  }
  if (certificate.kind == Certificate::Kind::Periodic) {
    bool zero_period = true;
    for (int m = exact_hi - certificate.period + 1; m <= exact_hi; ++m)
      if (homology.count(m)) zero_period = false;
    if (zero_period) {
      if (homology.empty()) return std::nullopt;
      return homology.rbegin()->first;
    }
  }
  window_exceeded("sup of derived tensor beyond the window");
}

std::optional<int> DerivedComplex::inf() const {
  if (kind == Kind::Tensor) {
    if (!homology.empty()) return homology.begin()->first;
    if (certificate.kind == Certificate::Kind::UpToBound) window_exceeded("inf of derived tensor beyond the window");
    return std::nullopt;
  }
  if (certificate.kind == Certificate::Kind::Exact) {
    if (homology.empty()) return std::nullopt;
    return homology.begin()->first;
  }
  if (certificate.kind == Certificate::Kind::Periodic) {
    bool zero_period = true;
    for (int m = exact_lo; m < exact_lo + certificate.period; ++m)
      if (homology.count(m)) zero_period = false;
    if (zero_period) {
      if (homology.empty()) return std::nullopt;
      return homology.begin()->first;
    }
  }
  window_exceeded("inf of derived Hom beyond the window");
}

Complex DerivedComplex::module_complex(int lo, int hi) const {
  const Algebra::Ptr& a = other.algebra();
  if (!resolution) return Complex(a);
  const int built_lo = exact_lo - 1, built_hi = exact_hi + 1;
  if (lo < built_lo || hi > built_hi) window_exceeded("module complex requested outside the built degrees");
  const Resolution& res = *resolution;
  std::map<int, FgModule> entries;
  for (int n = lo; n <= hi; ++n) {
    std::vector<FgModule> parts;
    for (int i = res.free.lo; i <= res.top; ++i) {
      const std::size_t r = res.free.rank(i);
      const FgModule& y = other.entry(kind == Kind::Hom ? i + n : n - i);
      if (r == 0 || y.is_zero()) continue;
      parts.push_back(repeat(y, r));
    }
    if (!parts.empty()) entries.emplace(n, direct_sum(parts));
  }
  std::map<int, Mat> diffs;
  for (int n = lo + 1; n <= hi; ++n)
    if (auto it = chain.diffs.find(n); it != chain.diffs.end()) diffs.emplace(n, it->second);
  return Complex(a, std::move(entries), std::move(diffs), false);
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> NumberSequence::at(int m) const {
  if (m < first) return 0;
  if (m <= last()) return values[static_cast<std::size_t>(m - first)];
  switch (certificate.kind) {
    case Certificate::Kind::Exact:
      return 0;
    case Certificate::Kind::Periodic: {
      int r = m;
      while (r > last()) r -= certificate.period;
      if (r < certificate.start || r < first) return std::nullopt;
      return values[static_cast<std::size_t>(r - first)];
    }
    case Certificate::Kind::UpToBound:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

std::pair<int, int> require_homology(const Complex& x) {
  auto r = homology_range(x);
  if (!r) throw Error(ErrorKind::ZeroComplex, "the complex has no homology");
  return *r;
}

Complex residue_complex(const Complex& x) { return complex_of_module(residue_field(x.algebra()), 0); }

// Resolve only as far as an explicit request needs.
DerivedOptions on_demand(const DerivedOptions& opts) {
  DerivedOptions o = opts;
  o.window = 0;
  return o;
}

// Certificate for the sequence m -> H_{sign·m}(d) past the listed values.
Certificate sequence_certificate(const DerivedComplex& d, bool bass) {
  if (d.certificate.kind != Certificate::Kind::Periodic) return d.certificate;
  // Hom: H_n = H_{n+p} for n ≤ anchor - p, i.e. μ^{i+p} = μ^i for i ≥ -anchor.
  // Tensor: H_n = H_{n-p} for n ≥ anchor + p, i.e. β_{i+p} = β_i for i ≥ anchor.
  return Certificate::periodic(bass ? -d.anchor : d.anchor, d.certificate.period);
}

NumberSequence collect(const DerivedComplex& d, int lo, int hi, bool bass, bool strict) {
  NumberSequence s;
  s.first = lo;
  for (int m = lo; m <= hi; ++m) {
    auto v = d.homology_dim(bass ? -m : m);
    if (!v) {
      if (strict)
        window_exceeded(std::string(bass ? "Bass" : "Betti") + " number in index " + std::to_string(m) +
                        " is beyond the certified window");
      s.certificate = Certificate::up_to_bound(m - 1);
      return s;
    }
    s.values.push_back(*v);
  }
  s.certificate = sequence_certificate(d, bass);
  return s;
}

}  // namespace

int kdim(const Complex& x) { return -require_homology(x).first; }

int depth(const Complex& x, const DerivedOptions& opts) {
  const auto [inf_h, sup_h] = require_homology(x);
  const DerivedComplex d = rhom(residue_complex(x), x, on_demand(opts), inf_h);
  for (int n = sup_h; n >= inf_h; --n) {
    auto v = d.homology_dim(n);
    if (!v) window_exceeded("depth scan left the certified window");
    if (*v) return -n;
  }
  throw Error(ErrorKind::ValidationError, "Ext(k, X) vanishes on [inf X, sup X]; depth scan failed");
}

NumberSequence bass_numbers(const Complex& x, int lo, int hi, const DerivedOptions& opts) {
  require_homology(x);
  const DerivedComplex d = rhom(residue_complex(x), x, on_demand(opts), -hi);
  return collect(d, lo, hi, true, true);
}

NumberSequence betti_numbers(const Complex& x, int lo, int hi, const DerivedOptions& opts) {
  require_homology(x);
  const DerivedComplex d = dtensor(residue_complex(x), x, on_demand(opts), hi);
  return collect(d, lo, hi, false, true);
}

NumberSequence bass_window(const Complex& x, const DerivedOptions& opts) {
  const auto [inf_h, sup_h] = require_homology(x);
  const int first = -sup_h;
  const int last = first + opts.effective_window(*x.algebra());
  const DerivedComplex d = rhom(residue_complex(x), x, opts, -last);
  return collect(d, first, last, true, false);
}

NumberSequence betti_window(const Complex& x, const DerivedOptions& opts) {
  const auto [inf_h, sup_h] = require_homology(x);
  const int first = inf_h;
  const int last = first + opts.effective_window(*x.algebra());
  const DerivedComplex d = dtensor(residue_complex(x), x, opts, last);
  return collect(d, first, last, false, false);
}

std::size_t type_of(const Complex& x, const DerivedOptions& opts) {
  const int d = depth(x, opts);
  const std::size_t t = *bass_numbers(x, d, d, opts).at(d);
  if (t == 0) throw Error(ErrorKind::ValidationError, "Bass number at the depth vanished");
  return t;
}

bool is_cohen_macaulay(const Complex& x, const DerivedOptions& opts) { return depth(x, opts) == kdim(x); }

DerivedInvariants invariants(const Complex& x, const DerivedOptions& opts) {
  const auto [inf_h, sup_h] = require_homology(x);
  DerivedInvariants inv;
  inv.inf = inf_h;
  inv.sup = sup_h;
  inv.amp = sup_h - inf_h;
  inv.depth = depth(x, opts);
  inv.kdim = -inf_h;
  inv.bass = bass_window(x, opts);
  inv.betti = betti_window(x, opts);
  auto t = inv.bass.at(inv.depth);
  inv.type = t ? *t : type_of(x, opts);
  inv.cm = inv.depth == inv.kdim;
  return inv;
}

}  // namespace dcx
