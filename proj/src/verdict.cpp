#include "dcx/verdict.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <functional>
#include <thread>
#include <tuple>

#include "dcx/corpus.hpp"

namespace dcx {

namespace {

constexpr std::array<std::pair<TheoremId, std::string_view>, 11> kNames = {{
    {TheoremId::Anni, "anni"},
    {TheoremId::BassCriterion, "bass_criterion"},
    {TheoremId::TypeEquiv, "type_equiv"},
    {TheoremId::Tak, "tak"},
    {TheoremId::ModuleCor, "module_cor"},
    {TheoremId::GradeCm, "grade_cm"},
    {TheoremId::MainEquiv, "main_equiv"},
    {TheoremId::AuslanderChar, "auslander_char"},
    {TheoremId::CutRegular, "cut_regular"},
    {TheoremId::QBass, "q_bass"},
    {TheoremId::QAmp, "q_amp"},
}};

// A three-valued condition with the certificate it rests on. Only conclusive
// values take part in consistency decisions.
struct Fact {
  Tri v = Tri::Unknown;
  Certificate cert = Certificate::up_to_bound(0);

  bool yes() const { return v == Tri::True && cert.conclusive(); }
  bool no() const { return v == Tri::False && cert.conclusive(); }
  bool known() const { return yes() || no(); }
};

Fact exact(bool b) { return {tri(b), Certificate::exact()}; }
Fact fact(const SdcVerdict& s) { return {s.holds, s.certificate}; }

Fact fact(const GcDimResult& g) {
  switch (g.value) {
    case GcDimResult::Value::Finite:
      return {Tri::True, g.certificate};
    case GcDimResult::Value::Infinite:
      return {Tri::False, g.certificate};
    case GcDimResult::Value::Unknown:
      break;
  }
  return {Tri::Unknown, g.certificate};
}

// Conjunction: a conclusive false anywhere decides it.
Fact all_of(std::initializer_list<Fact> fs) {
  Fact out{Tri::True, Certificate::exact()};
  for (const Fact& f : fs)
    if (f.no()) return {Tri::False, f.cert};
  for (const Fact& f : fs) {
    out.cert = weakest(out.cert, f.cert);
    if (f.v != Tri::True) out.v = Tri::Unknown;
  }
  return out;
}

std::string show(const Fact& f) {
  std::string s(to_string(f.v));
  if (f.v != Tri::Unknown && !f.cert.conclusive()) s += " (up to bound)";
  return s;
}

struct Report {
  TheoremReport r;

  explicit Report(TheoremId id) { r.id = id; }
  void input(std::string key, std::string value) { r.inputs.emplace_back(std::move(key), std::move(value)); }
  void cond(std::string name, const Fact& f) { r.conditions.push_back({std::move(name), show(f), f.cert}); }
  void cond(std::string name, long long value) {
    r.conditions.push_back({std::move(name), std::to_string(value), Certificate::exact()});
  }
  void cond(std::string name, std::string value, Certificate cert = Certificate::exact()) {
    r.conditions.push_back({std::move(name), std::move(value), cert});
  }
  TheoremReport done(Conclusion c, std::string details) {
    r.conclusion = c;
    r.details = std::move(details);
    return std::move(r);
  }
};

// Two or more routes to the same truth value.
Conclusion equivalence(const std::vector<Fact>& fs) {
  const bool some_yes = std::any_of(fs.begin(), fs.end(), [](const Fact& f) { return f.yes(); });
  const bool some_no = std::any_of(fs.begin(), fs.end(), [](const Fact& f) { return f.no(); });
  if (some_yes && some_no) return Conclusion::Inconsistent;
  const bool all = std::all_of(fs.begin(), fs.end(), [](const Fact& f) { return f.known(); });
  return all ? Conclusion::Consistent : Conclusion::Inconclusive;
}

Fact require_semidualizing(const Named& c, const DerivedOptions& opts) {
  const SdcVerdict s = is_semidualizing(c.x, opts);
  if (s.holds == Tri::False)
    throw Error(ErrorKind::NotSemidualizing, c.name + " is not semidualizing: " + s.witness);
  return fact(s);
}

int inf_of(const Complex& x) { return *homology(x).inf; }
int amp_of(const Complex& x) { return homology(x).amp().value_or(0); }

std::size_t beta_at(const Complex& x, int m, const DerivedOptions& opts) {
  return *betti_numbers(x, m, m, opts).at(m);
}
std::size_t mu_at(const Complex& x, int m, const DerivedOptions& opts) { return *bass_numbers(x, m, m, opts).at(m); }

Complex ring_of(const Complex& c) { return complex_of_module(module_free(c.algebra(), 1), 0); }

const char* kPendingSd = "semidualizing only verified up to the window";

}  // namespace

std::string_view to_string(TheoremId id) {
  for (const auto& [k, v] : kNames)
    if (k == id) return v;
  return "";
}

TheoremId theorem_from_string(std::string_view name) {
  for (const auto& [k, v] : kNames)
    if (v == name) return k;
  throw Error(ErrorKind::ValidationError, "unknown theorem '" + std::string(name) + "'");
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> out;
    for (const auto& kv : kNames) out.push_back(kv.first);
    return out;
  }();
  return ids;
}

std::string_view to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Consistent:
      return "consistent";
    case Conclusion::Inconsistent:
      return "INCONSISTENT";
    case Conclusion::Inconclusive:
      return "inconclusive";
    case Conclusion::HypothesesNotMet:
      return "hypotheses_not_met";
  }
  return "";
}

const Condition* TheoremReport::condition(std::string_view name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

// ---------------------------------------------------------------------------

TheoremReport check_anni(const Named& c, const DerivedOptions& opts) {
  Report rep(TheoremId::Anni);
  rep.input("C", c.name);
  const Fact sd = fact(is_semidualizing(c.x, opts));
  const bool cm = is_cohen_macaulay(c.x, opts);
  const std::size_t t = type_of(c.x, opts);
  const Fact lhs = all_of({sd, exact(cm), exact(t == 1)});
  const Fact rhs = fact(is_dualizing_direct(c.x));
  rep.cond("semidualizing", sd);
  rep.cond("cohen_macaulay", exact(cm));
  rep.cond("type", static_cast<long long>(t));
  rep.cond("cm_semidualizing_type_one", lhs);
  rep.cond("dualizing", rhs);
  const Conclusion k = equivalence({lhs, rhs});
  if (k == Conclusion::Inconsistent)
    return rep.done(k, "CM semidualizing of type one is " + show(lhs) + " but dualizing is " + show(rhs));
  return rep.done(k, k == Conclusion::Consistent ? "both sides " + show(rhs) : "a side rests on an unbounded window");
}

TheoremReport check_bass_criterion(const Named& c, const DerivedOptions& opts) {
  Report rep(TheoremId::BassCriterion);
  rep.input("C", c.name);
  const Fact sd = require_semidualizing(c, opts);
  const int inf_c = inf_of(c.x);
  const int index = inf_c + kdim(c.x);
  const std::size_t mu = mu_at(ring_of(c.x), index, opts);
  const std::size_t beta = beta_at(c.x, inf_c, opts);
  const Fact eq = exact(mu == beta);
  const Fact du = fact(is_dualizing_direct(c.x));
  rep.cond("semidualizing", sd);
  rep.cond("mu_R", static_cast<long long>(mu));
  rep.cond("beta_C", static_cast<long long>(beta));
  rep.cond("bass_equality", eq);
  rep.cond("dualizing", du);
  const std::string eq_text =
      "mu^" + std::to_string(index) + "(R) = " + std::to_string(mu) + ", beta_" + std::to_string(inf_c) + "(C) = " +
      std::to_string(beta);
  if (!sd.yes()) return rep.done(Conclusion::Inconclusive, std::string(kPendingSd) + "; " + eq_text);
  const Conclusion k = equivalence({eq, du});
  return rep.done(k, eq_text + (k == Conclusion::Inconsistent ? " disagrees with dualizing = " + show(du) : ""));
}

TheoremReport check_type_equiv(const Named& c, const Pool& zs, const DerivedOptions& opts) {
  Report rep(TheoremId::TypeEquiv);
  rep.input("C", c.name);
  for (const auto& z : zs) rep.input("Z", z.name);
  const Fact sd = require_semidualizing(c, opts);
  const int inf_c = inf_of(c.x);
  const std::size_t r_r = type_of(ring_of(c.x), opts);
  const std::size_t beta = beta_at(c.x, inf_c, opts);
  const std::size_t r_c = type_of(c.x, opts);
  const std::size_t mu_c = mu_at(c.x, depth(c.x, opts), opts);
  const Fact ii = exact(r_r == beta);
  const Fact iii = exact(r_c == 1);
  const bool product = r_r == beta * mu_c;

  rep.cond("semidualizing", sd);
  rep.cond("r_R", static_cast<long long>(r_r));
  rep.cond("beta_inf_C", static_cast<long long>(beta));
  rep.cond("r_C", static_cast<long long>(r_c));
  rep.cond("ii", ii);
  rep.cond("iii", iii);
  rep.cond("product_formula", std::to_string(r_r) + " = " + std::to_string(beta) + "*" + std::to_string(mu_c));

  // Scan for (i), checking the per-witness product formula on every
  // conclusively finite member of the pool.
  std::string witness;
  std::vector<std::string> broken;
  for (const auto& z : zs) {
    const GcDimResult g = gc_dimension(c.x, z.x, opts);
    if (!fact(g).yes()) continue;
    const std::size_t r_z = type_of(z.x, opts);
    if (g.dagger) {
      const std::size_t bz = beta_at(*g.dagger, inf_c - g.g, opts);
      if (r_z != bz * mu_c)
        broken.push_back(z.name + ": r(Z) = " + std::to_string(r_z) + " vs " + std::to_string(bz) + "*" +
                         std::to_string(mu_c));
    }
    if (r_z == 1 && witness.empty()) witness = z.name;
  }
  rep.cond("i", witness.empty() ? "none in pool" : "true (witness " + witness + ")");

  const Conclusion bad = sd.yes() ? Conclusion::Inconsistent : Conclusion::Inconclusive;
  if (!product) return rep.done(bad, "r(R) = beta_inf C(C) * mu^depth C(C) fails");
  if (!broken.empty()) return rep.done(bad, "per-witness product formula fails for " + broken.front());
  if (ii.v != iii.v) return rep.done(bad, "(ii) is " + show(ii) + " but (iii) is " + show(iii));
  if (!witness.empty() && ii.no()) return rep.done(bad, "witness " + witness + " for (i) while (ii) is false");
  if (!sd.yes()) return rep.done(Conclusion::Inconclusive, kPendingSd);
  if (!witness.empty()) return rep.done(Conclusion::Consistent, "all three hold; witness " + witness);
  if (ii.no()) return rep.done(Conclusion::Consistent, "(ii) and (iii) fail and the pool has no witness for (i)");
  return rep.done(Conclusion::Inconclusive, "(ii) and (iii) hold but the pool has no witness for (i)");
}

TheoremReport check_tak(const Named& c, const Named& m, const DerivedOptions& opts) {
  Report rep(TheoremId::Tak);
  rep.input("C", c.name);
  rep.input("M", m.name);
  const Fact sd = fact(is_semidualizing(c.x, opts));
  rep.cond("semidualizing", sd);
  if (sd.no()) return rep.done(Conclusion::HypothesesNotMet, "C is not semidualizing");
  const std::size_t t = type_of(c.x, opts);
  const bool module = amp_of(m.x) == 0;
  const bool cm = is_cohen_macaulay(m.x, opts);
  const GcDimResult g = gc_dimension(c.x, m.x, opts);
  rep.cond("type_C", static_cast<long long>(t));
  rep.cond("M_is_module", exact(module));
  rep.cond("M_cohen_macaulay", exact(cm));
  rep.cond("gc_dim_M", g.to_string(), g.certificate);
  const Fact hyp = all_of({sd, exact(t == 1), exact(module), exact(cm), fact(g)});
  if (hyp.no()) {
    std::string why = t != 1 ? "type of C is " + std::to_string(t)
                      : !module ? "M is not a module"
                      : !cm     ? "M is not Cohen-Macaulay"
                                : "G_C-dim M is infinite";
    return rep.done(Conclusion::HypothesesNotMet, why);
  }
  if (!hyp.yes()) return rep.done(Conclusion::Inconclusive, "hypotheses rest on an unbounded window");
  const Fact du = fact(is_dualizing_direct(c.x));
  rep.cond("dualizing", du);
  if (du.yes()) return rep.done(Conclusion::Consistent, "hypotheses hold and C is dualizing");
  if (du.no()) return rep.done(Conclusion::Inconsistent, "hypotheses hold but C is not dualizing");
  return rep.done(Conclusion::Inconclusive, "dualizing test undecided");
}

TheoremReport check_module_cor(const Named& c, const Pool& ms, const DerivedOptions& opts) {
  Report rep(TheoremId::ModuleCor);
  rep.input("C", c.name);
  for (const auto& m : ms) rep.input("M", m.name);
  if (amp_of(c.x) != 0) throw Error(ErrorKind::NotModule, c.name + " has positive amplitude");
  const Fact sd = require_semidualizing(c, opts);
  const Fact i = fact(is_dualizing_direct(c.x));
  const std::size_t r_r = type_of(ring_of(c.x), opts);
  const std::size_t beta = beta_at(c.x, inf_of(c.x), opts);

  std::string cm_witness, type_one_witness;
  for (const auto& m : ms) {
    if (amp_of(m.x) != 0 || !is_cohen_macaulay(m.x, opts)) continue;
    if (!fact(gc_dimension(c.x, m.x, opts)).yes()) continue;
    if (cm_witness.empty()) cm_witness = m.name;
    if (type_of(m.x, opts) == 1 && type_one_witness.empty()) type_one_witness = m.name;
  }
  const Fact ii = type_one_witness.empty() ? Fact{} : exact(true);
  const Fact iii = r_r != beta ? exact(false) : cm_witness.empty() ? Fact{} : exact(true);
  rep.cond("semidualizing", sd);
  rep.cond("i", i);
  rep.cond("ii", type_one_witness.empty() ? "none in pool" : "true (witness " + type_one_witness + ")");
  rep.cond("r_R", static_cast<long long>(r_r));
  rep.cond("beta_0_C", static_cast<long long>(beta));
  rep.cond("iii", r_r != beta      ? "false"
                  : cm_witness.empty() ? "none in pool"
                                       : "true (witness " + cm_witness + ")");

  const Conclusion bad = sd.yes() ? Conclusion::Inconsistent : Conclusion::Inconclusive;
  if (ii.yes() && i.no()) return rep.done(bad, "(ii) witnessed by " + type_one_witness + " but C is not dualizing");
  if (iii.yes() && i.no()) return rep.done(bad, "(iii) witnessed by " + cm_witness + " but C is not dualizing");
  if (ii.yes() && iii.no()) return rep.done(bad, "(ii) holds but r(R) != beta_0(C)");
  if (!sd.yes()) return rep.done(Conclusion::Inconclusive, kPendingSd);
  if (i.known() && ii.known() && iii.known()) return rep.done(Conclusion::Consistent, "all three are " + show(i));
  if (i.no() && iii.no()) return rep.done(Conclusion::Consistent, "(i) and (iii) fail and the pool has no witness for (ii)");
  return rep.done(Conclusion::Inconclusive, "the pool has no witness for an existential condition");
}

TheoremReport check_grade_cm(const Named& c, const Named& x, const DerivedOptions& opts) {
  Report rep(TheoremId::GradeCm);
  rep.input("C", c.name);
  rep.input("X", x.name);
  const Fact sd = require_semidualizing(c, opts);
  const GcDimResult g = gc_dimension(c.x, x.x, opts);
  const bool cm_x = is_cohen_macaulay(x.x, opts);
  rep.cond("semidualizing", sd);
  rep.cond("gc_dim_X", g.to_string(), g.certificate);
  rep.cond("X_cohen_macaulay", exact(cm_x));
  const Fact hyp = all_of({sd, fact(g), exact(cm_x)});
  if (hyp.no()) return rep.done(Conclusion::HypothesesNotMet, cm_x ? "G_C-dim X is infinite" : "X is not Cohen-Macaulay");
  if (!hyp.yes()) return rep.done(Conclusion::Inconclusive, "hypotheses rest on an unbounded window");
  const int lhs = kdim(x.x);
  const int gr = grade_c(c.x, x.x, opts);
  const int rhs = kdim(c.x) - gr;
  rep.cond("dim_X", lhs);
  rep.cond("dim_C_minus_grade", rhs);
  if (lhs != rhs) return rep.done(Conclusion::Consistent, "dimension equality fails; nothing to assert");
  const bool cm_c = is_cohen_macaulay(c.x, opts);
  rep.cond("C_cohen_macaulay", exact(cm_c));
  return cm_c ? rep.done(Conclusion::Consistent, "dimension equality holds and C is Cohen-Macaulay")
              : rep.done(Conclusion::Inconsistent, "dimension equality holds but C is not Cohen-Macaulay");
}

TheoremReport check_main_equiv(const Named& c, const Named& x, const DerivedOptions& opts) {
  Report rep(TheoremId::MainEquiv);
  rep.input("C", c.name);
  rep.input("X", x.name);
  const Fact sd = require_semidualizing(c, opts);
  const Fact i = fact(is_dualizing_direct(c.x));
  const std::size_t r_r = type_of(ring_of(c.x), opts);
  const std::size_t beta = beta_at(c.x, inf_of(c.x), opts);
  const std::size_t r_c = type_of(c.x, opts);
  const GcDimResult g = gc_dimension(c.x, x.x, opts);
  const bool cm_x = is_cohen_macaulay(x.x, opts);
  const Fact finite_cm = all_of({fact(g), exact(cm_x)});
  const Fact ii = all_of({finite_cm, exact(type_of(x.x, opts) == 1)});
  const Fact iii = all_of({exact(r_r == beta), finite_cm});
  const Fact iv = all_of({exact(r_c == 1), finite_cm});
  rep.cond("semidualizing", sd);
  rep.cond("i", i);
  rep.cond("ii_via_X", ii);
  rep.cond("iii", iii);
  rep.cond("iv", iv);

  std::vector<std::string> cases;
  if (amp_of(x.x) == 0) cases.push_back("1");
  if (is_dualizing_direct(x.x).holds == Tri::True) cases.push_back("2");
  if (g.finite() && kdim(x.x) == kdim(c.x) - grade_c(c.x, x.x, opts)) cases.push_back("3");
  std::string applied;
  for (const auto& s : cases) applied += (applied.empty() ? "" : "+") + s;
  rep.cond("cases", applied.empty() ? "none" : applied);

  const Conclusion bad = sd.yes() ? Conclusion::Inconsistent : Conclusion::Inconclusive;
  if (iii.known() && iv.known() && iii.v != iv.v) return rep.done(bad, "(iii) and (iv) disagree");
  if (ii.yes() && iii.no()) return rep.done(bad, "X witnesses (ii) but (iii) fails");
  if (iv.yes() && !cases.empty() && i.no())
    return rep.done(bad, "(iv) holds in case " + applied + " but C is not dualizing");
  if (!sd.yes()) return rep.done(Conclusion::Inconclusive, kPendingSd);
  if (!iv.known()) return rep.done(Conclusion::Inconclusive, "(iv) rests on an unbounded window");
  if (iv.no()) return rep.done(Conclusion::Consistent, "(iv) fails; nothing to assert");
  if (cases.empty()) return rep.done(Conclusion::Consistent, "(iv) holds but no case applies");
  if (!i.known()) return rep.done(Conclusion::Inconclusive, "dualizing test undecided");
  return rep.done(Conclusion::Consistent, "(iv) implies (i) verified in case " + applied);
}

TheoremReport check_auslander_char(const Named& c, const Pool& ms, const DerivedOptions& opts) {
  Report rep(TheoremId::AuslanderChar);
  rep.input("C", c.name);
  for (const auto& m : ms) rep.input("M", m.name);
  const Fact sd = require_semidualizing(c, opts);
  const Fact i = exact(is_shift_of_ring(c.x));
  const Complex k = complex_of_module(residue_field(c.x.algebra()), 0);
  const SdcVerdict kv = auslander_membership(c.x, k, opts);
  const Fact ii = fact(kv);
  std::string witness;
  for (const auto& m : ms) {
    if (amp_of(m.x) != 0 || !is_cohen_macaulay(m.x, opts) || type_of(m.x, opts) != 1) continue;
    if (fact(auslander_membership(c.x, m.x, opts)).yes()) {
      witness = m.name;
      break;
    }
  }
  rep.cond("semidualizing", sd);
  rep.cond("i", i);
  rep.cond("ii", ii);
  rep.cond("iii", witness.empty() ? "none in pool" : "true (witness " + witness + ")");
  if (ii.no()) rep.cond("ii_witness", kv.witness);

  const Conclusion bad = sd.yes() ? Conclusion::Inconsistent : Conclusion::Inconclusive;
  if (equivalence({i, ii}) == Conclusion::Inconsistent)
    return rep.done(bad, "C ~ R is " + show(i) + " but k in A_C is " + show(ii));
  if (!witness.empty() && i.no()) return rep.done(bad, "type one CM module " + witness + " in A_C but C is not ~ R");
  if (!sd.yes()) return rep.done(Conclusion::Inconclusive, kPendingSd);
  if (!ii.known()) return rep.done(Conclusion::Inconclusive, "k in A_C undecided");
  if (i.yes() && witness.empty()) return rep.done(Conclusion::Inconclusive, "the pool has no witness for (iii)");
  return rep.done(Conclusion::Consistent, i.yes() ? "all three hold; witness " + witness
                                                  : "(i) and (ii) fail and the pool has no witness for (iii)");
}

TheoremReport cut_regular(const Named& c, const Named& m, const std::vector<std::pair<std::string, Mat>>& xs,
                          const DerivedOptions& opts) {
  Report rep(TheoremId::CutRegular);
  rep.input("C", c.name);
  rep.input("M", m.name);
  for (const auto& [name, x] : xs) rep.input("x", name);
  rep.cond("n", static_cast<long long>(xs.size()));
  if (xs.empty()) return rep.done(Conclusion::Consistent, "n = 0: the identity holds trivially");
  const Homology h = homology(m.x);
  if (h.is_exact()) throw Error(ErrorKind::ZeroComplex, m.name + " is zero");
  if (*h.amp() != 0) return rep.done(Conclusion::HypothesesNotMet, "NotModule: " + m.name + " has positive amplitude");
  const int deg = *h.inf;
  FgModule cur = h.module(deg);
  const Algebra& a = *c.x.algebra();
  for (const auto& [name, x] : xs) {
    if (!a.in_maximal_ideal(x)) return rep.done(Conclusion::HypothesesNotMet, name + " is not in m");
    const Mat act = cur.action_of(x);
    const Mat ker = kernel_basis(act);
    if (ker.cols() > 0) {
      const Mat soc = socle_subspace(cur);
      rep.cond("NoRegularElement", name);
      return rep.done(Conclusion::HypothesesNotMet,
                      "NoRegularElement: " + name + " annihilates the socle element " + soc.col(0).transpose().to_string());
    }
    cur = quotient(cur, image_basis(act)).module;
  }
  // Only reachable over rings of positive depth.
  const GcDimResult before = gc_dimension(c.x, m.x, opts);
  const GcDimResult after = gc_dimension(c.x, complex_of_module(cur, deg), opts);
  rep.cond("gc_dim_M", before.to_string(), before.certificate);
  rep.cond("gc_dim_quotient", after.to_string(), after.certificate);
  if (!fact(before).known() || !fact(after).known()) return rep.done(Conclusion::Inconclusive, "G_C-dimension undecided");
  if (!before.finite()) return rep.done(Conclusion::HypothesesNotMet, "G_C-dim M is infinite");
  const bool ok = after.finite() && after.g == before.g + static_cast<int>(xs.size());
  return rep.done(ok ? Conclusion::Consistent : Conclusion::Inconsistent, ok ? "identity holds" : "identity fails");
}

namespace {

TheoremReport q_bass(const Named& c, const DerivedOptions& opts) {
  Report rep(TheoremId::QBass);
  rep.input("C", c.name);
  const Fact sd = require_semidualizing(c, opts);
  const int inf_c = inf_of(c.x);
  const int dim_c = kdim(c.x);
  const std::size_t mu_c = mu_at(c.x, dim_c, opts);
  const std::size_t mu_r = mu_at(ring_of(c.x), inf_c + dim_c, opts);
  const std::size_t beta = beta_at(c.x, inf_c, opts);
  const Fact lhs = exact(mu_c == 1);
  const Fact rhs = exact(mu_r == beta);
  rep.cond("semidualizing", sd);
  rep.cond("mu_dim_C", static_cast<long long>(mu_c));
  rep.cond("mu_R", static_cast<long long>(mu_r));
  rep.cond("beta_inf_C", static_cast<long long>(beta));
  rep.cond("mu_dim_C_is_one", lhs);
  rep.cond("bass_equality", rhs);
  rep.cond("agreement", exact(lhs.v == rhs.v));
  // The Bass equality forces type one, so it can never hold alone.
  if (rhs.yes() && lhs.no() && sd.yes())
    return rep.done(Conclusion::Inconsistent, "Bass equality holds but mu^dim C(C) != 1");
  if (!sd.yes()) return rep.done(Conclusion::Inconclusive, kPendingSd);
  return rep.done(Conclusion::Consistent, lhs.v == rhs.v ? "evidence: both sides agree" : "evidence: sides differ");
}

// Positive-amplitude complexes built from the pool: P ⊕ ΣP and cones of
// multiplication by the first generator of m.
Pool amplitude_candidates(const Pool& pool) {
  Pool out;
  for (const auto& p : pool) {
    const Homology h = homology(p.x);
    if (h.is_exact() || *h.amp() != 0) continue;
    const Complex base = complex_of_module(h.module(*h.inf), 0);
    out.push_back({p.name + "+S" + p.name, direct_sum(base, shift(base, 1))});
    const FgModule& m = base.entry(0);
    if (m.generator_actions().empty()) continue;
    const Complex cn = cone(chain_map(base, base, {{0, m.generator_actions().front()}}));
    if (auto amp = homology(cn).amp(); amp && *amp > 0) out.push_back({"cone(x:" + p.name + ")", cn});
  }
  return out;
}

TheoremReport q_amp(const Named& c, const Pool& pool, const DerivedOptions& opts) {
  Report rep(TheoremId::QAmp);
  rep.input("C", c.name);
  for (const auto& p : pool) rep.input("pool", p.name);
  const Fact sd = require_semidualizing(c, opts);
  const std::size_t r_c = type_of(c.x, opts);
  const bool cm_c = is_cohen_macaulay(c.x, opts);
  rep.cond("semidualizing", sd);
  rep.cond("r_C", static_cast<long long>(r_c));
  rep.cond("C_cohen_macaulay", exact(cm_c));
  int met = 0;
  bool undecided = false;
  for (const auto& x : amplitude_candidates(pool)) {
    const bool cm_x = is_cohen_macaulay(x.x, opts);
    const GcDimResult g = gc_dimension(c.x, x.x, opts);
    rep.cond(x.name, "amp " + std::to_string(amp_of(x.x)) + ", cm " + std::string(to_string(tri(cm_x))) +
                         ", gc_dim " + g.to_string(),
             g.certificate);
    if (!cm_x || r_c != 1) continue;
    if (!fact(g).known()) undecided = true;
    if (fact(g).yes()) ++met;
  }
  if (!sd.yes()) return rep.done(Conclusion::Inconclusive, kPendingSd);
  if (undecided) return rep.done(Conclusion::Inconclusive, "a candidate's G_C-dimension is undecided");
  if (met == 0) return rep.done(Conclusion::Consistent, "evidence: no candidate meets the hypotheses");
  return rep.done(Conclusion::Consistent, "evidence: " + std::to_string(met) + " candidates meet the hypotheses; C is " +
                                              (cm_c ? "" : "not ") + "Cohen-Macaulay");
}

}  // namespace

TheoremReport explore_question(Question q, const Named& c, const Pool& pool, const DerivedOptions& opts) {
  return q == Question::Bass ? q_bass(c, opts) : q_amp(c, pool, opts);
}

// ---------------------------------------------------------------------------

Pool corpus_pool(const std::string& ring) {
  const auto a = corpus_ring(ring);
  return {{"R", complex_of_module(module_free(a, 1), 0)},
          {"k", complex_of_module(residue_field(a), 0)},
          {"omega", complex_of_module(canonical_module(a), 0)}};
}

Pool corpus_candidates(const std::string& ring) {
  Pool out = {corpus_pool(ring)[0], corpus_pool(ring)[2]};
  if (ring == "prod") {
    const auto a = corpus_ring(ring);
    const auto fat = corpus_ring("fat");
    const FgModule r = module_free(fat, 1), w = canonical_module(fat);
    out.push_back({"omega(fat)#fat", complex_of_module(external_tensor(a, w, r), 0)});
    out.push_back({"fat#omega(fat)", complex_of_module(external_tensor(a, r, w), 0)});
  }
  return out;
}

namespace {

using Task = std::function<TheoremReport()>;

// Failures inside a checker become inconclusive rows rather than aborting the run.
TheoremReport guarded(const Task& t, TheoremId id, const std::string& ring, const std::string& c) {
  try {
    return t();
  } catch (const Error& e) {
    TheoremReport r;
    r.id = id;
    r.inputs = {{"ring", ring}, {"C", c}};
    r.conclusion = Conclusion::Inconclusive;
    r.details = e.what();
    return r;
  }
}

std::vector<std::tuple<TheoremId, std::string, std::string, Task>> corpus_tasks(const std::string& ring,
                                                                                const DerivedOptions& o) {
  std::vector<std::tuple<TheoremId, std::string, std::string, Task>> out;
  const Pool pool = corpus_pool(ring);
  for (const Named& c : corpus_candidates(ring)) {
    auto add = [&](TheoremId id, Task t) { out.emplace_back(id, ring, c.name, std::move(t)); };
    add(TheoremId::Anni, [=] { return check_anni(c, o); });
    if (is_semidualizing(c.x, o).holds == Tri::False) continue;
    Pool zs = pool;
    zs.push_back(c);
    add(TheoremId::BassCriterion, [=] { return check_bass_criterion(c, o); });
    add(TheoremId::TypeEquiv, [=] { return check_type_equiv(c, zs, o); });
    for (const Named& m : zs) {
      add(TheoremId::Tak, [=] { return check_tak(c, m, o); });
      add(TheoremId::GradeCm, [=] { return check_grade_cm(c, m, o); });
      add(TheoremId::MainEquiv, [=] { return check_main_equiv(c, m, o); });
    }
    add(TheoremId::GradeCm, [=] { return check_grade_cm(c, {"S" + c.name, shift(c.x, 1)}, o); });
    add(TheoremId::ModuleCor, [=] { return check_module_cor(c, zs, o); });
    add(TheoremId::AuslanderChar, [=] { return check_auslander_char(c, zs, o); });
    add(TheoremId::CutRegular, [=] { return cut_regular(c, pool[0], {}, o); });
    const auto& gens = c.x.algebra()->local().m_generators;
    if (gens.cols() > 0)
      add(TheoremId::CutRegular, [=] { return cut_regular(c, pool[0], {{"x1", gens.col(0)}}, o); });
    add(TheoremId::QBass, [=] { return explore_question(Question::Bass, c, zs, o); });
    add(TheoremId::QAmp, [=] { return explore_question(Question::Amp, c, zs, o); });
  }
  return out;
}

}  // namespace

std::vector<TheoremReport> run_corpus(const CorpusRunOptions& opts) {
  const std::vector<std::string>& rings = opts.rings.empty() ? corpus_names() : opts.rings;
  std::vector<std::tuple<TheoremId, std::string, std::string, Task>> tasks;
  for (const auto& ring : rings)
    for (auto& t : corpus_tasks(ring, opts.derived)) tasks.push_back(std::move(t));

  std::vector<TheoremReport> out(tasks.size());
  const unsigned n = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      const auto& [id, ring, c, task] = tasks[i];
      out[i] = guarded(task, id, ring, c);
      if (out[i].inputs.empty() || out[i].inputs.front().first != "ring")
        out[i].inputs.insert(out[i].inputs.begin(), {"ring", ring});
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace dcx
