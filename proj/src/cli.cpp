#include "dcx/cli.hpp"

#include <filesystem>
#include <fstream>

#include <CLI11.hpp>

#include "dcx/corpus.hpp"
#include "dcx/io.hpp"

namespace dcx::cli {

namespace {

using json = nlohmann::json;

struct Common {
  int window = -1;
  std::size_t rank_budget = kDefaultRankBudget;
  std::uint64_t seed = 0xDC0DE;

  DerivedOptions derived() const {
    DerivedOptions o;
    o.window = window;
    o.rank_budget = rank_budget;
    o.seed = seed;
    return o;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--window", c.window, "resolution window above the top entry (default 2*dim R + 4)");
  app->add_option("--rank-budget", c.rank_budget, "bound on the total free rank of a resolution");
  app->add_option("--seed", c.seed, "seed for randomized searches");
}

json report(const std::string& command, json inputs, json results, json certificates, const Common& c) {
  return {{"command", command},
          {"inputs", std::move(inputs)},
          {"results", std::move(results)},
          {"certificates", std::move(certificates)},
          {"seed", c.seed},
          {"version", DCX_VERSION}};
}

json input_entry(const std::string& ref) { return {{"ref", ref}, {"sha256", reference_hash(ref)}}; }

bool has_up_to_bound(const TheoremReport& r) {
  for (const auto& c : r.conditions)
    if (!c.certificate.conclusive()) return true;
  return false;
}

// A false condition is a refutation and must carry an Exact certificate.
bool false_without_exact(const TheoremReport& r) {
  for (const auto& c : r.conditions)
    if (c.value == "false" && !c.certificate.is_exact()) return true;
  return false;
}

// ---------------------------------------------------------------------------

struct InvariantsCmd {
  std::string ring, module;
};

int do_invariants(const InvariantsCmd& a, const Common& c, std::ostream& out) {
  const auto r = load_ring(a.ring);
  const Complex x = load_complex(r, a.module);
  const DerivedOptions o = c.derived();
  const DerivedInvariants inv = invariants(x, o);
  json results = {{"inf", inv.inf},     {"sup", inv.sup},   {"amp", inv.amp},
                  {"depth", inv.depth}, {"kdim", inv.kdim}, {"type", inv.type},
                  {"cohen_macaulay", inv.cm}, {"bass", to_json(inv.bass)}, {"betti", to_json(inv.betti)}};
  const Homology h = homology(x);
  if (inv.amp == 0) {
    const ModuleInvariants mi = module_invariants(h.module(inv.inf));
    results["module"] = {{"length", mi.length}, {"min_gens", mi.min_gens}, {"socle", mi.socle_dim}};
  }
  const json certs = {{"bass", to_json(inv.bass.certificate)}, {"betti", to_json(inv.betti.certificate)}};
  out << report("invariants", {{"ring", input_entry(a.ring)}, {"module", input_entry(a.module)}}, results, certs, c).dump(2)
      << '\n';
  return Ok;
}

struct ResolveCmd {
  std::string ring, module;
};

int do_resolve(const ResolveCmd& a, const Common& c, std::ostream& out) {
  const auto r = load_ring(a.ring);
  const Complex x = load_complex(r, a.module);
  const Resolution res = resolve_complex(x, c.derived().resolve_options());
  json results = {{"lo", res.free.lo},
                  {"top", res.top},
                  {"betti", res.betti()},
                  {"complete", res.complete},
                  {"budget_exceeded", res.budget_exceeded}};
  if (res.periodicity) results["periodicity"] = {{"start", res.periodicity->start}, {"period", res.periodicity->period}};
  out << report("resolve", {{"ring", input_entry(a.ring)}, {"module", input_entry(a.module)}}, results,
                {{"resolution", to_json(res.certificate())}}, c)
             .dump(2)
      << '\n';
  return res.budget_exceeded && !res.periodicity ? Budget : Ok;
}

struct TheoremCmd {
  std::string id, ring, c = "builtin:canonical", x, m;
  std::vector<std::string> pool, xs;
};

int do_theorem(const TheoremCmd& a, const Common& cm, std::ostream& out) {
  const TheoremId id = theorem_from_string(a.id);
  const auto r = load_ring(a.ring);
  const DerivedOptions o = cm.derived();
  const Named c{a.c, load_complex(r, a.c)};
  auto named = [&](const std::string& ref) { return Named{ref, load_complex(r, ref)}; };
  Pool pool;
  if (a.pool.empty()) {
    for (const char* ref : {"builtin:free:1", "builtin:residue_field", "builtin:canonical"}) pool.push_back(named(ref));
    pool.push_back(c);
  } else {
    for (const auto& ref : a.pool) pool.push_back(named(ref));
  }
  const Named x = a.x.empty() ? c : named(a.x);
  const Named m = a.m.empty() ? named("builtin:free:1") : named(a.m);

  TheoremReport rep;
  switch (id) {
    case TheoremId::Anni: rep = check_anni(c, o); break;
    case TheoremId::BassCriterion: rep = check_bass_criterion(c, o); break;
    case TheoremId::TypeEquiv: rep = check_type_equiv(c, pool, o); break;
    case TheoremId::Tak: rep = check_tak(c, a.m.empty() ? c : m, o); break;
    case TheoremId::ModuleCor: rep = check_module_cor(c, pool, o); break;
    case TheoremId::GradeCm: rep = check_grade_cm(c, x, o); break;
    case TheoremId::MainEquiv: rep = check_main_equiv(c, x, o); break;
    case TheoremId::AuslanderChar: rep = check_auslander_char(c, pool, o); break;
    case TheoremId::CutRegular: {
      std::vector<std::pair<std::string, Mat>> xs;
      for (const auto& e : a.xs) xs.emplace_back(e, parse_element(*r, e));
      rep = cut_regular(c, m, xs, o);
      break;
    }
    case TheoremId::QBass: rep = explore_question(Question::Bass, c, pool, o); break;
    case TheoremId::QAmp: rep = explore_question(Question::Amp, c, pool, o); break;
  }

  json inputs = {{"ring", input_entry(a.ring)}, {"C", input_entry(a.c)}};
  if (!a.x.empty()) inputs["X"] = input_entry(a.x);
  if (!a.m.empty()) inputs["M"] = input_entry(a.m);
  for (const auto& p : a.pool) inputs["pool"].push_back(input_entry(p));
  json certs = json::object();
  for (const auto& cond : rep.conditions) certs[cond.name] = to_json(cond.certificate);
  out << report("theorem " + a.id, inputs, to_json(rep), certs, cm).dump(2) << '\n';
  if (rep.conclusion == Conclusion::Inconsistent || false_without_exact(rep)) return Inconsistent;
  if (rep.conclusion == Conclusion::Inconclusive && has_up_to_bound(rep)) return Budget;
  return Ok;
}

struct CorpusCmd {
  std::vector<std::string> rings;
  unsigned threads = 0;
  std::string dir = "corpus";
};

int do_corpus_list(const Common& c, std::ostream& out) {
  json rings = json::array();
  for (const auto& name : corpus_names()) {
    const auto a = corpus_ring(name);
    const Complex r = complex_of_module(module_free(a, 1), 0);
    rings.push_back({{"name", name},
                     {"dim", a->dim()},
                     {"embedding_dimension", a->local().embedding_dimension()},
                     {"type", type_of(r)},
                     {"gorenstein", type_of(r) == 1}});
  }
  out << report("corpus list", json::object(), rings, json::object(), c).dump(2) << '\n';
  return Ok;
}

int do_corpus_export(const CorpusCmd& a, const Common& c, std::ostream& out) {
  namespace fs = std::filesystem;
  fs::create_directories(a.dir);
  json written = json::array();
  for (const auto& name : corpus_names()) {
    const fs::path p = fs::path(a.dir) / (name + ".toml");
    const std::string text = corpus_toml(name);
    std::ofstream(p, std::ios::binary) << text;
    written.push_back({{"name", name}, {"path", p.string()}, {"sha256", sha256_hex(text)}});
  }
  out << report("corpus export", json::object(), written, json::object(), c).dump(2) << '\n';
  return Ok;
}

int do_corpus_run(const CorpusCmd& a, const Common& c, std::ostream& out) {
  CorpusRunOptions o;
  o.derived = c.derived();
  o.rings = a.rings;
  o.threads = a.threads;
  for (const auto& r : o.rings) corpus_ring(r);
  const auto reports = run_corpus(o);
  json cells = json::array();
  json counts = json::object();
  int code = Ok;
  for (const auto& r : reports) {
    cells.push_back(to_json(r));
    counts[std::string(to_string(r.conclusion))] = counts.value(std::string(to_string(r.conclusion)), 0) + 1;
    if (r.conclusion == Conclusion::Inconsistent || false_without_exact(r)) code = Inconsistent;
  }
  json inputs = json::object();
  for (const auto& name : o.rings.empty() ? corpus_names() : o.rings)
    inputs[name] = {{"ref", "builtin:" + name}, {"sha256", sha256_hex(corpus_toml(name))}};
  out << report("corpus run", inputs, {{"cells", cells}, {"summary", counts}}, json::object(), c).dump(2) << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Derived-category checks over Artinian local rings", "dcx"};
  app.require_subcommand(1);
  Common common;

  InvariantsCmd inv;
  auto* s_inv = app.add_subcommand("invariants", "homological invariants of a module or complex");
  s_inv->add_option("--ring", inv.ring, "ring file or builtin:<name>")->required();
  s_inv->add_option("--module,--complex,-X", inv.module, "module/complex file or builtin reference")->required();
  add_common(s_inv, common);

  ResolveCmd res;
  auto* s_res = app.add_subcommand("resolve", "minimal free resolution");
  s_res->add_option("--ring", res.ring)->required();
  s_res->add_option("--module,--complex,-X", res.module)->required();
  add_common(s_res, common);

  TheoremCmd th;
  auto* s_th = app.add_subcommand("theorem", "run one theorem check");
  s_th->add_option("id", th.id, "theorem id")->required();
  s_th->add_option("--ring", th.ring)->required();
  s_th->add_option("--C", th.c, "the candidate complex (default builtin:canonical)");
  s_th->add_option("--X", th.x, "test complex for grade_cm / main_equiv (default C)");
  s_th->add_option("--M", th.m, "module for tak / cut_regular");
  s_th->add_option("--pool", th.pool, "pool members (default R, k, canonical, C)");
  s_th->add_option("--x", th.xs, "ring elements for cut_regular");
  add_common(s_th, common);

  CorpusCmd co;
  auto* s_co = app.add_subcommand("corpus", "the built-in rings");
  s_co->require_subcommand(1);
  auto* s_list = s_co->add_subcommand("list", "list the built-in rings");
  auto* s_exp = s_co->add_subcommand("export", "write the ring files");
  s_exp->add_option("--dir", co.dir);
  auto* s_run = s_co->add_subcommand("run", "every checker on every corpus instance");
  s_run->add_option("--rings", co.rings)->delimiter(',');
  s_run->add_option("--threads", co.threads);
  for (auto* s : {s_list, s_exp, s_run}) add_common(s, common);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? Ok : InputError;
  }

  try {
    if (*s_inv) return do_invariants(inv, common, out);
    if (*s_res) return do_resolve(res, common, out);
    if (*s_th) return do_theorem(th, common, out);
    if (*s_list) return do_corpus_list(common, out);
    if (*s_exp) return do_corpus_export(co, common, out);
    if (*s_run) return do_corpus_run(co, common, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::WindowExceeded ? Budget : InputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return InputError;
  }
  return InputError;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace dcx::cli
