#include "dcx/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include <toml.hpp>

#include "dcx/corpus.hpp"

namespace dcx {

namespace {

using json = nlohmann::json;

// Location-carrying accessors over a parsed TOML document.
class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(ErrorKind k, const toml::source_region& at, const std::string& msg) const {
    throw Error(k, source_ + ":" + std::to_string(at.begin.line) + ":" + std::to_string(at.begin.column) + ": " + msg);
  }

  // The message without the "Kind: " prefix, which fail() adds back.
  static std::string bare(const Error& e) {
    const std::string w = e.what();
    const std::string prefix = std::string(to_string(e.kind())) + ": ";
    return w.rfind(prefix, 0) == 0 ? w.substr(prefix.size()) : w;
  }

  toml::table parse(std::string_view text) const {
    try {
      return toml::parse(text, source_);
    } catch (const toml::parse_error& e) {
      fail(ErrorKind::ParseError, e.source(), std::string(e.description()));
    }
  }

  const toml::node& need(const toml::table& t, std::string_view key) const {
    const toml::node* n = t.get(key);
    if (!n) fail(ErrorKind::ParseError, t.source(), "missing key '" + std::string(key) + "'");
    return *n;
  }
  const toml::table& table(const toml::table& t, std::string_view key) const {
    const toml::node& n = need(t, key);
    if (!n.is_table()) fail(ErrorKind::ParseError, n.source(), "'" + std::string(key) + "' must be a table");
    return *n.as_table();
  }
  const toml::array& array(const toml::node& n, std::string_view what) const {
    if (!n.is_array()) fail(ErrorKind::ParseError, n.source(), std::string(what) + " must be an array");
    return *n.as_array();
  }
  const toml::array& array(const toml::table& t, std::string_view key) const { return array(need(t, key), key); }
  std::string string(const toml::node& n, std::string_view what) const {
    if (!n.is_string()) fail(ErrorKind::ParseError, n.source(), std::string(what) + " must be a string");
    return n.as_string()->get();
  }
  std::string string(const toml::table& t, std::string_view key) const { return string(need(t, key), key); }
  std::int64_t integer(const toml::node& n, std::string_view what) const {
    if (!n.is_integer()) fail(ErrorKind::ParseError, n.source(), std::string(what) + " must be an integer");
    return n.as_integer()->get();
  }
  std::int64_t integer(const toml::table& t, std::string_view key) const { return integer(need(t, key), key); }
  std::vector<std::string> strings(const toml::table& t, std::string_view key) const {
    std::vector<std::string> out;
    for (const auto& n : array(t, key)) out.push_back(string(n, key));
    return out;
  }

  Scalar scalar(const Field& f, const toml::node& n) const {
    if (n.is_integer()) return Scalar(f, n.as_integer()->get());
    if (n.is_string()) {
      mpq_class q;
      if (q.set_str(n.as_string()->get(), 10) != 0)
        fail(ErrorKind::ParseError, n.source(), "not a rational number: '" + n.as_string()->get() + "'");
      q.canonicalize();
      if (!f.is_prime()) return Scalar::rational(f, q);
      return Scalar(f, q.get_num().get_si()) / Scalar(f, q.get_den().get_si());
    }
    fail(ErrorKind::ParseError, n.source(), "scalar must be an integer or a string like \"1/2\"");
  }

  Mat column(const Field& f, const toml::node& n, std::size_t len, std::string_view what) const {
    const toml::array& arr = array(n, what);
    if (arr.size() != len)
      fail(ErrorKind::ValidationError, n.source(), std::string(what) + " needs " + std::to_string(len) + " entries");
    Mat out(f, len, 1);
    for (std::size_t i = 0; i < len; ++i) out.set(i, 0, scalar(f, arr[i]));
    return out;
  }

  Mat kmatrix(const Field& f, const toml::node& n, std::size_t rows, std::size_t cols, std::string_view what) const {
    const toml::array& arr = array(n, what);
    if (arr.size() != rows)
      fail(ErrorKind::ValidationError, n.source(), std::string(what) + " needs " + std::to_string(rows) + " rows");
    Mat out(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) out.set_block(i, 0, column(f, arr[i], cols, what).transpose());
    return out;
  }

  Mat element(const Algebra& a, const toml::node& n) const {
    const std::string s = string(n, "ring element");
    try {
      return parse_element(a, s);
    } catch (const Error& e) {
      fail(e.kind(), n.source(), bare(e));
    }
  }

  // Rows of ring-element strings; `rows` is checked against the array length.
  RingMatrix ring_matrix(const Algebra::Ptr& a, const toml::node& n, std::size_t rows, std::size_t cols,
                         std::string_view what) const {
    const toml::array& arr = array(n, what);
    if (arr.size() != rows)
      fail(ErrorKind::ValidationError, n.source(), std::string(what) + " needs " + std::to_string(rows) + " rows");
    RingMatrix m = RingMatrix::zero(*a, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      const toml::array& row = array(arr[i], what);
      if (row.size() != cols)
        fail(ErrorKind::ValidationError, arr[i].source(), std::string(what) + " rows need " + std::to_string(cols) + " entries");
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = element(*a, row[j]);
    }
    return m;
  }

  // Semantic failures from the engine are re-raised with the node's location.
  template <class F>
  auto located(const toml::node& at, F&& f) const {
    try {
      return f();
    } catch (const Error& e) {
      fail(e.kind(), at.source(), bare(e));
    }
  }

  Field field(const toml::table& t) const {
    const toml::node* fn = t.get("field");
    const std::string name = fn ? string(*fn, "field") : "Fp";
    if (name == "Q") return Field::rational();
    if (name != "Fp") fail(ErrorKind::ParseError, fn->source(), "field must be \"Fp\" or \"Q\"");
    const toml::node* pn = t.get("p");
    return located(pn ? *pn : static_cast<const toml::node&>(t), [&] { return Field::prime(pn ? integer(*pn, "p") : 101); });
  }

  Algebra::Ptr ring(const toml::table& t) const;
  FgModule module(const Algebra::Ptr& a, const toml::table& t) const;
  Complex complex(const Algebra::Ptr& a, const toml::table& t) const;

 private:
  std::string source_;
};

Algebra::Ptr Reader::ring(const toml::table& t) const {
  const std::string kind = string(t, "kind");
  if (kind == "monomial_quotient") {
    const Field f = field(t);
    const auto vars = strings(t, "vars");
    const auto rels = strings(t, "relations");
    return located(t, [&] { return algebra_from_monomial_quotient(f, vars, rels); });
  }
  if (kind == "structure_constants") {
    const Field f = field(t);
    const auto labels = strings(t, "labels");
    const std::size_t n = labels.size();
    StructureTable st(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(f, 0))));
    const toml::array& rows = array(t, "table");
    if (rows.size() != n) fail(ErrorKind::ValidationError, rows.source(), "table needs " + std::to_string(n) + " blocks");
    for (std::size_t i = 0; i < n; ++i) {
      const Mat block = kmatrix(f, rows[i], n, n, "table");
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) st[i][j][k] = block.at(j, k);
    }
    const Mat unit = column(f, need(t, "unit"), n, "unit");
    std::vector<NamedElement> gens;
    if (const toml::node* g = t.get("generators"))
      for (const auto& e : array(*g, "generators")) {
        if (!e.is_table()) fail(ErrorKind::ParseError, e.source(), "generators must be {name, coords} tables");
        gens.push_back({string(*e.as_table(), "name"), column(f, need(*e.as_table(), "coords"), n, "generator")});
      }
    return located(t, [&] { return Algebra::from_structure(f, labels, st, unit, gens); });
  }
  if (kind == "tensor") {
    const auto left = ring(table(t, "left"));
    const auto right = ring(table(t, "right"));
    return located(t, [&] { return tensor_algebras(left, right); });
  }
  if (kind == "trivial_extension") {
    const auto base = ring(table(t, "base"));
    const toml::node& m = need(t, "module");
    FgModule mod;
    if (m.is_string()) {
      toml::table builtin;
      builtin.insert("kind", "builtin");
      builtin.insert("name", m.as_string()->get());
      mod = module(base, builtin);
    } else {
      mod = module(base, table(t, "module"));
    }
    return located(t, [&] { return trivial_extension(base, mod); });
  }
  fail(ErrorKind::ParseError, need(t, "kind").source(), "unknown ring kind '" + kind + "'");
}

FgModule Reader::module(const Algebra::Ptr& a, const toml::table& t) const {
  const std::string kind = string(t, "kind");
  if (kind == "builtin") {
    const std::string name = string(t, "name");
    if (name == "canonical") return canonical_module(a);
    if (name == "residue_field") return residue_field(a);
    if (name == "free") return module_free(a, static_cast<std::size_t>(integer(t, "rank")));
    fail(ErrorKind::ParseError, need(t, "name").source(), "unknown builtin module '" + name + "'");
  }
  if (kind == "presentation") {
    const auto gens = static_cast<std::size_t>(integer(t, "gens"));
    const toml::node& mn = need(t, "matrix");
    const toml::array& rows = array(mn, "matrix");
    std::size_t cols = 0;
    if (!rows.empty()) cols = array(rows[0], "matrix").size();
    const RingMatrix m = ring_matrix(a, mn, gens, cols, "matrix");
    return located(mn, [&] { return module_from_presentation(a, m); });
  }
  if (kind == "actions") {
    const auto d = static_cast<std::size_t>(integer(t, "dim"));
    const toml::array& acts = array(t, "actions");
    if (acts.size() != a->dim())
      fail(ErrorKind::ValidationError, acts.source(), "actions needs one matrix per basis element");
    std::vector<Mat> mats;
    for (const auto& n : acts) mats.push_back(kmatrix(a->field(), n, d, d, "action"));
    return located(t, [&] { return FgModule(a, std::move(mats)); });
  }
  fail(ErrorKind::ParseError, need(t, "kind").source(), "unknown module kind '" + kind + "'");
}

Complex Reader::complex(const Algebra::Ptr& a, const toml::table& t) const {
  const std::string kind = string(t, "kind");
  if (kind == "shifted_module") {
    const int n = static_cast<int>(integer(t, "shift"));
    return complex_of_module(module(a, table(t, "module")), n);
  }
  if (kind == "free_complex") {
    std::vector<int> degrees;
    std::vector<std::size_t> ranks;
    for (const auto& n : array(t, "degrees")) degrees.push_back(static_cast<int>(integer(n, "degree")));
    for (const auto& n : array(t, "ranks")) ranks.push_back(static_cast<std::size_t>(integer(n, "rank")));
    if (ranks.size() != degrees.size()) fail(ErrorKind::ValidationError, t.source(), "degrees and ranks differ in length");
    for (std::size_t i = 1; i < degrees.size(); ++i)
      if (degrees[i] != degrees[i - 1] - 1)
        fail(ErrorKind::ValidationError, need(t, "degrees").source(), "degrees must descend by one");
    const toml::node* dn = t.get("diffs");
    const toml::array empty;
    const toml::array& diffs = dn ? array(*dn, "diffs") : empty;
    if (!degrees.empty() && diffs.size() + 1 != degrees.size())
      fail(ErrorKind::ValidationError, dn ? dn->source() : t.source(), "need one diff per adjacent pair of degrees");
    std::map<int, FgModule> entries;
    std::map<int, Mat> ds;
    for (std::size_t i = 0; i < degrees.size(); ++i) entries.emplace(degrees[i], module_free(a, ranks[i]));
    for (std::size_t i = 0; i < diffs.size(); ++i)
      ds.emplace(degrees[i], ring_matrix(a, diffs[i], ranks[i + 1], ranks[i], "diff").to_kmatrix(*a));
    return located(t, [&] { return Complex(a, std::move(entries), std::move(ds)); });
  }
  if (kind == "explicit") {
    std::map<int, FgModule> entries;
    std::map<int, Mat> ds;
    std::map<int, const toml::node*> diff_nodes;
    for (const auto& n : array(t, "entries")) {
      if (!n.is_table()) fail(ErrorKind::ParseError, n.source(), "entries must be tables");
      const toml::table& e = *n.as_table();
      const int deg = static_cast<int>(integer(e, "degree"));
      entries.emplace(deg, module(a, table(e, "module")));
      if (const toml::node* d = e.get("diff")) diff_nodes.emplace(deg, d);
    }
    for (const auto& [deg, node] : diff_nodes) {
      const std::size_t src = entries.at(deg).dim();
      const std::size_t tgt = entries.count(deg - 1) ? entries.at(deg - 1).dim() : 0;
      ds.emplace(deg, kmatrix(a->field(), *node, tgt, src, "diff"));
    }
    return located(t, [&] { return Complex(a, std::move(entries), std::move(ds)); });
  }
  fail(ErrorKind::ParseError, need(t, "kind").source(), "unknown complex kind '" + kind + "'");
}

// ---------------------------------------------------------------------------

toml::array scalars(const Mat& col) {
  toml::array out;
  for (std::size_t i = 0; i < col.rows(); ++i) {
    const Scalar s = col.at(i, 0);
    if (s.field().is_prime())
      out.push_back(static_cast<std::int64_t>(s.residue()));
    else if (s.value_q().get_den() == 1 && s.value_q().get_num().fits_slong_p())
      out.push_back(static_cast<std::int64_t>(s.value_q().get_num().get_si()));
    else
      out.push_back(s.to_string());
  }
  return out;
}

toml::array rows_of(const Mat& m) {
  toml::array out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(scalars(m.block(i, 0, 1, m.cols()).transpose()));
  return out;
}

void put_field(toml::table& t, const Field& f) {
  t.insert("field", f.is_prime() ? "Fp" : "Q");
  if (f.is_prime()) t.insert("p", static_cast<std::int64_t>(f.characteristic()));
}

toml::table module_table(const FgModule& m) {
  toml::table t;
  t.insert("kind", "actions");
  t.insert("dim", static_cast<std::int64_t>(m.dim()));
  toml::array acts;
  for (const Mat& a : m.actions()) acts.push_back(rows_of(a));
  t.insert("actions", std::move(acts));
  return t;
}

std::string render(const toml::table& t) {
  std::ostringstream os;
  os << t << '\n';
  return os.str();
}

}  // namespace

Algebra::Ptr parse_ring(std::string_view text, std::string_view source) {
  const Reader r(source);
  const toml::table doc = r.parse(text);
  return r.ring(r.table(doc, "ring"));
}

FgModule parse_module(const Algebra::Ptr& a, std::string_view text, std::string_view source) {
  const Reader r(source);
  const toml::table doc = r.parse(text);
  return r.module(a, r.table(doc, "module"));
}

Complex parse_complex(const Algebra::Ptr& a, std::string_view text, std::string_view source) {
  const Reader r(source);
  const toml::table doc = r.parse(text);
  if (doc.contains("module") && !doc.contains("complex")) return complex_of_module(r.module(a, r.table(doc, "module")), 0);
  return r.complex(a, r.table(doc, "complex"));
}

std::string ring_to_toml(const Algebra& a) {
  toml::table t;
  t.insert("kind", "structure_constants");
  put_field(t, a.field());
  toml::array labels;
  for (const auto& l : a.labels()) labels.push_back(l);
  t.insert("labels", std::move(labels));
  toml::array table;
  for (std::size_t i = 0; i < a.dim(); ++i) table.push_back(rows_of(a.mult(i).transpose()));
  t.insert("table", std::move(table));
  t.insert("unit", scalars(a.unit()));
  toml::array gens;
  for (const auto& g : a.generators()) gens.push_back(toml::table{{"name", g.name}, {"coords", scalars(g.coords)}});
  if (!gens.empty()) t.insert("generators", std::move(gens));
  return render(toml::table{{"ring", std::move(t)}});
}

std::string module_to_toml(const FgModule& m) { return render(toml::table{{"module", module_table(m)}}); }

std::string complex_to_toml(const Complex& x) {
  toml::table t;
  t.insert("kind", "explicit");
  toml::array entries;
  for (const auto& [deg, m] : x.entries()) {
    toml::table e;
    e.insert("degree", static_cast<std::int64_t>(deg));
    e.insert("module", module_table(m));
    if (x.entries().count(deg - 1) && !x.diff(deg).is_zero()) e.insert("diff", rows_of(x.diff(deg)));
    entries.push_back(std::move(e));
  }
  t.insert("entries", std::move(entries));
  return render(toml::table{{"complex", std::move(t)}});
}

std::string corpus_toml(const std::string& name) {
  auto mq = [](const std::string& vars, const std::string& rels) {
    return "kind = \"monomial_quotient\"\nfield = \"Fp\"\np = 101\nvars = [" + vars + "]\nrelations = [" + rels + "]\n";
  };
  const std::string fat = mq("\"x\", \"y\"", "\"x^2\", \"x*y\", \"y^2\"");
  std::string body;
  if (name == "pt") body = "[ring]\n" + mq("\"x\"", "\"x\"");
  else if (name == "d2") body = "[ring]\n" + mq("\"x\"", "\"x^2\"");
  else if (name == "d3") body = "[ring]\n" + mq("\"x\"", "\"x^3\"");
  else if (name == "d4") body = "[ring]\n" + mq("\"x\"", "\"x^4\"");
  else if (name == "ci2") body = "[ring]\n" + mq("\"x\", \"y\"", "\"x^2\", \"y^2\"");
  else if (name == "fat") body = "[ring]\n" + fat;
  else if (name == "fat3")
    body = "[ring]\n" + mq("\"x\", \"y\", \"z\"",
                           "\"x^2\", \"x*y\", \"x*z\", \"y^2\", \"y*z\", \"z^2\"");
  else if (name == "prod") body = "[ring]\nkind = \"tensor\"\n\n[ring.left]\n" + fat + "\n[ring.right]\n" + fat;
  else if (name == "triv")
    body = "[ring]\nkind = \"trivial_extension\"\nmodule = \"canonical\"\n\n[ring.base]\n" + fat;
  else
    throw Error(ErrorKind::ValidationError, "unknown corpus ring '" + name + "'");
  return "# " + name + "\n" + body;
}

// ---------------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

namespace {
constexpr std::string_view kBuiltin = "builtin:";
bool is_builtin(const std::string& ref) { return ref.rfind(kBuiltin, 0) == 0; }
}  // namespace

std::string reference_hash(const std::string& ref) { return sha256_hex(is_builtin(ref) ? ref : read_file(ref)); }

Algebra::Ptr load_ring(const std::string& ref) {
  if (is_builtin(ref)) return corpus_ring(ref.substr(kBuiltin.size()));
  return parse_ring(read_file(ref), ref);
}

Complex load_complex(const Algebra::Ptr& a, const std::string& ref) {
  if (!is_builtin(ref)) return parse_complex(a, read_file(ref), ref);
  const std::string name = ref.substr(kBuiltin.size());
  if (name == "residue_field") return complex_of_module(residue_field(a), 0);
  if (name == "canonical") return complex_of_module(canonical_module(a), 0);
  if (name.rfind("free:", 0) == 0) {
    const std::string n = name.substr(5);
    if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::ParseError, "bad rank in '" + ref + "'");
    return complex_of_module(module_free(a, std::stoul(n)), 0);
  }
  throw Error(ErrorKind::ParseError, "unknown builtin '" + ref + "'");
}

// ---------------------------------------------------------------------------

json to_json(const Certificate& c) {
  switch (c.kind) {
    case Certificate::Kind::Exact:
      return {{"kind", "Exact"}};
    case Certificate::Kind::Periodic:
      return {{"kind", "Periodic"}, {"start", c.start}, {"period", c.period}};
    case Certificate::Kind::UpToBound:
      break;
  }
  return {{"kind", "UpToBound"}, {"n", c.bound}};
}

json to_json(const NumberSequence& s) {
  return {{"first", s.first}, {"values", s.values}, {"certificate", to_json(s.certificate)}};
}

json to_json(const TheoremReport& r) {
  json inputs = json::array();
  for (const auto& [k, v] : r.inputs) inputs.push_back({k, v});
  json conditions = json::object();
  for (const auto& c : r.conditions) conditions[c.name] = {{"value", c.value}, {"certificate", to_json(c.certificate)}};
  return {{"theorem", std::string(to_string(r.id))},
          {"inputs", std::move(inputs)},
          {"conditions", std::move(conditions)},
          {"conclusion", std::string(to_string(r.conclusion))},
          {"details", r.details}};
}

}  // namespace dcx
