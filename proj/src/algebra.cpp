#include "dcx/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "dcx/fgmod.hpp"

namespace dcx {

namespace {

Mat nilpotent_power(const Mat& n, std::size_t k) {
  Mat r = Mat::identity(n.field(), n.rows());
  for (std::size_t i = 0; i < k; ++i) r = r * n;
  return r;
}

// The unique eigenvalue of L when L - lambda is nilpotent.
std::optional<Scalar> single_eigenvalue(const Mat& l) {
  const Field& f = l.field();
  const std::size_t n = l.rows();
  auto nilpotent_at = [&](const Scalar& lambda) {
    Mat shifted = l - Mat::identity(f, n).scaled(lambda);
    return nilpotent_power(shifted, n).is_zero();
  };
  if (!f.is_prime() || f.characteristic() > static_cast<std::int64_t>(n)) {
    Scalar trace(f, 0);
    for (std::size_t i = 0; i < n; ++i) trace = trace + l.at(i, i);
    const Scalar lambda = trace / Scalar(f, static_cast<long long>(n));
    if (nilpotent_at(lambda)) return lambda;
    return std::nullopt;
  }
  for (std::int64_t v = 0; v < f.characteristic(); ++v)
    if (nilpotent_at(Scalar(f, v))) return Scalar(f, v);
  return std::nullopt;
}

}  // namespace

Algebra::Ptr Algebra::from_structure(const Field& field, std::vector<std::string> labels,
                                     const StructureTable& table, const Mat& unit,
                                     std::vector<NamedElement> generators) {
  const std::size_t n = labels.size();
  if (n == 0) throw Error(ErrorKind::ValidationError, "algebra must have positive dimension");
  if (table.size() != n || unit.rows() != n || unit.cols() != 1)
    throw Error(ErrorKind::DimensionMismatch, "structure table does not match " + std::to_string(n) + " labels");
  std::shared_ptr<Algebra> a(new Algebra());
  a->field_ = field;
  a->labels_ = std::move(labels);
  a->unit_ = unit;
  a->mult_.assign(n, Mat(field, n, n));
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw Error(ErrorKind::DimensionMismatch, "structure table row " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j].size() != n) throw Error(ErrorKind::DimensionMismatch, "structure table entry");
      for (std::size_t t = 0; t < n; ++t) a->mult_[i].set(t, j, table[i][j][t]);
    }
  }
  const auto& lab = a->labels_;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a->mult_[i].col(j) != a->mult_[j].col(i))
        throw Error(ErrorKind::NotCommutative, lab[i] + "*" + lab[j] + " != " + lab[j] + "*" + lab[i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Mat lhs = a->mult_by(a->mult_[i].col(j));
      const Mat rhs = a->mult_[i] * a->mult_[j];
      if (lhs != rhs) {
        std::size_t k = 0;
        while (lhs.col(k) == rhs.col(k)) ++k;
        throw Error(ErrorKind::NotAssociative,
                    "(" + lab[i] + "*" + lab[j] + ")*" + lab[k] + " != " + lab[i] + "*(" + lab[j] + "*" + lab[k] + ")");
      }
    }
  if (a->mult_by(unit) != Mat::identity(field, n))
    throw Error(ErrorKind::ValidationError, "unit does not act as the identity");
  a->generators_ = std::move(generators);
  a->compute_local_data();
  return a;
}

void Algebra::compute_local_data() {
  const std::size_t n = dim();
  Mat residue(field_, 1, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto lambda = single_eigenvalue(mult_[i]);
    if (!lambda)
      throw Error(ErrorKind::NotLocal, "multiplication by " + labels_[i] +
                                           " has more than one eigenvalue; the algebra has several maximal ideals");
    residue.set(0, i, *lambda);
  }
  // The residue map must be an algebra map R -> k.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar lhs = (residue * mult_[i].col(j)).at(0, 0);
      if (lhs != residue.at(0, i) * residue.at(0, j))
        throw Error(ErrorKind::NotLocal, "non-units " + labels_[i] + ", " + labels_[j] + " do not form an ideal");
    }
  if ((residue * unit_).at(0, 0) != Scalar(field_, 1))
    throw Error(ErrorKind::NotLocal, "unit maps to zero in the residue field");

  LocalData ld;
  ld.residue_map = residue;
  ld.m_basis = kernel_basis(residue);
  Mat m_sq(field_, n, 0);
  for (std::size_t g = 0; g < ld.m_basis.cols(); ++g) m_sq = Mat::hstack(m_sq, mult_by(ld.m_basis.col(g)) * ld.m_basis);
  m_sq = image_basis(m_sq);
  ld.m_generators = relative_complement(m_sq, ld.m_basis);

  Mat power = ld.m_basis;
  int index = 1;
  while (rank(power) > 0) {
    if (index > static_cast<int>(n))
      throw Error(ErrorKind::NotArtinianLocal, "maximal ideal is not nilpotent");
    Mat next(field_, n, 0);
    for (std::size_t g = 0; g < ld.m_generators.cols(); ++g)
      next = Mat::hstack(next, mult_by(ld.m_generators.col(g)) * power);
    power = next.cols() ? image_basis(next) : next;
    ++index;
  }
  ld.nilpotency_index = index;

  Mat stacked(field_, 0, n);
  for (std::size_t g = 0; g < ld.m_generators.cols(); ++g)
    stacked = Mat::vstack(stacked, mult_by(ld.m_generators.col(g)));
  ld.socle_basis = kernel_basis(stacked);
  local_ = std::move(ld);
}

Mat Algebra::mult_by(const Mat& element) const {
  Mat r(field_, dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    if (!element.is_zero_at(i, 0)) r.axpy(element.at(i, 0), mult_[i]);
  return r;
}

Mat Algebra::basis_vector(std::size_t i) const {
  Mat v(field_, dim(), 1);
  v.set_int(i, 0, 1);
  return v;
}

bool Algebra::is_unit(const Mat& element) const { return rank(mult_by(element)) == dim(); }

bool Algebra::in_maximal_ideal(const Mat& element) const {
  return (local_.residue_map * element).is_zero();
}

StructureTable Algebra::table() const {
  const std::size_t n = dim();
  StructureTable t(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) t[i][j][k] = mult_[i].at(k, j);
  return t;
}

bool Algebra::same_structure(const Algebra& other) const {
  return field_ == other.field_ && labels_ == other.labels_ && mult_ == other.mult_ && unit_ == other.unit_;
}

LocalData local_data(const Algebra& a) { return a.local(); }

// ---------------------------------------------------------------------------
// Monomial quotients

namespace {

std::string monomial_label(const std::vector<std::string>& vars, const Monomial& e) {
  std::string out;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[v];
    if (e[v] > 1) out += "^" + std::to_string(e[v]);
  }
  return out.empty() ? "1" : out;
}

bool divides(const Monomial& d, const Monomial& m) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > m[i]) return false;
  return true;
}

Monomial parse_monomial(const std::vector<std::string>& vars, const std::string& text) {
  Monomial e(vars.size(), 0);
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  std::stringstream ss(s);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    std::string name = factor;
    int power = 1;
    if (auto caret = factor.find('^'); caret != std::string::npos) {
      name = factor.substr(0, caret);
      try {
        power = std::stoi(factor.substr(caret + 1));
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "bad exponent in monomial '" + text + "'");
      }
    }
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw Error(ErrorKind::ParseError, "unknown variable '" + name + "' in '" + text + "'");
    e[static_cast<std::size_t>(it - vars.begin())] += power;
  }
  return e;
}

}  // namespace

Algebra::Ptr algebra_from_monomial_quotient(const Field& field, const std::vector<std::string>& vars,
                                            const std::vector<Monomial>& relations) {
  const std::size_t nv = vars.size();
  std::vector<int> bound(nv, 0);
  for (const auto& r : relations) {
    if (r.size() != nv) throw Error(ErrorKind::DimensionMismatch, "relation arity");
    int nonzero = 0;
    std::size_t which = 0;
    for (std::size_t v = 0; v < nv; ++v)
      if (r[v] > 0) {
        ++nonzero;
        which = v;
      }
    if (nonzero == 0) throw Error(ErrorKind::ValidationError, "relation 1 gives the zero ring");
    if (nonzero == 1 && (bound[which] == 0 || r[which] < bound[which])) bound[which] = r[which];
  }
  for (std::size_t v = 0; v < nv; ++v)
    if (bound[v] == 0) throw Error(ErrorKind::NotArtinian, "variable " + vars[v] + " has no pure-power relation");

  std::vector<Monomial> basis;
  Monomial e(nv, 0);
  while (true) {
    bool standard = std::none_of(relations.begin(), relations.end(), [&](const Monomial& r) { return divides(r, e); });
    if (standard) basis.push_back(e);
    std::size_t v = 0;
    while (v < nv && ++e[v] == bound[v]) e[v++] = 0;
    if (v == nv) break;
  }
  auto degree = [](const Monomial& m) { int d = 0; for (int x : m) d += x; return d; };
  std::sort(basis.begin(), basis.end(), [&](const Monomial& a, const Monomial& b) {
    if (degree(a) != degree(b)) return degree(a) < degree(b);
    return a > b;
  });
  std::map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;

  const std::size_t n = basis.size();
  StructureTable table(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar(field, 0))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Monomial s(nv);
      for (std::size_t v = 0; v < nv; ++v) s[v] = basis[i][v] + basis[j][v];
      if (auto it = index.find(s); it != index.end()) table[i][j][it->second] = Scalar(field, 1);
    }
  std::vector<std::string> labels;
  for (const auto& m : basis) labels.push_back(monomial_label(vars, m));
  Mat unit(field, n, 1);
  unit.set_int(0, 0, 1);
  std::vector<NamedElement> gens;
  for (std::size_t v = 0; v < nv; ++v) {
    Monomial x(nv, 0);
    x[v] = 1;
    Mat c(field, n, 1);
    if (auto it = index.find(x); it != index.end()) c.set_int(it->second, 0, 1);
    gens.push_back({vars[v], c});
  }
  return Algebra::from_structure(field, labels, table, unit, gens);
}

Algebra::Ptr algebra_from_monomial_quotient(const Field& field, const std::vector<std::string>& vars,
                                            const std::vector<std::string>& relations) {
  std::vector<Monomial> rels;
  for (const auto& r : relations) rels.push_back(parse_monomial(vars, r));
  return algebra_from_monomial_quotient(field, vars, rels);
}

// ---------------------------------------------------------------------------
// Tensor products and trivial extensions

Algebra::Ptr tensor_algebras(const Algebra::Ptr& a, const Algebra::Ptr& b) {
  if (a->field() != b->field()) throw Error(ErrorKind::FieldMismatch, "tensor of algebras over different fields");
  const Field& f = a->field();
  const std::size_t na = a->dim(), nb = b->dim(), n = na * nb;
  StructureTable table(n, std::vector<std::vector<Scalar>>(n));
  std::vector<Mat> mult(n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) mult[i * nb + j] = Mat::kron(a->mult(i), b->mult(j));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      table[x][y].resize(n);
      for (std::size_t t = 0; t < n; ++t) table[x][y][t] = mult[x].at(t, y);
    }
  std::vector<std::string> labels;
  for (const auto& la : a->labels())
    for (const auto& lb : b->labels()) labels.push_back("[" + la + "|" + lb + "]");

  bool clash = false;
  for (const auto& ga : a->generators())
    for (const auto& gb : b->generators())
      if (ga.name == gb.name) clash = true;
  std::vector<NamedElement> gens;
  for (const auto& g : a->generators())
    gens.push_back({clash ? g.name + "_1" : g.name, Mat::kron(g.coords, b->unit())});
  for (const auto& g : b->generators())
    gens.push_back({clash ? g.name + "_2" : g.name, Mat::kron(a->unit(), g.coords)});
  return Algebra::from_structure(f, labels, table, Mat::kron(a->unit(), b->unit()), gens);
}

Algebra::Ptr trivial_extension(const Algebra::Ptr& a, const FgModule& m) {
  if (m.algebra() != a) throw Error(ErrorKind::AlgebraMismatch, "trivial_extension: module over another algebra");
  const Field& f = a->field();
  const std::size_t na = a->dim(), d = m.dim(), n = na + d;
  std::vector<Mat> mult(n, Mat(f, n, n));
  for (std::size_t i = 0; i < na; ++i) {
    mult[i].set_block(0, 0, a->mult(i));
    mult[i].set_block(na, na, m.action(i));
  }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t b = 0; b < na; ++b) mult[na + j].set_block(na, b, m.action(b).col(j));
  StructureTable table(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t t = 0; t < n; ++t) table[x][y][t] = mult[x].at(t, y);
  std::vector<std::string> labels = a->labels();
  std::vector<NamedElement> gens;
  for (const auto& g : a->generators()) {
    Mat c(f, n, 1);
    c.set_block(0, 0, g.coords);
    gens.push_back({g.name, c});
  }
  for (std::size_t j = 0; j < d; ++j) {
    labels.push_back("c" + std::to_string(j));
    Mat c(f, n, 1);
    c.set_int(na + j, 0, 1);
    gens.push_back({labels.back(), c});
  }
  Mat unit(f, n, 1);
  unit.set_block(0, 0, a->unit());
  return Algebra::from_structure(f, labels, table, unit, gens);
}

// ---------------------------------------------------------------------------
// Element parsing

namespace {

class ElementParser {
 public:
  ElementParser(const Algebra& a, std::string_view text) : a_(a), text_(text) {}

  Mat parse() {
    Mat v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, "in ring element '" + std::string(text_) + "' at column " +
                                           std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Mat scalar_element(const Scalar& s) const { return a_.unit().scaled(s); }

  Mat expr() {
    Mat v = Mat(a_.field(), a_.dim(), 1);
    bool neg = eat('-');
    if (!neg) eat('+');
    while (true) {
      Mat t = term();
      v.axpy(Scalar(a_.field(), neg ? -1 : 1), t);
      if (eat('+')) neg = false;
      else if (eat('-')) neg = true;
      else break;
    }
    return v;
  }
  Mat term() {
    Mat v = factor();
    while (eat('*')) v = a_.product(v, factor());
    return v;
  }
  Mat factor() {
    skip();
    Mat base;
    if (eat('(')) {
      base = expr();
      if (!eat(')')) fail("missing ')'");
    } else if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      mpz_class num(number()), den(1);
      if (eat('/')) {
        skip();
        den = mpz_class(number());
        if (den == 0) fail("zero denominator");
      }
      return scalar_element(Scalar::rational(a_.field(), mpq_class(num, den)));
    } else if (pos_ < text_.size() &&
               (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        name += text_[pos_++];
      auto it = std::find_if(a_.generators().begin(), a_.generators().end(),
                             [&](const NamedElement& g) { return g.name == name; });
      if (it == a_.generators().end()) fail("unknown symbol '" + name + "'");
      base = it->coords;
    } else {
      fail("expected a number, a generator or '('");
    }
    if (eat('^')) {
      skip();
      const long e = std::stol(number());
      Mat r = a_.unit();
      for (long i = 0; i < e; ++i) r = a_.product(r, base);
      return r;
    }
    return base;
  }
  std::string number() {
    std::string digits;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
    if (digits.empty()) fail("expected digits");
    return digits;
  }

  const Algebra& a_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Mat parse_element(const Algebra& a, std::string_view text) { return ElementParser(a, text).parse(); }

bool is_algebra_isomorphism(const Algebra& a, const Algebra& b, const Mat& phi) {
  if (a.field() != b.field() || phi.rows() != b.dim() || phi.cols() != a.dim()) return false;
  if (a.dim() != b.dim() || rank(phi) != a.dim()) return false;
  if (phi * a.unit() != b.unit()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (phi * a.mult(i).col(j) != b.product(phi.col(i), phi.col(j))) return false;
  return true;
}

}  // namespace dcx
