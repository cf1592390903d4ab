#include <gtest/gtest.h>

#include "dcx/corpus.hpp"
#include "dcx/io.hpp"
#include "support.hpp"

using namespace dcx;

namespace {

const char* kFat = R"(
[ring]
kind = "monomial_quotient"
field = "Fp"
p = 101
vars = ["x","y"]
relations = ["x^2","x*y","y^2"]
)";

std::string error_of(const std::function<void()>& f, ErrorKind* kind = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (kind) *kind = e.kind();
    return e.what();
  }
  return "";
}

bool same_module(const FgModule& a, const FgModule& b) { return a.dim() == b.dim() && a.actions() == b.actions(); }

bool same_complex(const Complex& x, const Complex& y) {
  if (x.entries().size() != y.entries().size()) return false;
  for (const auto& [deg, m] : x.entries()) {
    if (!y.entries().count(deg) || !same_module(m, y.entry(deg))) return false;
    if (x.diff(deg) != y.diff(deg)) return false;
  }
  return true;
}

}  // namespace

TEST(Io, ParseRing) {
  auto a = parse_ring(kFat, "fat.toml");
  EXPECT_EQ(a->dim(), 3u);
  EXPECT_TRUE(a->same_structure(*corpus_ring("fat")));

  ErrorKind k{};
  auto msg = error_of([] { parse_ring("[ring]\nkind = \"monomial_quotient\"\nvars = [\"x\",\"y\"]\nrelations = [\"x^2\"]\n"); }, &k);
  EXPECT_EQ(k, ErrorKind::NotArtinian) << msg;

  msg = error_of([] { parse_ring("[ring]\nkind = \"monomial_quotient\"\nvars = [\"x\"\n", "broken.toml"); }, &k);
  EXPECT_EQ(k, ErrorKind::ParseError);
  EXPECT_NE(msg.find("broken.toml:3:"), std::string::npos) << msg;

  msg = error_of([] { parse_ring("[ring]\nkind = \"cubic\"\n", "k.toml"); }, &k);
  EXPECT_EQ(k, ErrorKind::ParseError);
  EXPECT_NE(msg.find("k.toml:2:"), std::string::npos) << msg;

  auto q = parse_ring("[ring]\nkind = \"monomial_quotient\"\nfield = \"Q\"\nvars = [\"t\"]\nrelations = [\"t^3\"]\n");
  EXPECT_FALSE(q->field().is_prime());
  EXPECT_EQ(q->dim(), 3u);
}

TEST(Io, ParseModule) {
  auto a = parse_ring(kFat);
  auto k = parse_module(a, "[module]\nkind = \"presentation\"\ngens = 1\nmatrix = [[\"x\", \"y\"]]\n");
  EXPECT_EQ(k.dim(), 1u);
  auto w = parse_module(a, "[module]\nkind = \"builtin\"\nname = \"canonical\"\n");
  EXPECT_TRUE(same_module(w, canonical_module(a)));
  auto f = parse_module(a, "[module]\nkind = \"builtin\"\nname = \"free\"\nrank = 2\n");
  EXPECT_EQ(f.dim(), 6u);

  ErrorKind kind{};
  auto msg = error_of(
      [&] { parse_module(a, "[module]\nkind = \"presentation\"\ngens = 1\nmatrix = [[\"x\", \"z\"]]\n", "m.toml"); }, &kind);
  EXPECT_EQ(kind, ErrorKind::ParseError);
  EXPECT_NE(msg.find("m.toml:4:"), std::string::npos) << msg;
  msg = error_of([&] { parse_module(a, "[module]\nkind = \"presentation\"\ngens = 2\nmatrix = [[\"x\"]]\n"); }, &kind);
  EXPECT_EQ(kind, ErrorKind::ValidationError) << msg;
  // x acting by the identity breaks x^2 = 0.
  msg = error_of([&] {
    parse_module(a, "[module]\nkind = \"actions\"\ndim = 1\nactions = [[[1]], [[1]], [[0]]]\n");
  }, &kind);
  EXPECT_EQ(kind, ErrorKind::InvalidModule) << msg;
}

TEST(Io, ParseComplex) {
  auto a = corpus_ring("d2");
  // R --x--> R --x--> R in degrees 2, 1, 0.
  auto x = parse_complex(a, R"(
[complex]
kind = "free_complex"
degrees = [2, 1, 0]
ranks = [1, 1, 1]
diffs = [[["x"]], [["x"]]]
)");
  auto h = homology_dims(x);
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(h[0], 1u);
  EXPECT_EQ(h[2], 1u);

  auto s = parse_complex(a, "[complex]\nkind = \"shifted_module\"\nshift = -2\n[complex.module]\nkind = \"builtin\"\nname = \"residue_field\"\n");
  EXPECT_EQ(*homology(s).inf, -2);
  auto m = parse_complex(a, "[module]\nkind = \"builtin\"\nname = \"free\"\nrank = 1\n");
  EXPECT_EQ(*homology(m).sup, 0);

  ErrorKind kind{};
  auto msg = error_of([&] {
    parse_complex(a, "[complex]\nkind = \"free_complex\"\ndegrees = [1, 0]\nranks = [1, 1]\ndiffs = [[[\"1\"]]]\n");
  }, &kind);
  EXPECT_TRUE(msg.empty()) << msg;
  msg = error_of([&] {
    parse_complex(a, "[complex]\nkind = \"free_complex\"\ndegrees = [2, 1, 0]\nranks = [1, 1, 1]\ndiffs = [[[\"1\"]], [[\"1\"]]]\n");
  }, &kind);
  EXPECT_EQ(kind, ErrorKind::InvalidComplex) << msg;
}

TEST(Io, ShippedCorpusFilesMatchBuiltins) {
  for (const auto& name : corpus_names()) {
    const std::string path = std::string(DCX_SOURCE_DIR) + "/corpus/" + name + ".toml";
    const std::string text = read_file(path);
    EXPECT_EQ(text, corpus_toml(name)) << name;
    auto a = parse_ring(text, path);
    EXPECT_TRUE(a->same_structure(*corpus_ring(name))) << name;
    EXPECT_TRUE(load_ring(path)->same_structure(*load_ring("builtin:" + name))) << name;
  }
}

TEST(Io, RoundTrip) {
  std::mt19937_64 rng(61);
  for (const auto& name : corpus_names()) {
    auto a = corpus_ring(name);
    auto b = parse_ring(ring_to_toml(*a));
    ASSERT_TRUE(b->same_structure(*a)) << name;
    ASSERT_EQ(b->generators().size(), a->generators().size());
    for (std::size_t i = 0; i < a->generators().size(); ++i) {
      EXPECT_EQ(b->generators()[i].name, a->generators()[i].name);
      EXPECT_EQ(b->generators()[i].coords, a->generators()[i].coords);
    }
    for (const FgModule& m : {module_free(a, 1), residue_field(a), canonical_module(a), dcx::testing::random_module(a, rng)})
      EXPECT_TRUE(same_module(parse_module(a, module_to_toml(m)), m)) << name;
    auto x = dcx::testing::random_free_complex(a, rng, -1, 2);
    EXPECT_TRUE(same_complex(parse_complex(a, complex_to_toml(x)), x)) << name;
    auto w = shift(complex_of_module(canonical_module(a), 0), 3);
    EXPECT_TRUE(same_complex(parse_complex(a, complex_to_toml(w)), w)) << name;
  }
  auto q = parse_ring("[ring]\nkind = \"monomial_quotient\"\nfield = \"Q\"\nvars = [\"t\"]\nrelations = [\"t^2\"]\n");
  auto qm = parse_module(q, "[module]\nkind = \"actions\"\ndim = 2\nactions = [[[1, 0], [0, 1]], [[0, 0], [\"1/2\", 0]]]\n");
  EXPECT_TRUE(same_module(parse_module(q, module_to_toml(qm)), qm));
  EXPECT_NE(module_to_toml(qm).find("1/2"), std::string::npos);
}

TEST(Io, References) {
  auto a = load_ring("builtin:fat");
  EXPECT_EQ(homology_dims(load_complex(a, "builtin:free:2")).at(0), 6u);
  EXPECT_EQ(homology_dims(load_complex(a, "builtin:residue_field")).at(0), 1u);
  EXPECT_EQ(homology_dims(load_complex(a, "builtin:canonical")).at(0), 3u);
  EXPECT_THROW(load_complex(a, "builtin:free:x"), Error);
  EXPECT_THROW(load_complex(a, "builtin:nothing"), Error);
  EXPECT_THROW(load_ring("builtin:nothing"), Error);
  EXPECT_THROW(load_ring("/nonexistent/ring.toml"), Error);
  EXPECT_EQ(reference_hash("builtin:fat"), sha256_hex("builtin:fat"));
}

TEST(Io, Sha256) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Io, CertificateJson) {
  EXPECT_EQ(to_json(Certificate::exact()).dump(), R"({"kind":"Exact"})");
  EXPECT_EQ(to_json(Certificate::periodic(2, 1)).dump(), R"({"kind":"Periodic","period":1,"start":2})");
  EXPECT_EQ(to_json(Certificate::up_to_bound(9)).dump(), R"({"kind":"UpToBound","n":9})");
}
