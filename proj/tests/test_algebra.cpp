#include <gtest/gtest.h>

#include "dcx/algebra.hpp"
#include "dcx/fgmod.hpp"

using namespace dcx;

namespace {

const Field F = Field::prime(101);

Algebra::Ptr quotient_ring(std::vector<std::string> vars, std::vector<std::string> rels, Field f = F) {
  return algebra_from_monomial_quotient(f, vars, rels);
}

StructureTable two_dim_table(const Field& f, long long xx) {
  // basis {1, x}
  StructureTable t(2, std::vector<std::vector<Scalar>>(2, std::vector<Scalar>(2, Scalar(f, 0))));
  t[0][0][0] = Scalar(f, 1);
  t[0][1][1] = Scalar(f, 1);
  t[1][0][1] = Scalar(f, 1);
  t[1][1][0] = Scalar(f, xx);
  return t;
}

// Permutation matrix of a (x) b -> b (x) a on row-major bases.
Mat swap_map(std::size_t na, std::size_t nb) {
  Mat p(F, na * nb, na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) p.set_int(j * na + i, i * nb + j, 1);
  return p;
}

}  // namespace

TEST(Algebra, FromStructure) {
  const Field f2 = Field::prime(2);
  StructureTable one{{{Scalar(f2, 1)}}};
  auto k = Algebra::from_structure(f2, {"1"}, one, Mat::column(f2, {1}));
  EXPECT_EQ(k->dim(), 1u);
  EXPECT_EQ(k->local().m_basis.cols(), 0u);

  auto d2 = Algebra::from_structure(F, {"1", "x"}, two_dim_table(F, 0), Mat::column(F, {1, 0}));
  EXPECT_EQ(d2->local().m_basis.cols(), 1u);
  EXPECT_EQ(d2->local().nilpotency_index, 2);

  const Field q = Field::rational();
  try {
    Algebra::from_structure(q, {"1", "x"}, two_dim_table(q, 1), Mat::column(q, {1, 0}));
    FAIL() << "x^2 = 1 accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotLocal);
  }
}

TEST(Algebra, RejectsBrokenTables) {
  StructureTable t = two_dim_table(F, 0);
  t[0][1][1] = Scalar(F, 0);  // 1*x = 0 but x*1 = x
  try {
    Algebra::from_structure(F, {"1", "x"}, t, Mat::column(F, {1, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCommutative);
    EXPECT_NE(std::string(e.what()).find("x"), std::string::npos);
  }
  // Commutative but not associative: basis {1, x, y} with x*x = y, x*y = 0, y*y = y.
  StructureTable n(3, std::vector<std::vector<Scalar>>(3, std::vector<Scalar>(3, Scalar(F, 0))));
  for (int i = 0; i < 3; ++i) n[0][i][i] = n[i][0][i] = Scalar(F, 1);
  n[1][1][2] = Scalar(F, 1);
  n[2][2][2] = Scalar(F, 1);
  try {
    Algebra::from_structure(F, {"1", "x", "y"}, n, Mat::column(F, {1, 0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAssociative);
  }
}

TEST(Algebra, MonomialQuotients) {
  auto d2 = quotient_ring({"x"}, {"x^2"});
  EXPECT_EQ(d2->labels(), (std::vector<std::string>{"1", "x"}));
  auto fat = quotient_ring({"x", "y"}, {"x^2", "x*y", "y^2"});
  EXPECT_EQ(fat->dim(), 3u);
  EXPECT_EQ(fat->labels(), (std::vector<std::string>{"1", "x", "y"}));
  EXPECT_EQ(fat->local().socle_basis.cols(), 2u);
  EXPECT_EQ(rank(Mat::hstack(fat->local().socle_basis, fat->local().m_basis)), 2u);
  auto ci2 = quotient_ring({"x", "y"}, {"x^2", "y^2"});
  EXPECT_EQ(ci2->labels(), (std::vector<std::string>{"1", "x", "y", "x*y"}));
  try {
    quotient_ring({"x"}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotArtinian);
  }
}

TEST(Algebra, LocalData) {
  auto k = quotient_ring({"x"}, {"x"});
  EXPECT_EQ(k->dim(), 1u);
  EXPECT_EQ(k->local().socle_basis.cols(), 1u);
  EXPECT_EQ(k->local().nilpotency_index, 1);
  auto d3 = quotient_ring({"x"}, {"x^3"});
  EXPECT_EQ(d3->local().socle_basis, Mat::column(F, {0, 0, 1}));
  EXPECT_EQ(d3->local().nilpotency_index, 3);
  EXPECT_EQ(d3->local().embedding_dimension(), 1u);
  auto fat = quotient_ring({"x", "y"}, {"x^2", "x*y", "y^2"});
  EXPECT_EQ(fat->local().socle_basis.cols(), 2u);
  EXPECT_EQ(fat->local().nilpotency_index, 2);
  EXPECT_EQ(fat->local().embedding_dimension(), 2u);
}

TEST(Algebra, LocalityInSmallCharacteristic) {
  // Over F_2 the trace test is unusable for dim 2: k[x]/(x^2) still has to be found local.
  auto d2 = quotient_ring({"x"}, {"x^2"}, Field::prime(2));
  EXPECT_EQ(d2->local().m_basis.cols(), 1u);
  auto d4 = quotient_ring({"x"}, {"x^4"}, Field::prime(3));
  EXPECT_EQ(d4->local().nilpotency_index, 4);
}

TEST(Algebra, TensorProducts) {
  auto d2x = quotient_ring({"x"}, {"x^2"});
  auto d2y = quotient_ring({"y"}, {"y^2"});
  auto k = quotient_ring({"t"}, {"t"});
  auto ak = tensor_algebras(d2x, k);
  EXPECT_TRUE(is_algebra_isomorphism(*d2x, *ak, Mat::identity(F, 2)));
  auto t = tensor_algebras(d2x, d2y);
  auto ci2 = quotient_ring({"x", "y"}, {"x^2", "y^2"});
  // row-major (1,1),(1,y),(x,1),(x,y) against ci2's 1, x, y, xy
  Mat phi(F, 4, 4);
  phi.set_int(0, 0, 1);
  phi.set_int(2, 1, 1);
  phi.set_int(1, 2, 1);
  phi.set_int(3, 3, 1);
  EXPECT_TRUE(is_algebra_isomorphism(*t, *ci2, phi));
  EXPECT_FALSE(is_algebra_isomorphism(*t, *ci2, Mat::identity(F, 4).scaled(Scalar(F, 2))));

  auto fat = quotient_ring({"x", "y"}, {"x^2", "x*y", "y^2"});
  auto prod = tensor_algebras(fat, fat);
  EXPECT_EQ(prod->dim(), 9u);
  EXPECT_EQ(prod->local().embedding_dimension(), 4u);
  EXPECT_EQ(prod->generators().size(), 4u);

  auto d3 = quotient_ring({"z"}, {"z^3"});
  auto ab = tensor_algebras(fat, d3), ba = tensor_algebras(d3, fat);
  EXPECT_TRUE(is_algebra_isomorphism(*ab, *ba, swap_map(3, 3)));
  auto ab2 = tensor_algebras(d2x, fat), ba2 = tensor_algebras(fat, d2x);
  EXPECT_TRUE(is_algebra_isomorphism(*ab2, *ba2, swap_map(2, 3)));
}

TEST(Algebra, TrivialExtensions) {
  auto fat = quotient_ring({"x", "y"}, {"x^2", "x*y", "y^2"});
  auto same = trivial_extension(fat, module_free(fat, 0));
  EXPECT_TRUE(same->same_structure(*fat));

  auto k = quotient_ring({"t"}, {"t"});
  auto kk = trivial_extension(k, residue_field(k));
  auto d2 = quotient_ring({"x"}, {"x^2"});
  EXPECT_TRUE(is_algebra_isomorphism(*kk, *d2, Mat::identity(F, 2)));

  auto triv = trivial_extension(fat, k_dual(module_free(fat, 1)));
  EXPECT_EQ(triv->dim(), 6u);
  EXPECT_EQ(triv->local().socle_basis.cols(), 1u);  // type 1
}

TEST(Algebra, ParseElement) {
  auto fat = quotient_ring({"x", "y"}, {"x^2", "x*y", "y^2"});
  EXPECT_EQ(parse_element(*fat, "2*x - y + 1/2"), Mat::column(F, {51, 2, 100}));
  EXPECT_EQ(parse_element(*fat, "(1+x)^2"), Mat::column(F, {1, 2, 0}));
  EXPECT_EQ(parse_element(*fat, "x*y"), Mat::column(F, {0, 0, 0}));
  EXPECT_THROW(parse_element(*fat, "z"), Error);
  EXPECT_THROW(parse_element(*fat, "x +"), Error);
}

TEST(AlgebraProperties, SocleInsideMaximalIdeal) {
  const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> rings = {
      {{"x"}, {"x^2"}}, {{"x"}, {"x^4"}}, {{"x", "y"}, {"x^2", "y^2"}},
      {{"x", "y"}, {"x^3", "x*y", "y^2"}}, {{"x", "y", "z"}, {"x^2", "y^2", "z^2", "x*y"}}};
  for (const auto& [vars, rels] : rings) {
    auto a = quotient_ring(vars, rels);
    const auto& ld = a->local();
    EXPECT_GE(ld.socle_basis.cols(), 1u);
    EXPECT_EQ(ld.m_basis.cols(), a->dim() - 1);
    EXPECT_EQ(rank(Mat::hstack(ld.m_basis, ld.socle_basis)), ld.m_basis.cols());
  }
}
