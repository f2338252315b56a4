#include <gtest/gtest.h>

#include "isbv/linalg.hpp"
#include "isbv/parser.hpp"

using namespace isbv;

namespace {
Matrix<Rational> qmat(std::vector<std::vector<long>> rows) {
  Matrix<Rational> m(rows.size(), rows.empty() ? 0 : rows[0].size(), Rational(0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
  return m;
}
}  // namespace

TEST(Rank, Identity) {
  EXPECT_EQ(rank(qmat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 3u);
  EXPECT_EQ(rank(qmat({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}})), 2u);
  EXPECT_EQ(rank(qmat({{0, 0}, {0, 0}})), 0u);
}

TEST(Rank, RationalEntries) {
  auto m = qmat({{1, 2}, {3, 4}});
  m.at(0, 0) = Rational(1, 3);
  m.at(0, 1) = Rational(2, 3);
  m.at(1, 0) = Rational(1, 2);
  m.at(1, 1) = 1;
  EXPECT_EQ(rank(m), 1u);
}

TEST(Rank, ModPDropsBelowQ) {
  auto m = qmat({{1, 2}, {3, 1}});
  EXPECT_EQ(rank(m), 2u);
  EXPECT_EQ(rank(reduce_mod(m, 5)), 1u);
  EXPECT_EQ(rank(reduce_mod(m, 7)), 2u);
}

TEST(Nullspace, ZeroMatrix) {
  auto ns = nullspace(qmat({{0, 0}, {0, 0}}));
  EXPECT_EQ(ns.size(), 2u);
}

TEST(Nullspace, VectorsAreKernel) {
  auto m = qmat({{1, 2, 3, 4}, {2, 4, 7, 9}});
  auto ns = nullspace(m);
  ASSERT_EQ(ns.size(), 2u);
  for (const auto& v : ns)
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Rational acc = 0;
      for (std::size_t j = 0; j < m.cols(); ++j) acc += m.at(i, j) * v[j];
      EXPECT_EQ(acc, 0);
    }
  auto fp = nullspace(reduce_mod(m, 3));
  EXPECT_EQ(fp.size(), 2u);
}

TEST(Solve, ConsistentAndInconsistent) {
  auto m = qmat({{1, 1}, {1, -1}});
  auto x = solve(m, {Rational(3), Rational(1)});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 2);
  EXPECT_EQ((*x)[1], 1);
  EXPECT_FALSE(solve(qmat({{1, 1}, {2, 2}}), {Rational(1), Rational(3)}));
}

TEST(GenericRank, DependsOnParameter) {
  auto v = VariableSet::make({"s"});
  auto P = [&](const char* t) { return parse_poly(t, v); };
  Matrix<QPoly> m(2, 2, P("0"));
  m.at(0, 0) = P("s");
  m.at(0, 1) = P("1");
  m.at(1, 0) = P("s^2");
  m.at(1, 1) = P("s");
  EXPECT_EQ(generic_rank(m), 1u);
  m.at(1, 1) = P("s + 1");
  EXPECT_EQ(generic_rank(m), 2u);
}

TEST(QuadraticRank, Examples) {
  auto v = VariableSet::make({"x", "y", "z", "w"});
  EXPECT_EQ(quadratic_rank(parse_poly("x^2 + y^2 + z^2 + w^2", v), {0, 1, 2, 3}), 4u);
  auto d = VariableSet::make({"x", "z0", "z2", "z'0", "z'2"});
  EXPECT_EQ(quadratic_rank(parse_poly("z'0^2 + z2^2 - z'2^2", d), {0, 1, 2, 3, 4}), 3u);
  auto e = VariableSet::make({"x", "z0", "z1", "z2", "z3"});
  auto f = parse_poly("x*z0^2 + z1^2 + z2^2 + z3^2", e);
  auto q2 = f.homogeneous_part({0, 1, 2, 3, 4}, 2);
  EXPECT_EQ(quadratic_rank(q2, {0, 1, 2, 3, 4}), 3u);
  auto t = VariableSet::make({"z1", "z2", "z'1", "z'2"});
  EXPECT_EQ(quadratic_rank(parse_poly("z2^2 - z'2^2 - z1^2 + z'1^2", t), {0, 1, 2, 3}), 4u);
  EXPECT_THROW(quadratic_rank(parse_poly("x + y^2", v), {0, 1}), std::invalid_argument);
}

TEST(QuadraticRank, CrossTermsAndParameters) {
  auto v = VariableSet::make({"a", "b", "c", "d", "l"});
  EXPECT_EQ(quadratic_rank(parse_poly("a*d - b*c", v), {0, 1, 2, 3}), 4u);
  EXPECT_EQ(quadratic_rank(parse_poly("(a + b)^2", v), {0, 1}), 1u);
  EXPECT_EQ(quadratic_rank(parse_poly("l*a^2 + b^2", v), {0, 1}), 2u);
}

TEST(GradedPiece, ConicAndProducts) {
  auto v = VariableSet::make({"x", "y", "z0", "z1", "z2"});
  std::vector<QPoly> g{parse_poly("x*z0^2 + y*z1^2 - z2^2", v)};
  std::vector<std::vector<std::size_t>> blocks{{2, 3, 4}};
  EXPECT_EQ(graded_piece_dim(g, blocks, 1, {}), 3u);
  EXPECT_EQ(graded_piece_dim(g, blocks, 2, {}), 5u);
  EXPECT_EQ(graded_piece_dim(g, blocks, 3, {}), 7u);
  std::map<std::size_t, Rational> origin{{0, Rational(0)}, {1, Rational(0)}};
  EXPECT_EQ(graded_piece_dim(g, blocks, 2, origin), 5u);
  std::vector<QPoly> bad{parse_poly("z0 + z1^2", v)};
  EXPECT_THROW(graded_piece_dim(bad, blocks, 2, {}), HomogeneityError);
  EXPECT_EQ(multidegree_count({{0, 1, 2}, {3, 4, 5}}, 2), 36u);
}
