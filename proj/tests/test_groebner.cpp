#include <gtest/gtest.h>

#include "isbv/groebner.hpp"
#include "isbv/parser.hpp"

using namespace isbv;

namespace {
std::vector<QPoly> polys(const VarsPtr& v, std::initializer_list<const char*> xs) {
  std::vector<QPoly> out;
  for (auto x : xs) out.push_back(parse_poly(x, v));
  return out;
}
}  // namespace

TEST(NormalForm, Basics) {
  auto v = VariableSet::make({"x", "y"});
  auto lex = MonomialOrder::lex(2);
  EXPECT_TRUE(normal_form(parse_poly("x^2", v), polys(v, {"x"}), lex).is_zero());
  auto r = normal_form(parse_poly("x^2*y + 3", v), polys(v, {"x*y - 1"}), lex);
  EXPECT_EQ(r, parse_poly("x + 3", v));
}

TEST(Buchberger, Trivial) {
  auto v = VariableSet::make({"x", "y"});
  auto g = groebner_basis(polys(v, {"y", "x"}), MonomialOrder::lex(2));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], parse_poly("y", v));
  EXPECT_EQ(g[1], parse_poly("x", v));
}

TEST(Buchberger, PrincipalConic) {
  auto v = VariableSet::make({"z0", "z1", "z2", "y"});
  auto g = groebner_basis(polys(v, {"z0*z2 - y*z1^2"}), MonomialOrder::grevlex(4));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], parse_poly("z0*z2 - y*z1^2", v).monic());
}

TEST(Buchberger, TwistedCubic) {
  auto v = VariableSet::make({"x", "y", "z", "w"});
  auto gens = polys(v, {"x*z - y^2", "y*w - z^2", "x*w - y*z"});
  auto order = MonomialOrder::grevlex(4);
  auto g = groebner_basis(gens, order);
  EXPECT_TRUE(is_groebner_basis(g, order));
  auto lexg = groebner_basis(gens, MonomialOrder::lex(4));
  EXPECT_TRUE(is_groebner_basis(lexg, MonomialOrder::lex(4)));
  for (const auto& f : gens) EXPECT_TRUE(normal_form(f, lexg, MonomialOrder::lex(4)).is_zero());
}

TEST(Buchberger, Cyclic4) {
  auto v = VariableSet::make({"a", "b", "c", "d"});
  auto gens = polys(v, {"a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"});
  auto order = MonomialOrder::grevlex(4);
  auto g = groebner_basis(gens, order);
  EXPECT_TRUE(is_groebner_basis(g, order));
  EXPECT_EQ(g.size(), 7u);
  auto lifted = groebner_basis_lifted(gens, order);
  ASSERT_EQ(lifted.basis.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_EQ(lifted.basis[i], g[i]);
    QPoly acc(v, Domain::rationals());
    for (std::size_t j = 0; j < gens.size(); ++j) acc += lifted.cofactors[i][j] * gens[j];
    EXPECT_EQ(acc, g[i]);
  }
}

TEST(Buchberger, BudgetExceeded) {
  auto v = VariableSet::make({"a", "b", "c", "d"});
  auto gens = polys(v, {"a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"});
  GroebnerOptions opts;
  opts.max_reductions = 2;
  EXPECT_THROW(groebner_basis(gens, MonomialOrder::grevlex(4), opts), BudgetExceeded);
}

TEST(Ideal, MembershipAndElimination) {
  auto v = VariableSet::make({"x", "y"});
  Ideal<Rational> I(polys(v, {"x"}));
  auto lex = MonomialOrder::lex(2);
  EXPECT_TRUE(ideal_member(parse_poly("0", v), I, lex));
  EXPECT_TRUE(ideal_member(parse_poly("x*y + x^3", v), I, lex));
  EXPECT_FALSE(ideal_member(parse_poly("1", v), I, lex));
  auto E = eliminate(I, {0});
  ASSERT_EQ(E.generators().size(), 1u);
  EXPECT_TRUE(E.generators()[0].is_zero());
}

TEST(Ideal, Saturation) {
  auto v = VariableSet::make({"x", "y"});
  auto x = parse_poly("x", v);
  auto s1 = saturate(Ideal<Rational>(polys(v, {"x*y"})), x);
  EXPECT_TRUE(ideals_equal(s1, Ideal<Rational>(polys(v, {"y"}))));
  auto s2 = saturate(Ideal<Rational>(polys(v, {"x^2", "x*y"})), x);
  EXPECT_TRUE(ideals_equal(s2, Ideal<Rational>(polys(v, {"1"}))));
  auto y = parse_poly("y", v);
  auto s3 = saturate(Ideal<Rational>(polys(v, {"x^2", "x*y"})), y);
  EXPECT_TRUE(ideals_equal(s3, Ideal<Rational>(polys(v, {"x"}))));
}

TEST(TangentCone, SmoothPointGivesLinearForm) {
  auto v = VariableSet::make({"x", "y", "z"});
  auto cone = tangent_cone_at_origin(polys(v, {"x + y^2 - z^3"}));
  ASSERT_EQ(cone.size(), 1u);
  EXPECT_EQ(cone[0], parse_poly("x", v));
}

TEST(TangentCone, NodeAndCusp) {
  auto v = VariableSet::make({"x", "y"});
  auto node = tangent_cone_at_origin(polys(v, {"y^2 - x^2 - x^3"}));
  ASSERT_EQ(node.size(), 1u);
  EXPECT_EQ(node[0].block_degree(std::vector<std::size_t>{0, 1}), 2u);
  auto cusp = tangent_cone_at_origin(polys(v, {"y^2 - x^3"}));
  ASSERT_EQ(cusp.size(), 1u);
  EXPECT_EQ(cusp[0], parse_poly("y^2", v));
}

TEST(TangentCone, RequiresPointOnVariety) {
  auto v = VariableSet::make({"x", "y"});
  EXPECT_THROW(tangent_cone_at_origin(polys(v, {"x + 1"})), std::invalid_argument);
}

TEST(LocalEliminate, NoUnitVariableLeavesPresentation) {
  auto v = VariableSet::make({"x", "y"});
  auto lp = local_eliminate_at_origin(polys(v, {"x*y", "x^2 - y^3"}));
  EXPECT_TRUE(lp.trail.empty());
  EXPECT_EQ(lp.reduced.size(), 2u);
}

TEST(LocalEliminate, IVIIChart) {
  auto v = VariableSet::make({"x", "y", "z0", "z1", "z2", "z'0", "z'1", "z'2"});
  auto gens = polys(v, {"x*z0^2 + y*z1^2 - z2^2", "z'0^2 + y*z'1^2 - z'2^2"});
  auto lp = local_eliminate(gens, Chart{{"z1", "z'1"}}, ChartPoint<Rational>{});
  ASSERT_EQ(lp.trail.size(), 1u);
  EXPECT_EQ(v->name(lp.trail[0].var), "y");
  EXPECT_EQ(lp.trail[0].value, parse_poly("z2^2 - x*z0^2", v));
  ASSERT_EQ(lp.reduced.size(), 1u);
  EXPECT_EQ(lp.reduced[0], parse_poly("z'0^2 + z2^2 - x*z0^2 - z'2^2", v));
}
