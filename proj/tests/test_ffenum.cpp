#include <gtest/gtest.h>

#include "isbv/ffenum.hpp"
#include "isbv/parser.hpp"

using namespace isbv;

TEST(Ambient, Counts) {
  EXPECT_EQ(ambient_count({{}, {{0, 1, 2}}}, 5), 31u);
  EXPECT_EQ(ambient_count({{0, 1}, {{2, 3}}}, 3), 36u);
}

TEST(Enumerate, ProjectivePlaneAndConic) {
  auto v = VariableSet::make({"a", "b", "c"});
  Ambient amb{{}, {{0, 1, 2}}};
  auto zero = enumerate_points({parse_poly("0", v)}, amb, 5);
  EXPECT_EQ(zero.on_variety, 31u);
  auto conic = enumerate_points({parse_poly("a^2 + b^2 - c^2", v)}, amb, 5);
  EXPECT_EQ(conic.on_variety, 6u);
  EXPECT_EQ(conic.examined, 31u);
}

TEST(Enumerate, SingularPointOfNodalCubic) {
  auto v = VariableSet::make({"a", "b", "c"});
  EnumerateOptions o;
  o.smooth_rank = 1;
  o.collect_points = true;
  auto r = enumerate_points({parse_poly("b^2*c - a^2*(a + c)", v)}, {{}, {{0, 1, 2}}}, 7, o);
  ASSERT_EQ(r.singular.size(), 1u);
  EXPECT_EQ(r.singular[0].coords, (std::vector<std::uint32_t>{0, 0, 1}));
  EXPECT_EQ(r.points.size(), r.on_variety);
}

TEST(Enumerate, RejectsBadPrimes) {
  auto v = VariableSet::make({"a"});
  EXPECT_THROW(enumerate_points({parse_poly("a", v)}, {{0}, {}}, 2), DomainError);
  EXPECT_THROW(enumerate_points({parse_poly("a", v)}, {{0}, {}}, 9), DomainError);
  EXPECT_THROW(enumerate_points({parse_poly("1/3*a", v, ParseOptions{true})}, {{0}, {}}, 3), DomainError);
}

TEST(Enumerate, ThreadsAgreeWithSerial) {
  auto r = Registry::builtin();
  const auto& m = r.get("iv-iv-meet");
  auto a = smoothness_scan(m, 5, 1);
  auto b = smoothness_scan(m, 5, 4);
  EXPECT_EQ(a.on_variety, b.on_variety);
  EXPECT_EQ(a.examined, b.examined);
  EXPECT_EQ(a.singular.size(), b.singular.size());
}

TEST(Fibers, IIIICountsMatchClosedForm) {
  auto r = Registry::builtin();
  const auto& m = r.get("ii-ii");
  for (std::uint32_t p : {3u, 5u, 7u}) {
    auto s11 = fiber_scan(m, {{"x", 1}, {"y", 1}}, p);
    EXPECT_EQ(s11.on_variety, (p + 1) * (p + 1));
    auto s10 = fiber_scan(m, {{"x", 1}, {"y", 0}}, p);
    EXPECT_EQ(s10.on_variety, (2 * p + 1) * (2 * p + 1));
    EXPECT_EQ(*diagonal_fiber_count(m, {{"x", 1}, {"y", 0}}, p), s10.on_variety);
    EXPECT_EQ(s10.examined, (p * p + p + 1) * (p * p + p + 1));
  }
  EXPECT_EQ(fiber_scan(m, {{"x", 1}, {"y", 1}}, 5).on_variety, 36u);
  EXPECT_EQ(fiber_scan(m, {{"x", 1}, {"y", 0}}, 5).on_variety, 121u);
}

TEST(Conics, ClosedForm) {
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    auto v = VariableSet::make({"a", "b", "c"});
    for (int a = 0; a < 3; ++a)
      for (int b = -1; b < 2; ++b)
        for (int c = -2; c < 1; ++c) {
          auto f = parse_poly(std::to_string(a) + "*a^2 + " + std::to_string(b) + "*b^2 + " + std::to_string(c) + "*c^2",
                              v);
          auto n = enumerate_points({f}, {{}, {{0, 1, 2}}}, p).on_variety;
          EXPECT_EQ(diagonal_conic_count(a, b, c, p), n) << a << " " << b << " " << c << " mod " << p;
        }
  }
  EXPECT_EQ(quadratic_character(2, 7), 1);
  EXPECT_EQ(quadratic_character(3, 7), -1);
  EXPECT_EQ(quadratic_character(14, 7), 0);
}

TEST(Smoothness, IVIVMeetHasNoSingularPoints) {
  auto r = Registry::builtin();
  auto s = smoothness_scan(r.get("iv-iv-meet"), 3);
  EXPECT_TRUE(s.singular.empty());
  EXPECT_EQ(s.examined, ambient_count(model_ambient(r.get("iv-iv-meet")), 3));
}

TEST(Smoothness, IIISingularOnlyOverY0) {
  auto r = Registry::builtin();
  const auto& m = r.get("i-ii");
  auto s = smoothness_scan(m, 3);
  EXPECT_EQ(s.examined, ambient_count(model_ambient(m), 3));
  ASSERT_FALSE(s.singular.empty());
  const auto& v = m.descended_vars();
  const std::size_t y = v->require("y"), x0 = v->require("x0");
  for (const auto& pt : s.singular) {
    EXPECT_EQ(pt.coords[y], 0u);
    EXPECT_EQ(pt.coords[x0], 1u);
    for (std::size_t i = 1; i <= 8; ++i) EXPECT_EQ(pt.coords[v->require("x" + std::to_string(i))], 0u);
  }
  EXPECT_EQ(s.singular.size(), 3u);
}

TEST(Specialization, IIIRankEightEverywhereMod3) {
  auto r = Registry::builtin();
  const auto& m = r.get("i-ii");
  auto scan = specialization_scan(m, *m.claims().freeness, 3);
  EXPECT_EQ(scan.dims.size(), 243u);
  for (const auto& [pt, d] : scan.dims) {
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(*d, 8u);
  }
}

TEST(Specialization, IIIIIAtOrigin) {
  auto r = Registry::builtin();
  const auto& m = r.get("iii-ii");
  auto scan = specialization_scan(m, *m.claims().freeness, 5, 20, 7);
  EXPECT_TRUE(scan.sampled);
  EXPECT_EQ(scan.dims.size(), 20u);
  for (const auto& [pt, d] : scan.dims) EXPECT_EQ(d, std::optional<std::size_t>(8));
}
