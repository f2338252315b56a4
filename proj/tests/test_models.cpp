#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "isbv/models.hpp"
#include "isbv/parser.hpp"

using namespace isbv;

namespace {
std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

ModelSpec spec_named(const std::string& name) {
  for (auto& s : builtin_specs())
    if (s.name == name) return s;
  throw std::runtime_error("no builtin " + name);
}
}  // namespace

TEST(Registry, SevenEntriesInOrder) {
  auto r = Registry::builtin();
  ASSERT_EQ(r.size(), 7u);
  std::vector<std::string> names;
  for (const auto& m : r.models()) names.push_back(m.name());
  EXPECT_EQ(names, (std::vector<std::string>{"i-ii", "ii-ii", "iii-ii", "iv-ii", "iv-iv-meet", "iv-iv-disjoint",
                                             "segre-d2"}));
  EXPECT_THROW(r.get("v-v"), ModelError);
}

TEST(Registry, IIIHasTableAndSections) {
  auto r = Registry::builtin();
  const auto& m = r.get("i-ii");
  EXPECT_EQ(m.equations().size(), 20u);
  EXPECT_EQ(m.spec().sections.size(), 9u);
  EXPECT_TRUE(m.has_parametrization());
  EXPECT_TRUE(m.nonvanishing_rows().empty());
  ASSERT_TRUE(m.claims().freeness);
  EXPECT_EQ(m.claims().freeness->basis.size(), 8u);
}

TEST(Registry, IVIVMeetIsP1TimesConic) {
  const auto reg = Registry::builtin();
  const auto& m = reg.get("iv-iv-meet");
  ASSERT_EQ(m.equations().size(), 1u);
  EXPECT_EQ(m.equations()[0], parse_poly("x*z0^2 + y*z1^2 - z2^2", m.vars()));
  EXPECT_EQ(m.spec().blocks.size(), 2u);
  EXPECT_EQ(m.spec().blocks[0].size(), 2u);
}

TEST(Registry, IIIIClaims) {
  const auto reg = Registry::builtin();
  const auto& m = reg.get("ii-ii");
  EXPECT_EQ(m.equations().size(), 2u);
  std::size_t a1 = 0, toric = 0;
  for (const auto& s : m.claims().singularities) {
    a1 += s.kind == SingularityKind::A1Transverse;
    toric += s.kind == SingularityKind::ToricChartIdentity;
  }
  EXPECT_EQ(a1, 4u);
  EXPECT_EQ(toric, 2u);
}

TEST(Registry, DescentToXY) {
  const auto reg = Registry::builtin();
  const auto& m = reg.get("iii-ii");
  EXPECT_EQ(m.descended()[4], parse_poly("2*x*x0^2 - 2*y*x0*x7 + y*x1*x5 + x2*x6", m.descended_vars()));
  const auto& n = reg.get("i-ii");
  EXPECT_EQ(n.descended()[19], parse_poly("x*y*x0*x5 - y*x3*x4 + 4*x7*x8", n.descended_vars()));
}

class Golden : public ::testing::TestWithParam<std::string> {};

TEST_P(Golden, TablesMatchByteWise) {
  const auto reg = Registry::builtin();
  const auto& m = reg.get(GetParam());
  auto rows = read_lines(std::string(ISBV_GOLDEN_DIR) + "/" + GetParam() + ".txt");
  ASSERT_EQ(rows.size(), m.equations().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    EXPECT_EQ(parse_poly(rows[i], m.vars()).to_string(), m.equations()[i].to_string()) << "row " << i + 1;
}

INSTANTIATE_TEST_SUITE_P(Tables, Golden, ::testing::Values("i-ii", "iii-ii"));

TEST(ModelFile, RoundTrip) {
  for (const auto& s : builtin_specs()) {
    std::string text = spec_to_json(s);
    LocalModel a(s), b = load_model(text);
    EXPECT_EQ(spec_to_json(b.spec()), text) << s.name;
    ASSERT_EQ(a.equations().size(), b.equations().size());
    for (std::size_t i = 0; i < a.equations().size(); ++i) EXPECT_EQ(a.equations()[i], b.equations()[i]);
  }
}

TEST(ModelFile, VanishingFailureNamesRow) {
  auto s = spec_named("i-ii");
  s.equations.push_back("x0*x5 - x1*x3");
  try {
    LocalModel m(s);
    FAIL();
  } catch (const ModelError& e) {
    ASSERT_TRUE(e.row());
    EXPECT_EQ(*e.row(), 21u);
  }
}

TEST(ModelFile, NoClaims) {
  auto m = load_model(R"({"name": "conic", "base_vars": ["x", "y"], "blocks": [["z0", "z1", "z2"]],
                          "equations": ["x*z0^2 + y*z1^2 - z2^2"], "codim": 1})");
  EXPECT_TRUE(m.claims().empty());
  EXPECT_EQ(m.equations().size(), 1u);
}

TEST(ModelFile, Rejections) {
  EXPECT_THROW(load_model("{"), ModelError);
  EXPECT_THROW(load_model(R"({"base_vars": []})"), ModelError);
  EXPECT_THROW(load_model(R"({"name": "a", "bogus": 1})"), ModelError);
  // not homogeneous in the block
  EXPECT_THROW(load_model(R"({"name": "a", "base_vars": ["x"], "blocks": [["z0", "z1"]], "equations": ["z0 + z1^2"]})"),
               ModelError);
  // I and III together
  EXPECT_THROW(load_model(R"({"name": "a", "base_vars": ["x", "y"], "blocks": [["z0", "z1"]], "equations": [],
                             "divisors": {"D1": {"type": "I", "coordinate": "x"}, "D3": {"type": "III", "coordinate": "y"}}})"),
               ModelError);
  // shared coordinate
  EXPECT_THROW(load_model(R"({"name": "a", "base_vars": ["x", "y"], "blocks": [["z0", "z1"]], "equations": [],
                             "divisors": {"D2": {"type": "II", "coordinate": "x"}, "D4": {"type": "IV", "coordinate": "x"}}})"),
               ModelError);
  // descent that does not apply
  auto s = spec_named("i-ii");
  s.equations[0] = "s*x0*x5 - s*x1*x2";
  EXPECT_THROW(LocalModel{s}, ModelError);
}

TEST(Degeneration, FourTypes) {
  for (auto t : {DegenerationType::I, DegenerationType::II, DegenerationType::III, DegenerationType::IV}) {
    EXPECT_EQ(degeneration_from_string(to_string(t)), t);
    EXPECT_FALSE(describe(t).empty());
  }
  EXPECT_THROW(degeneration_from_string("V"), ModelError);
}
