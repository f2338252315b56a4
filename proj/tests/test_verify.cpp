#include <gtest/gtest.h>

#include "isbv/report.hpp"

using namespace isbv;

namespace {

const Registry& reg() {
  static const Registry r = Registry::builtin();
  return r;
}

CheckResult run_on(const std::string& model, const std::string& check, const std::vector<std::string>& mutations = {}) {
  const LocalModel m = mutations.empty() ? reg().get(model) : mutated_model(reg().get(model), mutations);
  return run_check(check, m, CheckConfig{});
}

}  // namespace

TEST(Checks, NamesAndApplicability) {
  EXPECT_EQ(check_names().size(), 7u);
  EXPECT_TRUE(is_check_name("span"));
  EXPECT_FALSE(is_check_name("spam"));
  EXPECT_EQ(applicable_checks(reg().get("i-ii")),
            (std::vector<std::string>{"relations", "span", "freeness", "flatness", "singular"}));
  EXPECT_EQ(applicable_checks(reg().get("segre-d2")), (std::vector<std::string>{"identities"}));
  EXPECT_THROW(run_check("spam", reg().get("i-ii"), {}), std::invalid_argument);
}

TEST(Checks, EveryBuiltinClaimPasses) {
  for (const auto& m : reg().models())
    for (const auto& c : applicable_checks(m)) {
      const auto r = run_check(c, m, CheckConfig{});
      EXPECT_EQ(r.status, CheckStatus::Pass) << m.name() << " " << c << " " << r.witness.dump();
    }
}

TEST(Checks, InapplicableCheckIsSkipped) {
  const auto r = run_on("segre-d2", "freeness");
  EXPECT_EQ(r.status, CheckStatus::Skipped);
  EXPECT_EQ(r.witness["reason"], "not applicable");
}

TEST(Checks, TinyBudgetSkips) {
  CheckConfig cfg;
  cfg.budget = 1;
  const auto r = run_check("freeness", reg().get("i-ii"), cfg);
  EXPECT_EQ(r.status, CheckStatus::Skipped);
  EXPECT_EQ(r.witness["reason"], "budget");
}

TEST(RelationSpace, FortyFiveMinusTwentyFive) {
  for (const char* name : {"i-ii", "iii-ii"}) {
    const auto rs = relation_space(reg().get(name), 2);
    EXPECT_EQ(rs.monomials.size(), 45u) << name;
    EXPECT_EQ(rs.image_dim, 25u) << name;
    EXPECT_EQ(rs.generic_dim, 20u) << name;
    std::vector<std::vector<Rational>> rows;
    for (const auto& e : reg().get(name).equations()) {
      auto v = relation_vector(reg().get(name), rs, e);
      ASSERT_TRUE(v) << name;
      rows.push_back(*v);
      EXPECT_EQ(relation_poly(reg().get(name), rs, *v), e);
    }
    EXPECT_EQ(generic_relation_rank(reg().get(name), rs, rows), 20u) << name;
  }
}

TEST(Derive, ReproducesTables) {
  for (const char* name : {"i-ii", "iii-ii"}) {
    const auto d = derive_relations(reg().get(name), 2);
    EXPECT_EQ(d.independent.size(), 20u) << name;
    ASSERT_EQ(d.table.size(), 20u);
    for (const auto& row : d.table) EXPECT_TRUE(row.has_value()) << name;
    const std::string text = format_derivation(reg().get(name), d);
    EXPECT_NE(text.find("generic dimension: 20 (45 - 25)"), std::string::npos);
    EXPECT_EQ(text.find("not in the constrained"), std::string::npos);
  }
  const auto d1 = derive_relations(reg().get("i-ii"), 1);
  EXPECT_TRUE(d1.independent.empty());
  EXPECT_TRUE(d1.space.nullspace.empty());
  EXPECT_THROW(relation_space(reg().get("ii-ii"), 2), std::invalid_argument);
}

TEST(Mutations, DropRowNamesTheRow) {
  const auto r = run_on("i-ii", "span", {"drop-row:7"});
  EXPECT_EQ(r.status, CheckStatus::Fail);
  EXPECT_EQ(r.witness["missing_rows"], Json::array({7}));
  EXPECT_EQ(run_on("i-ii", "relations", {"drop-row:7"}).status, CheckStatus::Pass);
}

TEST(Mutations, SwappedSectionsBreakVanishing) {
  const auto r = run_on("i-ii", "relations", {"swap-sections:3,4"});
  EXPECT_EQ(r.status, CheckStatus::Fail);
  EXPECT_TRUE(r.witness.contains("first_failure"));
  EXPECT_FALSE(r.witness["first_failure"]["remainder"].get<std::string>().empty());
}

TEST(Mutations, FreenessBasisAndSubring) {
  const auto r = run_on("i-ii", "freeness", {"basis:7=x3*x8"});
  EXPECT_EQ(r.status, CheckStatus::Fail);
  EXPECT_EQ(r.witness["closure"]["determinant"], "0");
  EXPECT_EQ(run_on("i-ii", "freeness", {"defined:xt5=x5"}).status, CheckStatus::Fail);
  EXPECT_EQ(run_on("iii-ii", "freeness", {"basis:7=x4*x6"}).status, CheckStatus::Fail);
  // Another genuine basis of the same module: x1 differs from x1 + x2 by a basis element.
  EXPECT_EQ(run_on("i-ii", "freeness", {"basis:1=x1"}).status, CheckStatus::Pass);
}

TEST(Mutations, IdentityScale) {
  const auto r = run_on("segre-d2", "identities", {"scale:t"});
  EXPECT_EQ(r.status, CheckStatus::Fail);
  EXPECT_EQ(r.witness["identities"][0]["mismatches"][0]["residual_factor"], "t");
}

TEST(Mutations, Rejections) {
  const ModelSpec s = reg().get("i-ii").spec();
  EXPECT_THROW(apply_mutation(s, "drop-row"), std::invalid_argument);
  EXPECT_THROW(apply_mutation(s, "drop-row:99"), std::invalid_argument);
  EXPECT_THROW(apply_mutation(s, "swap-sections:1,1"), std::invalid_argument);
  EXPECT_THROW(apply_mutation(s, "basis:8=x1"), std::invalid_argument);
  EXPECT_THROW(apply_mutation(s, "scale:2"), std::invalid_argument);
  EXPECT_THROW(apply_mutation(s, "melt:1"), std::invalid_argument);
  EXPECT_EQ(apply_mutation(s, "drop-row:1").equations.size(), 19u);
}

TEST(Field, Parsing) {
  EXPECT_EQ(parse_field("Q"), (std::vector<std::uint32_t>{3, 5, 7}));
  EXPECT_EQ(parse_field("p:5"), (std::vector<std::uint32_t>{5}));
  EXPECT_EQ(parse_field("p:3,13"), (std::vector<std::uint32_t>{3, 13}));
  for (const char* bad : {"R", "p:", "p:2", "p:9", "p:3,", "p:x", "p:37"}) EXPECT_THROW(parse_field(bad), std::invalid_argument) << bad;
}

TEST(Config, JsonRoundTrip) {
  RunConfig c;
  c.models = {"i-ii"};
  c.checks = {"span"};
  c.field = "p:5";
  c.jobs = 3;
  c.mutations = {"drop-row:7"};
  const RunConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
  EXPECT_THROW(config_from_json(Json{{"colour", 1}}), std::invalid_argument);
  EXPECT_THROW(config_from_json(Json{{"jobs", "many"}}), std::invalid_argument);
  EXPECT_THROW(config_from_json(Json{{"format", "xml"}}), std::invalid_argument);
}

TEST(Runner, OrderSummaryAndExit) {
  RunConfig c;
  c.models = {"segre-d2", "i-ii"};
  c.field = "p:3";
  const auto r = run_verification(reg(), c);
  ASSERT_EQ(r.checks.size(), 6u);
  EXPECT_EQ(r.checks[0].model, "segre-d2");
  EXPECT_EQ(r.checks[1].name, "relations");
  EXPECT_EQ(r.checks[5].name, "singular");
  EXPECT_EQ(r.pass, 6u);
  EXPECT_TRUE(r.ok());
  const Json j = report_to_json(r);
  EXPECT_EQ(j["summary"]["pass"], 6);
  EXPECT_TRUE(j["run"].contains("versions"));
  EXPECT_EQ(j["run"]["config"]["field"], "p:3");
  for (const auto& e : j["checks"])
    for (const char* key : {"name", "model", "status", "witness", "millis"}) EXPECT_TRUE(e.contains(key)) << key;
}

TEST(Runner, SkipCountsAsFailureUnlessAllowed) {
  RunConfig c;
  c.models = {"segre-d2"};
  c.checks = {"identities", "freeness"};
  auto r = run_verification(reg(), c);
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_FALSE(r.ok());
  c.allow_skip = true;
  EXPECT_TRUE(run_verification(reg(), c).ok());
}

TEST(Runner, MutationFails) {
  RunConfig c;
  c.models = {"i-ii"};
  c.field = "p:3";
  c.mutations = {"drop-row:7"};
  const auto r = run_verification(reg(), c);
  EXPECT_FALSE(r.ok());
  EXPECT_GT(r.fail, 0u);
}

TEST(Runner, StableReportsAreByteIdenticalAcrossJobCounts) {
  RunConfig c;
  c.all = true;
  c.field = "p:3";
  c.stable = true;
  c.use_cache = false;
  const std::string a = format_report(run_verification(reg(), c));
  const std::string b = format_report(run_verification(reg(), c));
  EXPECT_EQ(a, b);
  c.jobs = 4;
  const auto r4 = run_verification(reg(), c);
  c.jobs = 1;
  const auto r1 = run_verification(reg(), c);
  EXPECT_EQ(report_to_json(r4)["checks"], report_to_json(r1)["checks"]);
  auto rm = r1;
  rm.config.format = "markdown";
  const std::string md = format_report(rm);
  EXPECT_NE(md.find("| model | check | status | ms |"), std::string::npos);
}

TEST(Runner, Errors) {
  RunConfig c;
  EXPECT_THROW(run_verification(reg(), c), std::invalid_argument);
  c.models = {"v-v"};
  EXPECT_THROW(run_verification(reg(), c), UnknownModelError);
  c.models = {"i-ii"};
  c.checks = {"spam"};
  EXPECT_THROW(run_verification(reg(), c), UnknownCheckError);
  c.checks = {};
  c.field = "p:2";
  EXPECT_THROW(run_verification(reg(), c), std::invalid_argument);
}
