// Exercises the shared library through its C header only.
#include <gtest/gtest.h>
#include <json.hpp>

#include <string>
#include <thread>

#include "isbv.h"

namespace {

const std::string kData = ISBV_TEST_DATA;

struct Reg {
  isbv_registry* r = nullptr;
  Reg() { EXPECT_EQ(isbv_registry_create(&r), ISBV_OK); }
  ~Reg() { isbv_registry_destroy(r); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  isbv_string_free(s);
  return out;
}

}  // namespace

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(isbv_version(), "0.1.0");
  EXPECT_STREQ(isbv_status_string(ISBV_OK), "ok");
  EXPECT_STREQ(isbv_status_string(ISBV_ERR_UNKNOWN_MODEL), "unknown model");
  EXPECT_STREQ(isbv_status_string(static_cast<isbv_status>(99)), "unknown status");
}

TEST(CApi, ListsBuiltinsAndUserModels) {
  Reg reg;
  EXPECT_EQ(isbv_registry_size(reg.r), 7u);
  char* text = nullptr;
  ASSERT_EQ(isbv_registry_list(reg.r, &text), ISBV_OK);
  const std::string list = take(text);
  for (const char* name : {"i-ii", "ii-ii", "iii-ii", "iv-ii", "iv-iv-meet", "iv-iv-disjoint", "segre-d2"})
    EXPECT_NE(list.find(std::string(name) + "\t"), std::string::npos) << name;
  ASSERT_EQ(isbv_registry_load_file(reg.r, (kData + "/conic-ii.json").c_str()), ISBV_OK) << isbv_last_error();
  EXPECT_EQ(isbv_registry_size(reg.r), 8u);
  EXPECT_EQ(isbv_registry_load_file(reg.r, (kData + "/conic-ii.json").c_str()), ISBV_ERR_VALIDATION);
  EXPECT_NE(std::string(isbv_last_error()).find("duplicate"), std::string::npos);
}

TEST(CApi, LoadErrors) {
  Reg reg;
  EXPECT_EQ(isbv_registry_load_file(reg.r, (kData + "/missing.json").c_str()), ISBV_ERR_IO);
  EXPECT_EQ(isbv_registry_load_file(reg.r, (kData + "/bad-unknown-field.json").c_str()), ISBV_ERR_SCHEMA);
  EXPECT_NE(std::string(isbv_last_error()).find("colour"), std::string::npos);
  EXPECT_EQ(isbv_registry_load_file(reg.r, (kData + "/bad-syntax.json").c_str()), ISBV_ERR_SCHEMA);
  EXPECT_EQ(isbv_registry_load_file(reg.r, (kData + "/bad-polynomial.json").c_str()), ISBV_ERR_PARSE);
  EXPECT_EQ(isbv_registry_load_file(reg.r, nullptr), ISBV_ERR_ARGUMENT);
  EXPECT_EQ(isbv_registry_size(reg.r), 7u);
  EXPECT_EQ(isbv_registry_create(nullptr), ISBV_ERR_ARGUMENT);
}

TEST(CApi, VerifyPassAndFail) {
  Reg reg;
  char* report = nullptr;
  int ok = -1;
  ASSERT_EQ(isbv_verify(reg.r, R"({"models": ["i-ii"], "checks": ["relations", "span"], "stable": true})", &report, &ok),
            ISBV_OK)
      << isbv_last_error();
  EXPECT_EQ(ok, 1);
  const auto j = nlohmann::json::parse(take(report));
  EXPECT_EQ(j["summary"]["pass"], 2);
  EXPECT_EQ(j["checks"][1]["name"], "span");

  ASSERT_EQ(isbv_verify(reg.r, R"({"models": ["i-ii"], "checks": ["span"], "mutations": ["drop-row:7"]})", &report, &ok),
            ISBV_OK);
  EXPECT_EQ(ok, 0);
  const auto f = nlohmann::json::parse(take(report));
  EXPECT_EQ(f["checks"][0]["status"], "fail");
  EXPECT_EQ(f["checks"][0]["witness"]["missing_rows"][0], 7);
}

TEST(CApi, VerifyErrors) {
  Reg reg;
  char* report = nullptr;
  int ok = 0;
  EXPECT_EQ(isbv_verify(reg.r, R"({"models": ["v-v"]})", &report, &ok), ISBV_ERR_UNKNOWN_MODEL);
  EXPECT_EQ(isbv_verify(reg.r, R"({"models": ["i-ii"], "checks": ["spam"]})", &report, &ok), ISBV_ERR_UNKNOWN_CHECK);
  EXPECT_EQ(isbv_verify(reg.r, R"({"models": ["i-ii"], "colour": 1})", &report, &ok), ISBV_ERR_SCHEMA);
  EXPECT_EQ(isbv_verify(reg.r, R"({"models": )", &report, &ok), ISBV_ERR_PARSE);
  EXPECT_EQ(isbv_verify(reg.r, R"({"models": ["i-ii"], "field": "p:2"})", &report, &ok), ISBV_ERR_ARGUMENT);
  EXPECT_EQ(isbv_verify(reg.r, R"({"models": ["i-ii"], "mutations": ["melt:1"]})", &report, &ok), ISBV_ERR_ARGUMENT);
  EXPECT_EQ(isbv_verify(reg.r, nullptr, &report, &ok), ISBV_ERR_ARGUMENT);
  EXPECT_EQ(report, nullptr);
}

TEST(CApi, Derive) {
  Reg reg;
  char* text = nullptr;
  size_t n = 0;
  ASSERT_EQ(isbv_derive(reg.r, "i-ii", 2, &text, &n), ISBV_OK);
  EXPECT_EQ(n, 20u);
  EXPECT_NE(take(text).find("row 20 = "), std::string::npos);
  ASSERT_EQ(isbv_derive(reg.r, "iii-ii", 2, &text, &n), ISBV_OK);
  take(text);
  EXPECT_EQ(n, 20u);
  ASSERT_EQ(isbv_derive(reg.r, "i-ii", 1, &text, &n), ISBV_OK);
  take(text);
  EXPECT_EQ(n, 0u);
  EXPECT_EQ(isbv_derive(reg.r, "ii-ii", 2, &text, &n), ISBV_ERR_ARGUMENT);
  EXPECT_EQ(isbv_derive(reg.r, "v-v", 2, &text, &n), ISBV_ERR_UNKNOWN_MODEL);
}

TEST(CApi, Enumerate) {
  Reg reg;
  char* text = nullptr;
  uint64_t points = 0, singular = 0;
  ASSERT_EQ(isbv_enumerate(reg.r, "ii-ii", 5, "1,1", 0, 1, &text, &points, &singular), ISBV_OK);
  take(text);
  EXPECT_EQ(points, 36u);
  ASSERT_EQ(isbv_enumerate(reg.r, "ii-ii", 5, "1,0", 0, 1, &text, &points, &singular), ISBV_OK);
  take(text);
  EXPECT_EQ(points, 121u);
  ASSERT_EQ(isbv_enumerate(reg.r, "iv-iv-meet", 3, nullptr, 0, 2, &text, &points, &singular), ISBV_OK);
  EXPECT_NE(take(text).find("singular points: none"), std::string::npos);
  EXPECT_EQ(singular, 0u);
  ASSERT_EQ(isbv_enumerate(reg.r, "i-ii", 3, nullptr, 1, 1, &text, nullptr, &singular), ISBV_OK);
  const std::string s = take(text);
  EXPECT_EQ(s.find("examined"), std::string::npos);
  EXPECT_NE(s.find("y=0 (1:0:0:0:0:0:0:0:0)"), std::string::npos);
  EXPECT_GT(singular, 0u);
  EXPECT_EQ(isbv_enumerate(reg.r, "i-ii", 2, nullptr, 0, 1, &text, nullptr, nullptr), ISBV_ERR_ARGUMENT);
  EXPECT_EQ(isbv_enumerate(reg.r, "ii-ii", 5, "1", 0, 1, &text, nullptr, nullptr), ISBV_ERR_ARGUMENT);
  EXPECT_EQ(isbv_enumerate(reg.r, "ii-ii", 5, "1,q", 0, 1, &text, nullptr, nullptr), ISBV_ERR_ARGUMENT);
}

TEST(CApi, LastErrorIsPerThread) {
  Reg reg;
  char* text = nullptr;
  EXPECT_EQ(isbv_derive(reg.r, "v-v", 2, &text, nullptr), ISBV_ERR_UNKNOWN_MODEL);
  std::string other;
  std::thread t([&] { other = isbv_last_error(); });
  t.join();
  EXPECT_EQ(other, "");
  EXPECT_NE(std::string(isbv_last_error()).find("v-v"), std::string::npos);
}
