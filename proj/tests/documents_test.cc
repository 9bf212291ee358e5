// Copyright 2026 The rrkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rrkit/documents.h"

#include <filesystem>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "rrkit/design.h"
#include "rrkit/format.h"
#include "rrkit/status.h"

namespace rrkit {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::StartsWith;

const std::string kTestData = RRKIT_TESTDATA_DIR;

TEST(FormatTest, RoundHalfEvenAndFixed) {
  EXPECT_EQ(RoundHalfEven(0.125, 2), 0.12);
  EXPECT_EQ(FormatFixed(0.2, 4), "0.2000");
  EXPECT_EQ(FormatFixed(-0.00001, 4), "0.0000");
  EXPECT_EQ(FormatShortest(0.1), "0.1");
  EXPECT_EQ(FormatSignificant17(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(FormatSignificant17(1.0 / 3)), 1.0 / 3);
}

TEST(ParseSurveyTest, FullDefinition) {
  SurveyDefinition s = *LoadSurvey(kTestData + "/subset.json");
  EXPECT_EQ(s.support.size(), 3u);
  ASSERT_TRUE(s.population.has_value());
  EXPECT_DOUBLE_EQ((*s.population)[0], 0.5);
  ASSERT_TRUE(s.policy.has_value());
  EXPECT_EQ(s.policy->mode(), PrivacyMode::kNonStigmatizingSubset);
  EXPECT_THAT(std::vector<std::size_t>(s.policy->nonstigmatizing().begin(),
                                       s.policy->nonstigmatizing().end()),
              ElementsAre(0u));
}

TEST(ParseSurveyTest, OptionalFieldsMayBeAbsent) {
  SurveyDefinition s = *LoadSurvey(kTestData + "/no_pi.json");
  EXPECT_FALSE(s.population.has_value());
  EXPECT_FALSE(s.policy.has_value());
}

TEST(ParseSurveyTest, Errors) {
  EXPECT_EQ(ErrorCodeOf(ParseSurvey("{").status()), "PARSE_ERROR");
  EXPECT_EQ(ErrorCodeOf(ParseSurvey(R"({"stigmatizing": [true]})").status()),
            "PARSE_ERROR");
  EXPECT_EQ(ErrorCodeOf(ParseSurvey(R"({"values": [0, 1],
      "stigmatizing": [true, true], "pi": [0.5, 0.2, 0.3]})")
                            .status()),
            "DIMENSION_MISMATCH");
  EXPECT_EQ(ErrorCodeOf(ParseSurvey(R"({"values": [0, 1],
      "stigmatizing": [true, true], "privacy": {"mode": "bogus", "xi": 0.1}})")
                            .status()),
            "PARSE_ERROR");
  EXPECT_EQ(ErrorCodeOf(LoadSurvey(kTestData + "/bad.json").status()),
            "XI_GE_C");
  EXPECT_EQ(ErrorCodeOf(LoadSurvey(kTestData + "/missing.json").status()),
            "IO_ERROR");
}

TEST(ParseCountsTest, BothShapes) {
  EXPECT_THAT(*ParseCounts("[40, 60]"), ElementsAre(40, 60));
  EXPECT_THAT(*ParseCounts(R"({"counts": [1, 2, 3]})"), ElementsAre(1, 2, 3));
  EXPECT_EQ(ErrorCodeOf(ParseCounts("[1.5, 2]").status()), "PARSE_ERROR");
}

TEST(DumpJsonTest, Layout) {
  OrderedJson doc;
  doc["a"] = 0.1;
  doc["b"] = OrderedJson::array({1.0, 2.5});
  doc["c"] = OrderedJson::array({OrderedJson::array({0.5})});
  doc["d"] = "text";
  doc["e"] = nullptr;
  EXPECT_EQ(DumpJson(doc),
            "{\n"
            "  \"a\": 0.10000000000000001,\n"
            "  \"b\": [1, 2.5],\n"
            "  \"c\": [\n"
            "    [0.5]\n"
            "  ],\n"
            "  \"d\": \"text\",\n"
            "  \"e\": null\n"
            "}\n");
}

TEST(P0TableToCsvTest, ReferenceGrid) {
  P0Table t = *MakeP0Table({3, 4, 5}, {0.1, 0.2, 0.3, 0.4});
  EXPECT_EQ(P0TableToCsv(t),
            "m,0.1,0.2,0.3,0.4\n"
            "3,0.1413,0.2941,0.4494,0.5970\n"
            "4,0.1099,0.2381,0.3797,0.5263\n"
            "5,0.0899,0.2000,0.3288,0.4706\n");
  OrderedJson j = P0TableToJson(t);
  EXPECT_EQ(j["rows"][2]["p0_rounded"][1], "0.2000");
}

TEST(ReplicatesToCsvTest, Header) {
  SimulationSummary s;
  s.records.push_back({.replicate = 0, .mu_hat = 0.5, .pi_hat_raw = {0.5, 0.5}});
  EXPECT_THAT(ReplicatesToCsv(s),
              StartsWith("replicate,mu_hat,pi_hat_raw_1,pi_hat_raw_2\n0,0.5"));
}

TEST(WriteFileTest, ReportsIoError) {
  EXPECT_EQ(ErrorCodeOf(WriteFile("/nonexistent-dir/x.json", "{}")),
            "IO_ERROR");
  const std::string path =
      (std::filesystem::temp_directory_path() / "rrkit_write_test.txt")
          .string();
  ASSERT_TRUE(WriteFile(path, "hello").ok());
  EXPECT_EQ(*ReadFile(path), "hello");
  std::filesystem::remove(path);
}

TEST(CertificateToJsonTest, Keys) {
  SupportSpec s = *SupportSpec::AllStigmatizing({1, 2, 3, 4});
  std::string text = DumpJson(CertificateToJson(
      *DesignDevice(*PrivacyPolicy::AllStigmatizing(0.1), s)));
  EXPECT_THAT(text, HasSubstr("\"mode\": \"all_stigmatizing\""));
  EXPECT_THAT(text, HasSubstr("\"c\": null"));
  EXPECT_THAT(text, HasSubstr("\"guarantee_statement\""));
}

}  // namespace
}  // namespace rrkit
