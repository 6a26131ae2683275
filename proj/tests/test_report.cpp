#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include <spsw/report.hpp>

using namespace spsw;

TEST_SUITE("report") {
  TEST_CASE("pass rule") {
    ReportDocument doc("unit");
    CHECK(doc.add("a", "claim a", 1e-9, 1e-8).pass);
    CHECK(doc.add("b", "claim b", 1e-8, 1e-8).pass);
    CHECK_FALSE(doc.add("c", "claim c", 2e-8, 1e-8).pass);
    CHECK_FALSE(doc.add("d", "claim d", std::numeric_limits<double>::quiet_NaN(), 1.0).pass);
    CHECK(doc.add_condition("e", "claim e", true).pass);
    CHECK_FALSE(doc.add_condition("f", "claim f", false).pass);
    CHECK(doc.passed() == 3);
    CHECK(doc.failed() == 3);
    CHECK_FALSE(doc.all_pass());
  }

  TEST_CASE("json layout") {
    ReportDocument doc("suite-x", {{"seed", 7}});
    doc.add("id1", "anchor text", 0.5, 1.0, 12);
    doc.add("id2", "other", std::numeric_limits<double>::infinity(), 1.0);
    doc.set_header("assumption", "conditional");
    doc.set_section("scan", {{"starts", 3}});
    const auto j = doc.to_json();
    CHECK(j.at("suite") == "suite-x");
    CHECK(j.at("version") == std::string(toolkit_version()));
    CHECK(j.at("config").at("seed") == 7);
    CHECK(j.at("records").size() == 2);
    CHECK(j.at("records")[0].at("id") == "id1");
    CHECK(j.at("records")[0].at("anchor") == "anchor text");
    CHECK(j.at("records")[0].at("samples") == 12);
    CHECK(j.at("records")[1].at("max_residual") == "inf");
    CHECK(j.at("summary").at("passed") == 1);
    CHECK(j.at("header").at("assumption") == "conditional");
    CHECK(j.at("scan").at("starts") == 3);
  }

  TEST_CASE("serialization is deterministic and round-trips doubles") {
    auto build = [] {
      ReportDocument doc("det");
      doc.add("x", "y", 0.1 + 0.2, 1.0 / 3.0);
      doc.set_section("b", 1);
      doc.set_section("a", 2);
      return doc;
    };
    const std::string s1 = build().dump(), s2 = build().dump();
    CHECK(s1 == s2);
    CHECK(s1.back() == '\n');
    const auto j = nlohmann::json::parse(s1);
    CHECK(j.at("records")[0].at("max_residual").get<double>() == 0.1 + 0.2);
    CHECK(s1.find("\"a\"") < s1.find("\"b\""));
  }

  TEST_CASE("csv") {
    ReportDocument doc("csv");
    doc.add("x", "say \"hi\"", 0.25, 0.5, 4);
    const std::string c = doc.csv();
    CHECK(c.rfind("id,anchor,max_residual,tolerance,samples,pass\n", 0) == 0);
    CHECK(c.find("\"x\",\"say \"\"hi\"\"\",0.25,0.5,4,true\n") != std::string::npos);
  }
}
