#include "oklab/verify.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace oklab;
using namespace oklab::testing;
using report::json;
using verify::RunConfig;

namespace {

RunConfig small_config(std::vector<std::string> beds) {
    RunConfig cfg;
    cfg.testbeds = std::move(beds);
    cfg.random_triples = 6;
    return cfg;
}

std::size_t csv_rows(const std::string& text) {
    std::size_t rows = 0;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) ++rows;
    return rows;
}

}  // namespace

TEST(ReportJson, Rationals) {
    EXPECT_EQ(report::to_json(R(3, 2)), json::parse("[3, 2]"));
    EXPECT_EQ(report::to_json(R(-4)), json::parse("[-4, 1]"));
    Rat big = Rat(BigInt(1) << 70, 3);
    EXPECT_EQ(report::to_json(big), json::parse(R"(["1180591620717411303424", 3])"));
    EXPECT_EQ(report::to_text(R(3, 2)), "3/2");
    EXPECT_EQ(report::to_text(R(5)), "5");
    EXPECT_EQ(report::to_text(big), "1180591620717411303424/3");
}

TEST(ReportJson, PolytopeAndBody) {
    auto j = report::to_json(simplex(2));
    EXPECT_EQ(j["dim"], 2);
    EXPECT_EQ(j["vertices"], json::parse("[[[0,1],[0,1]], [[0,1],[1,1]], [[1,1],[0,1]]]"));
    const auto& p2 = toric::builtin_testbed("p2");
    auto b = okounkov::no_body_rational(p2, p2.divisor_of_class({R(1, 2)}), p2.default_flag(), 3);
    j = report::to_json(b);
    for (const char* k : {"dim", "vertices", "flag", "class", "m_used", "exact"}) EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["class"], json::parse("[[1, 2]]"));
    EXPECT_EQ(j["exact"], true);
    EXPECT_TRUE(j["flag"].contains("cone"));
}

TEST(ReportJson, InequalityRecordSchema) {
    auto r = inequalities::make_record("x", 1, 3, {"a"}, 7);
    auto j = report::to_json(r);
    EXPECT_EQ(j, json::parse(R"({"name":"x","lhs":[1,1],"rhs":[3,1],"slack":[2,1],"inputs":["a"],"seed":7})"));
}

TEST(Report, SortedDeterministicAndCounted) {
    report::Report rep;
    rep.add({"b", "s", "pass", json::object(), std::nullopt});
    rep.add({"a", "s", "fail", json{{"v", report::to_json(R(1, 3))}}, json("w")});
    rep.add({"c", "s", "skipped", json::object(), std::nullopt});
    auto j = report::to_json(rep);
    EXPECT_EQ(j["checks"][0]["key"], "a");
    EXPECT_EQ(j["checks"][0]["witness"], "w");
    EXPECT_EQ(j["summary"]["fail"], 1);
    EXPECT_EQ(j["summary"]["skipped"], 1);
    EXPECT_FALSE(rep.all_passed());
    const std::string csv = report::to_csv(rep);
    EXPECT_EQ(csv_rows(csv), 4u);
    EXPECT_NE(csv.find("a,s,fail,v=1/3;witness=w"), std::string::npos);
    EXPECT_EQ(report::to_json_text(rep), report::to_json_text(rep));
}

TEST(Verify, ConfigValidation) {
    RunConfig cfg;
    EXPECT_NO_THROW(verify::validate(cfg));
    cfg.m_max = 0;
    EXPECT_THROW(verify::validate(cfg), ConfigError);
    cfg = RunConfig{};
    cfg.format = "xml";
    EXPECT_THROW(verify::validate(cfg), ConfigError);
    cfg = RunConfig{};
    cfg.grid = {R(-1)};
    EXPECT_THROW(verify::validate(cfg), ConfigError);
    toric::Catalog catalog;
    EXPECT_THROW(verify::run_suite("nope", catalog, small_config({"p2"})), ConfigError);
    EXPECT_THROW(verify::run_suite("cor13", catalog, small_config({"p7"})), ConfigError);
    auto bad = small_config({"p2"});
    bad.flag = "cone:0,9";
    EXPECT_THROW(verify::run_suite("cor13", catalog, bad), ConfigError);
}

TEST(Verify, ByteDeterministicWithSeed) {
    toric::Catalog catalog;
    auto cfg = small_config({"p1xp1", "f1"});
    cfg.seed = 7;
    okounkov::BodyCache c1, c2;
    const auto a = report::to_json_text(verify::run_suite("cor15", catalog, cfg, c1));
    const auto b = report::to_json_text(verify::run_suite("cor15", catalog, cfg, c2));
    EXPECT_EQ(a, b);
    EXPECT_EQ(report::to_csv(verify::run_suite("cor15", catalog, cfg, c1)),
              report::to_csv(verify::run_suite("cor15", catalog, cfg, c2)));
    cfg.seed = 8;
    EXPECT_NE(a, report::to_json_text(verify::run_suite("cor15", catalog, cfg, c1)));
    const auto j = json::parse(a);
    EXPECT_EQ(j["config"]["seed"], 7);
    EXPECT_EQ(j["checks"][0]["detail"]["direct"]["seed"], 7);
}

TEST(Verify, CurveBaseCase) {
    toric::Catalog catalog;
    auto rep = verify::run_suite("all", catalog, small_config({"p1"}));
    EXPECT_TRUE(rep.all_passed());
    std::size_t base = 0;
    for (const auto& c : rep.checks)
        if (c.key.find("additivity/p1/base/") == 0) {
            ++base;
            EXPECT_EQ(c.status, "pass");
        }
    EXPECT_EQ(base, 4u);
}

TEST(Verify, SuitesPassOnProductSurface) {
    toric::Catalog catalog;
    auto cfg = small_config({"p1xp1"});
    cfg.grid = {R(1), R(2)};
    for (const auto& s : {"additivity", "slices", "prop14", "cor13", "lemma61", "cor15", "volume"}) {
        auto rep = verify::run_suite(s, catalog, cfg);
        EXPECT_TRUE(rep.all_passed()) << s;
        EXPECT_GT(rep.count("pass"), 0u) << s;
    }
}

TEST(Verify, ExplicitFlagRestrictsSweeps) {
    toric::Catalog catalog;
    auto cfg = small_config({"p1xp1"});
    cfg.flag = "cone:1,2";
    const auto& x = catalog.get("p1xp1");
    auto flags = verify::sweep_flags(x, cfg);
    ASSERT_EQ(flags.size(), 1u);
    EXPECT_EQ(flags[0].rays, (std::vector<std::size_t>{1, 2}));
    auto ss = verify::setups(x, cfg);
    ASSERT_EQ(ss.size(), 1u);
    EXPECT_TRUE(x.is_ample(ss[0].m));
}

TEST(Verify, SearchReport) {
    RunConfig cfg;
    cfg.testbeds = {"p2"};
    auto rep = verify::search_report(toric::builtin_testbed("p2"), cfg, okounkov::default_cache());
    ASSERT_EQ(rep.checks.size(), 1u);
    EXPECT_EQ(rep.checks[0].detail["found"], false);
    EXPECT_EQ(rep.checks[0].detail["record"], "none found within bounds");
}
