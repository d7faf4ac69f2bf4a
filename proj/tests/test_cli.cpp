#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code = 0;
    std::string out, err;
    std::vector<json> lines() const
    {
        std::vector<json> v;
        std::istringstream in(out);
        for (std::string l; std::getline(in, l);)
            if (!l.empty())
                v.push_back(json::parse(l));
        return v;
    }
    json summary() const
    {
        auto v = lines();
        return v.empty() ? json::object() : v.back();
    }
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    Run r;
    r.code = scholz::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

} // namespace

TEST(Cli, ReciprocityScan)
{
    auto r = run({"reciprocity", "--max", "500"});
    EXPECT_EQ(r.code, 0);
    auto s = r.summary();
    EXPECT_EQ(s["type"], "summary");
    EXPECT_EQ(s["command"], "reciprocity");
    EXPECT_TRUE(s["violations"].empty());
    EXPECT_EQ(s["schema_version"], 1);
    EXPECT_GT(s["total"].get<int>(), 400);
}

TEST(Cli, PellSingle)
{
    auto r = run({"pell", "5", "29"});
    EXPECT_EQ(r.code, 0);
    auto rec = r.lines().front();
    EXPECT_EQ(rec["case"], "3");
    EXPECT_EQ(rec["norm"], -1);
    EXPECT_EQ(rec["cl2"], json::array({4}));
    EXPECT_TRUE(rec["match"].get<bool>());
}

TEST(Cli, AddchainVerify)
{
    auto r = run({"addchain", "15", "--verify"});
    EXPECT_EQ(r.code, 0);
    auto rec = r.lines().front();
    EXPECT_EQ(rec["length"], 5);
}

TEST(Cli, EmptyRange)
{
    auto r = run({"reflect", "--range", "10..5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.summary()["total"], 0);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({"nosuch"}).code, 2);
    EXPECT_EQ(run({"reflect", "--range", "abc"}).code, 2);
    EXPECT_EQ(run({"plan-d4", "7"}).code, 2);
    EXPECT_EQ(run({"primary2", "-20", "5"}).code, 2);
}

TEST(Cli, ParametersEmbedded)
{
    auto s = run({"wieferich", "--max", "2000"}).summary();
    EXPECT_EQ(s["parameters"]["bound"], 2000);
    auto r = run({"wieferich", "--max", "2000"}).lines();
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0]["p"], 1093);
}

TEST(Cli, JobsDoNotChangeOutput)
{
    for (auto cmd : std::vector<std::vector<std::string>>{
             {"reflect", "--range", "-600..600"},
             {"pell", "--max", "120"},
             {"reciprocity", "--max", "200"},
             {"addchain", "--range", "1..200"},
             {"recip3", "--max", "120"},
         }) {
        auto one = cmd, many = cmd;
        one.insert(one.end(), {"--jobs", "1"});
        many.insert(many.end(), {"--jobs", "8"});
        auto a = run(one), b = run(many);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out) << cmd[0];
    }
}

TEST(Cli, TableAndTsv)
{
    auto t = run({"perron", "--max", "6", "--table"});
    EXPECT_EQ(t.code, 0);
    EXPECT_NE(t.out.find("# "), std::string::npos);
    auto v = run({"perron", "--max", "6", "--tsv"});
    EXPECT_NE(v.out.find('\t'), std::string::npos);
}

TEST(Cli, FailFastStops)
{
    auto r = run({"addchain", "--range", "1..50", "--fail-fast"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.summary()["total"], 50);
}

TEST(Cli, ConfigFileIgnoresUnknownKeys)
{
    std::string path = testing::TempDir() + "scholz_cfg.json";
    {
        std::ofstream f(path);
        f << R"({"d4_search_bound": 20, "colour": "blue"})";
    }
    // q = 29 lies above the configured bound
    auto r = run({"plan-d4", "5", "--config", path});
    EXPECT_NE(r.code, 0);
    auto ok = run({"plan-d4", "5"});
    EXPECT_EQ(ok.code, 0);
    std::remove(path.c_str());
}

TEST(Cli, BudgetFromEnvironment)
{
    ::setenv(scholz::cli::budget_env, "20", 1);
    auto r = run({"plan-d4", "5"});
    ::unsetenv(scholz::cli::budget_env);
    EXPECT_NE(r.code, 0);
}

TEST(Cli, FuzzIsSeeded)
{
    auto a = run({"addchain", "--fuzz", "200", "--seed", "7"});
    auto b = run({"addchain", "--fuzz", "200", "--seed", "7"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}
