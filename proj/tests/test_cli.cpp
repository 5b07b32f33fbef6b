#include "sasolve/system_file.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

using namespace sasolve;

namespace {

std::string models()
{
    const char* dir = std::getenv("SASOLVE_MODELS");
    return dir ? dir : "models";
}

struct Run {
    int status;
    std::string out;
};

Run run(const std::string& args)
{
    Run r{-1, {}};
    FILE* p = popen((std::string(SASOLVE_CLI_PATH) + " " + args + " 2>&1").c_str(), "r");
    if (!p) return r;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string temp_file(const std::string& name, const std::string& text)
{
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST(SystemFile, ErrorsCarryLineNumbers)
{
    try {
        parse_system_file("vars: x\n\neq: x^2 +\n");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("line 3:", 0), 0U) << e.what();
    }
    EXPECT_THROW(parse_system_file("eq: x\n"), InputError);
    EXPECT_THROW(parse_system_file("vars: x, x\neq: x\n"), InputError);
    EXPECT_THROW(parse_system_file("vars: x\neq: x\nbogus: 1\n"), InputError);
    EXPECT_THROW(parse_system_file("params: a\nvars: x\neq: x - a\nsample: 1, 2\n"), InputError);
}

TEST(SystemFile, OrderOverride)
{
    auto f = parse_system_file("params: a\nvars: x, y\neq: x - a\neq: y - x\n", {"a", "y", "x"});
    EXPECT_EQ(f.system.order->name(1), "y");
    EXPECT_EQ(f.system.order->name(2), "x");
}

TEST(Cli, CountText)
{
    auto r = run("count " + models() + "/sec22.sys");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("total 1"), std::string::npos) << r.out;
}

TEST(Cli, CountJsonAtParameterPoint)
{
    auto r = run("count " + models() + "/exchange.sys --at 10,10 --json");
    ASSERT_EQ(r.status, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["total"], 3);
    EXPECT_TRUE(j["branches"].is_array());
}

TEST(Cli, DecomposeJson)
{
    auto r = run("decompose " + models() + "/armsrace.sys --json");
    ASSERT_EQ(r.status, 0) << r.out;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["branches"].size(), 8U);
    EXPECT_EQ(j["parameters"], 2);
}

TEST(Cli, ClassifyIsDeterministicAndWritesCsv)
{
    auto csv = (std::filesystem::temp_directory_path() / "sasolve_regions.csv").string();
    auto a = run("classify " + models() + "/sec32.sys --json --regions-csv " + csv);
    auto b = run("classify " + models() + "/sec32.sys --json --threads 1");
    ASSERT_EQ(a.status, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
    auto j = nlohmann::json::parse(a.out);
    ASSERT_EQ(j["regions"].size(), 9U);
    EXPECT_EQ(j["regions"][2]["count"], 2);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header.rfind("s,u,sign1,", 0), 0U) << header;
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    EXPECT_EQ(rows, 9);
}

TEST(Cli, Isolate)
{
    auto r = run("isolate 'x^2 - 2' --json");
    ASSERT_EQ(r.status, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["roots"].size(), 2U);
    EXPECT_EQ(run("isolate 'x*y'").status, 2);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("count /nonexistent.sys").status, 2);
    EXPECT_EQ(run("count " + models() + "/sec32.sys").status, 2);
    EXPECT_EQ(run("classify " + models() + "/sec22.sys").status, 2);
    EXPECT_EQ(run("count " + temp_file("sasolve_bad.sys", "vars: x\neq: x^\n")).status, 2);
    EXPECT_EQ(run("count " + temp_file("sasolve_posdim.sys", "vars: x, y\neq: x*y\neq: x^2*y\n")).status, 2);
    EXPECT_NE(run("frobnicate").status, 0);
}
