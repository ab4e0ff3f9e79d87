#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "wallx/cache.hpp"
#include "wallx/checks.hpp"

namespace fs = std::filesystem;
using wallx::json;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

/// Fresh working directory per test so cache state never leaks.
class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("wallx-cli-") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    /// Runs the CLI inside the test directory; stderr is folded into out
    /// only when asked.
    CliRun run(const std::string& args, bool with_stderr = false, const std::string& env = "") const
    {
        const std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" WALLX_CLI_PATH "' " + args +
                                (with_stderr ? " 2>&1" : " 2>/dev/null");
        CliRun r;
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) return r;
        char buf[4096];
        std::size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
        const int status = pclose(pipe);
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        return r;
    }

    std::string slurp(const std::string& name) const
    {
        std::ifstream in(dir_ / name, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    json report(const std::string& name) const { return json::parse(slurp(name)); }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, WallsTable)
{
    const CliRun r = run("walls --kmax 3 --no-cache --json w.json");
    EXPECT_EQ(r.code, 0);
    const json j = report("w.json");
    EXPECT_EQ(j["count"], 16);
    EXPECT_EQ(j["walls"].size(), 16u);
    EXPECT_EQ(j["seed"], 42);
    EXPECT_NE(r.out.find("Linf-"), std::string::npos);
}

TEST_F(Cli, JsSymbolicPasses)
{
    const CliRun r = run("js --k 2 --dmax 2 --backend symbolic --no-cache --json r.json");
    EXPECT_EQ(r.code, 0);
    const json j = report("r.json");
    EXPECT_TRUE(j["pass"].get<bool>());
    ASSERT_EQ(j["degrees"].size(), 2u);
    for (const auto& d : j["degrees"]) {
        EXPECT_EQ(d["verdict"], "equal");
        EXPECT_EQ(d["backend"], "symbolic");
    }
    EXPECT_TRUE(j["elapsed_ms"].is_null());
}

TEST_F(Cli, ClassifyNegativeTheta)
{
    const CliRun r = run("classify --theta -1/1,1/1 --no-cache --json c.json");
    EXPECT_EQ(r.code, 0);
    const json j = report("c.json");
    EXPECT_EQ(j["classification"]["kind"], "on_wall");
    EXPECT_EQ(j["classification"]["wall"], "Linf-");
}

TEST_F(Cli, ClassifyZt)
{
    ASSERT_EQ(run("classify --theta -1/3,1 --no-cache --json c.json").code, 0);
    const json c = report("c.json")["classification"];
    EXPECT_EQ(c["chamber"], "Zt");
    EXPECT_EQ(c["t"], "3/2");
}

TEST_F(Cli, UsageErrors)
{
    EXPECT_EQ(run("").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("js --k 2").code, 2);
    EXPECT_EQ(run("js --k 0 --dmax 2 --no-cache").code, 2);
    EXPECT_EQ(run("js --k 2 --dmax 2 --backend fast --no-cache").code, 2);
    EXPECT_EQ(run("classify --theta 1/0,1 --no-cache").code, 2);
    EXPECT_EQ(run("wallcross --wall Lpm:2 --tmax 2 --no-cache").code, 2);
    EXPECT_EQ(run("wallcross --wall Lmm:2 --i0 IlP1:0 --tmax 2 --no-cache").code, 2);
    EXPECT_EQ(run("contribution --label js:k=2 --no-cache").code, 2);
    EXPECT_EQ(run("js --k 2 --dmax 1 --sign-override js:k=2,d=1,comp=1,0=2 --no-cache").code, 2);
    EXPECT_EQ(run("walls --csv t.csv --no-cache").code, 2);
    EXPECT_EQ(run("series --kind Hilbert --no-cache").code, 2);
    EXPECT_EQ(run("js --help").code, 0);
}

TEST_F(Cli, SignOverrideBreaksIdentity)
{
    const CliRun r = run("js --k 2 --dmax 1 --sign-override 'js:k=2,d=1,comp=1,0=-1' --no-cache --json r.json");
    EXPECT_EQ(r.code, 1);
    const json j = report("r.json");
    EXPECT_FALSE(j["pass"].get<bool>());
    EXPECT_EQ(j["params"]["sign_overrides"]["js:k=2,d=1,comp=1,0"], -1);
}

TEST_F(Cli, InternalErrors)
{
    // Beyond the listed walls the chamber cannot be decided.
    const CliRun r = run("classify --theta -100,101 --kmax 2 --no-cache", true);
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("inconclusive"), std::string::npos) << r.out;
    EXPECT_EQ(run("signsearch --wall Lmm:2 --i0 IlP1:1 --d 2 --cap 3 --no-cache").code, 3);
}

TEST_F(Cli, WallcrossEvalReport)
{
    ASSERT_EQ(run("wallcross --wall Lmm:2 --i0 IlP1:1 --tmax 3 --backend eval --no-cache --json r.json").code, 0);
    const json j = report("r.json");
    EXPECT_EQ(j["params"]["backend"], "eval");
    EXPECT_EQ(j["eval_points"].size(), 5u);
    EXPECT_LT(j["sz_bound"].get<double>(), 1e-30);
    for (const auto& d : j["degrees"]) EXPECT_EQ(d["points"], 5);
}

TEST_F(Cli, HumanNumbersAppearInJson)
{
    const char* commands[] = {
        "walls --kmax 2",
        "classify --theta -1/3,1",
        "classify --theta 2,-7/2",
        "js --k 2 --dmax 2",
        "wallcross --wall Lmm:2 --i0 IlP1:1 --tmax 2 --backend eval --points 3 --seed 9",
        "dimred --k 2 --dmax 2 --timing",
        "insertion-free --k 1 --dmax 3",
        "series --kind primary --chamber IV --gammaE 2 --qmax 2",
        "contribution --label 'js:k=2,d=3,comp=2,1'",
        "signsearch --wall Lmm:2 --i0 IlP1:1 --d 1",
    };
    const std::regex number(R"(-?[0-9]+(\.[0-9]+)?(e-?[0-9]+)?)");
    for (const char* c : commands) {
        const CliRun r = run(std::string(c) + " --no-cache --json r.json");
        ASSERT_TRUE(r.code == 0 || r.code == 1) << c;
        const std::string doc = slurp("r.json");
        for (std::sregex_iterator it(r.out.begin(), r.out.end(), number), end; it != end; ++it)
            EXPECT_NE(doc.find(it->str()), std::string::npos) << c << ": " << it->str();
    }
}

TEST_F(Cli, CsvTable)
{
    ASSERT_EQ(run("series --kind PT --qmax 2 --no-cache --csv s.csv").code, 0);
    const std::string csv = slurp("s.csv");
    EXPECT_EQ(csv.rfind("degree,expression\n", 0), 0u);
    EXPECT_NE(csv.find("q^1*t^1,"), std::string::npos);
    ASSERT_EQ(run("js --k 1 --dmax 3 --no-cache --csv j.csv").code, 0);
    const std::string js = slurp("j.csv");
    EXPECT_EQ(std::count(js.begin(), js.end(), '\n'), 4);
}

TEST_F(Cli, DeterministicAcrossThreads)
{
    const char* commands[] = {
        "wallcross --wall Lmm:2 --i0 IlP1:2 --tmax 3 --backend eval",
        "js --k 3 --dmax 3",
        "dimred --k 3 --dmax 3",
    };
    for (const char* c : commands) {
        ASSERT_EQ(run(std::string(c) + " --no-cache --threads 1 --json a.json").code, 0) << c;
        ASSERT_EQ(run(std::string(c) + " --no-cache --threads 8 --json b.json").code, 0) << c;
        EXPECT_EQ(slurp("a.json"), slurp("b.json")) << c;
    }
}

TEST_F(Cli, NoCacheTouchesNothing)
{
    ASSERT_EQ(run("js --k 1 --dmax 1 --no-cache").code, 0);
    EXPECT_FALSE(fs::exists(dir_ / ".wallx-cache"));
    ASSERT_EQ(run("js --k 1 --dmax 1").code, 0);
    EXPECT_TRUE(fs::exists(dir_ / ".wallx-cache"));
}

TEST_F(Cli, CacheHitMatchesRecomputation)
{
    const std::string env = "WALLX_CACHE='" + (dir_ / "store").string() + "'";
    ASSERT_EQ(run("js --k 2 --dmax 2 --json a.json", false, env).code, 0);
    ASSERT_EQ(std::distance(fs::directory_iterator(dir_ / "store"), fs::directory_iterator{}), 1);
    ASSERT_EQ(run("js --k 2 --dmax 2 --json b.json", false, env).code, 0);
    ASSERT_EQ(run("js --k 2 --dmax 2 --no-cache --json c.json", false, env).code, 0);
    EXPECT_EQ(slurp("a.json"), slurp("b.json"));
    EXPECT_EQ(slurp("a.json"), slurp("c.json"));
    const CliRun v = run("js --k 2 --dmax 2 --verify-cache", true, env);
    EXPECT_EQ(v.code, 0);
    EXPECT_NE(v.out.find("verified"), std::string::npos);
}

TEST_F(Cli, CorruptCacheRecomputes)
{
    const std::string env = "WALLX_CACHE='" + (dir_ / "store").string() + "'";
    ASSERT_EQ(run("series --kind NC --qmax 1 --json a.json", false, env).code, 0);
    const fs::path entry = fs::directory_iterator(dir_ / "store")->path();
    {
        std::fstream f(entry, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(-5, std::ios::end);
        f << "XXXX";
    }
    const CliRun r = run("series --kind NC --qmax 1 --json b.json", true, env);
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("warning"), std::string::npos);
    EXPECT_EQ(slurp("a.json"), slurp("b.json"));
    // The entry was rewritten and now reads back cleanly.
    EXPECT_EQ(run("series --kind NC --qmax 1 --verify-cache", false, env).code, 0);
}

TEST_F(Cli, DifferentSeedsAreDifferentEntries)
{
    ASSERT_EQ(run("wallcross --wall Lmm:2 --i0 IlP1:1 --tmax 1 --backend eval --seed 1").code, 0);
    ASSERT_EQ(run("wallcross --wall Lmm:2 --i0 IlP1:1 --tmax 1 --backend eval --seed 2").code, 0);
    EXPECT_EQ(std::distance(fs::directory_iterator(dir_ / ".wallx-cache"), fs::directory_iterator{}), 2);
}

TEST_F(Cli, CacheRoundTrip)
{
    const wallx::Cache cache(dir_ / "c");
    const std::string key = wallx::Cache::key("js", R"({"k":1})");
    const std::string payload = "{\n  \"x\": 1\n}\n\xff bytes";
    cache.put(key, payload);
    EXPECT_EQ(cache.get(key), payload);
    EXPECT_NE(wallx::Cache::key("js", R"({"k":1})", "wallx-0.9"), key);
    EXPECT_FALSE(cache.get(wallx::Cache::key("js", R"({"k":1})", "wallx-0.9")).has_value());
    EXPECT_NE(wallx::Cache::key("dimred", R"({"k":1})"), key);
}
