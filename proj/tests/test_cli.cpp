#include "eigsch/io.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

using namespace eigsch;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& stdin_text = "") {
    std::string tmp = ::testing::TempDir() + "eigsch_cli_input.json";
    {
        std::ofstream f(tmp);
        f << stdin_text;
    }
    std::string cmd = std::string(EIGSCH_BINARY) + " " + args + " < " + tmp + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST(Cli, Count) {
    auto r = run("count 2 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out), Json::parse(R"({"w": 7})"));
    EXPECT_EQ(run("--format text count 5 2").out, "6\n");
}

TEST(Cli, CheckEquationsOnCubeGradient) {
    auto gens = run("generators -", R"({"n": 2, "d": 3, "forms": ["x0^3"]})");
    ASSERT_EQ(gens.code, 0);
    auto r = run("check-equations -", gens.out);
    EXPECT_EQ(r.code, 0);
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["koszul"], true);
    EXPECT_EQ(j["derham"], true);
}

TEST(Cli, GeneratorsRoundTripForSymmetricInputs) {
    for (int seed = 1; seed <= 5; ++seed) {
        auto t = run("random-tensor 2 4 --symmetric --seed " + std::to_string(seed));
        ASSERT_EQ(t.code, 0);
        auto g = run("generators", t.out);
        auto r = run("check-equations", g.out);
        ASSERT_EQ(r.code, 0);
        auto j = Json::parse(r.out);
        EXPECT_EQ(j["koszul"], true);
        EXPECT_EQ(j["derham"], true);
    }
}

TEST(Cli, NegativeVerdicts) {
    auto r = run("check-equations", R"({"n": 2, "d": 3, "minors": [{"i": 0, "j": 1, "f": "x0*x1^2"}]})");
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(Json::parse(r.out)["koszul"], false);
    auto g = run("geometry --degree 3", R"({"points": [["1","0","0"],["1","1","0"],["1","2","0"],["1","3","0"]]})");
    EXPECT_EQ(g.code, 1);
    EXPECT_EQ(Json::parse(g.out)["collinear_violations"].size(), 1u);
    auto l = run("laguerre --point 1,1,1", R"({"n": 2, "d": 3, "forms": ["x0^3 + x1^3 + x2^3"]})");
    EXPECT_EQ(l.code, 1);
}

TEST(Cli, FitCollinearPoints) {
    auto r = run("fit-points --degree 3 --symmetric", R"({"points": [["1","0","0"],["1","1","0"],["1","2","0"],["1","3","0"]]})");
    ASSERT_TRUE(r.code == 0 || r.code == 1);
    auto j = Json::parse(r.out);
    if (j["found"] == true) {
        EXPECT_EQ(j["witness_zero_dimensional"], false);
    }
}

TEST(Cli, MalformedInput) {
    EXPECT_EQ(run("generators", "{not json").code, 2);
    EXPECT_EQ(run("generators", R"({"n": 2, "d": 3, "forms": ["x0^2"]})").code, 2);
    EXPECT_EQ(run("count 0 3").code, 2);
    EXPECT_EQ(run("no-such-command").code, 2);
    EXPECT_EQ(run("random-tensor 2 3").code, 2);
    EXPECT_EQ(run("solve", R"({"n": 3, "d": 3, "forms": ["x0^3"]})").code, 2);
}

TEST(Cli, SolveAndFermat) {
    auto s = run("solve", R"({"n": 2, "d": 3, "forms": ["x0^3 + x1^3 + x2^3"]})");
    ASSERT_EQ(s.code, 0);
    auto j = Json::parse(s.out);
    EXPECT_EQ(j["count"], 7);
    EXPECT_EQ(j["expected"], 7);
    auto f = run("fermat 2 4");
    EXPECT_EQ(Json::parse(f.out)["count"], 13);
    auto h = run("hilbert", R"({"n": 2, "d": 3, "forms": ["x0^3 + x1^3 + x2^3"]})");
    EXPECT_EQ(h.code, 0);
    EXPECT_EQ(Json::parse(h.out)["agree"], true);
    auto b = run("betti 2 3");
    EXPECT_EQ(Json::parse(b.out)["modules"][0]["summands"][0]["rank"], "3");
}

TEST(Cli, DeterministicOutput) {
    auto a = run("random-tensor 2 3 --seed 42");
    auto b = run("random-tensor 2 3 --seed 42");
    EXPECT_EQ(a.out, b.out);
    auto s1 = run("solve", a.out);
    auto s2 = run("solve", a.out);
    EXPECT_EQ(s1.out, s2.out);
    EXPECT_EQ(Json::parse(s1.out)["count"], 7);
}

TEST(Cli, HilbertAcceptsMinors) {
    auto t = run("random-tensor 2 3 --seed 9");
    auto g = run("generators", t.out);
    auto from_tensor = run("hilbert", t.out);
    auto from_minors = run("hilbert", g.out);
    ASSERT_EQ(from_minors.code, 0);
    EXPECT_EQ(from_tensor.out, from_minors.out);
    EXPECT_EQ(Json::parse(from_minors.out)["w"], 7);
}

TEST(Cli, GeometryTextSummary) {
    auto r = run("--format text geometry --degree 3", R"({"points": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]})");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "0 violations, 0 sharp lines\n");
}
