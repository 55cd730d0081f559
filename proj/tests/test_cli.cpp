#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "bkappa/cli.hpp"

using namespace bkappa;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, CohenTable)
{
    const Outcome o = run({"cohen", "--max-N", "5"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_NE(o.out.find("0\t1/120\t-1"), std::string::npos);
    EXPECT_NE(o.out.find("4\t-7/12\t70"), std::string::npos);
    EXPECT_NE(o.out.find("5\t-2/5\t48"), std::string::npos);
}

TEST(Cli, CohenJson)
{
    const Outcome o = run({"--json", "cohen", "--max-N", "1"});
    ASSERT_EQ(o.code, 0);
    const json j = json::parse(o.out);
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[1]["N"], 1);
    EXPECT_EQ(j[1]["minus120H"], "10");
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nosuch"}).code, 2);
    EXPECT_EQ(run({"--digits", "5", "cohen"}).code, 2);
    EXPECT_EQ(run({"series", "--name", "zeta"}).code, 2);
    EXPECT_EQ(run({"series", "--prec", "abc"}).code, 2);
    EXPECT_EQ(run({"series", "--prec", "1"}).code, 2);
    EXPECT_EQ(run({"borcherds", "--t", "1", "--input", "x.json"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, DomainErrorsExitOne)
{
    const Outcome o = run({"--json", "lvalue", "--d", "1", "--s", "1"});
    EXPECT_EQ(o.code, 1);
    const json j = json::parse(o.out);
    EXPECT_EQ(j["error"], "PoleAtOne");
    EXPECT_EQ(run({"lvalue", "--d", "3", "--s", "-1"}).code, 1);
    EXPECT_EQ(run({"kappa-mu", "--mu", "1", "--m", "-3/4", "--v", "1"}).code, 1);
    EXPECT_EQ(run({"borcherds", "--input", "/nonexistent/form.json"}).code, 1);
}

TEST(Cli, LValue)
{
    const Outcome o = run({"--json", "--digits", "30", "lvalue", "--d", "5", "--s", "-1", "--deriv"});
    ASSERT_EQ(o.code, 0) << o.err;
    const json j = json::parse(o.out);
    PrecisionScope scope(30u);
    EXPECT_LT(abs(Real(j["value"].get<std::string>()) + Real(2) / 5), pow10_neg(25));
    EXPECT_TRUE(j.contains("logderiv"));
}

TEST(Cli, KappaMu)
{
    const Outcome o = run({"--json", "--digits", "30", "kappa-mu", "--mu", "1", "--m", "1/4", "--v", "50"});
    ASSERT_EQ(o.code, 0) << o.err;
    const json j = json::parse(o.out);
    EXPECT_TRUE(j.contains("b"));
    const Outcome neg = run({"kappa-mu", "--mu", "1", "--m", "-3/4", "--v", "1", "--l2", "1"});
    EXPECT_EQ(neg.code, 0) << neg.err;
}

TEST(Cli, BorcherdsText)
{
    const Outcome o = run({"--digits", "30", "borcherds", "--t", "0", "--prec", "2"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_NE(o.out.find("kappa = 15.45312722"), std::string::npos);
}

TEST(Cli, SeriesRoundTripThroughBorcherds)
{
    const Outcome s = run({"--json", "series", "--name", "f", "--t", "1", "--prec", "2"});
    ASSERT_EQ(s.code, 0) << s.err;
    const auto path = std::filesystem::temp_directory_path() / "bkappa_roundtrip.json";
    {
        std::ofstream f(path);
        f << s.out;
    }
    const Outcome b = run({"--json", "--digits", "40", "borcherds", "--input", path.string()});
    std::filesystem::remove(path);
    ASSERT_EQ(b.code, 0) << b.err;
    const json j = json::parse(b.out);
    EXPECT_EQ(j["report"]["weight"], "7548");
    PrecisionScope scope(40u);
    EXPECT_LT(abs(Real(j["report"]["kappa"].get<std::string>()) - Real("11099.05815819224898867315064777")),
              pow10_neg(15));
}

TEST(Cli, SampleInput)
{
    const std::string path = std::string(BKAPPA_SAMPLES_DIR) + "/f5.json";
    const Outcome o = run({"--json", "--digits", "40", "borcherds", "--input", path});
    ASSERT_EQ(o.code, 0) << o.err;
    const json j = json::parse(o.out);
    EXPECT_EQ(j["report"]["weight"], "10");
    EXPECT_EQ(j["report"]["closed_form_check"]["pass"], true);
}

TEST(Cli, MalformedInputIsRejected)
{
    const auto path = std::filesystem::temp_directory_path() / "bkappa_bad.json";
    {
        std::ofstream f(path);
        f << R"({"weight": "1/2", "components": []})";
    }
    const Outcome o = run({"--json", "borcherds", "--input", path.string()});
    std::filesystem::remove(path);
    EXPECT_EQ(o.code, 1);
    EXPECT_TRUE(json::parse(o.out).contains("error"));
}

TEST(Cli, EtaPower)
{
    const Outcome o = run({"series", "--name", "eta24", "--prec", "4"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out, "1 * q^(0) + -24 * q^(1) + 252 * q^(2) + -1472 * q^(3) + O(q^(4))\n");
}
