#include <gtest/gtest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

/// Runs the CLI with `args`; stderr is folded into the captured output.
Run cli(const std::string& args) {
    const std::string cmd = std::string(REPVAR_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    while (const auto n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string data(const std::string& rel) { return std::string("'") + REPVAR_DATA_DIR + "/" + rel + "'"; }

bool has(const Run& r, const std::string& needle) { return r.out.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, GroupInfo) {
    const auto r = cli("group info S3");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r, "order 6"));
    EXPECT_TRUE(has(r, "class 1 size 3"));
    EXPECT_TRUE(has(r, "class 2 size 2"));
}

TEST(Cli, CharacterTableTsv) {
    const auto r = cli("group info S3 --chartab --format tsv");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "1+0i\t1+0i\t1+0i\n1+0i\t-1+0i\t1+0i\n2+0i\t0+0i\t-1+0i\n");
}

TEST(Cli, GroupInfoJson) {
    const auto r = cli("--json group info Q8 --chartab");
    ASSERT_EQ(r.status, 0) << r.out;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["order"], 8);
    EXPECT_EQ(j["classes"].size(), 5u);
    EXPECT_EQ(j["irreps"].back()["fs"], -1);
}

TEST(Cli, SurfaceCountsMatch) {
    auto r = cli("surface --group S3 --genus 2 --method both");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r, "brute 486"));
    EXPECT_TRUE(has(r, "character 486"));
    EXPECT_TRUE(has(r, "MATCH"));
    r = cli("surface --group S3 --crosscaps 3 --method both");
    EXPECT_TRUE(has(r, "brute 90")) << r.out;
    EXPECT_TRUE(has(r, "character 90")) << r.out;
}

TEST(Cli, SurfaceJson) {
    const auto r = cli("--json surface --group Q8 --crosscaps 2 --method both");
    ASSERT_EQ(r.status, 0) << r.out;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["results"][0]["count"], 40);
    EXPECT_EQ(j["results"][1]["count"], 40);
    EXPECT_EQ(j["match"], true);
    EXPECT_FALSE(j["results"][0].contains("seconds"));
}

TEST(Cli, TimingIsOptIn) {
    const auto r = cli("--json --timing surface --group S3 --genus 1 --method brute");
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(has(r, "seconds"));
}

TEST(Cli, Distribution) {
    const auto r = cli("surface --group S3 --genus 1 --distribution");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r, "18 0 9")) << r.out;
}

TEST(Cli, HomcountFromFile) {
    const auto r = cli("homcount --group S3 --file " + data("presentations/three_crosscaps.pres") + " --method both");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(has(r, "brute 90"));
    EXPECT_TRUE(has(r, "MATCH"));
}

TEST(Cli, VolumeDistributionOfMixedRelatorMatchesSquares) {
    const auto a = cli("volume-dist --group S3 --presentation '<a, b, c | [a, b] c^2>'");
    const auto b = cli("volume-dist --group S3 --file " + data("presentations/three_crosscaps.pres"));
    EXPECT_EQ(a.status, 0);
    EXPECT_TRUE(has(a, "brute 90 0 63")) << a.out;
    EXPECT_TRUE(has(b, "brute 90 0 63")) << b.out;
}

TEST(Cli, AcApply) {
    const auto r = cli("ac apply --presentation '<a, b | a b^-1>' --move invert --group S3 --check-inverse");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r, "<a, b | b a^-1>"));
    EXPECT_TRUE(has(r, "INVARIANT"));
    const auto add = cli("ac apply --presentation '<a | a^3>' --move add:b");
    EXPECT_TRUE(has(add, "<a, b | a^3, b>")) << add.out;
}

TEST(Cli, AcFuzz) {
    const auto r = cli("ac fuzz --group S3 --presentation '<a, b | [a, b]>' --sequences 10 --length 5 --seed 1");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r, "failures 0"));
}

TEST(Cli, Mobius) {
    auto r = cli("mobius classify " + data("graphs/twisted_loop.mg"));
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r, "non-orientable cross-cap genus 1"));
    r = cli("mobius eval " + data("graphs/torus.mg") + " --group S3 --method both");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r, "direct 18"));
    EXPECT_TRUE(has(r, "formula 18"));
    r = cli("mobius eval " + data("graphs/twisted_loop.mg") + " --group S3 --method both");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r, "direct 4\n")) << r.out;
    EXPECT_TRUE(has(r, "formula 4\n")) << r.out;
    EXPECT_TRUE(has(r, "MATCH"));
}

TEST(Cli, ReportsAreByteIdentical) {
    for (const std::string args : {"--json surface --group A4 --crosscaps 3 --method both",
                                   "--threads 1 ac fuzz --group Q8 --presentation '<a, b | [a, b]>' --seed 7",
                                   "--json wzeta --family su --n 4 --genus 2"}) {
        const auto a = cli(args), b = cli(args);
        EXPECT_EQ(a.out, b.out) << args;
    }
    EXPECT_EQ(cli("--threads 1 surface --group S4 --genus 1 --method brute").out,
              cli("--threads 3 surface --group S4 --genus 1 --method brute").out);
}

TEST(Cli, Wzeta) {
    auto r = cli("wzeta --family su2 --genus 2 --tol 1e-12");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(has(r, "1.64493406685")) << r.out;
    r = cli("wzeta --family su3 --genus 2 --tol 1e-11");
    EXPECT_TRUE(has(r, "1.35645741598")) << r.out;
    r = cli("wzeta --family su2 --crosscaps 5 --tol 1e-12");
    EXPECT_TRUE(has(r, "0.90154267737")) << r.out;
    r = cli("wzeta --family su2 --crosscaps 3 --closed-form");
    EXPECT_TRUE(has(r, "conditional")) << r.out;
    r = cli("wzeta --family torus --n 2 --genus 3");
    EXPECT_TRUE(has(r, "|T^2|^5")) << r.out;
}

TEST(Cli, ErrorsAndExitCodes) {
    auto r = cli("wzeta --family su2 --crosscaps 2");
    EXPECT_NE(r.status, 0);
    EXPECT_TRUE(has(r, "error[divergent]"));
    r = cli("homcount --group S3 --presentation '<a | b>'");
    EXPECT_EQ(r.status, 2);
    EXPECT_TRUE(has(r, "error[parse]"));
    r = cli("--budget 100 surface --group S4 --genus 2 --method brute");
    EXPECT_EQ(r.status, 3);
    EXPECT_TRUE(has(r, "error[budget]"));
    r = cli("homcount --group S7 --presentation '<a | a^2>'");
    EXPECT_EQ(r.status, 3);
    r = cli("bogus");
    EXPECT_EQ(r.status, 2);
    r = cli("group info Y3");
    EXPECT_EQ(r.status, 2);
}

TEST(Cli, VerifySingleCriterion) {
    const auto r = cli("verify-paper --criterion 3");
    EXPECT_EQ(r.status, 0) << r.out;
    EXPECT_TRUE(has(r, "PASS"));
}
