#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>

#include <canthresh/cli.hpp>

#include "support.hpp"

using namespace canthresh;
using testing_support::poly;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    std::string cmd = std::string(CANTHRESH_CLI) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int st = pclose(pipe);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string sample(const std::string& name) { return std::string(CANTHRESH_SAMPLES) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& body) {
    auto p = std::filesystem::temp_directory_path() / ("canthresh_test_" + name);
    std::ofstream(p) << body;
    return p.string();
}

TEST(Cli, OracleOnQuotient) {
    auto r = run_cli("oracle " + sample("quotient_z4.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("1/4"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("1/2(1,1,1)"), std::string::npos) << r.out;
}

TEST(Cli, ComputeOnSamples) {
    auto r = run_cli("compute --k 2 " + sample("smooth_brieskorn.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("5/6"), std::string::npos) << r.out;
    auto c = run_cli("compute --k 2 " + sample("ca_four_fifths.json"));
    EXPECT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("4/5"), std::string::npos) << c.out;
    auto t = run_cli("compute --k 2 " + sample("series_tail.json"));
    EXPECT_EQ(t.code, 0);
    EXPECT_NE(t.out.find("5/6"), std::string::npos) << t.out;
}

TEST(Cli, ValidationFailureCitesConstraint) {
    auto r = run_cli("oracle " + sample("cd1_invalid.json"));
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.out.find("2r+1=ad"), std::string::npos) << r.out;
}

TEST(Cli, InconclusiveExitCode) {
    auto r = run_cli("compute --k 2 " + sample("cd1_inconclusive.json"));
    EXPECT_EQ(r.code, 4) << r.out;
}

TEST(Cli, ParseErrors) {
    auto bad = temp_file("bad.json", "{\"presentation\": ");
    EXPECT_EQ(run_cli("oracle " + bad).code, 2);
    auto unknown = temp_file("unknown.json", R"({"presentation": {"family": "cE8"}, "f": {"terms": [[1,0,0]]}})");
    EXPECT_EQ(run_cli("oracle " + unknown).code, 2);
    auto floaty = temp_file("float.json", R"({"presentation": {"family": "smooth", "alpha": 1.5, "beta": 2},
                                            "f": {"terms": [[1,0,0]]}})");
    EXPECT_EQ(run_cli("oracle " + floaty).code, 2);
    EXPECT_EQ(run_cli("window --k 2 --caps cap=0").code, 2);
    EXPECT_EQ(run_cli("window --k 2 --family cE8").code, 2);
    EXPECT_EQ(run_cli("frobnicate").code, 2);
}

TEST(Cli, WindowListsTopValues) {
    auto r = run_cli("window --k 2");
    EXPECT_EQ(r.code, 0);
    for (auto v : {"5/6", "4/5", "3/4"}) EXPECT_NE(r.out.find(v), std::string::npos) << v;
}

TEST(Cli, MachineOutputIsDeterministicAndExact) {
    auto a = run_cli("window --k 2 --family smooth --format machine");
    auto b = run_cli("window --k 2 --family smooth --format machine");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    auto j = json::parse(a.out);
    EXPECT_EQ(j["command"], "window");
    EXPECT_EQ(j["inputs_digest"].get<std::string>().size(), 16u);
    EXPECT_TRUE(j["results"].is_array());
    // no floating point anywhere: rationals are strings, integers stay integers
    std::function<void(const json&)> walk = [&](const json& x) {
        EXPECT_FALSE(x.is_number_float()) << x.dump();
        if (x.is_structured())
            for (auto& y : x) walk(y);
    };
    walk(j);
    EXPECT_FALSE(std::regex_search(a.out, std::regex(R"(\d\.\d)")));

    auto p = run_cli("pair --format machine " + sample("pair_large_n.json"));
    auto q = run_cli("pair --format machine " + sample("pair_large_n.json"));
    ASSERT_EQ(p.code, 0) << p.out;
    EXPECT_EQ(p.out, q.out);
    walk(json::parse(p.out));
}

TEST(Cli, PairSamples) {
    auto s = run_cli("pair " + sample("pair_small_n.json"));
    EXPECT_EQ(s.code, 0) << s.out;
    EXPECT_NE(s.out.find("bounded"), std::string::npos) << s.out;
    auto l = run_cli("pair --format machine " + sample("pair_large_n.json"));
    EXPECT_EQ(l.code, 0) << l.out;
    EXPECT_NE(l.out.find("representation"), std::string::npos) << l.out;
    auto c = run_cli("pair " + sample("pair_compare.json"));
    EXPECT_EQ(c.code, 0) << c.out;
    EXPECT_NE(c.out.find("5/3"), std::string::npos) << c.out;
}

TEST(Cli, OutFileMatchesStdout) {
    auto path = (std::filesystem::temp_directory_path() / "canthresh_test_out.json").string();
    auto direct = run_cli("oracle --format machine " + sample("smooth_brieskorn.json"));
    auto to_file = run_cli("oracle --format machine --out " + path + " " + sample("smooth_brieskorn.json"));
    ASSERT_EQ(to_file.code, 0);
    std::ifstream in(path);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_EQ(body, direct.out);
}

TEST(CliInProcess, ParseCaps) {
    auto c = parse_caps("a_max=50,cap=9");
    EXPECT_EQ(c.a_max, 50);
    EXPECT_EQ(c.cap, 9);
    EXPECT_EQ(c.depth, Caps{}.depth);
    EXPECT_THROW(parse_caps("cap"), parse_error);
    EXPECT_THROW(parse_caps("cap=x"), parse_error);
    EXPECT_THROW(parse_caps("cap=-1"), parse_error);
    EXPECT_THROW(parse_caps("colour=3"), parse_error);
}

TEST(CliInProcess, RunReportsToStreams) {
    RunConfig c;
    c.command = "oracle";
    c.input = sample("quotient_z4.json");
    std::ostringstream out, err;
    EXPECT_EQ(run(c, out, err), 0);
    EXPECT_NE(out.str().find("1/4"), std::string::npos);
    c.command = "window";
    std::ostringstream out2, err2;
    EXPECT_EQ(run(c, out2, err2), 2);  // no --k
    EXPECT_FALSE(err2.str().empty());
}

// ---------------------------------------------------------------- properties

TEST(IoProperty, PresentationRoundTrip) {
    for (auto fam : kAllFamilies)
        for (auto& p : testing_support::valid_grid(fam, 30)) {
            auto j = io::to_json(p);
            auto back = io::presentation_from_json(json::parse(j.dump()));
            EXPECT_EQ(io::to_json(back).dump(), j.dump());
            EXPECT_EQ(classified_weight(back), classified_weight(p));
        }
}

TEST(IoProperty, SeriesRoundTrip) {
    std::mt19937_64 rng(307);
    for (int i = 0; i < 100; ++i) {
        const std::int64_t n = 2 + i % 5;
        auto q = CyclicQuotient(n, {1, n - 1, 1, 0});
        auto f = testing_support::random_support(rng, q, 6, 1 + i % 4);
        auto back = io::series_from_json(json::parse(io::to_json(f).dump()), 4, "f");
        EXPECT_EQ(back.terms(), f.terms());
    }
}

}  // namespace
