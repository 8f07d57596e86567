#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "joinwidth/cli.hpp"
#include "test_support.hpp"

using namespace jwt;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "jwtool");
    std::vector<const char*> argv;
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("jwtool-test-" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    std::string samples(const std::string& name) const { return std::string(JW_SAMPLES_DIR) + "/" + name; }
    std::string write(const std::string& name, const std::string& text) const {
        write_file(path(name), text);
        return path(name);
    }

    fs::path dir;
};

}  // namespace

TEST_F(Cli, SolveWithDecomposition) {
    auto r = cli({"solve", "--instance", samples("triangle3.json"), "--decomposition", samples("fig1.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "SAT width=1.000\n");
}

TEST_F(Cli, SolveUnsatAndDpModes) {
    auto f = write("unsat.json", serialize_instance(odd_cycle()));
    auto r = cli({"solve", "--instance", f, "--decomposition", samples("fig1.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out.substr(0, 5), "UNSAT");
    EXPECT_EQ(cli({"solve", "--instance", f, "--dp-vars", "--width", "3"}).out, "UNSAT\n");
    auto t = samples("triangle3.json");
    EXPECT_EQ(cli({"solve", "--instance", t, "--dp-vars", "--width", "3"}).code, 0);
    auto ex = cli({"solve", "--instance", t, "--dp-cons", "--width", "0.5"});
    EXPECT_EQ(ex.code, 2);
    EXPECT_EQ(ex.out, "WIDTH-EXCEEDED\n");
    EXPECT_EQ(cli({"solve", "--instance", t, "--dp-cons", "--width", "1"}).out, "SAT width=1.000\n");
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(cli({}).code, 64);
    EXPECT_EQ(cli({"solve", "--instance", samples("triangle3.json")}).code, 64);
    EXPECT_EQ(cli({"solve", "--instance", samples("triangle3.json"), "--dp-vars"}).code, 64);
    EXPECT_EQ(cli({"solve", "--instance", samples("triangle3.json"), "--dp-cons", "--width", "x"}).code, 64);
    EXPECT_EQ(cli({"width", "--instance", samples("triangle3.json"), "--decomposition", samples("fig1.json"),
                   "--mode", "bogus"})
                  .code,
              64);
    EXPECT_EQ(cli({"frobnicate"}).code, 64);
    auto bad = write("bad.json", "{");
    auto r = cli({"exact", "--instance", bad});
    EXPECT_EQ(r.code, 64);
    EXPECT_NE(r.err.find("malformed JSON"), std::string::npos);
}

TEST_F(Cli, WidthTable) {
    auto r = cli({"width", "--instance", samples("triangle3.json"), "--decomposition", samples("fig1.json"), "--mode",
                  "naive"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\tjoin\t0,1\t11\t"), std::string::npos) << r.out;
    EXPECT_EQ(r.out.find("SAT"), std::string::npos);
    auto p = cli({"width", "--instance", samples("triangle3.json"), "--decomposition", samples("fig1.json")});
    EXPECT_NE(p.out.find("\tjoin\t0,1\t5\t1.000"), std::string::npos) << p.out;
    EXPECT_NE(p.out.find("width=1.000\nSAT\n"), std::string::npos) << p.out;
    auto c = cli({"width", "--instance", samples("triangle3.json"), "--decomposition", samples("fig1.json"), "--cap",
                  "0.5"});
    EXPECT_EQ(c.code, 2);
}

TEST_F(Cli, SearchAndExact) {
    auto t = samples("triangle3.json");
    auto nf = cli({"search", "--instance", t, "--max-width", "0.5"});
    EXPECT_EQ(nf.code, 1);
    EXPECT_EQ(nf.out, "NOT-FOUND\n");
    EXPECT_NE(nf.err.find("subsets_expanded="), std::string::npos);
    auto f = cli({"search", "--instance", t, "--max-width", "1", "--out", path("d.json")});
    EXPECT_EQ(f.code, 0);
    EXPECT_EQ(f.out, "FOUND width=1.000\n");
    EXPECT_TRUE(validate(parse_decomposition(path("d.json")), gen_triangle(3)).ok());
    auto e = cli({"exact", "--instance", t});
    EXPECT_EQ(e.code, 0);
    EXPECT_EQ(e.out.substr(0, e.out.find('\n')), "width=1.000 tuples=5");
}

TEST_F(Cli, Detect) {
    auto w = write("w.json", serialize_instance(gen_identity(6)));
    auto cr = cli({"detect", "--instance", w, "--class", "constraint-root", "--k", "1"});
    EXPECT_EQ(cr.code, 0);
    EXPECT_EQ(cr.out.substr(0, cr.out.find('\n')), "CONSTRAINT-ROOT-SET [0] width=0.000");
    EXPECT_EQ(cli({"detect", "--instance", w, "--class", "root-set", "--k", "4"}).out, "NONE\n");
    auto rs = cli({"detect", "--instance", w, "--class", "root-set", "--k", "5"});
    EXPECT_EQ(rs.out.substr(0, rs.out.find('\n')), "ROOT-SET {v1,v2,v3,v4,v5}");
    EXPECT_EQ(cli({"detect", "--instance", w, "--class", "functional"}).out, "NOT-FUNCTIONAL\n");
    auto s = write("s.json", serialize_instance(gen_star(3)));
    EXPECT_EQ(cli({"detect", "--instance", s, "--class", "hereditary", "--k", "1"}).out, "NOT-BOUNDED\n");
    EXPECT_EQ(cli({"detect", "--instance", s, "--class", "hereditary", "--k", "3"}).out, "BOUNDED\n");
    EXPECT_EQ(cli({"detect", "--instance", s, "--class", "fixing", "--k", "1"}).code, 1);
    EXPECT_EQ(cli({"detect", "--instance", s, "--class", "fixing"}).code, 64);
}

TEST_F(Cli, GenAndOracle) {
    auto r = cli({"gen", "star", "--omega", "3", "--out", path("s.json")});
    EXPECT_EQ(r.code, 0);
    auto o = cli({"oracle", "solve", "--instance", path("s.json")});
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out, "SAT solutions=8\n");
    EXPECT_EQ(cli({"gen", "triangle", "--n", "3"}).out, serialize_instance(gen_triangle(3)));
    EXPECT_EQ(cli({"gen", "random", "--seed", "5", "--vars", "5", "--constraints", "4"}).out,
              serialize_instance(gen_random({5, 5, 2, 4, 2, 2, 0.5})));
    EXPECT_EQ(cli({"gen", "agm", "--omega", "2"}).code, 3);
    EXPECT_EQ(cli({"gen", "chain", "--n", "20"}).code, 3);
    auto g = write("g.json", "[[0,1],[1,2],[0,2]]");
    EXPECT_EQ(cli({"gen", "bw-reduction", "--graph", g, "--omega", "2"}).out,
              serialize_instance(gen_bw_reduction(Graph{3, {{0, 1}, {1, 2}, {0, 2}}}, 2)));
    auto h = write("h.json", serialize_instance(gen_complete_hypergraph(Graph{3, {{0, 1}, {1, 2}, {0, 2}}}.as_hypergraph(), 2)));
    EXPECT_EQ(cli({"oracle", "branchwidth", "--instance", h}).out, "bw=2\n");
    EXPECT_EQ(cli({"oracle", "branchwidth", "--linear", "--instance", h}).out, "lbw=2\n");
    auto jw = cli({"oracle", "joinwidth", "--instance", samples("triangle3.json")});
    EXPECT_EQ(jw.out.substr(0, jw.out.find('\n')), "width=1.000 tuples=5");
}

TEST_F(Cli, LimitExitCodeAndEnvironmentOverride) {
    auto c = write("c.json", serialize_instance(gen_chain({1, 7})));
    auto r = cli({"oracle", "solve", "--instance", c});
    EXPECT_EQ(r.code, 0);
    ::setenv("JW_ASSIGNMENT_BUDGET", "1000", 1);
    auto l = cli({"oracle", "solve", "--instance", c});
    ::unsetenv("JW_ASSIGNMENT_BUDGET");
    EXPECT_EQ(l.code, 3);
    EXPECT_NE(l.err.find("assignment budget"), std::string::npos);
    ::setenv("JW_CONSTRAINT_LIMIT", "3", 1);
    auto s = cli({"exact", "--instance", c});
    ::unsetenv("JW_CONSTRAINT_LIMIT");
    EXPECT_EQ(s.code, 3);
    EXPECT_NE(s.err.find("constraint subset limit"), std::string::npos);
}

TEST_F(Cli, BenchCsv) {
    auto r = cli({"bench", "--suite", "chain", "--out", path("b.csv")});
    EXPECT_EQ(r.code, 0);
    auto text = read_file(path("b.csv"));
    EXPECT_EQ(text.substr(0, text.find('\n')), "instance,family,engine,verdict,width,wall_seconds,peak_relation_size");
    EXPECT_NE(text.find("chain-16,chain,propagation,SAT,,"), std::string::npos) << text;
    EXPECT_EQ(cli({"bench", "--suite", "nope"}).code, 64);
}

TEST(Bench, SmokeSuiteRows) {
    auto rows = run_bench("smoke");
    EXPECT_EQ(rows.size(), bench_suite("smoke").size() * 3);
    for (const auto& r : rows) {
        if (r.engine == "exact") {
            EXPECT_TRUE(r.width.has_value());
        }
        if (r.instance == "triangle-3" && r.engine != "dp-cons@1") {
            EXPECT_EQ(r.verdict, "SAT");
        }
    }
}
