#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace jwt;

namespace {

std::string parse_error_of(const std::string& text) {
    try {
        parse_instance_json(text, "t");
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST(InstanceFile, SampleTriangle) {
    auto inst = parse_instance(std::string(JW_SAMPLES_DIR) + "/triangle3.json");
    EXPECT_EQ(max_tuples(inst), 5u);
    EXPECT_EQ(serialize_instance(inst), serialize_instance(gen_triangle(3)));
}

TEST(InstanceFile, FixedKeyOrderAndCanonicalTuples) {
    auto text = serialize_instance(gen_star(1));
    EXPECT_EQ(text, "{\"variables\":[\"x\",\"v1\"],\"domain\":[\"0\",\"1\"],\"constraints\":[{\"scope\":[\"x\",\"v1\"],"
                    "\"tuples\":[[\"0\",\"0\"],[\"0\",\"1\"]]}]}\n");
    auto shuffled = parse_instance_json(
        R"({"constraints":[{"tuples":[["0","1"],["0","0"]],"scope":["x","v1"]}],"domain":["0","1"],"variables":["x","v1"]})");
    EXPECT_EQ(serialize_instance(shuffled), text);
}

TEST(InstanceFile, IntegerNamesAccepted) {
    auto inst = parse_instance_json(R"({"variables":["x"],"domain":[1,2],"constraints":[{"scope":["x"],"tuples":[[2]]}]})");
    EXPECT_EQ(inst.value_names, (std::vector<std::string>{"1", "2"}));
    EXPECT_EQ(inst.constraints[0].relation.tuples(), (std::vector<Tuple>{{1}}));
}

TEST(InstanceFileProperty, RoundTripIsByteIdentical) {
    std::vector<Instance> all = random_corpus(100);
    all.push_back(gen_triangle(3));
    all.push_back(gen_star(4));
    all.push_back(gen_chain({1, 6}));
    all.push_back(gen_bw_reduction(Graph{4, {{0, 1}, {1, 2}, {2, 3}}}, 2));
    all.push_back(gen_identity(5));
    for (const auto& inst : all) {
        auto text = serialize_instance(inst);
        auto back = parse_instance_json(text);
        EXPECT_EQ(serialize_instance(back), text);
        ASSERT_EQ(back.num_constraints(), inst.num_constraints());
        for (std::size_t i = 0; i < inst.num_constraints(); ++i)
            EXPECT_EQ(back.constraints[i], inst.constraints[i]);
    }
}

TEST(InstanceFile, Errors) {
    EXPECT_TRUE(contains(parse_error_of("{"), "malformed JSON"));
    EXPECT_TRUE(contains(parse_error_of(R"({"domain":[],"constraints":[]})"), "variables"));
    auto ragged = parse_error_of(
        R"({"variables":["x","y"],"domain":["0"],"constraints":[{"scope":["x","y"],"tuples":[["0","0"]]},{"scope":["x","y"],"tuples":[["0"]]}]})");
    EXPECT_TRUE(contains(ragged, "constraint 1")) << ragged;
    EXPECT_TRUE(contains(ragged, "expected 2 values")) << ragged;
    auto var = parse_error_of(R"({"variables":["x"],"domain":["0"],"constraints":[{"scope":["q"],"tuples":[]}]})");
    EXPECT_TRUE(contains(var, "undeclared variable \"q\"")) << var;
    auto val = parse_error_of(R"({"variables":["x"],"domain":["0"],"constraints":[{"scope":["x"],"tuples":[["7"]]}]})");
    EXPECT_TRUE(contains(val, "undeclared value \"7\"")) << val;
    auto dup = parse_error_of(R"({"variables":["x","x"],"domain":["0"],"constraints":[]})");
    EXPECT_FALSE(dup.empty());
    auto rep = parse_error_of(R"({"variables":["x"],"domain":["0"],"constraints":[{"scope":["x","x"],"tuples":[]}]})");
    EXPECT_TRUE(contains(rep, "repeated")) << rep;
    auto uncovered = parse_error_of(R"({"variables":["x","y"],"domain":["0"],"constraints":[{"scope":["x"],"tuples":[]}]})");
    EXPECT_TRUE(contains(uncovered, "occurs in no constraint")) << uncovered;
    EXPECT_THROW(parse_instance("/nonexistent/file.json"), ParseError);
}

TEST(DecompositionFile, SampleAndRoundTrip) {
    auto dec = parse_decomposition(std::string(JW_SAMPLES_DIR) + "/fig1.json");
    EXPECT_TRUE(validate(dec, gen_triangle(3)).ok());
    EXPECT_EQ(dec.leaf_labels(), (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(serialize_decomposition(dec), "{\"left\":{\"left\":{\"leaf\":0},\"right\":{\"leaf\":1}},\"right\":{\"leaf\":2}}\n");
    for (const auto& t : all_rooted_binary_trees(5)) {
        auto text = serialize_decomposition(t);
        EXPECT_EQ(serialize_decomposition(parse_decomposition_json(text)), text);
    }
}

TEST(DecompositionFile, Errors) {
    EXPECT_THROW(parse_decomposition_json("{\"leaf\":-1}"), ParseError);
    EXPECT_THROW(parse_decomposition_json("{\"left\":{\"leaf\":0}}"), ParseError);
    EXPECT_THROW(parse_decomposition_json("[1]"), ParseError);
}

TEST(GraphFile, BothForms) {
    auto a = parse_graph_json("[[0,1],[1,2]]");
    EXPECT_EQ(a.n, 3u);
    EXPECT_EQ(a.edges.size(), 2u);
    auto b = parse_graph_json(R"({"vertices":5,"edges":[[0,4]]})");
    EXPECT_EQ(b.n, 5u);
    EXPECT_THROW(parse_graph_json("[[0,0]]"), ParseError);
    EXPECT_THROW(parse_graph_json(R"({"vertices":2,"edges":[[0,4]]})"), ParseError);
}

TEST(BenchCsv, Format) {
    std::vector<BenchRow> rows{{"i1", "random", "exact", "SAT", 1.0, 0.5, 7},
                               {"i2", "chain", "propagation", "SAT", std::nullopt, 0.25, 0}};
    EXPECT_EQ(bench_csv(rows),
              "instance,family,engine,verdict,width,wall_seconds,peak_relation_size\n"
              "i1,random,exact,SAT,1.000,0.500000,7\n"
              "i2,chain,propagation,SAT,,0.250000,0\n");
}
