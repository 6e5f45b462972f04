#include "helpers.hpp"

#include <vcsphom/algebra.hpp>
#include <vcsphom/io.hpp>
#include <vcsphom/reductions.hpp>

#include <doctest.h>

using namespace vcsphom;
using vcsphom::test::R;

TEST_SUITE("cli-io")
{
    TEST_CASE("structures round trip")
    {
        WeightedStructure wA{{"a", "b"},
            {{"eq", WeightedRelation{{"a", "b"}, 2, {{{0, 0}, R(1, 2)}, {{1, 1}, R(0)}}}},
                {"u", WeightedRelation{{"a", "b"}, 1, {{{1}, R(3)}}}}}};
        auto j = structure_to_json(wA);
        auto back = structure_from_json(j);
        CHECK(structure_to_json(back) == j);
        CHECK(back.relations()[0].relation.cost({0, 0}) == Cost{R(1, 2)});
    }

    TEST_CASE("instances round trip")
    {
        VCSPInstance inst{{"x", "y"}, {{"rho", {1, 0}, R(5, 3)}}};
        auto back = instance_from_json(instance_to_json(inst));
        CHECK(back.variables == inst.variables);
        REQUIRE(back.constraints.size() == 1);
        CHECK(back.constraints[0].scope == std::vector<int>{1, 0});
        CHECK(back.constraints[0].weight == R(5, 3));

        auto j = Json::parse(R"({"variables":["x"],"constraints":[{"relation":"rho","scope":["x","x"]}]})");
        CHECK(instance_from_json(j).constraints[0].weight == R(1));
    }

    TEST_CASE("malformed input is rejected")
    {
        CHECK_THROWS_AS(structure_from_json(Json::parse(R"({"domain":["0"]})")), ParseError);
        CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"variables":["x"],"constraints":[{"relation":"r","scope":["q"]}]})")),
            ParseError);
        auto inf = Json::parse(R"({"domain":["0"],"relations":{"r":{"arity":1,"entries":[{"tuple":["0"],"weight":"inf"}]}}})");
        CHECK_THROWS_AS(structure_from_json(inf), ParseError);
        CHECK_THROWS_AS(read_json("/nonexistent/file.json"), ParseError);
    }

    TEST_CASE("digraphs, MCH instances and encodings")
    {
        auto g = test::chain({{0, 1}, {2, 1}}, 3);
        CHECK(digraph_from_json(digraph_to_json(g)) == g);

        MinCostHomInstance M{g, {{1, R(7, 2)}}};
        auto back = mch_from_json(mch_to_json(M));
        CHECK(back.graph == g);
        CHECK(back.W == M.W);

        auto E = build_encoding(test::example_relation());
        auto j = encoding_to_json(E);
        auto F = encoding_from_json(j);
        CHECK(F.graph.graph == E.graph.graph);
        CHECK(F.u == E.u);
        j["graph"]["edges"].erase(j["graph"]["edges"].begin());
        CHECK_THROWS(encoding_from_json(j));
    }

    TEST_CASE("operations round trip")
    {
        Domain d{"lo", "hi"};
        auto f = Operation::from_function(2, 2, [] (const std::vector<int> & a) { return a[0] | a[1]; });
        auto j = operation_to_json(f, d);
        CHECK(j["table"]["lo,hi"] == "hi");
        CHECK(operation_from_json(j, d) == f);

        WeightedOperationSet wos{{f, Operation::projection(2, 2, 0)}, {R(1), R(-1)}};
        auto w = wos_from_json(wos_to_json(wos, d), d);
        CHECK(w.operations == wos.operations);
        CHECK(w.weights == wos.weights);

        auto partial = Json::parse(R"({"arity":2,"table":{"lo,lo":"lo"}})");
        CHECK_THROWS_AS(operation_from_json(partial, d), ParseError);
    }

    TEST_CASE("backward results")
    {
        CHECK(backward_to_json(FixedNo{})["result"] == "fixed-no");
        CHECK(backward_to_json(FixedYes{R(3)})["offset"] == "3");
    }

    TEST_CASE("dot output")
    {
        auto E = build_encoding(test::example_relation());
        auto dot = to_dot(E);
        CHECK(dot.rfind("digraph", 0) == 0);
        CHECK(dot.find("rankdir=BT") != std::string::npos);
        CHECK(dot.find("rank=same") != std::string::npos);
        CHECK(dot == to_dot(E));
        auto L = leveled(test::chain({{0, 1}}, 2));
        CHECK(to_dot(L, "H").find("->") != std::string::npos);
    }
}
