#include "helpers.hpp"

#include <vcsphom/gen.hpp>
#include <vcsphom/reductions.hpp>
#include <vcsphom/verify.hpp>

#include <doctest.h>

using namespace vcsphom;
using vcsphom::test::R;

namespace
{
    auto backward_optimum(const BackwardResult & r) -> Cost
    {
        if (std::holds_alternative<FixedNo>(r))
            return Cost::infinite();
        if (auto * y = std::get_if<FixedYes>(&r))
            return Cost{y->offset};
        auto & v = std::get<ReducedVCSP>(r);
        auto c = brute_force_vcsp(v.instance, v.structure).cost;
        return c.is_infinite() ? c : Cost{c.value() + v.offset};
    }

    auto oracle(const MinCostHomInstance & M, const EncodedDigraph & E) -> Cost
    {
        return brute_force_mch(M.graph, M.W, E.graph.graph, E.u).cost;
    }
}

TEST_SUITE("reductions")
{
    TEST_CASE("forward reduction of a single constraint")
    {
        auto rho = test::example_relation();
        auto wA = test::single(rho);
        auto E = build_encoding(rho);
        VCSPInstance inst{{"x", "y"}, {{"rho", {0, 1}, R(1)}}};
        auto M = forward_reduce(inst, wA, E);
        REQUIRE(M.W.size() == 1);
        CHECK(M.W.begin()->second == R(1));
        CHECK(M.graph.index("x:x"));
        CHECK(M.graph.index("y0"));
        auto L = leveled(M.graph);
        CHECK(L.height == E.height());
        CHECK(oracle(M, E) == Cost{1});
        CHECK(brute_force_vcsp(inst, wA).cost == Cost{1});
    }

    TEST_CASE("forward reduction needs the encoded relation")
    {
        auto E = build_encoding(test::example_relation());
        auto other = test::single(test::cut_relation());
        VCSPInstance inst{{"x"}, {{"rho", {0, 0}, R(1)}}};
        CHECK_THROWS_AS(forward_reduce(inst, other, E), StructuralError);
        WeightedStructure two{{"0", "1"}, {{"rho", test::example_relation()}, {"cut", test::cut_relation()}}};
        CHECK_THROWS_AS(forward_reduce(inst, two, E), StructuralError);
    }

    TEST_CASE("stage 1")
    {
        auto E = build_encoding(test::example_relation());
        MinCostHomInstance tri{test::chain({{0, 1}, {1, 2}, {0, 2}}, 3), {}};
        CHECK(std::holds_alternative<FixedNo>(stage1_check(tri, E)));
        CHECK(std::holds_alternative<FixedNo>(backward_reduce(tri, E)));

        std::initializer_list<std::pair<int, int>> up = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}};
        MinCostHomInstance tall{test::chain(up, 6), {}};
        CHECK(std::holds_alternative<FixedNo>(stage1_check(tall, E)));

        MinCostHomInstance self{E.graph.graph, {}};
        self.W[E.base(0)] = R(3);
        self.W[E.graph.graph.size() - 1] = R(2);
        self.W[E.tuple_vertex(1)] = R(1);
        auto s1 = std::get<Stage1Result>(stage1_check(self, E));
        CHECK(s1.W.size() == 1);
        CHECK(s1.W.contains(E.tuple_vertex(1)));

        // weights in short components survive
        MinCostHomInstance shorty{test::chain({{0, 1}}, 2), {{0, R(1)}}};
        CHECK(std::get<Stage1Result>(stage1_check(shorty, E)).W.size() == 1);
    }

    TEST_CASE("stage 2 folds short components into the offset")
    {
        WeightedRelation one{{"0", "1"}, 2, {{{0, 1}, R(2)}}};
        auto E = build_encoding(one);
        auto & q = E.paths[E.pair_index(0, 0)];
        // a short piece of a path slides down and avoids the tuple vertex
        MinCostHomInstance M;
        M.graph = subpath(q, 1, q.graph.size() - 1);
        M.W[M.graph.size() - 1] = R(3);
        auto r = backward_reduce(M, E);
        REQUIRE(std::holds_alternative<FixedYes>(r));
        CHECK(std::get<FixedYes>(r).offset == R(0));
        CHECK(oracle(M, E) == Cost::zero());

        Rng rng{19};
        for (int it = 0; it < 200; ++it) {
            MinCostHomInstance S{random_balanced_component(rng, uniform(rng, 0, E.height() - 1), 8), {}};
            for (int v = 0; v < S.graph.size(); ++v)
                if (uniform(rng, 0, 2) == 0)
                    S.W[v] = R(uniform(rng, 1, 3));
            auto expected = oracle(S, E);
            auto got = backward_reduce(S, E);
            if (expected.is_infinite()) {
                CHECK(std::holds_alternative<FixedNo>(got));
                continue;
            }
            REQUIRE(std::holds_alternative<FixedYes>(got));
            CHECK(Cost{std::get<FixedYes>(got).offset} == expected);
        }
    }

    TEST_CASE("stage 3a on the encoding itself")
    {
        auto E = build_encoding(test::example_relation());
        auto B = std::get<BPrime>(stage3a_build_bprime(E.graph, E));
        CHECK(B.equalities.empty());
        CHECK(B.fresh_count == 0);
        REQUIRE(B.tuples.size() == 2);
        for (int r = 0; r < 2; ++r) {
            auto & t = B.tuples[r];
            REQUIRE(t.subscript);
            CHECK(*t.subscript == E.tuple_vertex(r));
            for (int i = 0; i < 2; ++i)
                CHECK(t.sets[i] == std::set<int>{E.base(E.tuples[r][i])});
        }
    }

    TEST_CASE("backward reduction of the encoding itself")
    {
        auto E = build_encoding(test::example_relation());
        MinCostHomInstance M{E.graph.graph, {}};
        for (int r = 0; r < E.tuple_count(); ++r)
            M.W[E.tuple_vertex(r)] = R(1);
        auto r = backward_reduce(M, E);
        REQUIRE(std::holds_alternative<ReducedVCSP>(r));
        auto & v = std::get<ReducedVCSP>(r);
        CHECK(v.instance.variables.size() == 2);
        CHECK(backward_optimum(r) == oracle(M, E));
        CHECK(oracle(M, E) == Cost{3});
    }

    TEST_CASE("components hanging from the top only")
    {
        auto E = build_encoding(test::example_relation());
        auto q = build_Q_S(2, {});
        MinCostHomInstance M;
        M.graph = q.graph;
        int a = M.graph.add_vertex("a");
        int b = M.graph.add_vertex("b");
        M.graph.add_edge(a, q.terminal());
        M.graph.add_edge(b, a);
        M.W[q.terminal()] = R(1);
        auto r = backward_reduce(M, E);
        CHECK(backward_optimum(r) == oracle(M, E));
    }

    TEST_CASE("canonical no-instance")
    {
        auto E = build_encoding(test::example_relation());
        auto no = canonical_no_instance(E);
        REQUIRE(no);
        CHECK(brute_force_vcsp(*no, primed_structure(E)).cost.is_infinite());
        CHECK_FALSE(canonical_no_instance(build_encoding(test::cut_relation())));
    }

    TEST_CASE("random round trips")
    {
        CorpusConfig config;
        config.seed = 101;
        config.count = 60;
        config.threads = 2;
        auto fwd = verify_forward_corpus(config);
        CHECK(fwd.failures() == 0);
        CHECK(fwd.budget_hits() == 0);
        auto bwd = verify_backward_corpus(config);
        CHECK(bwd.failures() == 0);
        CHECK(bwd.budget_hits() == 0);
        for (auto & r : bwd.records)
            if (r.status != "pass")
                MESSAGE(record_line(r));
    }

    TEST_CASE("injected faults are caught")
    {
        CorpusConfig config;
        config.seed = 7;
        config.count = 40;
        config.fault = Fault::DropGadgetEdge;
        auto fwd = verify_forward_corpus(config);
        CHECK(fwd.failures() > 0);
        CHECK(! fwd.counterexamples.empty());

        config.fault = Fault::DropWeightedConstraints;
        auto bwd = verify_backward_corpus(config);
        CHECK(bwd.failures() > 0);
    }
}
