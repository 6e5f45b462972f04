#include "helpers.hpp"

#include <vcsphom/algebra.hpp>
#include <vcsphom/gen.hpp>
#include <vcsphom/verify.hpp>

#include <doctest.h>

using namespace vcsphom;
using vcsphom::test::R;

TEST_SUITE("construction")
{
    TEST_CASE("the two-tuple example")
    {
        auto E = build_encoding(test::example_relation());
        CHECK(E.graph.graph.size() == 24);
        CHECK(E.graph.graph.edge_count() == 24);
        std::vector<int> profile(E.height() + 1, 0);
        for (int l : E.graph.level)
            ++profile[l];
        CHECK(profile == std::vector<int>{2, 6, 8, 6, 2});

        CHECK(E.u[E.tuple_vertex(0)] == R(2));
        CHECK(E.u[E.tuple_vertex(1)] == R(1));
        int nonzero = 0;
        for (auto & x : E.u)
            nonzero += x != Rational{0};
        CHECK(nonzero == 2);
        CHECK(E.graph.graph.label(E.base(1)) == "b:1");
        CHECK(E.graph.graph.label(E.tuple_vertex(0)) == "t:(0,1)");
        CHECK_FALSE(verify_encoding(E));
    }

    TEST_CASE("paths carry the agreement sets")
    {
        CHECK(agreement_set(0, {0, 1, 0}) == IndexSet{1, 3});
        CHECK(agreement_set(2, {0, 1, 0}).empty());
        auto E = build_encoding(test::example_relation());
        CHECK(E.paths[E.pair_index(0, 0)].S == IndexSet{1});
        CHECK(E.paths[E.pair_index(1, 0)].S == IndexSet{2});
        for (std::size_t v = 0; v < E.roles.size(); ++v)
            if (E.roles[v].kind == RoleKind::Path)
                CHECK(E.graph.graph.label(v).rfind("p:", 0) == 0);
    }

    TEST_CASE("size formulas and levels on random relations")
    {
        for (auto & rho : relation_corpus(41, 30)) {
            auto E = build_encoding(rho);
            CHECK(E.graph.graph.size() == expected_vertex_count(E.n, E.domain_size(), E.tuple_count()));
            CHECK(E.graph.graph.edge_count() == expected_edge_count(E.n, E.domain_size(), E.tuple_count()));
            CHECK(E.graph.height == E.n + 2);
            CHECK(E.graph.components.size() == 1);
            CHECK(internal_components(E.graph).size() == static_cast<std::size_t>(E.domain_size() * E.tuple_count()));
            auto bad = verify_encoding(E, false);
            CHECK_MESSAGE(! bad, (bad ? bad->what : ""));
        }
    }

    TEST_CASE("verification catches a damaged encoding")
    {
        auto E = build_encoding(test::example_relation());
        auto broken = E;
        auto e = *broken.graph.graph.edges().begin();
        broken.graph.graph.remove_edge(e.first, e.second);
        CHECK(verify_encoding(broken, false));

        auto wrong_u = E;
        wrong_u.u[E.tuple_vertex(0)] = R(5);
        REQUIRE(verify_encoding(wrong_u, false));
        CHECK(verify_encoding(wrong_u, false)->what.find("unary") != std::string::npos);
    }

    TEST_CASE("rigidity matches on both sides")
    {
        auto E = build_encoding(test::example_relation());
        auto pair = is_rigid_core_pair(E);
        CHECK_FALSE(pair.relation_rigid);
        CHECK_FALSE(pair.digraph_rigid);
        REQUIRE(pair.relation_witness);
        CHECK(*pair.relation_witness == std::vector<int>{1, 0});
        REQUIRE(pair.witness);
        for (auto & [a, b] : E.graph.graph.edges())
            CHECK(E.graph.graph.has_edge((*pair.witness)[a], (*pair.witness)[b]));
        CHECK(is_core(unary_polymorphisms(E.rho)));

        WeightedRelation pinned{{"0", "1"}, 2, {{{0, 1}, R(1)}}};
        auto P = build_encoding(pinned);
        auto p = is_rigid_core_pair(P);
        CHECK(p.relation_rigid);
        CHECK(p.digraph_rigid);

        for (auto & rho : relation_corpus(43, 12))
            CHECK_NOTHROW(is_rigid_core_pair(build_encoding(rho)));
    }

    TEST_CASE("maximal fans")
    {
        auto E = build_encoding(test::example_relation());
        auto fans = maximal_fans(E);
        REQUIRE(fans.size() == 4);
        CHECK(fans[0].fan.kind == FanKind::CommonInitial);
        CHECK(fans[3].fan.kind == FanKind::CommonTerminal);
        for (auto & f : fans) {
            CHECK(f.origin.size() == static_cast<std::size_t>(f.fan.graph.size()));
            for (auto & [a, b] : f.fan.graph.edges())
                CHECK(E.graph.graph.has_edge(f.origin[a], f.origin[b]));
        }
    }
}
