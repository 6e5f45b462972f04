#include "helpers.hpp"

#include <vcsphom/gen.hpp>
#include <vcsphom/paths.hpp>
#include <vcsphom/verify.hpp>

#include <doctest.h>

using namespace vcsphom;
using vcsphom::test::R;

TEST_SUITE("digraph-kit")
{
    TEST_CASE("levels of balanced digraphs")
    {
        // 0 -> 1 <- 2 -> 3
        auto g = test::chain({{0, 1}, {2, 1}, {2, 3}}, 4);
        auto L = leveled(g);
        CHECK(L.level == std::vector<int>{0, 1, 0, 1});
        CHECK(L.height == 1);
        CHECK(L.components.size() == 1);

        auto two = test::chain({{0, 1}, {2, 3}, {3, 4}}, 5);
        auto L2 = leveled(two);
        CHECK(L2.components.size() == 2);
        CHECK(L2.component_height == std::vector<int>{1, 2});
        CHECK(L2.level[2] == 0);
    }

    TEST_CASE("unbalanced digraphs come with a witness")
    {
        auto tri = test::chain({{0, 1}, {1, 2}, {0, 2}}, 3);
        auto r = compute_levels(tri);
        REQUIRE(std::holds_alternative<NotBalanced>(r));
        auto & w = std::get<NotBalanced>(r).witness;
        REQUIRE(w.size() >= 2);
        CHECK(w.front() == w.back());
        CHECK(net_length(tri, w) != 0);

        Digraph loop;
        loop.add_vertex("a");
        loop.add_edge(0, 0);
        CHECK(std::holds_alternative<NotBalanced>(compute_levels(loop)));
        CHECK_THROWS_AS(leveled(tri), std::invalid_argument);
    }

    TEST_CASE("internal components")
    {
        auto E = build_encoding(test::example_relation());
        auto comps = internal_components(E.graph);
        CHECK(comps.size() == 4);
        for (auto & c : comps) {
            CHECK(c.base_attachments.size() == 1);
            CHECK(c.top_attachments.size() == 1);
        }
    }

    TEST_CASE("Q_S shape")
    {
        for (int n = 0; n <= 3; ++n)
            for (int mask = 0; mask < (1 << n); ++mask) {
                IndexSet S;
                for (int i = 1; i <= n; ++i)
                    if (mask & (1 << (i - 1)))
                        S.insert(i);
                auto q = build_Q_S(n, S);
                int zigzags = n - static_cast<int>(S.size());
                CHECK(q.graph.size() == n + 3 + 2 * zigzags);
                CHECK(q.graph.edge_count() == n + 2 + 2 * zigzags);
                auto L = leveled(q.graph);
                CHECK(L.height == n + 2);
                CHECK(L.level[q.initial()] == 0);
                CHECK(L.level[q.terminal()] == n + 2);
                CHECK(L.level == q.level);
                CHECK(static_cast<int>(q.first_vertex.size()) == n + 2);
            }
        CHECK_THROWS_AS(build_Q_S(2, {3}), std::invalid_argument);
    }

    TEST_CASE("homomorphism enumeration examples")
    {
        auto edge = test::chain({{0, 1}}, 2);
        // 0 -> 1 <- 2 -> 3
        auto zig = test::chain({{0, 1}, {2, 1}, {2, 3}}, 4);
        CHECK(enumerate_homomorphisms(edge, edge).size() == 1);
        CHECK(enumerate_homomorphisms(zig, edge).size() == 1);
        CHECK(enumerate_homomorphisms(edge, zig).size() == 3);
    }

    TEST_CASE("level pruning does not change the homomorphisms")
    {
        Rng rng{3};
        for (int it = 0; it < 40; ++it) {
            auto X = random_balanced_component(rng, uniform(rng, 0, 3), 6);
            auto A = random_balanced_component(rng, uniform(rng, 1, 4), 8);
            CHECK(enumerate_homomorphisms(X, A, {}, true) == enumerate_homomorphisms(X, A, {}, false));
        }
    }

    TEST_CASE("path satisfiability agrees with exhaustive search")
    {
        Rng rng{17};
        for (int it = 0; it < 150; ++it) {
            int n = uniform(rng, 0, 3);
            IndexSet S;
            for (int i = 1; i <= n; ++i)
                if (uniform(rng, 0, 1))
                    S.insert(i);
            auto q = build_Q_S(n, S);
            auto h = random_balanced_component(rng, uniform(rng, 0, n + 2), 10);
            auto H = leveled(h);
            auto got = path_csp_satisfiable(H, q);
            CHECK(got.has_value() == test::has_homomorphism(h, q.graph));
            if (got) {
                for (auto & [a, b] : h.edges())
                    CHECK(q.graph.has_edge((*got)[a], (*got)[b]));
            }
        }
    }

    TEST_CASE("gamma is the inclusion-minimal index set when it is unique")
    {
        Rng rng{23};
        int unique = 0, ambiguous = 0;
        for (int it = 0; it < 150; ++it) {
            int n = uniform(rng, 1, 3);
            auto h = random_balanced_component(rng, uniform(rng, 0, n + 2), 12);
            auto H = leveled(h);
            auto minimal = brute_force_minimal_sets(h, n);
            if (minimal.empty()) {
                CHECK_THROWS_AS(gamma(H, n), NotSatisfiableAnywhere);
                continue;
            }
            if (minimal.size() > 1) {
                CHECK_THROWS_AS(gamma(H, n), MonotonicityViolation);
                ++ambiguous;
                continue;
            }
            auto G = gamma(H, n);
            CHECK(G == minimal.front());
            for (int mask = 0; mask < (1 << n); ++mask) {
                IndexSet S;
                for (int i = 1; i <= n; ++i)
                    if (mask & (1 << (i - 1)))
                        S.insert(i);
                bool sat = path_csp_satisfiable(H, build_Q_S(n, S)).has_value();
                CHECK(sat == std::includes(S.begin(), S.end(), G.begin(), G.end()));
            }
            ++unique;
        }
        CHECK(unique > 50);
        MESSAGE(ambiguous << " components with several minimal sets");
    }

    TEST_CASE("a floating component can have two minimal sets")
    {
        // three edges up, two down; fits Q_{1} and Q_{2} but not Q_{}
        auto h = test::chain({{0, 1}, {1, 2}, {2, 3}, {4, 3}, {5, 4}}, 6);
        auto minimal = brute_force_minimal_sets(h, 2);
        CHECK(minimal == std::vector<IndexSet>{{1}, {2}});
        CHECK_THROWS_AS(gamma(leveled(h), 2), MonotonicityViolation);

        // pinned to the ends of a full-height path the choice disappears
        auto q = build_Q_S(2, {1});
        CHECK(gamma(leveled(q.graph), 2) == IndexSet{1});
    }

    TEST_CASE("internal components of an encoding have the expected gamma")
    {
        auto E = build_encoding(WeightedRelation{{"0", "1", "2"}, 3, {{{0, 1, 0}, R(1)}, {{2, 2, 1}, R(0)}}});
        auto comps = internal_components(E.graph);
        REQUIRE(comps.size() == static_cast<std::size_t>(E.domain_size() * E.tuple_count()));
        for (auto & c : comps) {
            int k = 0;
            while (std::find(E.path_vertices[k].begin(), E.path_vertices[k].end(), c.vertices[0])
                    == E.path_vertices[k].end())
                ++k;
            int d = k / E.tuple_count(), r = k % E.tuple_count();
            auto G = component_gamma(E.graph, c, E.n);
            CHECK(G == agreement_set(d, E.tuples[r]));
            auto closure = component_closure(E.graph, c).first;
            CHECK(brute_force_minimal_sets(closure, E.n) == std::vector<IndexSet>{G});
        }
    }

    TEST_CASE("fans")
    {
        auto f = build_fan(2, FanKind::CommonTerminal, {{1}, {}, {1, 2}});
        CHECK(f.paths.size() == 3);
        int expected = 1;
        for (auto & q : f.paths)
            expected += q.graph.size() - 1;
        CHECK(f.graph.size() == expected);
        CHECK(f.level[f.apex()] == 4);
        auto g = build_fan(1, FanKind::CommonInitial, {{}, {1}});
        CHECK(g.level[g.apex()] == 0);
    }

    TEST_CASE("fan optimum agrees with exhaustive search")
    {
        Rng rng{29};
        for (int it = 0; it < 150; ++it) {
            auto c = random_fan_case(rng);
            auto fast = fan_min_cost(c.H, c.W, c.fan, c.u);
            auto slow = brute_force_mch(c.H.graph, c.W, c.fan.graph, c.u);
            if (slow.cost.is_infinite()) {
                CHECK(fast.status == FanOutcome::Status::Infeasible);
                continue;
            }
            REQUIRE(fast.status != FanOutcome::Status::Infeasible);
            CHECK(fast.cost == slow.cost);
            if (fast.status == FanOutcome::Status::NoOptimisationImpact)
                CHECK(slow.cost == Cost::zero());
            REQUIRE(fast.hom.size() == static_cast<std::size_t>(c.H.graph.size()));
            Rational total{0};
            for (auto & [v, w] : c.W)
                total += w * c.u[fast.hom[v]];
            CHECK(Cost{total} == fast.cost);
            for (auto & [a, b] : c.H.graph.edges())
                CHECK(c.fan.graph.has_edge(fast.hom[a], fast.hom[b]));
        }
    }
}
