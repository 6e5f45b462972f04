#include "helpers.hpp"

#include <vcsphom/gen.hpp>

#include <doctest.h>

using namespace vcsphom;
using vcsphom::test::R;

TEST_SUITE("cost-core")
{
    TEST_CASE("rationals parse and print canonically")
    {
        CHECK(parse_rational("3") == R(3));
        CHECK(parse_rational("6/4") == R(3, 2));
        CHECK(parse_rational("-1/2") == R(-1, 2));
        CHECK(to_string(R(6, 4)) == "3/2");
        CHECK(to_string(R(4, 2)) == "2");
        CHECK_THROWS_AS(parse_rational("1/0"), StructuralError);
        CHECK_THROWS_AS(parse_rational("x"), StructuralError);
        CHECK_THROWS_AS(parse_rational(""), StructuralError);
    }

    TEST_CASE("extended costs")
    {
        auto inf = Cost::infinite();
        CHECK((Cost{R(1, 2)} + Cost{R(1, 3)}) == Cost{R(5, 6)});
        CHECK((inf + Cost{5}) == inf);
        CHECK((R(0) * inf) == inf);
        CHECK((R(0) * Cost{7}) == Cost::zero());
        CHECK(Cost{1000000} < inf);
        CHECK_FALSE(inf < inf);
        CHECK(inf.str() == "inf");
        CHECK(Cost::parse("inf", true) == inf);
        CHECK_THROWS_AS(Cost::parse("inf"), StructuralError);
        CHECK_THROWS_AS(Cost{R(-1)}, StructuralError);
        CHECK_THROWS_AS(R(-1) * Cost{1}, StructuralError);
    }

    TEST_CASE("relations reject malformed contents")
    {
        CHECK_THROWS_AS(WeightedRelation({"0"}, 1, {}), StructuralError);
        CHECK_THROWS_AS(WeightedRelation({"0"}, 2, {{{0}, R(0)}}), StructuralError);
        CHECK_THROWS_AS(WeightedRelation({"0"}, 1, {{{1}, R(0)}}), StructuralError);
        CHECK_THROWS_AS(WeightedRelation({"0"}, 1, {{{0}, R(-1)}}), StructuralError);
        auto rho = test::example_relation();
        CHECK(rho.cost({0, 1}) == Cost{2});
        CHECK(rho.cost({0, 0}).is_infinite());
        CHECK(feas(rho) == Relation{{0, 1}, {1, 0}});
        CHECK(rho.zero_weighted().cost({0, 1}) == Cost::zero());
        CHECK_THROWS_AS(WeightedStructure({"a", "a"}, {}), StructuralError);
    }

    TEST_CASE("instance evaluation")
    {
        auto wA = test::single(test::example_relation());
        VCSPInstance inst{{"x", "y"}, {{"rho", {0, 1}, R(1)}}};
        CHECK(eval_instance(inst, wA, {1, 0}) == Cost{1});
        CHECK(eval_instance(inst, wA, {0, 1}) == Cost{2});
        CHECK(eval_instance(inst, wA, {0, 0}).is_infinite());

        inst.constraints[0].weight = R(0);
        CHECK(eval_instance(inst, wA, {0, 0}).is_infinite());
        CHECK(eval_instance(inst, wA, {0, 1}) == Cost::zero());

        VCSPInstance bad{{"x"}, {{"nope", {0}, R(1)}}};
        CHECK_THROWS_AS(eval_instance(bad, wA, {0}), StructuralError);
        VCSPInstance wrong_arity{{"x"}, {{"rho", {0}, R(1)}}};
        CHECK_THROWS_AS(validate_instance(wrong_arity, wA), StructuralError);
        VCSPInstance out_of_range{{"x"}, {{"rho", {0, 3}, R(1)}}};
        CHECK_THROWS_AS(validate_instance(out_of_range, wA), StructuralError);
    }

    TEST_CASE("max cut triangle")
    {
        WeightedRelation mc{{"0", "1"}, 2, {{{0, 0}, R(1)}, {{0, 1}, R(0)}, {{1, 0}, R(0)}, {{1, 1}, R(1)}}};
        VCSPInstance tri{{"a", "b", "c"}, {{"mc", {0, 1}, R(1)}, {"mc", {1, 2}, R(1)}, {"mc", {0, 2}, R(1)}}};
        auto r = brute_force_vcsp(tri, test::single(mc, "mc"));
        CHECK(r.cost == Cost{1});
        REQUIRE(r.assignment);
        CHECK(*r.assignment == Assignment{0, 0, 1});
    }

    TEST_CASE("collapse keeps optima up to the returned offset")
    {
        WeightedRelation u{{"a", "b"}, 1, {{{0}, R(1)}, {{1}, R(2)}}};
        WeightedRelation b{{"a", "b"}, 2, {{{0, 1}, R(0)}, {{1, 0}, R(1, 2)}, {{1, 1}, R(3)}}};
        WeightedStructure wA{{"a", "b"}, {{"u", u}, {"b", b}}};
        auto c = collapse_to_single_relation(wA);
        CHECK(c.collapsed);
        REQUIRE(c.structure.relations().size() == 1);
        CHECK(c.structure.relations()[0].relation.arity() == 3);
        CHECK(c.structure.relations()[0].relation.size() == 6);
        CHECK(c.scope_map[1].offset == 1);

        auto one = collapse_to_single_relation(test::single(b));
        CHECK_FALSE(one.collapsed);

        Rng rng{11};
        for (int it = 0; it < 60; ++it) {
            VCSPInstance inst;
            int vars = uniform(rng, 1, 3);
            for (int v = 0; v < vars; ++v)
                inst.variables.push_back("x" + std::to_string(v));
            for (int k = uniform(rng, 1, 3); k > 0; --k) {
                if (uniform(rng, 0, 1))
                    inst.constraints.push_back({"u", {uniform(rng, 0, vars - 1)}, R(uniform(rng, 0, 2))});
                else
                    inst.constraints.push_back(
                        {"b", {uniform(rng, 0, vars - 1), uniform(rng, 0, vars - 1)}, R(uniform(rng, 0, 2))});
            }
            auto rw = rewrite_instance(inst, c);
            auto lhs = brute_force_vcsp(inst, wA).cost;
            auto rhs = brute_force_vcsp(rw.instance, c.structure).cost;
            if (lhs.is_infinite())
                CHECK(rhs.is_infinite());
            else
                CHECK(rhs == Cost{lhs.value() + rw.offset});
        }
    }

    TEST_CASE("scaling all weights scales every finite cost")
    {
        Rng rng{5};
        for (int it = 0; it < 40; ++it) {
            auto rho = random_relation(rng, {2, 3, 5, 3});
            auto wA = test::single(rho);
            auto inst = random_instance(rng, wA);
            auto scaled = inst;
            Rational lambda = R(uniform(rng, 0, 5), uniform(rng, 1, 3));
            for (auto & c : scaled.constraints)
                c.weight *= lambda;
            Assignment h(inst.variables.size());
            for (auto & x : h)
                x = uniform(rng, 0, static_cast<int>(rho.domain().size()) - 1);
            auto a = eval_instance(inst, wA, h), b = eval_instance(scaled, wA, h);
            if (a.is_infinite())
                CHECK(b.is_infinite());
            else
                CHECK(b == Cost{lambda * a.value()});
        }
    }
}
