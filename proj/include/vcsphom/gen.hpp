#ifndef VCSPHOM_GEN_HPP
#define VCSPHOM_GEN_HPP

#include <vcsphom/algebra.hpp>
#include <vcsphom/encoding.hpp>
#include <vcsphom/paths.hpp>
#include <vcsphom/reductions.hpp>
#include <vcsphom/structure.hpp>

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace vcsphom {

using Rng = std::mt19937_64;

/// Independent stream for item `id` of a corpus generated from `seed`.
auto item_rng(std::uint64_t seed, std::uint64_t id) -> Rng;

auto uniform(Rng & rng, int lo, int hi) -> int;

struct RelationShape
{
    int max_arity = 3;
    int max_domain = 3;
    int max_tuples = 5;
    int max_weight = 3;
};

/// Non-empty relation over domain {"0","1",...} with weights 0..max_weight.
auto random_relation(Rng & rng, const RelationShape & shape = {}) -> WeightedRelation;

/// Instance over the relation named "rho"; weights 0..max_weight.
auto random_instance(Rng & rng, const WeightedStructure & wA, int max_variables = 4, int max_constraints = 3,
        int max_weight = 3) -> VCSPInstance;

/// Connected balanced digraph with exactly `height` + 1 levels, grown as a
/// random up/down walk that sometimes returns to earlier vertices.
auto random_balanced_component(Rng & rng, int height, int max_vertices) -> Digraph;

/// Vertices first..last of the path, which must be a contiguous range.
auto subpath(const OrientedPath & q, int first, int last) -> Digraph;

/// Appends h to g with labels prefixed; returns the index of h's vertex 0.
auto append_disjoint(Digraph & g, const Digraph & h, const std::string & prefix) -> int;

/**
 * MCH instance over an encoding: a disjoint union of pieces of its paths,
 * gadget fans, random balanced components and now and then an unbalanced or
 * too tall component, with random weights.
 */
auto random_mch_instance(Rng & rng, const EncodedDigraph & E, int max_vertices = 30) -> MinCostHomInstance;

struct FanCase
{
    Fan fan;
    LeveledDigraph H;
    std::map<int, Rational> W;
    /// Nonzero only on the fan's top level.
    std::vector<Rational> u;
};

/// n <= 2, up to three paths, H connected, lower than the fan, <= 10 vertices.
auto random_fan_case(Rng & rng) -> FanCase;

struct PolymorphismCase
{
    WeightedRelation rho;
    Operation f;
};

/// A random relation (|D| in 2..3, arity <= 2) with a random idempotent
/// commutative binary polymorphism of it.
auto random_commutative_case(Rng & rng) -> PolymorphismCase;

} // namespace vcsphom

#endif
