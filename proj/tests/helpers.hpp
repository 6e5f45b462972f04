#ifndef VCSPHOM_TEST_HELPERS_HPP
#define VCSPHOM_TEST_HELPERS_HPP

#include <vcsphom/encoding.hpp>
#include <vcsphom/oracles.hpp>
#include <vcsphom/structure.hpp>

namespace vcsphom::test {

inline auto R(std::int64_t p, std::int64_t q = 1) -> Rational
{
    return Rational{p, q};
}

/// Two tuples (0,1) -> 2 and (1,0) -> 1 over {0,1}.
inline auto example_relation() -> WeightedRelation
{
    return WeightedRelation{{"0", "1"}, 2, {{{0, 1}, R(2)}, {{1, 0}, R(1)}}};
}

/// |x - y| over {0,1}: zero on the diagonal, one elsewhere.
inline auto cut_relation() -> WeightedRelation
{
    return WeightedRelation{{"0", "1"}, 2, {{{0, 0}, R(0)}, {{0, 1}, R(1)}, {{1, 0}, R(1)}, {{1, 1}, R(0)}}};
}

inline auto single(const WeightedRelation & rho, const std::string & name = "rho") -> WeightedStructure
{
    return WeightedStructure{rho.domain(), {{name, rho}}};
}

inline auto has_homomorphism(const Digraph & X, const Digraph & A) -> bool
{
    bool found = false;
    for_each_homomorphism(X, A, {}, [&] (const std::vector<int> &) {
        found = true;
        return false;
    });
    return found;
}

inline auto chain(std::initializer_list<std::pair<int, int>> edges, int size) -> Digraph
{
    Digraph g;
    for (int v = 0; v < size; ++v)
        g.add_vertex("v" + std::to_string(v));
    for (auto [a, b] : edges)
        g.add_edge(a, b);
    return g;
}

} // namespace vcsphom::test

#endif
