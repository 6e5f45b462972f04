#ifndef VCSPHOM_ORACLES_HPP
#define VCSPHOM_ORACLES_HPP

#include <vcsphom/cost.hpp>
#include <vcsphom/digraph.hpp>
#include <vcsphom/structure.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace vcsphom {

/// Hard limits for the exhaustive solvers. Counted in search nodes, i.e.
/// partial assignments extended by one variable.
struct SearchBudget
{
    std::uint64_t max_nodes = 20'000'000;
    /// Structures larger than this are refused outright.
    int max_vertices = 400;
    int max_domain = 64;
};

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct VcspOptimum
{
    Cost cost = Cost::infinite();
    std::optional<Assignment> assignment;
};

/// Exact optimum by depth-first enumeration in lexicographic assignment
/// order. Branches are cut once a fully assigned constraint is undefined or
/// the partial cost reaches the incumbent, which keeps the lexicographically
/// first optimum.
auto brute_force_vcsp(const VCSPInstance & inst, const WeightedStructure & wA, const SearchBudget & budget = {})
    -> VcspOptimum;

/// Calls `visit` for every homomorphism X -> A; stops early when it returns false.
void for_each_homomorphism(const Digraph & X, const Digraph & A, const SearchBudget & budget,
        const std::function<bool (const std::vector<int> &)> & visit, bool level_pruning = true);

/// All homomorphisms X -> A in lexicographic order. With level pruning (used
/// only when both digraphs are balanced) a component's candidates are
/// restricted to one level once its first vertex is placed.
auto enumerate_homomorphisms(const Digraph & X, const Digraph & A, const SearchBudget & budget = {},
        bool level_pruning = true) -> std::vector<std::vector<int>>;

struct MchOptimum
{
    Cost cost = Cost::infinite();
    std::optional<std::vector<int>> hom;
};

/**
 * Exact minimum of sum_v W(v) * u(h(v)) over homomorphisms G -> target.
 *
 * Exhaustive AND/OR search: once a vertex is placed, the unplaced part of its
 * component splits into pieces that are solved independently and summed.
 */
auto brute_force_mch(const Digraph & G, const std::map<int, Rational> & W, const Digraph & target,
        const std::vector<Rational> & u, const SearchBudget & budget = {}) -> MchOptimum;

} // namespace vcsphom

#endif
