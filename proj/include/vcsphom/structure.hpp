#ifndef VCSPHOM_STRUCTURE_HPP
#define VCSPHOM_STRUCTURE_HPP

#include <vcsphom/cost.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace vcsphom {

/// A tuple of domain indices. Domain order is declaration order, so the
/// lexicographic order on tuples is the canonical tuple order.
using Tuple = std::vector<int>;
using Relation = std::set<Tuple>;
using Domain = std::vector<std::string>;

/// "(a,b,c)" using the domain's labels.
auto tuple_label(const Domain & domain, const Tuple & t) -> std::string;

/**
 * A partial map from n-tuples over a domain to non-negative finite
 * weights. Tuples outside the key set are undefined, i.e. they carry
 * infinite cost when the relation is read as a cost function.
 */
class WeightedRelation {
public:
    WeightedRelation(Domain domain, int arity, std::map<Tuple, Rational> entries);

    auto arity() const -> int { return _arity; }
    auto domain() const -> const Domain & { return _domain; }
    auto entries() const -> const std::map<Tuple, Rational> & { return _entries; }
    auto size() const -> std::size_t { return _entries.size(); }

    auto contains(const Tuple & t) const -> bool { return _entries.contains(t); }
    /// Weight of t, or infinity when t is outside the relation.
    auto cost(const Tuple & t) const -> Cost;

    /// The same relation with every weight set to zero.
    auto zero_weighted() const -> WeightedRelation;

    friend auto operator==(const WeightedRelation &, const WeightedRelation &) -> bool = default;

private:
    Domain _domain;
    int _arity;
    std::map<Tuple, Rational> _entries;
};

/// Key set of a weighted relation.
auto feas(const WeightedRelation & rho) -> Relation;

/// Cartesian product of the key sets, weights added, coordinate blocks in
/// input order. All inputs must share one domain.
auto direct_product(const std::vector<WeightedRelation> & rhos) -> WeightedRelation;

struct NamedRelation
{
    std::string name;
    WeightedRelation relation;
};

class WeightedStructure {
public:
    WeightedStructure(Domain domain, std::vector<NamedRelation> relations);

    auto domain() const -> const Domain & { return _domain; }
    auto relations() const -> const std::vector<NamedRelation> & { return _relations; }
    auto find(const std::string & name) const -> const WeightedRelation *;
    auto get(const std::string & name) const -> const WeightedRelation &;

    /// Index of a domain label; throws StructuralError when absent.
    auto domain_index(const std::string & label) const -> int;

private:
    Domain _domain;
    std::vector<NamedRelation> _relations;
};

struct Constraint
{
    std::string relation;
    std::vector<int> scope;
    Rational weight{1};
};

struct VCSPInstance
{
    std::vector<std::string> variables;
    std::vector<Constraint> constraints;
};

/// Total map from instance variables (by index) to domain indices.
using Assignment = std::vector<int>;

/// Checks relation names, arities, scope ranges and weight signs.
void validate_instance(const VCSPInstance & inst, const WeightedStructure & wA);

/// Weighted sum of the constraint costs under h. Undefined tuples make the
/// sum infinite. Throws StructuralError on malformed input.
auto eval_instance(const VCSPInstance & inst, const WeightedStructure & wA, const Assignment & h) -> Cost;

/// Where each original relation lives inside the collapsed product relation.
struct ScopeBlock
{
    std::string name;
    int offset;
    int arity;
    Rational min_weight;
};

struct CollapsedStructure
{
    WeightedStructure structure;
    std::vector<ScopeBlock> scope_map;
    bool collapsed = false;
};

/// Replaces a multi-relation structure by the single direct product of its
/// relations, in declaration order. One-relation structures pass through.
auto collapse_to_single_relation(const WeightedStructure & wA) -> CollapsedStructure;

struct RewrittenInstance
{
    VCSPInstance instance;
    /// Every optimum of `instance` equals the original optimum plus this.
    Rational offset{0};
};

/**
 * Rewrites an instance over wA into one over the collapsed structure. Each
 * constraint keeps its own block and gets fresh padding variables for the
 * other blocks. Original variables keep their indices.
 */
auto rewrite_instance(const VCSPInstance & inst, const CollapsedStructure & collapsed) -> RewrittenInstance;

} // namespace vcsphom

#endif
