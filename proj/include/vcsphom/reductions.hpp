#ifndef VCSPHOM_REDUCTIONS_HPP
#define VCSPHOM_REDUCTIONS_HPP

#include <vcsphom/digraph.hpp>
#include <vcsphom/encoding.hpp>
#include <vcsphom/structure.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace vcsphom {

/// Input digraph plus sparse weights; a vertex v costs W(v) * u(h(v)).
struct MinCostHomInstance
{
    Digraph graph;
    std::map<int, Rational> W;
};

/// Test-only mutations used to show that the checkers catch broken reductions.
enum class Fault
{
    None,
    DropGadgetEdge,
    DropWeightedConstraints
};

/**
 * One copy of Q_empty per variable (the variable is its initial vertex)
 * and, per constraint, paths Q_{i} from the i-th scope variable to a
 * fresh apex weighted by the constraint weight.
 */
auto forward_reduce(const VCSPInstance & inst, const WeightedStructure & wA, const EncodedDigraph & E,
        Fault fault = Fault::None) -> MinCostHomInstance;

struct FixedNo
{
    std::string reason;
};

struct FixedYes
{
    Rational offset{0};
};

struct Stage1Result
{
    LeveledDigraph graph;
    std::map<int, Rational> W;
};

/// Rejects unbalanced or too tall inputs and drops weights that can never
/// meet a tuple vertex: those below the top level of a full-height component.
auto stage1_check(const MinCostHomInstance & M, const EncodedDigraph & E) -> std::variant<Stage1Result, FixedNo>;

struct Stage2Result
{
    /// The full-height components, re-indexed.
    LeveledDigraph graph;
    /// New index -> index in the stage 1 graph.
    std::vector<int> original;
    std::map<int, Rational> W;
    /// Summed optimal costs of the removed short components.
    Rational offset{0};
    int removed = 0;
};

/// Solves every component lower than the encoding against each maximal fan.
auto stage2_short_components(const Stage1Result & s1, const EncodedDigraph & E)
    -> std::variant<Stage2Result, FixedNo>;

struct BTuple
{
    /// Top vertex of G owning this tuple.
    std::optional<int> subscript;
    /// Base vertex of G this tuple was built from.
    std::optional<int> origin;
    /// One vertex set per coordinate. Ids below the graph size are G
    /// vertices, larger ids are fresh vertices.
    std::vector<std::set<int>> sets;
};

struct BPrime
{
    int graph_size = 0;
    int fresh_count = 0;
    std::vector<BTuple> tuples;
    std::vector<std::pair<int, int>> equalities;

    auto is_fresh(int id) const -> bool { return id >= graph_size; }
};

/**
 * Builds the tuple list and the equalities. Every internal component is
 * screened first: when it cannot be placed on any path with its bottom
 * attachments at the start and its top attachments at the end, the
 * result is FixedNo.
 */
auto stage3a_build_bprime(const LeveledDigraph & G, const EncodedDigraph & E) -> std::variant<BPrime, FixedNo>;

struct ReducedVCSP
{
    /// Domain of the relation, with "rho" and its zero-weighted copy "rho0".
    WeightedStructure structure;
    VCSPInstance instance;
    Rational offset{0};
    /// Labels of the G vertices (or fresh ids as "_fresh<k>") in each variable.
    std::vector<std::vector<std::string>> classes;
};

/// Quotients B' by the equality graph and emits one rho0 constraint per
/// distinct tuple plus weighted rho constraints for tuples owned by W.
auto stage3b_build_instance(const BPrime & B, const LeveledDigraph & G, const std::map<int, Rational> & W,
        const EncodedDigraph & E, Rational offset = Rational{0}, Fault fault = Fault::None) -> ReducedVCSP;

/// The structure {rho, rho0} every reduced instance lives over.
auto primed_structure(const EncodedDigraph & E) -> WeightedStructure;

/// One variable x with rho0(x,...,x) when no constant tuple is in the
/// relation; nullopt when every instance is satisfiable by a constant.
auto canonical_no_instance(const EncodedDigraph & E) -> std::optional<VCSPInstance>;

using BackwardResult = std::variant<ReducedVCSP, FixedNo, FixedYes>;

auto backward_reduce(const MinCostHomInstance & M, const EncodedDigraph & E, Fault fault = Fault::None)
    -> BackwardResult;

} // namespace vcsphom

#endif
