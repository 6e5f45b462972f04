#ifndef VCSPHOM_PATHS_HPP
#define VCSPHOM_PATHS_HPP

#include <vcsphom/cost.hpp>
#include <vcsphom/digraph.hpp>

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace vcsphom {

/// Subset of {1..n}; ordered so that it prints canonically.
using IndexSet = std::set<int>;

/**
 * The oriented path Q_S of height n+2: a leading single edge, then for each
 * block l = 1..n a single edge when l is in S and a zigzag otherwise, then a
 * trailing single edge.
 *
 * Vertices are indexed from the initial vertex (index 0) to the terminal
 * one. Block 0 is the leading edge, block n+1 the trailing edge. A vertex
 * shared by two blocks is recorded in the earlier one; its position there
 * is the block's last position.
 */
struct OrientedPath
{
    int n = 0;
    IndexSet S;
    Digraph graph;
    std::vector<int> level;
    std::vector<int> block;
    std::vector<int> position;
    /// first_vertex[l] is the block's starting vertex, for l = 0..n+1.
    std::vector<int> first_vertex;

    auto initial() const -> int { return 0; }
    auto terminal() const -> int { return graph.size() - 1; }
    auto height() const -> int { return n + 2; }
    auto is_single_edge(int l) const -> bool { return l == 0 || l == n + 1 || S.contains(l); }
    /// Vertices of block l, including both boundary vertices, from the initial side.
    auto block_vertices(int l) const -> std::vector<int>;
};

/// Vertex names are "q<l>/<k>": block l, position k within the block.
auto build_Q_S(int n, const IndexSet & S) -> OrientedPath;

/// The set {1..n}.
auto full_index_set(int n) -> IndexSet;

/// H vertex -> target vertex.
using Pins = std::map<int, int>;

/**
 * Looks for a homomorphism from `h` into `target` where vertex v of `h` may
 * only use target vertices of level want_level[v] (any level when negative).
 *
 * Domains are pruned to arc consistency and then a maintained-arc-
 * consistency search assigns vertices in declaration order, trying target
 * vertices in index order. The first homomorphism found is returned.
 */
auto find_leveled_hom(const Digraph & h, const Digraph & target, const std::vector<int> & target_level,
        const std::vector<int> & want_level, const Pins & pins = {}) -> std::optional<std::vector<int>>;

/**
 * Decides whether the connected balanced digraph H maps into Q extending
 * `pins`. Level offsets are tried from 0 upwards unless a pin fixes one. The
 * returned homomorphism is the first one found at the lowest offset, taking
 * the initial-most admissible target vertex at every step.
 */
auto path_csp_satisfiable(const LeveledDigraph & H, const OrientedPath & Q, const Pins & pins = {})
    -> std::optional<std::vector<int>>;

/// As path_csp_satisfiable with a fixed level offset.
auto path_csp_at_offset(const LeveledDigraph & H, const OrientedPath & Q, int offset, const Pins & pins = {})
    -> std::optional<std::vector<int>>;

class NotSatisfiableAnywhere : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MonotonicityViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An H vertex that must land on the initial (or terminal) vertex of Q_S.
struct Anchor
{
    int vertex;
    bool terminal;
};

/**
 * The inclusion-minimal S with H satisfiable in Q_S, computed as
 * { i : H does not map into Q_{[n] \ {i}} } and then re-checked against
 * Q_S itself. Throws NotSatisfiableAnywhere when H does not map into
 * Q_{[n]} and MonotonicityViolation when the re-check fails.
 */
auto gamma(const LeveledDigraph & H, int n) -> IndexSet;

/// gamma() where the anchored vertices are pinned to the ends of every Q_S.
auto gamma_anchored(const LeveledDigraph & H, int n, const std::vector<Anchor> & anchors) -> IndexSet;

/// The component together with its attachment vertices, which are pinned
/// to the ends of the paths. G must have height n+2.
auto component_closure(const LeveledDigraph & G, const InternalComponent & C) -> std::pair<Digraph, std::vector<Anchor>>;
auto component_gamma(const LeveledDigraph & G, const InternalComponent & C, int n) -> IndexSet;

enum class FanKind
{
    CommonInitial,
    CommonTerminal
};

/**
 * Several Q_S paths (same n) glued at their initial or terminal vertex.
 * The apex is fan vertex 0. `members[p][k]` is the fan vertex of vertex k
 * of path p.
 */
struct Fan
{
    FanKind kind = FanKind::CommonTerminal;
    int n = 0;
    std::vector<OrientedPath> paths;
    std::vector<std::vector<int>> members;
    Digraph graph;
    std::vector<int> level;

    auto apex() const -> int { return 0; }
    auto height() const -> int { return n + 2; }
};

/// Fan vertex labels are "v" for the apex and "p<i>:<path label>" elsewhere.
auto build_fan(int n, FanKind kind, const std::vector<IndexSet> & sets) -> Fan;

struct FanOutcome
{
    enum class Status
    {
        Optimum,
        Infeasible,
        NoOptimisationImpact
    };

    Status status = Status::Infeasible;
    /// Zero unless status is Optimum.
    Cost cost;
    /// H vertex -> fan vertex; empty when infeasible.
    std::vector<int> hom;
};

/**
 * Minimum cost homomorphism from a connected H (height below the fan's)
 * into a fan, costing sum_x W(x) * u(h(x)).
 *
 * Each level offset is handled by one of two cases. If no vertex of H lands
 * on the apex level the image lies inside a single path, and every path is
 * tried. Otherwise every vertex on the apex level is pinned to the apex and
 * each remaining component is placed in some path on its own. For a fixed
 * offset and path the cost is determined, so the optimum is a minimum over
 * finitely many candidates. NoOptimisationImpact is reported when every
 * feasible candidate costs zero.
 *
 * `u` is indexed by fan vertex and must vanish below the top level, as the
 * unary function of an encoding does.
 */
auto fan_min_cost(const LeveledDigraph & H, const std::map<int, Rational> & W, const Fan & F,
        const std::vector<Rational> & u) -> FanOutcome;

} // namespace vcsphom

#endif
