#ifndef VCSPHOM_DIGRAPH_HPP
#define VCSPHOM_DIGRAPH_HPP

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace vcsphom {

using Edge = std::pair<int, int>;

/// Labelled digraph with set semantics on edges. Vertices are indexed in
/// insertion order, which is the declaration order used for tie-breaking.
class Digraph {
public:
    auto add_vertex(const std::string & label) -> int;
    /// Returns the existing index when the label is already present.
    auto ensure_vertex(const std::string & label) -> int;
    void add_edge(int from, int to);
    void add_edge(const std::string & from, const std::string & to);
    void remove_edge(int from, int to);

    auto size() const -> int { return static_cast<int>(_labels.size()); }
    auto edge_count() const -> int { return static_cast<int>(_edges.size()); }
    auto label(int v) const -> const std::string & { return _labels.at(v); }
    auto labels() const -> const std::vector<std::string> & { return _labels; }
    auto index(const std::string & label) const -> std::optional<int>;
    auto at(const std::string & label) const -> int;

    auto out(int v) const -> const std::vector<int> & { return _out[v]; }
    auto in(int v) const -> const std::vector<int> & { return _in[v]; }
    auto has_edge(int from, int to) const -> bool { return _edges.contains({from, to}); }
    /// Sorted lexicographically by (from, to).
    auto edges() const -> const std::set<Edge> & { return _edges; }

    /// Row-major n*n adjacency matrix, for hot loops.
    auto adjacency_matrix() const -> std::vector<char>;

    friend auto operator==(const Digraph & a, const Digraph & b) -> bool
    {
        return a._labels == b._labels && a._edges == b._edges;
    }

private:
    std::vector<std::string> _labels;
    std::unordered_map<std::string, int> _index;
    std::vector<std::vector<int>> _out, _in;
    std::set<Edge> _edges;
};

/// Induced subgraph on `vertices` (kept in the given order), plus the
/// original index of each new vertex.
auto induced_subgraph(const Digraph & g, const std::vector<int> & vertices) -> std::pair<Digraph, std::vector<int>>;

/// Weakly connected components, each sorted, ordered by smallest member.
auto weak_components(const Digraph & g) -> std::vector<std::vector<int>>;

/// Balanced digraph with its level function. Every weakly connected
/// component has minimum level 0; `height` is the largest level overall.
struct LeveledDigraph
{
    Digraph graph;
    std::vector<int> level;
    int height = 0;
    std::vector<int> component;
    std::vector<std::vector<int>> components;
    std::vector<int> component_height;
};

/// A closed walk (first vertex repeated at the end) whose numbers of
/// forward and backward edges differ.
struct NotBalanced
{
    std::vector<int> witness;
};

auto compute_levels(const Digraph & g) -> std::variant<LeveledDigraph, NotBalanced>;

/// Convenience for inputs known to be balanced; throws std::invalid_argument otherwise.
auto leveled(const Digraph & g) -> LeveledDigraph;

/// Net length of a closed walk: forward edges minus backward edges.
auto net_length(const Digraph & g, const std::vector<int> & walk) -> int;

/// Component `c` of a leveled digraph as its own leveled digraph. The
/// second member maps new indices back to the original ones.
auto extract_component(const LeveledDigraph & g, int c) -> std::pair<LeveledDigraph, std::vector<int>>;

/// A component of the subgraph left after deleting the bottom and top levels.
struct InternalComponent
{
    std::vector<int> vertices;
    /// Vertices of level `height` adjacent to the component.
    std::vector<int> top_attachments;
    /// Vertices of level 0 adjacent to the component.
    std::vector<int> base_attachments;
};

auto internal_components(const LeveledDigraph & g) -> std::vector<InternalComponent>;

} // namespace vcsphom

#endif
