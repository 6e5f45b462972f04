#ifndef VCSPHOM_ENCODING_HPP
#define VCSPHOM_ENCODING_HPP

#include <vcsphom/digraph.hpp>
#include <vcsphom/paths.hpp>
#include <vcsphom/structure.hpp>

#include <optional>
#include <string>
#include <vector>

namespace vcsphom {

enum class RoleKind
{
    Base,
    Tuple,
    Path
};

/// d and r index the domain and the tuple list; block/position are only
/// meaningful for path vertices and follow the naming of build_Q_S.
struct VertexRole
{
    RoleKind kind = RoleKind::Base;
    int d = -1;
    int r = -1;
    int block = -1;
    int position = -1;
};

/**
 * The balanced digraph built from one weighted relation: the domain at
 * level 0, the tuples of the relation at level n+2, and for every pair
 * (d, r) the path Q_{i : d = r_i} running from d up to r.
 *
 * Vertices are created bases first, then tuples, then path interiors with
 * pairs (d, r) in lexicographic order.
 */
struct EncodedDigraph
{
    WeightedRelation rho;
    /// The key set of rho in canonical order.
    std::vector<Tuple> tuples;
    LeveledDigraph graph;
    std::vector<VertexRole> roles;
    /// rho(r) on tuple vertices, zero elsewhere.
    std::vector<Rational> u;
    int n = 0;
    /// Indexed by pair_index(d, r): the path specification and its vertices
    /// in the digraph, listed in the order of the path's own vertex indices.
    std::vector<OrientedPath> paths;
    std::vector<std::vector<int>> path_vertices;

    auto domain_size() const -> int { return static_cast<int>(rho.domain().size()); }
    auto tuple_count() const -> int { return static_cast<int>(tuples.size()); }
    auto height() const -> int { return n + 2; }
    auto base(int d) const -> int { return d; }
    auto tuple_vertex(int r) const -> int { return domain_size() + r; }
    auto pair_index(int d, int r) const -> int { return d * tuple_count() + r; }
};

/// {i : d = r_i}, 1-based.
auto agreement_set(int d, const Tuple & r) -> IndexSet;

auto build_encoding(const WeightedRelation & rho) -> EncodedDigraph;

/// Expected sizes: (3n+1)|R||D| + (1-2n)|R| + |D| vertices and
/// (3n+2)|R||D| - 2n|R| edges.
auto expected_vertex_count(int n, int domain_size, int tuple_count) -> long long;
auto expected_edge_count(int n, int domain_size, int tuple_count) -> long long;

struct EncodingViolation
{
    std::string what;
    std::vector<std::string> witness;
};

/**
 * Re-derives every structural property of an encoding from its graph:
 * balance and height, level of bases and tuples, the shape of every path,
 * the size formulas, and the unary function. When `check_rigidity` is set
 * it also compares rigidity of the relation and of the digraph.
 */
auto verify_encoding(const EncodedDigraph & E, bool check_rigidity = true) -> std::optional<EncodingViolation>;

class BiconditionalViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RigidityPair
{
    bool relation_rigid = false;
    bool digraph_rigid = false;
    /// A non-identity endomorphism of the digraph, when there is one.
    std::optional<std::vector<int>> witness;
    /// A non-identity unary polymorphism of the relation, when there is one.
    std::optional<std::vector<int>> relation_witness;
};

/// Throws BiconditionalViolation when exactly one of the two is rigid.
auto is_rigid_core_pair(const EncodedDigraph & E) -> RigidityPair;

/// A fan inside the encoding, with the encoding vertex behind each fan vertex.
struct EncodingFan
{
    Fan fan;
    std::vector<int> origin;
    std::vector<Rational> u;
};

/// The fans of all paths leaving one base vertex, then the fans of all
/// paths entering one tuple vertex.
auto maximal_fans(const EncodedDigraph & E) -> std::vector<EncodingFan>;

} // namespace vcsphom

#endif
