#ifndef VCSPHOM_ALGEBRA_HPP
#define VCSPHOM_ALGEBRA_HPP

#include <vcsphom/cost.hpp>
#include <vcsphom/digraph.hpp>
#include <vcsphom/encoding.hpp>
#include <vcsphom/structure.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcsphom {

class SizeGuard : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bug signals raised by the post-checks of the extension machinery.
class LemmaCheckFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PolymorphismCheckFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RangeLeakIntoR : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TransferVerificationFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TotalityViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * A k-ary operation on {0..size-1} stored as a full table. Arguments are
 * read as a mixed-radix number with the first argument most significant.
 */
class Operation {
public:
    Operation(int arity, int domain_size, std::vector<int> table);

    static auto projection(int arity, int domain_size, int coordinate) -> Operation;
    template <typename F>
    static auto from_function(int arity, int domain_size, F && f) -> Operation;

    auto arity() const -> int { return _arity; }
    auto domain_size() const -> int { return _size; }
    auto table() const -> const std::vector<int> & { return _table; }

    auto operator()(const std::vector<int> & args) const -> int { return _table[index(args)]; }
    auto index(const std::vector<int> & args) const -> std::size_t;
    /// Inverse of index().
    auto arguments(std::size_t index) const -> std::vector<int>;

    /// 0-based coordinate when this is a projection.
    auto projection_index() const -> std::optional<int> { return _projection; }
    auto is_projection() const -> bool { return _projection.has_value(); }
    auto is_identity() const -> bool { return _arity == 1 && is_projection(); }
    /// The table of a unary operation.
    auto unary_table() const -> std::vector<int> { return _table; }

    friend auto operator==(const Operation & a, const Operation & b) -> bool
    {
        return a._arity == b._arity && a._size == b._size && a._table == b._table;
    }

private:
    int _arity;
    int _size;
    std::vector<int> _table;
    std::optional<int> _projection;
};

/// Number of argument tuples, guarded against overflow and size limits.
auto table_size(int arity, int domain_size, std::size_t limit = 50'000'000) -> std::size_t;

template <typename F>
auto Operation::from_function(int arity, int domain_size, F && f) -> Operation
{
    auto n = table_size(arity, domain_size);
    std::vector<int> table(n);
    std::vector<int> args(arity, 0);
    for (std::size_t i = 0; i < n; ++i) {
        table[i] = f(args);
        for (int j = arity - 1; j >= 0; --j) {
            if (++args[j] < domain_size)
                break;
            args[j] = 0;
        }
    }
    return Operation{arity, domain_size, std::move(table)};
}

/// Applies f to the tuples componentwise.
auto apply_componentwise(const Operation & f, const std::vector<const Tuple *> & tuples) -> Tuple;

auto is_polymorphism(const Operation & f, const Relation & R) -> bool;
auto is_polymorphism(const Operation & f, const WeightedRelation & rho) -> bool;
/// f must live on the vertex indices of g.
auto is_polymorphism(const Operation & f, const Digraph & g) -> bool;

/// The pair (C, omega): same-arity operations with signed rational weights.
struct WeightedOperationSet
{
    std::vector<Operation> operations;
    std::vector<Rational> weights;
};

struct WpolViolation
{
    std::string what;
    /// Argument tuples (or single values for unary checks) of a failing instance.
    std::vector<Tuple> arguments;
};

/// Weights sum to zero, negative weights only on projections, all operations
/// share arity and domain. Returns the first failure.
auto check_weight_conditions(const WeightedOperationSet & wos, int domain_size) -> std::optional<WpolViolation>;

/// Every operation must be a polymorphism of rho, and the weighted sum of
/// rho over the images must be non-positive for all argument tuples from rho.
auto is_weighted_polymorphism(const WeightedOperationSet & wos, const WeightedRelation & rho)
    -> std::optional<WpolViolation>;

/// The inequality for a unary cost function defined everywhere, checked over
/// all argument tuples of the domain.
auto is_weighted_polymorphism_unary(const WeightedOperationSet & wos, const std::vector<Rational> & u)
    -> std::optional<WpolViolation>;

/// Unary operations preserving the relation(s); |D|^|D| must stay below `limit`.
auto unary_polymorphisms(const WeightedRelation & rho, std::size_t limit = 1'000'000) -> std::vector<Operation>;
auto unary_polymorphisms(const WeightedStructure & wA, std::size_t limit = 1'000'000) -> std::vector<Operation>;
/// Endomorphisms by exhaustive search; refuses |V|^|V| above `limit`.
auto unary_polymorphisms(const Digraph & g, std::size_t limit = 1'000'000) -> std::vector<Operation>;

auto is_rigid_core(const std::vector<Operation> & unary) -> bool;
auto is_core(const std::vector<Operation> & unary) -> bool;

/// Some endomorphism other than the identity, found by pinning one vertex
/// to another vertex of its level at a time. Works for large digraphs.
auto non_identity_endomorphism(const LeveledDigraph & g) -> std::optional<std::vector<int>>;

/// A term is a variable, or a symbol applied to variables.
struct Term
{
    int symbol = -1;
    std::vector<int> variables;
};

struct Identity
{
    Term lhs, rhs;
};

struct IdentitySet
{
    std::vector<std::string> names;
    std::vector<int> arities;
    int variables = 0;
    std::vector<Identity> identities;

    /// Every symbol has f(x,...,x) = x among the identities.
    auto idempotent() const -> bool;
    /// Both sides of every identity use the same variables.
    auto balanced() const -> bool;
    auto linear() const -> bool { return true; }

    static auto idempotent_template(int arity) -> IdentitySet;
    static auto wnu_template(int arity) -> IdentitySet;
    static auto cyclic_template(int arity) -> IdentitySet;
    static auto symmetric_template(int arity) -> IdentitySet;
    /// f(x,y) = f(y,x) and g(x,y) = g(y,x).
    static auto commutative_pair() -> IdentitySet;
};

struct IdentityFailure
{
    int identity;
    std::vector<int> valuation;
};

/// Exhaustive check over all valuations of the variables.
auto check_identities(const std::vector<const Operation *> & ops, const IdentitySet & sigma)
    -> std::optional<IdentityFailure>;

/**
 * The linear order on the encoding's vertices: by level, then by the
 * least pair (d, r) whose path contains the vertex, then by distance from
 * that path's initial vertex. Pairs are ordered lexicographically by
 * domain index and tuple index.
 */
struct VertexOrder
{
    /// pair index of the least path through each vertex
    std::vector<int> epsilon;
    /// position of each vertex along that path
    std::vector<int> distance;
    std::vector<int> rank;
    std::vector<int> sorted;

    auto less(int x, int y) const -> bool { return rank[x] < rank[y]; }
};

auto build_vertex_order(const EncodedDigraph & E) -> VertexOrder;

/// The component of the k-th power containing the diagonal, as a
/// membership vector over mixed-radix tuple indices.
auto diagonal_component(const EncodedDigraph & E, int k) -> std::vector<char>;

/// Extends a non-projection polymorphism of the relation to the digraph.
/// The result is checked to be a polymorphism that never maps into the
/// tuple vertices unless all arguments are tuple vertices.
auto extend_operation(const Operation & f, const EncodedDigraph & E, const VertexOrder & order,
        const std::vector<char> & delta) -> Operation;

struct TransferReport
{
    WeightedOperationSet result;
    /// Template names ("symmetric", "cyclic", "wnu") satisfied by every
    /// non-projection before and after the transfer.
    std::vector<std::string> preserved;
};

/// Projections stay projections, other operations are extended, weights
/// are copied. Throws TransferVerificationFailed when any check fails.
auto transfer_weighted_polymorphism(const WeightedOperationSet & wos, const EncodedDigraph & E,
        const VertexOrder & order) -> TransferReport;

} // namespace vcsphom

#endif
