#include <vcsphom/algebra.hpp>
#include <vcsphom/oracles.hpp>
#include <vcsphom/paths.hpp>

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <tuple>

namespace vcsphom {

auto table_size(int arity, int domain_size, std::size_t limit) -> std::size_t
{
    if (arity < 0 || domain_size < 1)
        throw std::invalid_argument{"bad operation shape"};
    std::size_t n = 1;
    for (int i = 0; i < arity; ++i) {
        if (n > limit / static_cast<std::size_t>(domain_size))
            throw SizeGuard{"operation table of " + std::to_string(domain_size) + "^" + std::to_string(arity)
                + " entries is too large"};
        n *= domain_size;
    }
    return n;
}

Operation::Operation(int arity, int domain_size, std::vector<int> table) :
    _arity(arity), _size(domain_size), _table(std::move(table))
{
    if (arity < 1)
        throw std::invalid_argument{"operations need arity at least 1"};
    if (_table.size() != table_size(arity, domain_size))
        throw std::invalid_argument{"operation table has the wrong size"};
    for (int y : _table)
        if (y < 0 || y >= domain_size)
            throw std::invalid_argument{"operation value outside the domain"};

    for (int i = 0; i < arity && ! _projection; ++i) {
        bool is = true;
        for (std::size_t t = 0; t < _table.size() && is; ++t)
            is = _table[t] == arguments(t)[i];
        if (is)
            _projection = i;
    }
}

auto Operation::projection(int arity, int domain_size, int coordinate) -> Operation
{
    return from_function(arity, domain_size, [&] (const std::vector<int> & x) { return x[coordinate]; });
}

auto Operation::index(const std::vector<int> & args) const -> std::size_t
{
    std::size_t i = 0;
    for (int a : args)
        i = i * _size + a;
    return i;
}

auto Operation::arguments(std::size_t index) const -> std::vector<int>
{
    std::vector<int> args(_arity);
    for (int j = _arity - 1; j >= 0; --j) {
        args[j] = static_cast<int>(index % _size);
        index /= _size;
    }
    return args;
}

auto apply_componentwise(const Operation & f, const std::vector<const Tuple *> & tuples) -> Tuple
{
    Tuple out(tuples.front()->size());
    std::vector<int> args(tuples.size());
    for (std::size_t c = 0; c < out.size(); ++c) {
        for (std::size_t j = 0; j < tuples.size(); ++j)
            args[j] = (*tuples[j])[c];
        out[c] = f(args);
    }
    return out;
}

namespace
{
    /// Calls visit for every k-tuple of elements of `items` (by index).
    template <typename Visit>
    auto for_each_choice(std::size_t count, int k, Visit && visit) -> bool
    {
        if (count == 0)
            return true;
        std::vector<std::size_t> pick(k, 0);
        while (true) {
            if (! visit(pick))
                return false;
            int j = k - 1;
            while (j >= 0 && ++pick[j] == count)
                pick[j--] = 0;
            if (j < 0)
                return true;
        }
    }
}

auto is_polymorphism(const Operation & f, const Relation & R) -> bool
{
    std::vector<const Tuple *> items;
    for (auto & t : R)
        items.push_back(&t);
    std::vector<const Tuple *> chosen(f.arity());
    return for_each_choice(items.size(), f.arity(), [&] (const std::vector<std::size_t> & pick) {
        for (int j = 0; j < f.arity(); ++j)
            chosen[j] = items[pick[j]];
        return R.contains(apply_componentwise(f, chosen));
    });
}

auto is_polymorphism(const Operation & f, const WeightedRelation & rho) -> bool
{
    if (f.domain_size() != static_cast<int>(rho.domain().size()))
        throw std::invalid_argument{"operation and relation live on different domains"};
    return is_polymorphism(f, feas(rho));
}

auto is_polymorphism(const Operation & f, const Digraph & g) -> bool
{
    if (f.domain_size() != g.size())
        throw std::invalid_argument{"operation and digraph live on different sets"};
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    std::vector<int> from(f.arity()), to(f.arity());
    return for_each_choice(edges.size(), f.arity(), [&] (const std::vector<std::size_t> & pick) {
        for (int j = 0; j < f.arity(); ++j) {
            from[j] = edges[pick[j]].first;
            to[j] = edges[pick[j]].second;
        }
        return g.has_edge(f(from), f(to));
    });
}

auto check_weight_conditions(const WeightedOperationSet & wos, int domain_size) -> std::optional<WpolViolation>
{
    if (wos.operations.size() != wos.weights.size())
        return WpolViolation{"every operation needs exactly one weight", {}};
    if (wos.operations.empty())
        return WpolViolation{"empty operation set", {}};
    Rational sum{0};
    int k = wos.operations.front().arity();
    for (std::size_t i = 0; i < wos.operations.size(); ++i) {
        auto & f = wos.operations[i];
        if (f.arity() != k || f.domain_size() != domain_size)
            return WpolViolation{"operation " + std::to_string(i) + " has a different arity or domain", {}};
        if (wos.weights[i] < 0 && ! f.is_projection())
            return WpolViolation{"operation " + std::to_string(i) + " has negative weight but is not a projection", {}};
        sum += wos.weights[i];
    }
    if (sum != Rational{0})
        return WpolViolation{"weights sum to " + to_string(sum) + ", not 0", {}};
    return std::nullopt;
}

auto is_weighted_polymorphism(const WeightedOperationSet & wos, const WeightedRelation & rho)
    -> std::optional<WpolViolation>
{
    int dsize = static_cast<int>(rho.domain().size());
    if (auto bad = check_weight_conditions(wos, dsize))
        return bad;
    auto R = feas(rho);
    for (std::size_t i = 0; i < wos.operations.size(); ++i)
        if (! is_polymorphism(wos.operations[i], R))
            return WpolViolation{"operation " + std::to_string(i) + " is not a polymorphism", {}};

    int k = wos.operations.front().arity();
    std::vector<const Tuple *> items;
    for (auto & t : R)
        items.push_back(&t);
    std::vector<const Tuple *> chosen(k);
    std::optional<WpolViolation> failure;
    for_each_choice(items.size(), k, [&] (const std::vector<std::size_t> & pick) {
        for (int j = 0; j < k; ++j)
            chosen[j] = items[pick[j]];
        Rational total{0};
        for (std::size_t i = 0; i < wos.operations.size(); ++i)
            if (wos.weights[i] != Rational{0})
                total += wos.weights[i] * rho.entries().at(apply_componentwise(wos.operations[i], chosen));
        if (total > 0) {
            WpolViolation v{"weighted sum " + to_string(total) + " is positive", {}};
            for (auto * t : chosen)
                v.arguments.push_back(*t);
            failure = std::move(v);
            return false;
        }
        return true;
    });
    return failure;
}

auto is_weighted_polymorphism_unary(const WeightedOperationSet & wos, const std::vector<Rational> & u)
    -> std::optional<WpolViolation>
{
    int size = static_cast<int>(u.size());
    if (auto bad = check_weight_conditions(wos, size))
        return bad;
    auto & first = wos.operations.front();
    std::size_t n = first.table().size();
    for (std::size_t t = 0; t < n; ++t) {
        Rational total{0};
        for (std::size_t i = 0; i < wos.operations.size(); ++i)
            if (wos.weights[i] != Rational{0})
                total += wos.weights[i] * u[wos.operations[i].table()[t]];
        if (total > 0) {
            WpolViolation v{"weighted sum " + to_string(total) + " is positive", {}};
            for (int a : first.arguments(t))
                v.arguments.push_back({a});
            return v;
        }
    }
    return std::nullopt;
}

namespace
{
    auto all_unary(int size, std::size_t limit) -> std::vector<Operation>
    {
        std::size_t count = 1;
        for (int i = 0; i < size; ++i) {
            if (count > limit / static_cast<std::size_t>(size))
                throw SizeGuard{"too many unary maps to enumerate"};
            count *= size;
        }
        std::vector<Operation> out;
        std::vector<int> table(size, 0);
        for (std::size_t c = 0; c < count; ++c) {
            out.emplace_back(1, size, table);
            for (int j = size - 1; j >= 0; --j) {
                if (++table[j] < size)
                    break;
                table[j] = 0;
            }
        }
        return out;
    }
}

auto unary_polymorphisms(const WeightedRelation & rho, std::size_t limit) -> std::vector<Operation>
{
    auto R = feas(rho);
    std::vector<Operation> out;
    for (auto & f : all_unary(static_cast<int>(rho.domain().size()), limit))
        if (is_polymorphism(f, R))
            out.push_back(f);
    return out;
}

auto unary_polymorphisms(const WeightedStructure & wA, std::size_t limit) -> std::vector<Operation>
{
    std::vector<Operation> out;
    for (auto & f : all_unary(static_cast<int>(wA.domain().size()), limit)) {
        bool ok = true;
        for (auto & [name, rho] : wA.relations())
            ok = ok && is_polymorphism(f, rho);
        if (ok)
            out.push_back(f);
    }
    return out;
}

auto unary_polymorphisms(const Digraph & g, std::size_t limit) -> std::vector<Operation>
{
    SearchBudget budget;
    budget.max_nodes = limit;
    std::vector<Operation> out;
    for (auto & h : enumerate_homomorphisms(g, g, budget))
        out.emplace_back(1, g.size(), h);
    return out;
}

auto is_rigid_core(const std::vector<Operation> & unary) -> bool
{
    return unary.size() == 1 && unary.front().is_identity();
}

auto is_core(const std::vector<Operation> & unary) -> bool
{
    return std::all_of(unary.begin(), unary.end(), [] (const Operation & f) {
        auto t = f.table();
        std::sort(t.begin(), t.end());
        return std::adjacent_find(t.begin(), t.end()) == t.end();
    });
}

auto non_identity_endomorphism(const LeveledDigraph & g) -> std::optional<std::vector<int>>
{
    int n = g.graph.size();
    bool connected = g.components.size() <= 1;
    std::vector<int> want(n, -1);
    if (connected)
        want = g.level;
    for (int v = 0; v < n; ++v)
        for (int x = 0; x < n; ++x) {
            if (x == v || (connected && g.level[x] != g.level[v]))
                continue;
            if (auto h = find_leveled_hom(g.graph, g.graph, connected ? g.level : want, want, {{v, x}}))
                return h;
        }
    return std::nullopt;
}

auto IdentitySet::idempotent() const -> bool
{
    for (std::size_t s = 0; s < arities.size(); ++s) {
        bool found = false;
        for (auto & id : identities)
            for (auto [a, b] : {std::pair{&id.lhs, &id.rhs}, std::pair{&id.rhs, &id.lhs}})
                if (a->symbol == static_cast<int>(s) && b->symbol < 0 && b->variables.size() == 1
                    && std::all_of(a->variables.begin(), a->variables.end(),
                        [&] (int x) { return x == b->variables.front(); }))
                    found = true;
        if (! found)
            return false;
    }
    return true;
}

auto IdentitySet::balanced() const -> bool
{
    for (auto & id : identities) {
        std::set<int> l(id.lhs.variables.begin(), id.lhs.variables.end());
        std::set<int> r(id.rhs.variables.begin(), id.rhs.variables.end());
        if (l != r)
            return false;
    }
    return true;
}

namespace
{
    auto single(std::string name, int arity) -> IdentitySet
    {
        IdentitySet s;
        s.names = {std::move(name)};
        s.arities = {arity};
        return s;
    }

    auto rotated(const std::vector<int> & xs) -> std::vector<int>
    {
        std::vector<int> out(xs.begin() + 1, xs.end());
        out.push_back(xs.front());
        return out;
    }

    auto iota_vars(int k) -> std::vector<int>
    {
        std::vector<int> xs(k);
        std::iota(xs.begin(), xs.end(), 0);
        return xs;
    }
}

auto IdentitySet::idempotent_template(int arity) -> IdentitySet
{
    auto s = single("f", arity);
    s.variables = 1;
    s.identities.push_back({Term{0, std::vector<int>(arity, 0)}, Term{-1, {0}}});
    return s;
}

auto IdentitySet::wnu_template(int arity) -> IdentitySet
{
    auto s = idempotent_template(arity);
    s.variables = 2;
    // f(y,x,...,x) = f(x,...,x,y,x,...,x) for every other position of y
    auto at = [&] (int pos) {
        std::vector<int> xs(arity, 0);
        xs[pos] = 1;
        return Term{0, xs};
    };
    for (int p = 1; p < arity; ++p)
        s.identities.push_back({at(0), at(p)});
    return s;
}

auto IdentitySet::cyclic_template(int arity) -> IdentitySet
{
    auto s = single("f", arity);
    s.variables = arity;
    auto xs = iota_vars(arity);
    s.identities.push_back({Term{0, xs}, Term{0, rotated(xs)}});
    return s;
}

auto IdentitySet::symmetric_template(int arity) -> IdentitySet
{
    auto s = single("f", arity);
    s.variables = arity;
    auto xs = iota_vars(arity);
    // adjacent transpositions generate every permutation
    for (int p = 0; p + 1 < arity; ++p) {
        auto ys = xs;
        std::swap(ys[p], ys[p + 1]);
        s.identities.push_back({Term{0, xs}, Term{0, ys}});
    }
    return s;
}

auto IdentitySet::commutative_pair() -> IdentitySet
{
    IdentitySet s;
    s.names = {"f", "g"};
    s.arities = {2, 2};
    s.variables = 2;
    s.identities.push_back({Term{0, {0, 1}}, Term{0, {1, 0}}});
    s.identities.push_back({Term{1, {0, 1}}, Term{1, {1, 0}}});
    return s;
}

auto check_identities(const std::vector<const Operation *> & ops, const IdentitySet & sigma)
    -> std::optional<IdentityFailure>
{
    if (ops.size() != sigma.arities.size())
        throw std::invalid_argument{"one operation per symbol expected"};
    int size = ops.empty() ? 1 : ops.front()->domain_size();
    for (std::size_t s = 0; s < ops.size(); ++s)
        if (ops[s]->arity() != sigma.arities[s] || ops[s]->domain_size() != size)
            throw std::invalid_argument{"operation does not match its symbol"};

    auto eval = [&] (const Term & t, const std::vector<int> & val) {
        if (t.symbol < 0)
            return val[t.variables.front()];
        std::vector<int> args;
        for (int x : t.variables)
            args.push_back(val[x]);
        return (*ops[t.symbol])(args);
    };
    std::optional<IdentityFailure> failure;
    for_each_choice(static_cast<std::size_t>(size), sigma.variables, [&] (const std::vector<std::size_t> & pick) {
        std::vector<int> val(pick.begin(), pick.end());
        for (std::size_t i = 0; i < sigma.identities.size(); ++i)
            if (eval(sigma.identities[i].lhs, val) != eval(sigma.identities[i].rhs, val)) {
                failure = IdentityFailure{static_cast<int>(i), val};
                return false;
            }
        return true;
    });
    return failure;
}

auto build_vertex_order(const EncodedDigraph & E) -> VertexOrder
{
    int n = E.graph.graph.size();
    VertexOrder ord;
    ord.epsilon.assign(n, -1);
    ord.distance.assign(n, -1);
    // pair indices are already lexicographic in (d, r), so the first path
    // listing a vertex is the least one
    for (std::size_t p = 0; p < E.path_vertices.size(); ++p)
        for (std::size_t k = 0; k < E.path_vertices[p].size(); ++k) {
            int v = E.path_vertices[p][k];
            if (ord.epsilon[v] < 0) {
                ord.epsilon[v] = static_cast<int>(p);
                ord.distance[v] = static_cast<int>(k);
            }
        }
    ord.sorted.resize(n);
    std::iota(ord.sorted.begin(), ord.sorted.end(), 0);
    auto key = [&] (int v) { return std::tuple{E.graph.level[v], ord.epsilon[v], ord.distance[v]}; };
    std::sort(ord.sorted.begin(), ord.sorted.end(), [&] (int a, int b) { return key(a) < key(b); });
    for (std::size_t i = 0; i + 1 < ord.sorted.size(); ++i)
        if (key(ord.sorted[i]) == key(ord.sorted[i + 1]))
            throw TotalityViolation{"vertices " + E.graph.graph.label(ord.sorted[i]) + " and "
                + E.graph.graph.label(ord.sorted[i + 1]) + " are incomparable"};
    ord.rank.assign(n, 0);
    for (int i = 0; i < n; ++i)
        ord.rank[ord.sorted[i]] = i;
    return ord;
}

namespace
{
    /// Mixed-radix helpers over the vertex set of the encoding.
    struct PowerIndex
    {
        int base;
        int k;

        auto encode(const std::vector<int> & c) const -> std::size_t
        {
            std::size_t i = 0;
            for (int x : c)
                i = i * base + x;
            return i;
        }

        auto decode(std::size_t i) const -> std::vector<int>
        {
            std::vector<int> c(k);
            for (int j = k - 1; j >= 0; --j) {
                c[j] = static_cast<int>(i % base);
                i /= base;
            }
            return c;
        }
    };

    /// All tuples (y_1..y_k) with y_j in lists[j].
    template <typename Visit>
    void for_each_product(const std::vector<const std::vector<int> *> & lists, Visit && visit)
    {
        for (auto * l : lists)
            if (l->empty())
                return;
        std::vector<std::size_t> pick(lists.size(), 0);
        std::vector<int> y(lists.size());
        while (true) {
            for (std::size_t j = 0; j < lists.size(); ++j)
                y[j] = (*lists[j])[pick[j]];
            visit(y);
            int j = static_cast<int>(lists.size()) - 1;
            while (j >= 0 && ++pick[j] == lists[j]->size())
                pick[j--] = 0;
            if (j < 0)
                return;
        }
    }
}

auto diagonal_component(const EncodedDigraph & E, int k) -> std::vector<char>
{
    auto & g = E.graph.graph;
    int n = g.size();
    PowerIndex px{n, k};
    auto total = table_size(k, n, 20'000'000);
    std::vector<char> in(total, 0);
    std::deque<std::size_t> queue;
    for (int v = 0; v < n; ++v) {
        auto i = px.encode(std::vector<int>(k, v));
        in[i] = 1;
        queue.push_back(i);
    }
    std::vector<const std::vector<int> *> lists(k);
    while (! queue.empty()) {
        auto c = px.decode(queue.front());
        queue.pop_front();
        for (bool forward : {true, false}) {
            for (int j = 0; j < k; ++j)
                lists[j] = forward ? &g.out(c[j]) : &g.in(c[j]);
            for_each_product(lists, [&] (const std::vector<int> & y) {
                auto i = px.encode(y);
                if (! in[i]) {
                    in[i] = 1;
                    queue.push_back(i);
                }
            });
        }
    }

    // post-checks: powers of the base and tuple sets lie in the component,
    // tuples in it are level-uniform, other level-uniform tuples are isolated
    auto & level = E.graph.level;
    for (std::size_t i = 0; i < total; ++i) {
        auto c = px.decode(i);
        bool uniform = std::all_of(c.begin(), c.end(), [&] (int x) { return level[x] == level[c[0]]; });
        bool bases = std::all_of(c.begin(), c.end(), [&] (int x) { return E.roles[x].kind == RoleKind::Base; });
        bool tuples = std::all_of(c.begin(), c.end(), [&] (int x) { return E.roles[x].kind == RoleKind::Tuple; });
        if ((bases || tuples) && ! in[i])
            throw LemmaCheckFailed{"a tuple of base or tuple vertices is outside the diagonal component"};
        if (in[i] && ! uniform)
            throw LemmaCheckFailed{"the diagonal component contains a tuple of mixed levels"};
        if (! in[i] && uniform) {
            bool all_out = std::all_of(c.begin(), c.end(), [&] (int x) { return ! g.out(x).empty(); });
            bool all_in = std::all_of(c.begin(), c.end(), [&] (int x) { return ! g.in(x).empty(); });
            if (all_out || all_in)
                throw LemmaCheckFailed{"a level-uniform tuple outside the diagonal component has a neighbour"};
        }
    }
    return in;
}

namespace
{
    auto tuple_index(const EncodedDigraph & E, const Tuple & t) -> int
    {
        auto it = std::lower_bound(E.tuples.begin(), E.tuples.end(), t);
        if (it == E.tuples.end() || *it != t)
            return -1;
        return static_cast<int>(it - E.tuples.begin());
    }

    /// Does position k of the path lie in block l (both boundary vertices included)?
    auto in_block(const OrientedPath & q, int k, int l) -> bool
    {
        return q.first_vertex[l] <= k && k <= q.first_vertex[l + 1];
    }
}

auto extend_operation(const Operation & f, const EncodedDigraph & E, const VertexOrder & order,
        const std::vector<char> & delta) -> Operation
{
    if (f.is_projection())
        throw std::invalid_argument{"projections extend to projections directly"};
    if (f.domain_size() != E.domain_size())
        throw std::invalid_argument{"operation lives on a different domain"};
    if (! is_polymorphism(f, feas(E.rho)))
        throw std::invalid_argument{"operation is not a polymorphism of the relation"};

    auto & g = E.graph.graph;
    int k = f.arity();
    int nv = g.size();
    auto & level = E.graph.level;
    auto lesser = [&] (int a, int b) { return order.less(a, b) ? a : b; };

    auto value = [&] (const std::vector<int> & c, std::size_t idx) -> int {
        bool bases = std::all_of(c.begin(), c.end(), [&] (int x) { return E.roles[x].kind == RoleKind::Base; });
        if (bases) {
            std::vector<int> args;
            for (int x : c)
                args.push_back(E.roles[x].d);
            return E.base(f(args));
        }
        bool tuples = std::all_of(c.begin(), c.end(), [&] (int x) { return E.roles[x].kind == RoleKind::Tuple; });
        if (tuples) {
            std::vector<const Tuple *> ts;
            for (int x : c)
                ts.push_back(&E.tuples[E.roles[x].r]);
            return E.tuple_vertex(tuple_index(E, apply_componentwise(f, ts)));
        }
        if (! delta[idx]) {
            int best = c.front();
            for (int x : c)
                best = lesser(best, x);
            return best;
        }

        // inside the diagonal component: every c_i is an interior path vertex
        int lvl = level[c.front()];
        std::vector<int> ds, pairs;
        std::vector<const Tuple *> rs;
        for (int x : c) {
            int p = order.epsilon[x];
            pairs.push_back(p);
            ds.push_back(p / E.tuple_count());
            rs.push_back(&E.tuples[p % E.tuple_count()]);
        }
        int d = f(ds);
        int r = tuple_index(E, apply_componentwise(f, rs));
        int target = E.pair_index(d, r);
        auto & qe = E.paths[target];

        int l = -1;
        for (int cand = 1; cand <= E.n && l < 0; ++cand) {
            bool all = true;
            for (int i = 0; i < k && all; ++i)
                all = in_block(E.paths[pairs[i]], order.distance[c[i]], cand);
            if (all)
                l = cand;
        }
        if (l < 0)
            throw LemmaCheckFailed{"no common block for a tuple of the diagonal component"};

        int start = qe.first_vertex[l];
        if (qe.is_single_edge(l)) {
            int pos = lvl == l ? start : start + 1;
            return E.path_vertices[target][pos];
        }
        std::vector<int> zig;
        for (int i = 0; i < k; ++i)
            if (! E.paths[pairs[i]].is_single_edge(l))
                zig.push_back(order.distance[c[i]] - E.paths[pairs[i]].first_vertex[l]);
        if (zig.empty())
            throw LemmaCheckFailed{"target block is a zigzag but no argument block is"};
        if (static_cast<int>(zig.size()) == k)
            return E.path_vertices[target][start + *std::min_element(zig.begin(), zig.end())];
        int best = E.path_vertices[target][start + zig.front()];
        for (int z : zig)
            best = lesser(best, E.path_vertices[target][start + z]);
        return best;
    };

    auto total = table_size(k, nv);
    std::vector<int> table(total);
    PowerIndex px{nv, k};
    for (std::size_t i = 0; i < total; ++i)
        table[i] = value(px.decode(i), i);
    Operation out{k, nv, std::move(table)};

    if (! is_polymorphism(out, g))
        throw PolymorphismCheckFailed{"extended operation does not preserve the edges"};
    for (std::size_t i = 0; i < total; ++i) {
        if (E.roles[out.table()[i]].kind != RoleKind::Tuple)
            continue;
        auto c = px.decode(i);
        for (int x : c)
            if (E.roles[x].kind != RoleKind::Tuple)
                throw RangeLeakIntoR{"tuple vertex " + g.label(out.table()[i]) + " reached from non-tuple argument "
                    + g.label(x)};
    }
    return out;
}

namespace
{
    auto template_for(const std::string & name, int k) -> IdentitySet
    {
        if (name == "symmetric")
            return IdentitySet::symmetric_template(k);
        if (name == "cyclic")
            return IdentitySet::cyclic_template(k);
        return IdentitySet::wnu_template(k);
    }
}

auto transfer_weighted_polymorphism(const WeightedOperationSet & wos, const EncodedDigraph & E,
        const VertexOrder & order) -> TransferReport
{
    if (auto bad = is_weighted_polymorphism(wos, E.rho))
        throw TransferVerificationFailed{"input is not a weighted polymorphism: " + bad->what};

    auto & g = E.graph.graph;
    int k = wos.operations.front().arity();
    std::vector<char> delta;
    bool need_delta = std::any_of(wos.operations.begin(), wos.operations.end(),
        [] (const Operation & f) { return ! f.is_projection(); });
    if (need_delta)
        delta = diagonal_component(E, k);

    TransferReport report;
    report.result.weights = wos.weights;
    for (auto & f : wos.operations) {
        if (auto p = f.projection_index())
            report.result.operations.push_back(Operation::projection(k, g.size(), *p));
        else
            report.result.operations.push_back(extend_operation(f, E, order, delta));
    }

    for (std::size_t i = 0; i < report.result.operations.size(); ++i)
        if (! is_polymorphism(report.result.operations[i], g))
            throw TransferVerificationFailed{"operation " + std::to_string(i) + " does not preserve the edges"};
    if (auto bad = is_weighted_polymorphism_unary(report.result, E.u)) {
        std::string args;
        for (auto & a : bad->arguments)
            args += (args.empty() ? "" : ",") + g.label(a.front());
        throw TransferVerificationFailed{"unary inequality fails at (" + args + "): " + bad->what};
    }

    for (std::string name : {"symmetric", "cyclic", "wnu"}) {
        if (k < 2)
            break;
        auto sigma = template_for(name, k);
        bool before = true, after = true, any = false;
        for (std::size_t i = 0; i < wos.operations.size(); ++i) {
            if (wos.operations[i].is_projection())
                continue;
            any = true;
            before = before && ! check_identities({&wos.operations[i]}, sigma);
            if (before)
                after = after && ! check_identities({&report.result.operations[i]}, sigma);
        }
        if (! any || ! before)
            continue;
        if (! after)
            throw TransferVerificationFailed{"extension lost the " + name + " identities"};
        report.preserved.push_back(name);
    }
    return report;
}

} // namespace vcsphom
