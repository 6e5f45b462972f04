#include <vcsphom/algebra.hpp>
#include <vcsphom/encoding.hpp>

#include <algorithm>

namespace vcsphom {

auto agreement_set(int d, const Tuple & r) -> IndexSet
{
    IndexSet s;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] == d)
            s.insert(static_cast<int>(i) + 1);
    return s;
}

auto expected_vertex_count(int n, int domain_size, int tuple_count) -> long long
{
    long long r = tuple_count, d = domain_size;
    return (3LL * n + 1) * r * d + (1LL - 2 * n) * r + d;
}

auto expected_edge_count(int n, int domain_size, int tuple_count) -> long long
{
    long long r = tuple_count, d = domain_size;
    return (3LL * n + 2) * r * d - 2LL * n * r;
}

auto build_encoding(const WeightedRelation & rho) -> EncodedDigraph
{
    EncodedDigraph E{rho, {}, {}, {}, {}, rho.arity(), {}, {}};
    for (auto & [t, w] : rho.entries())
        E.tuples.push_back(t);

    auto & domain = rho.domain();
    Digraph g;
    for (int d = 0; d < E.domain_size(); ++d) {
        g.add_vertex("b:" + domain[d]);
        E.roles.push_back({RoleKind::Base, d});
        E.u.emplace_back(0);
    }
    for (int r = 0; r < E.tuple_count(); ++r) {
        g.add_vertex("t:" + tuple_label(domain, E.tuples[r]));
        E.roles.push_back({RoleKind::Tuple, -1, r});
        E.u.push_back(rho.entries().at(E.tuples[r]));
    }

    for (int d = 0; d < E.domain_size(); ++d)
        for (int r = 0; r < E.tuple_count(); ++r) {
            auto q = build_Q_S(E.n, agreement_set(d, E.tuples[r]));
            std::string stem = "p:" + domain[d] + "|" + tuple_label(domain, E.tuples[r]) + "|";
            std::vector<int> members(q.graph.size());
            for (int k = 0; k < q.graph.size(); ++k) {
                if (k == q.initial())
                    members[k] = E.base(d);
                else if (k == q.terminal())
                    members[k] = E.tuple_vertex(r);
                else {
                    members[k] = g.add_vertex(stem + std::to_string(q.block[k]) + "|" + std::to_string(q.position[k]));
                    E.roles.push_back({RoleKind::Path, d, r, q.block[k], q.position[k]});
                    E.u.emplace_back(0);
                }
            }
            for (auto & [a, b] : q.graph.edges())
                g.add_edge(members[a], members[b]);
            E.paths.push_back(std::move(q));
            E.path_vertices.push_back(std::move(members));
        }

    E.graph = leveled(g);
    return E;
}

namespace
{
    auto violation(std::string what, std::vector<std::string> witness = {}) -> std::optional<EncodingViolation>
    {
        return EncodingViolation{std::move(what), std::move(witness)};
    }
}

auto verify_encoding(const EncodedDigraph & E, bool check_rigidity) -> std::optional<EncodingViolation>
{
    auto & g = E.graph.graph;
    int m = E.height();

    auto levels = compute_levels(g);
    if (auto * bad = std::get_if<NotBalanced>(&levels)) {
        std::vector<std::string> walk;
        for (int v : bad->witness)
            walk.push_back(g.label(v));
        return violation("digraph is not balanced", walk);
    }
    auto & L = std::get<LeveledDigraph>(levels);
    if (L.components.size() != 1)
        return violation("digraph is not connected");
    if (L.height != m)
        return violation("height is " + std::to_string(L.height) + ", expected " + std::to_string(m));
    if (L.level != E.graph.level)
        return violation("stored levels disagree with the graph");

    auto vertices = expected_vertex_count(E.n, E.domain_size(), E.tuple_count());
    auto edges = expected_edge_count(E.n, E.domain_size(), E.tuple_count());
    if (g.size() != vertices)
        return violation("vertex count " + std::to_string(g.size()) + ", expected " + std::to_string(vertices));
    if (g.edge_count() != edges)
        return violation("edge count " + std::to_string(g.edge_count()) + ", expected " + std::to_string(edges));
    if (static_cast<int>(E.roles.size()) != g.size() || static_cast<int>(E.u.size()) != g.size())
        return violation("role or unary table does not cover the vertices");

    for (int d = 0; d < E.domain_size(); ++d)
        if (L.level[E.base(d)] != 0)
            return violation("base vertex off level 0", {g.label(E.base(d))});
    for (int r = 0; r < E.tuple_count(); ++r)
        if (L.level[E.tuple_vertex(r)] != m)
            return violation("tuple vertex off the top level", {g.label(E.tuple_vertex(r))});

    // every edge must come from exactly one path, with the right orientation
    std::set<Edge> covered;
    for (int d = 0; d < E.domain_size(); ++d)
        for (int r = 0; r < E.tuple_count(); ++r) {
            int p = E.pair_index(d, r);
            auto want = build_Q_S(E.n, agreement_set(d, E.tuples[r]));
            auto & members = E.path_vertices[p];
            if (E.paths[p].S != want.S || static_cast<int>(members.size()) != want.graph.size())
                return violation("path has the wrong index set", {g.label(E.base(d)), g.label(E.tuple_vertex(r))});
            if (members.front() != E.base(d) || members.back() != E.tuple_vertex(r))
                return violation("path has the wrong ends", {g.label(E.base(d)), g.label(E.tuple_vertex(r))});
            for (int k = 0; k + 1 < want.graph.size(); ++k) {
                bool up = want.graph.has_edge(k, k + 1);
                int a = up ? members[k] : members[k + 1];
                int b = up ? members[k + 1] : members[k];
                if (! g.has_edge(a, b))
                    return violation("path edge missing", {g.label(a), g.label(b)});
                covered.insert({a, b});
            }
        }
    for (auto & e : g.edges())
        if (! covered.contains(e))
            return violation("edge outside every path", {g.label(e.first), g.label(e.second)});

    for (int v = 0; v < g.size(); ++v) {
        Rational want{0};
        if (E.roles[v].kind == RoleKind::Tuple)
            want = E.rho.entries().at(E.tuples[E.roles[v].r]);
        if (E.u[v] != want)
            return violation("unary cost differs from the relation", {g.label(v), to_string(E.u[v])});
    }

    if (check_rigidity) {
        try {
            is_rigid_core_pair(E);
        }
        catch (const BiconditionalViolation & e) {
            return violation(e.what());
        }
    }
    return std::nullopt;
}

auto is_rigid_core_pair(const EncodedDigraph & E) -> RigidityPair
{
    RigidityPair out;
    for (auto & f : unary_polymorphisms(E.rho))
        if (! f.is_identity()) {
            out.relation_witness = f.unary_table();
            break;
        }
    out.relation_rigid = ! out.relation_witness;
    out.witness = non_identity_endomorphism(E.graph);
    out.digraph_rigid = ! out.witness;
    if (out.relation_rigid != out.digraph_rigid)
        throw BiconditionalViolation{std::string{"relation is "} + (out.relation_rigid ? "" : "not ")
            + "a rigid core but the digraph is" + (out.digraph_rigid ? "" : " not")};
    return out;
}

auto maximal_fans(const EncodedDigraph & E) -> std::vector<EncodingFan>
{
    std::vector<EncodingFan> fans;
    auto assemble = [&] (FanKind kind, const std::vector<int> & pairs) {
        std::vector<IndexSet> sets;
        for (int p : pairs)
            sets.push_back(E.paths[p].S);
        EncodingFan ef{build_fan(E.n, kind, sets), {}, {}};
        ef.origin.assign(ef.fan.graph.size(), -1);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            for (std::size_t k = 0; k < ef.fan.members[i].size(); ++k)
                ef.origin[ef.fan.members[i][k]] = E.path_vertices[pairs[i]][k];
        for (int x : ef.origin)
            ef.u.push_back(E.u[x]);
        fans.push_back(std::move(ef));
    };
    for (int d = 0; d < E.domain_size(); ++d) {
        std::vector<int> pairs;
        for (int r = 0; r < E.tuple_count(); ++r)
            pairs.push_back(E.pair_index(d, r));
        assemble(FanKind::CommonInitial, pairs);
    }
    for (int r = 0; r < E.tuple_count(); ++r) {
        std::vector<int> pairs;
        for (int d = 0; d < E.domain_size(); ++d)
            pairs.push_back(E.pair_index(d, r));
        assemble(FanKind::CommonTerminal, pairs);
    }
    return fans;
}

} // namespace vcsphom
