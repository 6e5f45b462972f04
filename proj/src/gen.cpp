#include <vcsphom/gen.hpp>

#include <algorithm>
#include <set>

namespace vcsphom {

auto item_rng(std::uint64_t seed, std::uint64_t id) -> Rng
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)};
    return Rng{seq};
}

auto uniform(Rng & rng, int lo, int hi) -> int
{
    return std::uniform_int_distribution<int>{lo, hi}(rng);
}

namespace
{
    auto coin(Rng & rng, double p) -> bool
    {
        return std::bernoulli_distribution{p}(rng);
    }

    auto random_subset(Rng & rng, int n) -> IndexSet
    {
        IndexSet s;
        for (int i = 1; i <= n; ++i)
            if (coin(rng, 0.4))
                s.insert(i);
        return s;
    }
}

auto random_relation(Rng & rng, const RelationShape & shape) -> WeightedRelation
{
    int n = uniform(rng, 1, shape.max_arity);
    int d = uniform(rng, 1, shape.max_domain);
    Domain domain;
    for (int i = 0; i < d; ++i)
        domain.push_back(std::to_string(i));

    long long space = 1;
    for (int i = 0; i < n; ++i)
        space *= d;
    int want = uniform(rng, 1, static_cast<int>(std::min<long long>(space, shape.max_tuples)));
    std::map<Tuple, Rational> entries;
    while (static_cast<int>(entries.size()) < want) {
        Tuple t(n);
        for (auto & x : t)
            x = uniform(rng, 0, d - 1);
        entries.emplace(t, Rational{uniform(rng, 0, shape.max_weight)});
    }
    return WeightedRelation{domain, n, entries};
}

auto random_instance(Rng & rng, const WeightedStructure & wA, int max_variables, int max_constraints, int max_weight)
    -> VCSPInstance
{
    auto & rho = wA.get("rho");
    VCSPInstance inst;
    int vars = uniform(rng, 1, max_variables);
    for (int v = 0; v < vars; ++v)
        inst.variables.push_back("v" + std::to_string(v));
    int cons = uniform(rng, 1, max_constraints);
    for (int c = 0; c < cons; ++c) {
        std::vector<int> scope(rho.arity());
        for (auto & x : scope)
            x = uniform(rng, 0, vars - 1);
        inst.constraints.push_back({"rho", scope, Rational{uniform(rng, 0, max_weight)}});
    }
    return inst;
}

auto random_balanced_component(Rng & rng, int height, int max_vertices) -> Digraph
{
    if (max_vertices < height + 1)
        throw std::invalid_argument{"not enough vertices for the requested height"};
    Digraph g;
    std::vector<int> level;
    std::vector<std::vector<int>> at(height + 1);
    auto make = [&] (int l) {
        int v = g.add_vertex("h" + std::to_string(g.size()));
        level.push_back(l);
        at[l].push_back(v);
        return v;
    };
    auto join = [&] (int a, int b) {
        if (level[a] + 1 == level[b])
            g.add_edge(a, b);
        else
            g.add_edge(b, a);
    };

    int cur = make(0);
    int reached = 0;
    while (reached < height || (g.size() < max_vertices && coin(rng, 0.6))) {
        int room = max_vertices - g.size();
        int next;
        if (height == 0)
            break;
        bool forced = reached < height && room <= height - reached;
        if (forced)
            next = level[cur] + 1;
        else if (level[cur] == 0)
            next = 1;
        else if (level[cur] == height)
            next = height - 1;
        else
            next = level[cur] + (coin(rng, 0.6) ? 1 : -1);
        // revisiting closes a cycle through the walk
        int v;
        if (! at[next].empty() && (room == 0 || forced || coin(rng, 0.25)))
            v = at[next][uniform(rng, 0, static_cast<int>(at[next].size()) - 1)];
        else if (room > 0)
            v = make(next);
        else
            break;
        join(cur, v);
        cur = v;
        reached = std::max(reached, next);
    }

    int extra = uniform(rng, 0, 2);
    for (int k = 0; k < extra && height > 0; ++k) {
        int l = uniform(rng, 0, height - 1);
        int a = at[l][uniform(rng, 0, static_cast<int>(at[l].size()) - 1)];
        int b = at[l + 1][uniform(rng, 0, static_cast<int>(at[l + 1].size()) - 1)];
        g.add_edge(a, b);
    }
    return g;
}

auto subpath(const OrientedPath & q, int first, int last) -> Digraph
{
    std::vector<int> members;
    for (int v = first; v <= last; ++v)
        members.push_back(v);
    return induced_subgraph(q.graph, members).first;
}

auto append_disjoint(Digraph & g, const Digraph & h, const std::string & prefix) -> int
{
    int base = g.size();
    for (int v = 0; v < h.size(); ++v)
        g.add_vertex(prefix + h.label(v));
    for (auto & [a, b] : h.edges())
        g.add_edge(base + a, base + b);
    return base;
}

namespace
{
    /// Paths Q_S glued at one shared end; the other ends are sometimes shared too.
    auto gadget(Rng & rng, int n, int budget) -> Digraph
    {
        Digraph g;
        bool terminal = coin(rng, 0.7);
        int apex = g.add_vertex("a");
        std::vector<int> others;
        int paths = uniform(rng, 1, 3);
        for (int p = 0; p < paths; ++p) {
            auto q = build_Q_S(n, random_subset(rng, n));
            if (g.size() + q.graph.size() - 1 > budget)
                break;
            int shared = terminal ? q.terminal() : q.initial();
            int far = terminal ? q.initial() : q.terminal();
            std::vector<int> id(q.graph.size());
            for (int k = 0; k < q.graph.size(); ++k) {
                if (k == shared)
                    id[k] = apex;
                else if (k == far && ! others.empty() && coin(rng, 0.4))
                    id[k] = others[uniform(rng, 0, static_cast<int>(others.size()) - 1)];
                else
                    id[k] = g.add_vertex("p" + std::to_string(p) + q.graph.label(k));
            }
            others.push_back(id[far]);
            for (auto & [a, b] : q.graph.edges())
                g.add_edge(id[a], id[b]);
        }
        return g;
    }
}

auto random_mch_instance(Rng & rng, const EncodedDigraph & E, int max_vertices) -> MinCostHomInstance
{
    MinCostHomInstance M;
    int m = E.height();
    int pieces = uniform(rng, 1, 4);
    for (int p = 0; p < pieces; ++p) {
        int room = max_vertices - M.graph.size();
        if (room <= 0)
            break;
        std::string prefix = "c" + std::to_string(p) + ".";
        int kind = uniform(rng, 0, 19);
        Digraph piece;
        if (kind < 6) {
            auto & q = E.paths[uniform(rng, 0, static_cast<int>(E.paths.size()) - 1)];
            int last = q.graph.size() - 1;
            int a = 0, b = last;
            if (coin(rng, 0.6)) {
                a = uniform(rng, 0, last);
                b = uniform(rng, a, last);
            }
            if (b - a + 1 > room)
                b = a + room - 1;
            piece = subpath(q, a, b);
        }
        else if (kind < 13)
            piece = gadget(rng, E.n, room);
        else if (kind < 19) {
            int h = uniform(rng, 0, std::min(m, room - 1));
            piece = random_balanced_component(rng, h, std::min(room, 12));
        }
        else if (coin(rng, 0.5) && room >= 3) {
            piece.add_vertex("x");
            piece.add_vertex("y");
            piece.add_vertex("z");
            piece.add_edge(0, 1);
            piece.add_edge(1, 2);
            piece.add_edge(0, 2);
        }
        else if (room >= m + 2) {
            for (int k = 0; k <= m + 1; ++k)
                piece.add_vertex("t" + std::to_string(k));
            for (int k = 0; k <= m; ++k)
                piece.add_edge(k, k + 1);
        }
        if (piece.size() > 0 && piece.size() <= room)
            append_disjoint(M.graph, piece, prefix);
    }
    if (M.graph.size() == 0)
        M.graph.add_vertex("solo");

    for (int v = 0; v < M.graph.size(); ++v)
        if (coin(rng, 0.35))
            M.W[v] = Rational{uniform(rng, 0, 3)};
    return M;
}

auto random_fan_case(Rng & rng) -> FanCase
{
    FanCase c;
    int n = uniform(rng, 0, 2);
    int paths = uniform(rng, 1, 3);
    std::vector<IndexSet> sets;
    for (int p = 0; p < paths; ++p)
        sets.push_back(random_subset(rng, n));
    c.fan = build_fan(n, coin(rng, 0.5) ? FanKind::CommonInitial : FanKind::CommonTerminal, sets);

    int top = c.fan.height();
    for (int x = 0; x < c.fan.graph.size(); ++x)
        c.u.push_back(c.fan.level[x] == top ? Rational{uniform(rng, 0, 4)} : Rational{0});

    Digraph h;
    if (coin(rng, 0.4)) {
        auto & q = c.fan.paths[uniform(rng, 0, paths - 1)];
        int last = q.graph.size() - 1;
        int a = uniform(rng, 0, last);
        int b = uniform(rng, a, std::min(last, a + 9));
        // a whole path would be as tall as the fan
        if (a == 0 && b == last)
            b = last - 1;
        h = subpath(q, a, b);
    }
    else {
        int height = uniform(rng, 0, top - 1);
        h = random_balanced_component(rng, height, std::max(height + 1, uniform(rng, 1, 10)));
    }
    c.H = leveled(h);
    for (int v = 0; v < h.size(); ++v)
        if (coin(rng, 0.5))
            c.W[v] = Rational{uniform(rng, 0, 3)};
    return c;
}

auto random_commutative_case(Rng & rng) -> PolymorphismCase
{
    for (;;) {
        auto rho = random_relation(rng, {2, 3, 4, 2});
        int d = static_cast<int>(rho.domain().size());
        if (d < 2)
            continue;
        for (int attempt = 0; attempt < 50; ++attempt) {
            std::vector<int> table(d * d);
            for (int x = 0; x < d; ++x)
                for (int y = x; y < d; ++y)
                    table[x * d + y] = table[y * d + x] = x == y ? x : uniform(rng, 0, d - 1);
            Operation f{2, d, table};
            if (is_polymorphism(f, rho))
                return {rho, f};
        }
    }
}

} // namespace vcsphom
