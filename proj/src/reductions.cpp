#include <vcsphom/paths.hpp>
#include <vcsphom/reductions.hpp>

#include <boost/pending/disjoint_sets.hpp>

#include <algorithm>

namespace vcsphom {

auto forward_reduce(const VCSPInstance & inst, const WeightedStructure & wA, const EncodedDigraph & E, Fault fault)
    -> MinCostHomInstance
{
    validate_instance(inst, wA);
    if (wA.relations().size() != 1)
        throw StructuralError{"forward reduction needs a single-relation structure"};
    auto & rho = wA.relations().front().relation;
    if (! (rho == E.rho))
        throw StructuralError{"the encoding was built from a different relation"};

    MinCostHomInstance M;
    auto & g = M.graph;
    auto glue = [&] (const OrientedPath & q, const std::string & stem, int initial, int terminal) {
        std::vector<int> id(q.graph.size());
        for (int k = 0; k < q.graph.size(); ++k) {
            if (k == q.initial() && initial >= 0)
                id[k] = initial;
            else if (k == q.terminal() && terminal >= 0)
                id[k] = terminal;
            else
                id[k] = g.add_vertex(stem + "/" + q.graph.label(k));
        }
        return id;
    };

    auto q_empty = build_Q_S(E.n, {});
    std::vector<int> var(inst.variables.size());
    for (std::size_t v = 0; v < inst.variables.size(); ++v) {
        var[v] = g.add_vertex("x:" + inst.variables[v]);
        auto id = glue(q_empty, "x:" + inst.variables[v], var[v], -1);
        for (auto & [a, b] : q_empty.graph.edges())
            g.add_edge(id[a], id[b]);
    }

    bool dropped = false;
    for (std::size_t c = 0; c < inst.constraints.size(); ++c) {
        auto & con = inst.constraints[c];
        int apex = g.add_vertex("y" + std::to_string(c));
        M.W[apex] = con.weight;
        for (int i = 1; i <= E.n; ++i) {
            auto q = build_Q_S(E.n, {i});
            auto id = glue(q, "c" + std::to_string(c) + "." + std::to_string(i), var[con.scope[i - 1]], apex);
            for (auto & [a, b] : q.graph.edges()) {
                // the mutation removes the last edge of the first path, which
                // frees the apex from its path
                if (fault == Fault::DropGadgetEdge && ! dropped && b == q.terminal()) {
                    dropped = true;
                    continue;
                }
                g.add_edge(id[a], id[b]);
            }
        }
    }
    return M;
}

auto stage1_check(const MinCostHomInstance & M, const EncodedDigraph & E) -> std::variant<Stage1Result, FixedNo>
{
    auto levels = compute_levels(M.graph);
    if (std::holds_alternative<NotBalanced>(levels))
        return FixedNo{"input digraph is not balanced"};
    auto & L = std::get<LeveledDigraph>(levels);
    int m = E.height();
    if (L.height > m)
        return FixedNo{"input digraph is taller than the encoding"};

    Stage1Result out{std::move(L), {}};
    for (auto & [v, w] : M.W) {
        if (v < 0 || v >= out.graph.graph.size() || w < Rational{0})
            throw StructuralError{"bad weight map"};
        int c = out.graph.component[v];
        if (out.graph.component_height[c] == m && out.graph.level[v] != m)
            continue;
        out.W.emplace(v, w);
    }
    return out;
}

auto stage2_short_components(const Stage1Result & s1, const EncodedDigraph & E)
    -> std::variant<Stage2Result, FixedNo>
{
    auto & L = s1.graph;
    int m = E.height();
    Stage2Result out;
    std::vector<int> tall;
    std::vector<EncodingFan> fans;

    for (std::size_t c = 0; c < L.components.size(); ++c) {
        if (L.component_height[c] == m) {
            tall.insert(tall.end(), L.components[c].begin(), L.components[c].end());
            continue;
        }
        if (fans.empty())
            fans = maximal_fans(E);
        auto [H, original] = extract_component(L, static_cast<int>(c));
        std::map<int, Rational> W;
        for (std::size_t i = 0; i < original.size(); ++i)
            if (auto it = s1.W.find(original[i]); it != s1.W.end())
                W[static_cast<int>(i)] = it->second;

        std::optional<Cost> best;
        for (auto & f : fans) {
            auto r = fan_min_cost(H, W, f.fan, f.u);
            if (r.status == FanOutcome::Status::Infeasible)
                continue;
            if (! best || r.cost < *best)
                best = r.cost;
        }
        if (! best)
            return FixedNo{"a short component has no homomorphism into the encoding"};
        out.offset += best->value();
        ++out.removed;
    }

    std::sort(tall.begin(), tall.end());
    auto [sub, original] = induced_subgraph(L.graph, tall);
    out.graph = leveled(sub);
    out.original = original;
    std::vector<int> local(L.graph.size(), -1);
    for (std::size_t i = 0; i < original.size(); ++i)
        local[original[i]] = static_cast<int>(i);
    for (auto & [v, w] : s1.W)
        if (local[v] >= 0)
            out.W.emplace(local[v], w);
    return out;
}

auto stage3a_build_bprime(const LeveledDigraph & G, const EncodedDigraph & E) -> std::variant<BPrime, FixedNo>
{
    int m = E.height();
    int n = E.n;
    if (G.graph.size() > 0 && G.height != m)
        throw std::invalid_argument{"stage 3a expects a graph of full height"};

    BPrime B;
    B.graph_size = G.graph.size();
    auto fresh = [&] { return B.graph_size + B.fresh_count++; };

    auto comps = internal_components(G);
    std::vector<IndexSet> gammas;
    for (auto & C : comps) {
        try {
            gammas.push_back(component_gamma(G, C, n));
        }
        catch (const NotSatisfiableAnywhere &) {
            return FixedNo{"an internal component fits no path of the encoding"};
        }
    }

    // one fresh vertex per component without base attachments, shared by
    // every coordinate and every top vertex it touches
    std::vector<int> shared(comps.size(), -1);
    std::vector<std::vector<int>> touching(G.graph.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (int e : comps[c].top_attachments)
            touching[e].push_back(static_cast<int>(c));
        for (int b : comps[c].base_attachments)
            touching[b].push_back(static_cast<int>(c));
    }

    for (int e = 0; e < G.graph.size(); ++e) {
        if (G.level[e] != m)
            continue;
        BTuple t;
        t.subscript = e;
        t.sets.resize(n);
        for (int i = 1; i <= n; ++i) {
            auto & set = t.sets[i - 1];
            for (int c : touching[e]) {
                if (! gammas[c].contains(i))
                    continue;
                if (! comps[c].base_attachments.empty())
                    set.insert(comps[c].base_attachments.begin(), comps[c].base_attachments.end());
                else {
                    if (shared[c] < 0)
                        shared[c] = fresh();
                    set.insert(shared[c]);
                }
            }
            if (set.empty())
                set.insert(fresh());
        }
        B.tuples.push_back(std::move(t));
    }

    for (int b = 0; b < G.graph.size(); ++b) {
        if (G.level[b] != 0)
            continue;
        for (int c : touching[b]) {
            if (! comps[c].top_attachments.empty())
                continue;
            BTuple t;
            t.origin = b;
            t.sets.resize(n);
            for (int i = 1; i <= n; ++i)
                t.sets[i - 1].insert(gammas[c].contains(i) ? b : fresh());
            B.tuples.push_back(std::move(t));
        }
    }

    for (auto & C : comps) {
        for (std::size_t j = 1; j < C.top_attachments.size(); ++j)
            B.equalities.emplace_back(C.top_attachments[0], C.top_attachments[j]);
        for (std::size_t j = 1; j < C.base_attachments.size(); ++j)
            B.equalities.emplace_back(C.base_attachments[0], C.base_attachments[j]);
    }
    return B;
}

auto primed_structure(const EncodedDigraph & E) -> WeightedStructure
{
    return WeightedStructure{E.rho.domain(), {{"rho", E.rho}, {"rho0", E.rho.zero_weighted()}}};
}

auto canonical_no_instance(const EncodedDigraph & E) -> std::optional<VCSPInstance>
{
    for (int d = 0; d < E.domain_size(); ++d)
        if (E.rho.contains(Tuple(E.n, d)))
            return std::nullopt;
    VCSPInstance inst;
    inst.variables = {"x"};
    inst.constraints.push_back({"rho0", std::vector<int>(E.n, 0), Rational{0}});
    return inst;
}

auto stage3b_build_instance(const BPrime & B, const LeveledDigraph & G, const std::map<int, Rational> & W,
        const EncodedDigraph & E, Rational offset, Fault fault) -> ReducedVCSP
{
    int total = B.graph_size + B.fresh_count;
    std::vector<int> rank(total, 0), parent(total);
    boost::disjoint_sets<int *, int *> ds(rank.data(), parent.data());
    for (int v = 0; v < total; ++v)
        ds.make_set(v);

    std::map<int, const BTuple *> by_subscript;
    for (auto & t : B.tuples) {
        for (auto & s : t.sets)
            for (int x : s)
                ds.union_set(*s.begin(), x);
        if (t.subscript)
            by_subscript[*t.subscript] = &t;
    }
    for (auto & [a, b] : B.equalities) {
        ds.union_set(a, b);
        auto ta = by_subscript.find(a), tb = by_subscript.find(b);
        if (ta != by_subscript.end() && tb != by_subscript.end())
            for (std::size_t i = 0; i < ta->second->sets.size(); ++i)
                ds.union_set(*ta->second->sets[i].begin(), *tb->second->sets[i].begin());
    }

    // quotient tuples, keyed by class representatives
    std::map<std::vector<int>, Rational> weight;
    std::vector<std::vector<int>> order;
    for (auto & t : B.tuples) {
        std::vector<int> key;
        for (auto & s : t.sets)
            key.push_back(ds.find_set(*s.begin()));
        auto [it, fresh_key] = weight.emplace(key, Rational{0});
        if (fresh_key)
            order.push_back(key);
        if (t.subscript)
            if (auto w = W.find(*t.subscript); w != W.end())
                it->second += w->second;
    }

    // which classes hold a G vertex, and how often each class is used
    std::vector<char> has_base(total, 0);
    for (int v = 0; v < B.graph_size; ++v)
        if (G.level[v] == 0)
            has_base[ds.find_set(v)] = 1;
    std::map<int, int> uses;
    for (auto & key : order)
        for (int c : key)
            ++uses[c];

    // a weightless tuple over fresh classes used nowhere else is always satisfiable
    std::vector<std::vector<int>> kept;
    for (auto & key : order) {
        bool droppable = weight[key] == Rational{0}
            && std::all_of(key.begin(), key.end(), [&] (int c) { return ! has_base[c] && uses[c] == 1; });
        if (! droppable)
            kept.push_back(key);
    }

    ReducedVCSP out{primed_structure(E), {}, offset, {}};
    std::map<int, int> var_of;
    auto variable = [&] (int cls) {
        auto [it, added] = var_of.emplace(cls, static_cast<int>(out.instance.variables.size()));
        if (added) {
            out.instance.variables.push_back("v" + std::to_string(it->second));
            out.classes.emplace_back();
        }
        return it->second;
    };
    for (int v = 0; v < B.graph_size; ++v)
        if (G.level[v] == 0)
            variable(ds.find_set(v));
    for (auto & key : kept)
        for (int c : key)
            variable(c);
    for (int v = 0; v < total; ++v)
        if (auto it = var_of.find(ds.find_set(v)); it != var_of.end()) {
            if (v < B.graph_size && G.level[v] == 0)
                out.classes[it->second].push_back(G.graph.label(v));
            else if (v >= B.graph_size)
                out.classes[it->second].push_back("_fresh" + std::to_string(v - B.graph_size));
        }

    for (auto & key : kept) {
        std::vector<int> scope;
        for (int c : key)
            scope.push_back(var_of.at(c));
        out.instance.constraints.push_back({"rho0", scope, Rational{0}});
    }
    if (fault != Fault::DropWeightedConstraints)
        for (auto & key : kept)
            if (weight[key] > Rational{0}) {
                std::vector<int> scope;
                for (int c : key)
                    scope.push_back(var_of.at(c));
                out.instance.constraints.push_back({"rho", scope, weight[key]});
            }
    return out;
}

auto backward_reduce(const MinCostHomInstance & M, const EncodedDigraph & E, Fault fault) -> BackwardResult
{
    auto s1 = stage1_check(M, E);
    if (auto * no = std::get_if<FixedNo>(&s1))
        return *no;
    auto s2 = stage2_short_components(std::get<Stage1Result>(s1), E);
    if (auto * no = std::get_if<FixedNo>(&s2))
        return *no;
    auto & rest = std::get<Stage2Result>(s2);
    if (rest.graph.graph.size() == 0)
        return FixedYes{rest.offset};
    auto b = stage3a_build_bprime(rest.graph, E);
    if (auto * no = std::get_if<FixedNo>(&b))
        return *no;
    return stage3b_build_instance(std::get<BPrime>(b), rest.graph, rest.W, E, rest.offset, fault);
}

} // namespace vcsphom
