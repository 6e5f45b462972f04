#include <vcsphom/paths.hpp>

#include <algorithm>
#include <deque>
#include <string>

namespace vcsphom {

auto OrientedPath::block_vertices(int l) const -> std::vector<int>
{
    int first = first_vertex.at(l);
    int last = l <= n ? first_vertex.at(l + 1) : terminal();
    std::vector<int> out;
    for (int v = first; v <= last; ++v)
        out.push_back(v);
    return out;
}

auto build_Q_S(int n, const IndexSet & S) -> OrientedPath
{
    if (n < 0)
        throw std::invalid_argument{"negative path arity"};
    for (int i : S)
        if (i < 1 || i > n)
            throw std::invalid_argument{"index set is not a subset of {1..n}"};

    OrientedPath q;
    q.n = n;
    q.S = S;
    auto add = [&] (int l, int k, int lvl) {
        int v = q.graph.add_vertex("q" + std::to_string(l) + "/" + std::to_string(k));
        q.level.push_back(lvl);
        q.block.push_back(l);
        q.position.push_back(k);
        return v;
    };

    int cur = add(0, 0, 0);
    q.first_vertex.push_back(cur);
    int next = add(0, 1, 1);
    q.graph.add_edge(cur, next);
    cur = next;
    for (int l = 1; l <= n; ++l) {
        q.first_vertex.push_back(cur);
        if (S.contains(l)) {
            int a = add(l, 1, l + 1);
            q.graph.add_edge(cur, a);
            cur = a;
        }
        else {
            // cur -> a <- b -> c
            int a = add(l, 1, l + 1);
            int b = add(l, 2, l);
            int c = add(l, 3, l + 1);
            q.graph.add_edge(cur, a);
            q.graph.add_edge(b, a);
            q.graph.add_edge(b, c);
            cur = c;
        }
    }
    q.first_vertex.push_back(cur);
    int t = add(n + 1, 1, n + 2);
    q.graph.add_edge(cur, t);
    return q;
}

auto full_index_set(int n) -> IndexSet
{
    IndexSet s;
    for (int i = 1; i <= n; ++i)
        s.insert(i);
    return s;
}

namespace
{
    /// Arc consistency plus maintained-arc-consistency search over explicit
    /// 0/1 domain vectors.
    class LeveledSearch {
    public:
        LeveledSearch(const Digraph & h, const Digraph & t) :
            _h(h), _t(t), _tn(t.size()), _adj(t.adjacency_matrix())
        {
        }

        using Domains = std::vector<std::vector<char>>;

        auto solve(Domains dom) -> std::optional<std::vector<int>>
        {
            std::vector<int> all(_h.size());
            for (int v = 0; v < _h.size(); ++v)
                all[v] = v;
            if (! propagate(dom, all))
                return std::nullopt;
            std::vector<int> result(_h.size(), -1);
            if (! search(dom, 0, result))
                return std::nullopt;
            return result;
        }

    private:
        auto edge(int x, int y) const -> bool { return _adj[static_cast<std::size_t>(x) * _tn + y]; }

        /// Drops values of dom[a] without a neighbour in dom[b]; `forward`
        /// means the H edge is a -> b.
        auto revise(Domains & dom, int a, int b, bool forward) -> bool
        {
            bool changed = false;
            for (int x = 0; x < _tn; ++x) {
                if (! dom[a][x])
                    continue;
                bool supported = false;
                for (int y : forward ? _t.out(x) : _t.in(x))
                    if (dom[b][y]) {
                        supported = true;
                        break;
                    }
                if (! supported) {
                    dom[a][x] = 0;
                    changed = true;
                }
            }
            return changed;
        }

        auto propagate(Domains & dom, const std::vector<int> & seeds) -> bool
        {
            std::deque<int> queue(seeds.begin(), seeds.end());
            std::vector<char> queued(_h.size(), 0);
            for (int v : seeds)
                queued[v] = 1;
            while (! queue.empty()) {
                int b = queue.front();
                queue.pop_front();
                queued[b] = 0;
                auto touch = [&] (int a, bool forward) -> bool {
                    if (revise(dom, a, b, forward)) {
                        if (std::find(dom[a].begin(), dom[a].end(), 1) == dom[a].end())
                            return false;
                        if (! queued[a]) {
                            queued[a] = 1;
                            queue.push_back(a);
                        }
                    }
                    return true;
                };
                for (int a : _h.in(b))
                    if (! touch(a, true))
                        return false;
                for (int a : _h.out(b))
                    if (! touch(a, false))
                        return false;
            }
            return true;
        }

        auto search(Domains & dom, int v, std::vector<int> & result) -> bool
        {
            if (v == _h.size())
                return true;
            for (int x = 0; x < _tn; ++x) {
                if (! dom[v][x])
                    continue;
                Domains next = dom;
                std::fill(next[v].begin(), next[v].end(), 0);
                next[v][x] = 1;
                if (! propagate(next, {v}))
                    continue;
                result[v] = x;
                if (search(next, v + 1, result)) {
                    dom = std::move(next);
                    return true;
                }
            }
            return false;
        }

        const Digraph & _h;
        const Digraph & _t;
        int _tn;
        std::vector<char> _adj;
    };
}

auto find_leveled_hom(const Digraph & h, const Digraph & target, const std::vector<int> & target_level,
        const std::vector<int> & want_level, const Pins & pins) -> std::optional<std::vector<int>>
{
    if (h.size() == 0)
        return std::vector<int>{};
    LeveledSearch::Domains dom(h.size(), std::vector<char>(target.size(), 0));
    for (int v = 0; v < h.size(); ++v) {
        if (auto p = pins.find(v); p != pins.end()) {
            if (want_level[v] < 0 || target_level[p->second] == want_level[v])
                dom[v][p->second] = 1;
            else
                return std::nullopt;
            continue;
        }
        bool any = false;
        for (int x = 0; x < target.size(); ++x)
            if (want_level[v] < 0 || target_level[x] == want_level[v]) {
                dom[v][x] = 1;
                any = true;
            }
        if (! any)
            return std::nullopt;
    }
    return LeveledSearch{h, target}.solve(std::move(dom));
}

auto path_csp_at_offset(const LeveledDigraph & H, const OrientedPath & Q, int offset, const Pins & pins)
    -> std::optional<std::vector<int>>
{
    std::vector<int> want(H.graph.size());
    for (int v = 0; v < H.graph.size(); ++v) {
        want[v] = H.level[v] + offset;
        if (want[v] < 0 || want[v] > Q.height())
            return std::nullopt;
    }
    return find_leveled_hom(H.graph, Q.graph, Q.level, want, pins);
}

auto path_csp_satisfiable(const LeveledDigraph & H, const OrientedPath & Q, const Pins & pins)
    -> std::optional<std::vector<int>>
{
    if (H.components.size() > 1)
        throw std::invalid_argument{"path_csp_satisfiable expects a connected digraph"};
    if (H.graph.size() == 0)
        return std::vector<int>{};
    if (! pins.empty()) {
        auto [v, q] = *pins.begin();
        return path_csp_at_offset(H, Q, Q.level.at(q) - H.level.at(v), pins);
    }
    for (int off = 0; off + H.height <= Q.height(); ++off)
        if (auto hom = path_csp_at_offset(H, Q, off))
            return hom;
    return std::nullopt;
}

namespace
{
    auto anchored_pins(const OrientedPath & q, const std::vector<Anchor> & anchors) -> Pins
    {
        Pins pins;
        for (auto & a : anchors) {
            int target = a.terminal ? q.terminal() : q.initial();
            auto [it, fresh] = pins.emplace(a.vertex, target);
            if (! fresh && it->second != target)
                pins[a.vertex] = -1;
        }
        return pins;
    }

    auto satisfiable_in(const LeveledDigraph & H, int n, const IndexSet & S, const std::vector<Anchor> & anchors) -> bool
    {
        auto q = build_Q_S(n, S);
        auto pins = anchored_pins(q, anchors);
        for (auto & [v, t] : pins)
            if (t < 0)
                return false;
        return path_csp_satisfiable(H, q, pins).has_value();
    }

    auto set_label(const IndexSet & s) -> std::string
    {
        std::string out = "{";
        for (int i : s)
            out += (out.size() > 1 ? "," : "") + std::to_string(i);
        return out + "}";
    }
}

auto gamma_anchored(const LeveledDigraph & H, int n, const std::vector<Anchor> & anchors) -> IndexSet
{
    auto full = full_index_set(n);
    if (! satisfiable_in(H, n, full, anchors))
        throw NotSatisfiableAnywhere{"component does not map into Q_" + set_label(full)};

    IndexSet result;
    for (int i = 1; i <= n; ++i) {
        auto without = full;
        without.erase(i);
        if (! satisfiable_in(H, n, without, anchors))
            result.insert(i);
    }
    if (! satisfiable_in(H, n, result, anchors))
        throw MonotonicityViolation{"component does not map into Q_" + set_label(result)
            + " although it maps into every Q_S with S missing one index outside it"};
    return result;
}

auto gamma(const LeveledDigraph & H, int n) -> IndexSet
{
    return gamma_anchored(H, n, {});
}

auto build_fan(int n, FanKind kind, const std::vector<IndexSet> & sets) -> Fan
{
    if (sets.empty())
        throw std::invalid_argument{"a fan needs at least one path"};
    Fan f;
    f.kind = kind;
    f.n = n;
    int apex = f.graph.add_vertex("v");
    f.level.push_back(kind == FanKind::CommonInitial ? 0 : n + 2);
    for (std::size_t p = 0; p < sets.size(); ++p) {
        auto q = build_Q_S(n, sets[p]);
        int shared = kind == FanKind::CommonInitial ? q.initial() : q.terminal();
        std::vector<int> members(q.graph.size());
        for (int k = 0; k < q.graph.size(); ++k) {
            if (k == shared) {
                members[k] = apex;
                continue;
            }
            members[k] = f.graph.add_vertex("p" + std::to_string(p) + ":" + q.graph.label(k));
            f.level.push_back(q.level[k]);
        }
        for (auto & [a, b] : q.graph.edges())
            f.graph.add_edge(members[a], members[b]);
        f.paths.push_back(std::move(q));
        f.members.push_back(std::move(members));
    }
    return f;
}

auto fan_min_cost(const LeveledDigraph & H, const std::map<int, Rational> & W, const Fan & F,
        const std::vector<Rational> & u) -> FanOutcome
{
    if (H.components.size() > 1)
        throw std::invalid_argument{"fan_min_cost expects a connected input"};
    if (H.height >= F.height())
        throw std::invalid_argument{"fan_min_cost expects an input lower than the fan"};
    if (static_cast<int>(u.size()) != F.graph.size())
        throw std::invalid_argument{"unary cost map does not cover the fan"};
    for (int x = 0; x < F.graph.size(); ++x)
        if (u[x] != Rational{0} && F.level[x] != F.height())
            throw std::invalid_argument{"unary cost must vanish below the top level"};

    int m = F.height();
    int apex_level = F.kind == FanKind::CommonInitial ? 0 : m;
    int hn = H.graph.size();

    auto cost_of = [&] (const std::vector<int> & hom) {
        Cost c;
        for (auto & [x, w] : W)
            c += w * Cost{u[hom[x]]};
        return c;
    };

    FanOutcome out;
    bool feasible = false, all_zero = true;
    auto consider = [&] (std::vector<int> hom) {
        auto c = cost_of(hom);
        if (c > Cost{0})
            all_zero = false;
        if (! feasible || c < out.cost) {
            out.cost = c;
            out.hom = std::move(hom);
        }
        feasible = true;
    };

    for (int off = 0; off + H.height <= m; ++off) {
        std::vector<int> want(hn);
        bool touches_apex = false;
        for (int v = 0; v < hn; ++v) {
            want[v] = H.level[v] + off;
            touches_apex = touches_apex || want[v] == apex_level;
        }

        if (! touches_apex) {
            // The image avoids the apex, so it lies inside one path.
            for (std::size_t p = 0; p < F.paths.size(); ++p)
                if (auto local = path_csp_at_offset(H, F.paths[p], off)) {
                    std::vector<int> hom(hn);
                    for (int v = 0; v < hn; ++v)
                        hom[v] = F.members[p][(*local)[v]];
                    consider(std::move(hom));
                }
            continue;
        }

        // Everything on the apex level goes to the apex; each remaining
        // component is placed in a single path with its apex neighbours pinned.
        std::vector<int> hom(hn, -1), rest;
        for (int v = 0; v < hn; ++v) {
            if (want[v] == apex_level)
                hom[v] = F.apex();
            else
                rest.push_back(v);
        }
        auto [rest_graph, rest_original] = induced_subgraph(H.graph, rest);
        bool ok = true;
        for (auto & comp : weak_components(rest_graph)) {
            std::vector<int> members;
            std::set<int> pinned;
            for (int local : comp) {
                int v = rest_original[local];
                members.push_back(v);
                for (auto * adj : {&H.graph.out(v), &H.graph.in(v)})
                    for (int w : *adj)
                        if (want[w] == apex_level)
                            pinned.insert(w);
            }
            members.insert(members.end(), pinned.begin(), pinned.end());
            auto [sub, sub_original] = induced_subgraph(H.graph, members);
            std::vector<int> sub_want(sub.size());
            for (int i = 0; i < sub.size(); ++i)
                sub_want[i] = want[sub_original[i]];

            bool placed = false;
            for (std::size_t p = 0; p < F.paths.size() && ! placed; ++p) {
                auto & q = F.paths[p];
                int apex_in_path = F.kind == FanKind::CommonInitial ? q.initial() : q.terminal();
                Pins pins;
                for (int i = 0; i < sub.size(); ++i)
                    if (sub_want[i] == apex_level)
                        pins[i] = apex_in_path;
                if (auto local = find_leveled_hom(sub, q.graph, q.level, sub_want, pins)) {
                    for (int i = 0; i < sub.size(); ++i)
                        hom[sub_original[i]] = F.members[p][(*local)[i]];
                    placed = true;
                }
            }
            if (! placed) {
                ok = false;
                break;
            }
        }
        if (ok)
            consider(std::move(hom));
    }

    if (! feasible) {
        out = FanOutcome{};
        return out;
    }
    out.status = all_zero ? FanOutcome::Status::NoOptimisationImpact : FanOutcome::Status::Optimum;
    return out;
}

auto component_closure(const LeveledDigraph & G, const InternalComponent & C) -> std::pair<Digraph, std::vector<Anchor>>
{
    std::vector<int> members = C.vertices;
    members.insert(members.end(), C.base_attachments.begin(), C.base_attachments.end());
    members.insert(members.end(), C.top_attachments.begin(), C.top_attachments.end());
    auto [sub, original] = induced_subgraph(G.graph, members);
    std::vector<Anchor> anchors;
    for (std::size_t i = 0; i < original.size(); ++i) {
        if (G.level[original[i]] == 0)
            anchors.push_back({static_cast<int>(i), false});
        else if (G.level[original[i]] == G.height)
            anchors.push_back({static_cast<int>(i), true});
    }
    return {sub, anchors};
}

auto component_gamma(const LeveledDigraph & G, const InternalComponent & C, int n) -> IndexSet
{
    auto [sub, anchors] = component_closure(G, C);
    return gamma_anchored(leveled(sub), n, anchors);
}

} // namespace vcsphom
