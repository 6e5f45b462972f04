#include <vcsphom/digraph.hpp>

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

namespace vcsphom {

auto Digraph::add_vertex(const std::string & label) -> int
{
    if (_index.contains(label))
        throw std::invalid_argument{"duplicate vertex '" + label + "'"};
    auto v = size();
    _labels.push_back(label);
    _index.emplace(label, v);
    _out.emplace_back();
    _in.emplace_back();
    return v;
}

auto Digraph::ensure_vertex(const std::string & label) -> int
{
    if (auto it = _index.find(label); it != _index.end())
        return it->second;
    return add_vertex(label);
}

void Digraph::add_edge(int from, int to)
{
    if (from < 0 || to < 0 || from >= size() || to >= size())
        throw std::out_of_range{"edge endpoint is not a vertex"};
    if (! _edges.insert({from, to}).second)
        return;
    _out[from].insert(std::upper_bound(_out[from].begin(), _out[from].end(), to), to);
    _in[to].insert(std::upper_bound(_in[to].begin(), _in[to].end(), from), from);
}

void Digraph::add_edge(const std::string & from, const std::string & to)
{
    add_edge(at(from), at(to));
}

void Digraph::remove_edge(int from, int to)
{
    if (! _edges.erase({from, to}))
        return;
    std::erase(_out[from], to);
    std::erase(_in[to], from);
}

auto Digraph::index(const std::string & label) const -> std::optional<int>
{
    if (auto it = _index.find(label); it != _index.end())
        return it->second;
    return std::nullopt;
}

auto Digraph::at(const std::string & label) const -> int
{
    if (auto v = index(label))
        return *v;
    throw std::out_of_range{"unknown vertex '" + label + "'"};
}

auto Digraph::adjacency_matrix() const -> std::vector<char>
{
    std::vector<char> m(static_cast<std::size_t>(size()) * size(), 0);
    for (auto & [a, b] : _edges)
        m[static_cast<std::size_t>(a) * size() + b] = 1;
    return m;
}

auto induced_subgraph(const Digraph & g, const std::vector<int> & vertices) -> std::pair<Digraph, std::vector<int>>
{
    Digraph sub;
    std::vector<int> local(g.size(), -1);
    for (int v : vertices)
        local[v] = sub.add_vertex(g.label(v));
    for (int v : vertices)
        for (int w : g.out(v))
            if (local[w] >= 0)
                sub.add_edge(local[v], local[w]);
    return {std::move(sub), vertices};
}

auto weak_components(const Digraph & g) -> std::vector<std::vector<int>>
{
    std::vector<int> seen(g.size(), 0);
    std::vector<std::vector<int>> result;
    for (int root = 0; root < g.size(); ++root) {
        if (seen[root])
            continue;
        std::vector<int> comp;
        std::deque<int> queue{root};
        seen[root] = 1;
        while (! queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            comp.push_back(v);
            for (auto * adj : {&g.out(v), &g.in(v)})
                for (int w : *adj)
                    if (! seen[w]) {
                        seen[w] = 1;
                        queue.push_back(w);
                    }
        }
        std::sort(comp.begin(), comp.end());
        result.push_back(std::move(comp));
    }
    return result;
}

auto net_length(const Digraph & g, const std::vector<int> & walk) -> int
{
    int net = 0;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
        int a = walk[i], b = walk[i + 1];
        if (g.has_edge(a, b))
            ++net;
        else if (g.has_edge(b, a))
            --net;
        else
            throw std::invalid_argument{"walk uses a non-edge"};
    }
    return net;
}

namespace
{
    auto tree_path_to_root(int v, const std::vector<int> & parent) -> std::vector<int>
    {
        std::vector<int> path{v};
        while (parent[v] >= 0) {
            v = parent[v];
            path.push_back(v);
        }
        return path;
    }
}

auto compute_levels(const Digraph & g) -> std::variant<LeveledDigraph, NotBalanced>
{
    constexpr int unset = std::numeric_limits<int>::min();
    std::vector<int> level(g.size(), unset), parent(g.size(), -1);
    LeveledDigraph out;
    out.graph = g;
    out.component.assign(g.size(), -1);

    for (int root = 0; root < g.size(); ++root) {
        if (level[root] != unset)
            continue;
        int cid = static_cast<int>(out.components.size());
        std::vector<int> comp;
        std::deque<int> queue{root};
        level[root] = 0;
        while (! queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            comp.push_back(v);
            out.component[v] = cid;
            auto visit = [&] (int w, int want) -> std::optional<NotBalanced> {
                if (level[w] == unset) {
                    level[w] = want;
                    parent[w] = v;
                    queue.push_back(w);
                    return std::nullopt;
                }
                if (level[w] == want)
                    return std::nullopt;
                // root .. v, w .. root is a closed walk of non-zero net length
                auto to_v = tree_path_to_root(v, parent);
                std::reverse(to_v.begin(), to_v.end());
                auto from_w = tree_path_to_root(w, parent);
                to_v.insert(to_v.end(), from_w.begin(), from_w.end());
                return NotBalanced{std::move(to_v)};
            };
            for (int w : g.out(v))
                if (auto bad = visit(w, level[v] + 1))
                    return *bad;
            for (int w : g.in(v))
                if (auto bad = visit(w, level[v] - 1))
                    return *bad;
        }
        int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
        for (int v : comp) {
            lo = std::min(lo, level[v]);
            hi = std::max(hi, level[v]);
        }
        for (int v : comp)
            level[v] -= lo;
        std::sort(comp.begin(), comp.end());
        out.components.push_back(std::move(comp));
        out.component_height.push_back(hi - lo);
        out.height = std::max(out.height, hi - lo);
    }
    out.level = std::move(level);
    return out;
}

auto leveled(const Digraph & g) -> LeveledDigraph
{
    auto r = compute_levels(g);
    if (auto * l = std::get_if<LeveledDigraph>(&r))
        return std::move(*l);
    throw std::invalid_argument{"digraph is not balanced"};
}

auto extract_component(const LeveledDigraph & g, int c) -> std::pair<LeveledDigraph, std::vector<int>>
{
    auto [sub, original] = induced_subgraph(g.graph, g.components.at(c));
    return {leveled(sub), std::move(original)};
}

auto internal_components(const LeveledDigraph & g) -> std::vector<InternalComponent>
{
    int m = g.height;
    std::vector<int> inner;
    for (int v = 0; v < g.graph.size(); ++v)
        if (g.level[v] > 0 && g.level[v] < m)
            inner.push_back(v);

    auto [sub, original] = induced_subgraph(g.graph, inner);
    std::vector<InternalComponent> result;
    for (auto & comp : weak_components(sub)) {
        InternalComponent ic;
        std::set<int> tops, bases;
        for (int local : comp) {
            int v = original[local];
            ic.vertices.push_back(v);
            for (auto * adj : {&g.graph.out(v), &g.graph.in(v)})
                for (int w : *adj) {
                    if (g.level[w] == m)
                        tops.insert(w);
                    else if (g.level[w] == 0)
                        bases.insert(w);
                }
        }
        ic.top_attachments.assign(tops.begin(), tops.end());
        ic.base_attachments.assign(bases.begin(), bases.end());
        result.push_back(std::move(ic));
    }
    return result;
}

} // namespace vcsphom
