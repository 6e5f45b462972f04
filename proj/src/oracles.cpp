#include <vcsphom/oracles.hpp>

#include <algorithm>
#include <deque>

namespace vcsphom {

namespace
{
    class NodeCounter {
    public:
        explicit NodeCounter(std::uint64_t limit) : _limit(limit) {}

        void tick()
        {
            if (++_nodes > _limit)
                throw BudgetExceeded{"search budget of " + std::to_string(_limit) + " nodes exceeded"};
        }

    private:
        std::uint64_t _limit, _nodes = 0;
    };
}

auto brute_force_vcsp(const VCSPInstance & inst, const WeightedStructure & wA, const SearchBudget & budget)
    -> VcspOptimum
{
    validate_instance(inst, wA);
    int nvars = static_cast<int>(inst.variables.size());
    int dsize = static_cast<int>(wA.domain().size());
    if (dsize > budget.max_domain)
        throw BudgetExceeded{"domain too large for exhaustive search"};

    // constraints indexed by their last-assigned scope variable
    std::vector<std::vector<const Constraint *>> closing(std::max(nvars, 1));
    for (auto & c : inst.constraints) {
        int last = c.scope.empty() ? 0 : *std::max_element(c.scope.begin(), c.scope.end());
        closing[last].push_back(&c);
    }

    VcspOptimum best;
    if (nvars == 0) {
        Cost total;
        for (auto & c : inst.constraints)
            total += c.weight * wA.get(c.relation).cost({});
        if (total.is_finite())
            best = VcspOptimum{total, Assignment{}};
        return best;
    }

    NodeCounter counter{budget.max_nodes};
    Assignment h(nvars, 0);
    Tuple image;
    auto recurse = [&] (auto & self, int var, Cost partial) -> void {
        if (var == nvars) {
            if (partial < best.cost)
                best = VcspOptimum{partial, h};
            return;
        }
        for (int d = 0; d < dsize; ++d) {
            counter.tick();
            h[var] = d;
            Cost next = partial;
            for (auto * c : closing[var]) {
                image.clear();
                for (int v : c->scope)
                    image.push_back(h[v]);
                next += c->weight * wA.get(c->relation).cost(image);
                if (next.is_infinite())
                    break;
            }
            if (next.is_infinite() || ! (next < best.cost))
                continue;
            self(self, var + 1, next);
        }
    };
    recurse(recurse, 0, Cost{});
    return best;
}

namespace
{
    /// Breadth-first order per component so every vertex but the first of
    /// its component has an earlier neighbour.
    auto bfs_order(const Digraph & g) -> std::vector<int>
    {
        std::vector<int> order;
        std::vector<char> seen(g.size(), 0);
        for (int root = 0; root < g.size(); ++root) {
            if (seen[root])
                continue;
            std::deque<int> queue{root};
            seen[root] = 1;
            while (! queue.empty()) {
                int v = queue.front();
                queue.pop_front();
                order.push_back(v);
                for (auto * adj : {&g.out(v), &g.in(v)})
                    for (int w : *adj)
                        if (! seen[w]) {
                            seen[w] = 1;
                            queue.push_back(w);
                        }
            }
        }
        return order;
    }
}

void for_each_homomorphism(const Digraph & X, const Digraph & A, const SearchBudget & budget,
        const std::function<bool (const std::vector<int> &)> & visit, bool level_pruning)
{
    if (X.size() > budget.max_vertices || A.size() > budget.max_vertices)
        throw BudgetExceeded{"digraph too large for exhaustive search"};

    std::optional<LeveledDigraph> xl, al;
    if (level_pruning) {
        auto x = compute_levels(X);
        auto a = compute_levels(A);
        if (std::holds_alternative<LeveledDigraph>(x) && std::holds_alternative<LeveledDigraph>(a)) {
            xl = std::get<LeveledDigraph>(std::move(x));
            al = std::get<LeveledDigraph>(std::move(a));
        }
    }

    auto adj = A.adjacency_matrix();
    int an = A.size();
    auto edge = [&] (int x, int y) { return adj[static_cast<std::size_t>(x) * an + y] != 0; };

    auto order = bfs_order(X);
    std::vector<int> h(X.size(), -1);
    // component offset for level pruning: target level minus source level
    std::vector<int> offset(xl ? xl->components.size() : 0, 0);
    NodeCounter counter{budget.max_nodes};
    bool stop = false;

    auto consistent = [&] (int v, int x) {
        for (int w : X.out(v))
            if (h[w] >= 0 && ! edge(x, h[w]))
                return false;
        for (int w : X.in(v))
            if (h[w] >= 0 && ! edge(h[w], x))
                return false;
        return true;
    };

    auto recurse = [&] (auto & self, std::size_t pos) -> void {
        if (stop)
            return;
        if (pos == order.size()) {
            stop = ! visit(h);
            return;
        }
        int v = order[pos];
        bool first_of_component = false;
        if (xl) {
            int c = xl->component[v];
            first_of_component = xl->components[c].front() == v
                || std::none_of(xl->components[c].begin(), xl->components[c].end(), [&] (int w) { return h[w] >= 0; });
        }
        for (int x = 0; x < an && ! stop; ++x) {
            if (xl && ! first_of_component && al->level[x] - xl->level[v] != offset[xl->component[v]])
                continue;
            counter.tick();
            if (X.has_edge(v, v) && ! edge(x, x))
                continue;
            if (! consistent(v, x))
                continue;
            h[v] = x;
            if (xl && first_of_component)
                offset[xl->component[v]] = al->level[x] - xl->level[v];
            self(self, pos + 1);
            h[v] = -1;
        }
    };
    recurse(recurse, 0);
}

auto enumerate_homomorphisms(const Digraph & X, const Digraph & A, const SearchBudget & budget, bool level_pruning)
    -> std::vector<std::vector<int>>
{
    std::vector<std::vector<int>> all;
    for_each_homomorphism(X, A, budget, [&] (const std::vector<int> & h) {
        all.push_back(h);
        return true;
    }, level_pruning);
    std::sort(all.begin(), all.end());
    return all;
}

namespace
{
    class MchSearch {
    public:
        MchSearch(const Digraph & g, const std::map<int, Rational> & W, const Digraph & t,
                const std::vector<Rational> & u, const SearchBudget & budget) :
            _g(g), _t(t), _tn(t.size()), _adj(t.adjacency_matrix()), _weight(g.size(), Rational{0}),
            _u(u), _h(g.size(), -1), _counter(budget.max_nodes)
        {
            for (auto & [v, w] : W)
                _weight.at(v) = w;
        }

        struct Piece
        {
            Cost cost = Cost::infinite();
            std::vector<std::pair<int, int>> placement;
        };

        auto solve(const std::vector<int> & unplaced) -> Piece
        {
            Piece best;
            int v = choose(unplaced);
            std::vector<int> remaining;
            for (int w : unplaced)
                if (w != v)
                    remaining.push_back(w);

            for (int x : candidates(v)) {
                _counter.tick();
                Cost here = _weight[v] * Cost{_u[x]};
                if (! (here < best.cost))
                    continue;
                _h[v] = x;
                Piece attempt;
                attempt.cost = here;
                attempt.placement.emplace_back(v, x);
                for (auto & part : split(remaining)) {
                    auto sub = solve(part);
                    attempt.cost += sub.cost;
                    if (! (attempt.cost < best.cost))
                        break;
                    attempt.placement.insert(attempt.placement.end(), sub.placement.begin(), sub.placement.end());
                }
                _h[v] = -1;
                if (attempt.cost < best.cost)
                    best = std::move(attempt);
            }
            return best;
        }

        auto split(const std::vector<int> & vertices) -> std::vector<std::vector<int>>
        {
            std::vector<std::vector<int>> parts;
            std::vector<char> in_set(_g.size(), 0), seen(_g.size(), 0);
            for (int v : vertices)
                in_set[v] = 1;
            for (int root : vertices) {
                if (seen[root])
                    continue;
                std::vector<int> part;
                std::deque<int> queue{root};
                seen[root] = 1;
                while (! queue.empty()) {
                    int v = queue.front();
                    queue.pop_front();
                    part.push_back(v);
                    for (auto * adj : {&_g.out(v), &_g.in(v)})
                        for (int w : *adj)
                            if (in_set[w] && ! seen[w]) {
                                seen[w] = 1;
                                queue.push_back(w);
                            }
                }
                std::sort(part.begin(), part.end());
                parts.push_back(std::move(part));
            }
            return parts;
        }

    private:
        auto edge(int x, int y) const -> bool { return _adj[static_cast<std::size_t>(x) * _tn + y] != 0; }

        auto candidates(int v) const -> std::vector<int>
        {
            std::vector<int> out;
            for (int x = 0; x < _tn; ++x) {
                if (_g.has_edge(v, v) && ! edge(x, x))
                    continue;
                bool ok = true;
                for (int w : _g.out(v))
                    if (_h[w] >= 0 && ! edge(x, _h[w]))
                        ok = false;
                for (int w : _g.in(v))
                    if (_h[w] >= 0 && ! edge(_h[w], x))
                        ok = false;
                if (ok)
                    out.push_back(x);
            }
            return out;
        }

        /// Most constrained first, then the best connected, then the lowest index.
        auto choose(const std::vector<int> & unplaced) const -> int
        {
            int best = -1;
            std::size_t best_size = 0;
            std::size_t best_degree = 0;
            for (int v : unplaced) {
                auto size = candidates(v).size();
                auto degree = _g.out(v).size() + _g.in(v).size();
                if (best < 0 || size < best_size || (size == best_size && degree > best_degree)) {
                    best = v;
                    best_size = size;
                    best_degree = degree;
                }
            }
            return best;
        }

        const Digraph & _g;
        const Digraph & _t;
        int _tn;
        std::vector<char> _adj;
        std::vector<Rational> _weight;
        const std::vector<Rational> & _u;
        std::vector<int> _h;
        NodeCounter _counter;
    };
}

auto brute_force_mch(const Digraph & G, const std::map<int, Rational> & W, const Digraph & target,
        const std::vector<Rational> & u, const SearchBudget & budget) -> MchOptimum
{
    if (G.size() > budget.max_vertices || target.size() > budget.max_vertices)
        throw BudgetExceeded{"digraph too large for exhaustive search"};
    if (static_cast<int>(u.size()) != target.size())
        throw std::invalid_argument{"unary cost map does not cover the target"};
    for (auto & [v, w] : W)
        if (v < 0 || v >= G.size() || w < 0)
            throw std::invalid_argument{"bad weight map"};

    MchSearch search{G, W, target, u, budget};
    std::vector<int> all(G.size());
    for (int v = 0; v < G.size(); ++v)
        all[v] = v;

    MchOptimum result;
    result.cost = Cost{0};
    std::vector<int> hom(G.size(), -1);
    for (auto & part : search.split(all)) {
        auto piece = search.solve(part);
        if (piece.cost.is_infinite())
            return MchOptimum{};
        result.cost += piece.cost;
        for (auto & [v, x] : piece.placement)
            hom[v] = x;
    }
    result.hom = std::move(hom);
    return result;
}

} // namespace vcsphom
