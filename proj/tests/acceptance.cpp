// One line per acceptance criterion. Exit status 1 when any criterion fails.

#include <vcsphom/algebra.hpp>
#include <vcsphom/gen.hpp>
#include <vcsphom/io.hpp>
#include <vcsphom/paths.hpp>
#include <vcsphom/verify.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

using namespace vcsphom;

namespace
{
    struct Outcome
    {
        bool ok = true;
        std::string detail;
    };

    int failed = 0;
    int only = 0;

    void run(int number, double limit_seconds, const std::function<Outcome ()> & body)
    {
        if (only != 0 && only != number)
            return;
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = body();
        }
        catch (const std::exception & e) {
            out = {false, std::string{"exception: "} + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = secs < limit_seconds;
        bool ok = out.ok && in_time;
        if (! ok)
            ++failed;
        std::printf("criterion %2d: %s  %.2fs (limit %gs)  %s%s\n", number, ok ? "PASS" : "FAIL", secs, limit_seconds,
            out.detail.c_str(), in_time ? "" : " [too slow]");
        std::fflush(stdout);
    }

    auto all_subsets(int n) -> std::vector<IndexSet>
    {
        std::vector<IndexSet> out;
        for (int mask = 0; mask < (1 << n); ++mask) {
            IndexSet S;
            for (int i = 1; i <= n; ++i)
                if (mask & (1 << (i - 1)))
                    S.insert(i);
            out.push_back(S);
        }
        return out;
    }

    enum class GammaCheck
    {
        Agrees,
        Ambiguous,
        Wrong
    };

    /// Compares gamma with the brute-force minimal sets and sweeps all S.
    /// When the minimal set is not unique gamma has to refuse.
    auto check_gamma(const Digraph & h, int n, const std::vector<Anchor> & anchors = {}) -> GammaCheck
    {
        auto H = leveled(h);
        auto minimal = brute_force_minimal_sets(h, n);
        try {
            auto G = gamma_anchored(H, n, anchors);
            if (minimal.size() != 1 || G != minimal.front())
                return GammaCheck::Wrong;
            for (auto & S : all_subsets(n)) {
                bool sat = path_csp_satisfiable(H, build_Q_S(n, S)).has_value();
                if (sat != std::includes(S.begin(), S.end(), G.begin(), G.end()))
                    return GammaCheck::Wrong;
            }
            return GammaCheck::Agrees;
        }
        catch (const NotSatisfiableAnywhere &) {
            return minimal.empty() ? GammaCheck::Agrees : GammaCheck::Wrong;
        }
        catch (const MonotonicityViolation &) {
            return minimal.size() > 1 ? GammaCheck::Ambiguous : GammaCheck::Wrong;
        }
    }

    struct Tally
    {
        int agrees = 0, ambiguous = 0, wrong = 0;

        void add(GammaCheck c)
        {
            (c == GammaCheck::Agrees ? agrees : c == GammaCheck::Ambiguous ? ambiguous : wrong) += 1;
        }

        auto str() const -> std::string
        {
            return std::to_string(agrees) + " agree, " + std::to_string(ambiguous) + " without a unique minimum, "
                + std::to_string(wrong) + " wrong";
        }
    };
}

int main(int argc, char ** argv)
{
    CLI::App app{"Acceptance run"};
    std::uint64_t seed = 2024;
    int threads = 0;
    app.add_option("--seed", seed, "Corpus seed");
    app.add_option("--threads", threads, "Worker threads for the corpus runs");
    app.add_option("--only", only, "Run a single criterion")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    auto corpus = relation_corpus(seed, 50);

    run(1, 1, [] {
        WeightedRelation rho{{"0", "1"}, 2, {{{0, 1}, Rational{2}}, {{1, 0}, Rational{1}}}};
        auto E = build_encoding(rho);
        std::vector<int> profile(E.height() + 1, 0);
        for (int l : E.graph.level)
            ++profile[l];
        std::vector<Rational> u(E.graph.graph.size(), Rational{0});
        u[E.graph.graph.at("t:(0,1)")] = 2;
        u[E.graph.graph.at("t:(1,0)")] = 1;
        bool ok = E.graph.graph.size() == 24 && E.graph.graph.edge_count() == 24
            && profile == std::vector<int>{2, 6, 8, 6, 2} && E.u == u
            && expected_vertex_count(2, 2, 2) == 24 && expected_edge_count(2, 2, 2) == 24;
        return Outcome{ok, std::to_string(E.graph.graph.size()) + " vertices, " + std::to_string(E.graph.graph.edge_count())
            + " edges"};
    });

    run(2, 10, [&] {
        int bad = 0;
        for (auto & rho : corpus) {
            auto E = build_encoding(rho);
            auto levels = compute_levels(E.graph.graph);
            bool ok = E.graph.graph.size() == expected_vertex_count(E.n, E.domain_size(), E.tuple_count())
                && E.graph.graph.edge_count() == expected_edge_count(E.n, E.domain_size(), E.tuple_count())
                && std::holds_alternative<LeveledDigraph>(levels)
                && std::get<LeveledDigraph>(levels).height == E.n + 2;
            bad += ! ok;
        }
        return Outcome{bad == 0, std::to_string(corpus.size()) + " relations, " + std::to_string(bad) + " mismatches"};
    });

    auto corpus_outcome = [] (const CorpusReport & r) {
        int pass = 0;
        for (auto & rec : r.records)
            pass += rec.status == "pass";
        std::ostringstream s;
        s << pass << " pass, " << r.failures() << " fail, " << r.budget_hits() << " over budget";
        return Outcome{pass >= 100 && r.failures() == 0 && r.budget_hits() == 0, s.str()};
    };

    run(3, 300, [&] {
        CorpusConfig config;
        config.seed = seed;
        config.count = 1000;
        config.threads = threads;
        return corpus_outcome(verify_forward_corpus(config));
    });

    run(4, 600, [&] {
        CorpusConfig config;
        config.seed = seed;
        config.count = 1000;
        config.threads = threads;
        return corpus_outcome(verify_backward_corpus(config));
    });

    run(5, 600, [&] {
        Tally internal, sub, random;
        // Q_S depends only on (n, S), so each distinct sub-path is checked once
        std::set<std::tuple<int, IndexSet, int, int>> seen;
        for (auto & rho : corpus) {
            auto E = build_encoding(rho);
            for (auto & c : internal_components(E.graph)) {
                auto [closure, anchors] = component_closure(E.graph, c);
                internal.add(check_gamma(closure, E.n, anchors));
            }
            for (auto & q : E.paths) {
                int len = q.graph.size();
                for (int a = 0; a < len; ++a)
                    for (int b = a; b < len; ++b)
                        if (seen.emplace(E.n, q.S, a, b).second)
                            sub.add(check_gamma(subpath(q, a, b), E.n));
            }
        }
        Rng rng = item_rng(seed, 5);
        for (int it = 0; it < 100; ++it) {
            int n = uniform(rng, 1, 3);
            random.add(check_gamma(random_balanced_component(rng, uniform(rng, 0, n + 2), 12), n));
        }
        bool ok = internal.ambiguous + internal.wrong + sub.ambiguous + sub.wrong + random.ambiguous + random.wrong == 0;
        return Outcome{ok, "internal components: " + internal.str() + "; sub-paths: " + sub.str()
            + "; random components: " + random.str()};
    });

    run(6, 60, [&] {
        Rng rng = item_rng(seed, 6);
        int bad = 0;
        for (int it = 0; it < 100; ++it) {
            auto c = random_fan_case(rng);
            auto fast = fan_min_cost(c.H, c.W, c.fan, c.u);
            auto slow = brute_force_mch(c.H.graph, c.W, c.fan.graph, c.u);
            bool agree = slow.cost.is_infinite() ? fast.status == FanOutcome::Status::Infeasible
                                                 : fast.status != FanOutcome::Status::Infeasible && fast.cost == slow.cost;
            bad += ! agree;
        }
        return Outcome{bad == 0, "100 fans, " + std::to_string(bad) + " mismatches"};
    });

    run(7, 600, [&] {
        int violations = 0;
        int rigid = 0;
        for (auto & rho : corpus) {
            try {
                auto p = is_rigid_core_pair(build_encoding(rho));
                rigid += p.relation_rigid;
            }
            catch (const BiconditionalViolation &) {
                ++violations;
            }
        }
        WeightedRelation ex{{"0", "1"}, 2, {{{0, 1}, Rational{2}}, {{1, 0}, Rational{1}}}};
        auto p = is_rigid_core_pair(build_encoding(ex));
        bool example_ok = ! p.relation_rigid && ! p.digraph_rigid && is_core(unary_polymorphisms(ex))
            && p.relation_witness && *p.relation_witness == std::vector<int>{1, 0};
        return Outcome{violations == 0 && example_ok,
            std::to_string(corpus.size()) + " relations (" + std::to_string(rigid) + " rigid), "
                + std::to_string(violations) + " violations, example " + (example_ok ? "core, not rigid, swap" : "wrong")};
    });

    run(8, 300, [] {
        // |x - y| on the lattice {0 < 1}
        WeightedRelation cut{{"0", "1"}, 2,
            {{{0, 0}, Rational{0}}, {{0, 1}, Rational{1}}, {{1, 0}, Rational{1}}, {{1, 1}, Rational{0}}}};
        auto mx = Operation::from_function(2, 2, [] (const std::vector<int> & a) { return std::max(a[0], a[1]); });
        auto mn = Operation::from_function(2, 2, [] (const std::vector<int> & a) { return std::min(a[0], a[1]); });
        WeightedOperationSet wos{{mx, mn, Operation::projection(2, 2, 0), Operation::projection(2, 2, 1)},
            {Rational{1}, Rational{1}, Rational{-1}, Rational{-1}}};

        for (auto & [s, ws] : cut.entries())
            for (auto & [t, wt] : cut.entries()) {
                Tuple hi{std::max(s[0], t[0]), std::max(s[1], t[1])};
                Tuple lo{std::min(s[0], t[0]), std::min(s[1], t[1])};
                if (cut.cost(hi) + cut.cost(lo) > Cost{ws + wt})
                    return Outcome{false, "relation is not submodular"};
            }

        auto E = build_encoding(cut);
        auto report = transfer_weighted_polymorphism(wos, E, build_vertex_order(E));
        auto & out = report.result;
        int V = E.graph.graph.size();
        auto is_tuple = [&] (int v) { return E.roles[v].kind == RoleKind::Tuple; };
        for (auto & f : out.operations)
            if (! is_polymorphism(f, E.graph.graph))
                return Outcome{false, "an operation does not preserve the edges"};
        for (int x = 0; x < V; ++x)
            for (int y = 0; y < V; ++y) {
                Rational total{0};
                for (std::size_t i = 0; i < out.operations.size(); ++i)
                    total += out.weights[i] * E.u[out.operations[i]({x, y})];
                if (total > Rational{0})
                    return Outcome{false, "inequality fails"};
                for (std::size_t i = 0; i < 2; ++i) {
                    auto & f = out.operations[i];
                    if (f({x, y}) != f({y, x}))
                        return Outcome{false, "symmetry lost"};
                    if (is_tuple(f({x, y})) && ! (is_tuple(x) && is_tuple(y)))
                        return Outcome{false, "range leaks into the tuple vertices"};
                }
            }
        return Outcome{true, std::to_string(V) + "^2 argument pairs checked"};
    });

    run(9, 600, [&] {
        Rng rng = item_rng(seed, 9);
        int violations = 0;
        for (int it = 0; it < 20; ++it) {
            auto c = random_commutative_case(rng);
            auto E = build_encoding(c.rho);
            auto F = extend_operation(c.f, E, build_vertex_order(E), diagonal_component(E, 2));
            int V = E.graph.graph.size();
            for (int x = 0; x < V; ++x)
                for (int y = x + 1; y < V; ++y)
                    violations += F({x, y}) != F({y, x});
        }
        return Outcome{violations == 0, "20 operations, " + std::to_string(violations) + " violations"};
    });

    run(10, 300, [&] {
        auto lines = [&] (int t) {
            CorpusConfig config;
            config.seed = seed;
            config.count = 100;
            config.threads = t;
            std::string out;
            for (auto & rec : verify_backward_corpus(config).records)
                out += record_line(rec) + "\n";
            for (auto & rec : verify_forward_corpus(config).records)
                out += record_line(rec) + "\n";
            return out;
        };
        auto a = lines(1), b = lines(4);
        return Outcome{a == b, std::to_string(a.size()) + " bytes per run"};
    });

    return failed == 0 ? 0 : 1;
}
