#include <vcsphom/gen.hpp>
#include <vcsphom/io.hpp>
#include <vcsphom/verify.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

namespace vcsphom {

namespace
{
    /// Cost-set comparisons enumerate every solution; keep them small.
    constexpr std::uint64_t cost_set_nodes = 200'000;

    auto shifted(const Cost & c, const Rational & offset) -> Cost
    {
        return c.is_infinite() ? c : Cost{c.value() + offset};
    }

    auto small(const SearchBudget & budget) -> SearchBudget
    {
        auto b = budget;
        b.max_nodes = std::min(b.max_nodes, cost_set_nodes);
        return b;
    }
}

auto record_line(const EquivalenceRecord & rec) -> std::string
{
    Json j = {{"id", rec.id}, {"status", rec.status}, {"lhs", rec.lhs.str()}, {"rhs", rec.rhs.str()},
        {"offset", to_string(rec.offset)}};
    if (! rec.note.empty())
        j["note"] = rec.note;
    return j.dump();
}

auto vcsp_cost_set(const VCSPInstance & inst, const WeightedStructure & wA, const SearchBudget & budget)
    -> std::set<Rational>
{
    std::uint64_t total = 1;
    auto d = wA.domain().size();
    for (std::size_t v = 0; v < inst.variables.size(); ++v) {
        total *= d;
        if (total > budget.max_nodes)
            throw BudgetExceeded{"too many assignments for a cost-set comparison"};
    }
    std::set<Rational> costs;
    Assignment h(inst.variables.size(), 0);
    for (std::uint64_t i = 0; i < total; ++i) {
        auto c = eval_instance(inst, wA, h);
        if (c.is_finite())
            costs.insert(c.value());
        for (int v = static_cast<int>(h.size()) - 1; v >= 0; --v) {
            if (++h[v] < static_cast<int>(d))
                break;
            h[v] = 0;
        }
    }
    return costs;
}

auto mch_cost_set(const MinCostHomInstance & M, const EncodedDigraph & E, const SearchBudget & budget)
    -> std::set<Rational>
{
    std::set<Rational> costs;
    for_each_homomorphism(M.graph, E.graph.graph, budget, [&] (const std::vector<int> & h) {
        Rational c{0};
        for (auto & [v, w] : M.W)
            c += w * E.u[h[v]];
        costs.insert(c);
        return true;
    });
    return costs;
}

auto check_forward(const VCSPInstance & inst, const WeightedStructure & wA, const EncodedDigraph & E,
        const SearchBudget & budget, Fault fault, bool cost_sets) -> EquivalenceRecord
{
    EquivalenceRecord rec;
    try {
        rec.lhs = brute_force_vcsp(inst, wA, budget).cost;
        auto M = forward_reduce(inst, wA, E, fault);
        rec.rhs = brute_force_mch(M.graph, M.W, E.graph.graph, E.u, budget).cost;
        if (! (rec.lhs == rec.rhs)) {
            rec.status = "fail";
            rec.note = "optima differ";
            return rec;
        }
        if (cost_sets) {
            try {
                if (vcsp_cost_set(inst, wA, small(budget)) != mch_cost_set(M, E, small(budget))) {
                    rec.status = "fail";
                    rec.note = "cost sets differ";
                }
            }
            catch (const BudgetExceeded &) {
            }
        }
    }
    catch (const BudgetExceeded & e) {
        rec.status = "budget";
        rec.note = e.what();
    }
    return rec;
}

auto check_backward(const MinCostHomInstance & M, const EncodedDigraph & E, const SearchBudget & budget,
        Fault fault, bool cost_sets) -> EquivalenceRecord
{
    EquivalenceRecord rec;
    try {
        rec.lhs = brute_force_mch(M.graph, M.W, E.graph.graph, E.u, budget).cost;
        auto result = backward_reduce(M, E, fault);
        if (std::holds_alternative<FixedNo>(result)) {
            rec.rhs = Cost::infinite();
            rec.note = "fixed-no";
        }
        else if (auto * yes = std::get_if<FixedYes>(&result)) {
            rec.rhs = Cost::zero();
            rec.offset = yes->offset;
            rec.note = "fixed-yes";
        }
        else {
            auto & r = std::get<ReducedVCSP>(result);
            rec.rhs = brute_force_vcsp(r.instance, r.structure, budget).cost;
            rec.offset = r.offset;
        }
        if (! (rec.lhs == shifted(rec.rhs, rec.offset))) {
            rec.status = "fail";
            rec.note += rec.note.empty() ? "optima differ" : ", optima differ";
            return rec;
        }

        // the solution correspondence only covers the full-height part
        auto * r = std::get_if<ReducedVCSP>(&result);
        if (cost_sets && r) {
            auto L = leveled(M.graph);
            bool all_tall = std::all_of(L.component_height.begin(), L.component_height.end(),
                [&] (int h) { return h == E.height(); });
            if (all_tall) {
                try {
                    std::set<Rational> rhs;
                    for (auto & c : vcsp_cost_set(r->instance, r->structure, small(budget)))
                        rhs.insert(c + r->offset);
                    if (mch_cost_set(M, E, small(budget)) != rhs) {
                        rec.status = "fail";
                        rec.note = "cost sets differ";
                    }
                }
                catch (const BudgetExceeded &) {
                }
            }
        }
    }
    catch (const BudgetExceeded & e) {
        rec.status = "budget";
        rec.note = e.what();
    }
    return rec;
}

auto shrink_forward(VCSPInstance inst, const WeightedStructure & wA, const EncodedDigraph & E,
        const SearchBudget & budget, Fault fault) -> VCSPInstance
{
    auto fails = [&] (const VCSPInstance & i) { return check_forward(i, wA, E, budget, fault).status == "fail"; };
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t c = 0; c < inst.constraints.size(); ++c) {
            auto smaller = inst;
            smaller.constraints.erase(smaller.constraints.begin() + c);
            if (fails(smaller)) {
                inst = std::move(smaller);
                changed = true;
                break;
            }
        }
        if (changed)
            continue;
        for (int v = 0; v < static_cast<int>(inst.variables.size()) && inst.variables.size() > 1; ++v) {
            bool used = false;
            for (auto & c : inst.constraints)
                used = used || std::find(c.scope.begin(), c.scope.end(), v) != c.scope.end();
            if (used)
                continue;
            auto smaller = inst;
            smaller.variables.erase(smaller.variables.begin() + v);
            for (auto & c : smaller.constraints)
                for (auto & x : c.scope)
                    x -= x > v;
            if (fails(smaller)) {
                inst = std::move(smaller);
                changed = true;
                break;
            }
        }
    }
    return inst;
}

auto shrink_backward(MinCostHomInstance M, const EncodedDigraph & E, const SearchBudget & budget, Fault fault)
    -> MinCostHomInstance
{
    auto fails = [&] (const MinCostHomInstance & m) { return check_backward(m, E, budget, fault).status == "fail"; };
    bool changed = true;
    while (changed && M.graph.size() > 1) {
        changed = false;
        for (int x = 0; x < M.graph.size() && ! changed; ++x) {
            std::vector<int> keep;
            for (int v = 0; v < M.graph.size(); ++v)
                if (v != x)
                    keep.push_back(v);
            MinCostHomInstance smaller;
            smaller.graph = induced_subgraph(M.graph, keep).first;
            for (auto & [v, w] : M.W)
                if (v != x)
                    smaller.W[v - (v > x)] = w;
            if (fails(smaller)) {
                M = std::move(smaller);
                changed = true;
            }
        }
        for (auto e : M.graph.edges()) {
            if (changed)
                break;
            auto smaller = M;
            smaller.graph.remove_edge(e.first, e.second);
            if (fails(smaller)) {
                M = std::move(smaller);
                changed = true;
            }
        }
    }
    return M;
}

EquivalenceViolation::EquivalenceViolation(EquivalenceRecord r, std::string ce) :
    std::runtime_error{"equivalence violated: " + record_line(r)},
    record(std::move(r)),
    counterexample(std::move(ce))
{
}

auto verify_forward_pair(const VCSPInstance & inst, const WeightedStructure & wA, const EncodedDigraph & E,
        const SearchBudget & budget, Fault fault) -> EquivalenceRecord
{
    auto rec = check_forward(inst, wA, E, budget, fault, true);
    if (rec.status == "fail") {
        auto shrunk = shrink_forward(inst, wA, E, budget, fault);
        Json j = {{"structure", structure_to_json(wA)}, {"instance", instance_to_json(shrunk)}};
        throw EquivalenceViolation{rec, j.dump(2)};
    }
    return rec;
}

auto verify_backward_pair(const MinCostHomInstance & M, const EncodedDigraph & E, const SearchBudget & budget,
        Fault fault) -> EquivalenceRecord
{
    auto rec = check_backward(M, E, budget, fault, true);
    if (rec.status == "fail") {
        auto shrunk = shrink_backward(M, E, budget, fault);
        Json j = {{"encoding", encoding_to_json(E)["structure"]}, {"mch", mch_to_json(shrunk)}};
        throw EquivalenceViolation{rec, j.dump(2)};
    }
    return rec;
}

auto CorpusReport::failures() const -> int
{
    return static_cast<int>(std::count_if(records.begin(), records.end(),
        [] (auto & r) { return r.status != "pass" && r.status != "budget"; }));
}

auto CorpusReport::budget_hits() const -> int
{
    return static_cast<int>(std::count_if(records.begin(), records.end(), [] (auto & r) { return r.status == "budget"; }));
}

namespace
{
    /// Runs item(id) for every id on a small pool; results land by id, so the
    /// report does not depend on scheduling.
    auto run_corpus(const CorpusConfig & config,
        const std::function<EquivalenceRecord (int, std::string &)> & item) -> CorpusReport
    {
        CorpusReport report;
        report.records.resize(config.count);
        std::vector<std::string> counterexamples(config.count);
        std::atomic<int> next{0};
        auto work = [&] {
            for (int id = next++; id < config.count; id = next++) {
                try {
                    report.records[id] = item(id, counterexamples[id]);
                }
                catch (const EquivalenceViolation & e) {
                    report.records[id] = e.record;
                    counterexamples[id] = e.counterexample;
                }
                catch (const std::exception & e) {
                    report.records[id].status = "error";
                    report.records[id].note = e.what();
                }
                report.records[id].id = id;
            }
        };
        int threads = config.threads > 0 ? config.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        std::vector<std::jthread> pool;
        for (int t = 0; t < std::min(threads, config.count); ++t)
            pool.emplace_back(work);
        pool.clear();
        for (int id = 0; id < config.count; ++id)
            if (! counterexamples[id].empty())
                report.counterexamples[id] = counterexamples[id];
        return report;
    }

    constexpr std::uint64_t forward_stream = 0x66776400;
    constexpr std::uint64_t backward_stream = 0x62776400;
}

auto relation_corpus(std::uint64_t seed, int count) -> std::vector<WeightedRelation>
{
    std::vector<WeightedRelation> out;
    for (int i = 0; i < count; ++i) {
        auto rng = item_rng(seed, i);
        out.push_back(random_relation(rng, {3, 3, 5, 3}));
    }
    return out;
}

auto verify_forward_corpus(const CorpusConfig & config) -> CorpusReport
{
    return run_corpus(config, [&] (int id, std::string &) {
        auto rng = item_rng(config.seed ^ forward_stream, id);
        auto rho = random_relation(rng, {2, 3, 4, 3});
        WeightedStructure wA{rho.domain(), {{"rho", rho}}};
        auto inst = random_instance(rng, wA);
        auto E = build_encoding(rho);
        return verify_forward_pair(inst, wA, E, config.budget, config.fault);
    });
}

auto verify_backward_corpus(const CorpusConfig & config) -> CorpusReport
{
    auto relations = relation_corpus(config.seed, 50);
    std::vector<EncodedDigraph> encodings;
    for (auto & rho : relations)
        encodings.push_back(build_encoding(rho));
    return run_corpus(config, [&] (int id, std::string &) {
        auto rng = item_rng(config.seed ^ backward_stream, id);
        auto & E = encodings[id % encodings.size()];
        auto M = random_mch_instance(rng, E);
        return verify_backward_pair(M, E, config.budget, config.fault);
    });
}

auto brute_force_minimal_sets(const Digraph & H, int n, const SearchBudget & budget) -> std::vector<IndexSet>
{
    std::vector<IndexSet> sat;
    for (int mask = 0; mask < (1 << n); ++mask) {
        IndexSet S;
        for (int i = 1; i <= n; ++i)
            if (mask & (1 << (i - 1)))
                S.insert(i);
        bool found = false;
        for_each_homomorphism(H, build_Q_S(n, S).graph, budget, [&] (const std::vector<int> &) {
            found = true;
            return false;
        });
        if (found)
            sat.push_back(S);
    }
    std::vector<IndexSet> minimal;
    for (auto & S : sat) {
        bool least = std::none_of(sat.begin(), sat.end(), [&] (const IndexSet & T) {
            return T != S && std::includes(S.begin(), S.end(), T.begin(), T.end());
        });
        if (least)
            minimal.push_back(S);
    }
    return minimal;
}

} // namespace vcsphom
