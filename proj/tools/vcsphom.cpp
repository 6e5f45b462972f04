#include <vcsphom/algebra.hpp>
#include <vcsphom/encoding.hpp>
#include <vcsphom/io.hpp>
#include <vcsphom/oracles.hpp>
#include <vcsphom/reductions.hpp>
#include <vcsphom/verify.hpp>

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

using namespace vcsphom;
namespace fs = std::filesystem;

namespace
{
    constexpr int exit_pass = 0;
    constexpr int exit_fail = 1;
    constexpr int exit_usage = 2;

    struct Globals
    {
        std::uint64_t seed = 1;
        std::uint64_t budget = SearchBudget{}.max_nodes;
        fs::path out = ".";
        std::string fault = "none";

        auto search_budget() const -> SearchBudget
        {
            SearchBudget b;
            b.max_nodes = budget;
            return b;
        }

        auto fault_kind() const -> Fault
        {
            if (fault == "drop-gadget-edge")
                return Fault::DropGadgetEdge;
            if (fault == "drop-weighted")
                return Fault::DropWeightedConstraints;
            return Fault::None;
        }
    };

    auto encoding_file(const WeightedStructure & source) -> Json
    {
        auto collapsed = collapse_to_single_relation(source);
        auto & rho = collapsed.structure.relations().front().relation;
        auto E = build_encoding(rho);
        if (auto bad = verify_encoding(E, false))
            throw std::runtime_error{"encoding failed its own checks: " + bad->what};

        auto j = encoding_to_json(E);
        j["structure"] = structure_to_json(collapsed.structure);
        j["collapsed"] = collapsed.collapsed;
        if (collapsed.collapsed) {
            j["source"] = structure_to_json(source);
            Json blocks = Json::array();
            for (auto & b : collapsed.scope_map)
                blocks.push_back({{"relation", b.name}, {"offset", b.offset}, {"arity", b.arity},
                    {"min_weight", to_string(b.min_weight)}});
            j["scope_map"] = blocks;
        }
        return j;
    }

    /// The instance over the encoded relation, with the rewrite offset.
    auto encoded_instance(const Json & enc, const VCSPInstance & inst) -> std::pair<RewrittenInstance, WeightedStructure>
    {
        auto structure = structure_from_json(enc.at("structure"));
        if (enc.contains("source")) {
            auto collapsed = collapse_to_single_relation(structure_from_json(enc["source"]));
            return {rewrite_instance(inst, collapsed), structure};
        }
        return {RewrittenInstance{inst, Rational{0}}, structure};
    }

    auto cmd_build(const Globals & g, const fs::path & structure_file) -> int
    {
        auto wA = structure_from_json(read_json(structure_file));
        auto j = encoding_file(wA);
        auto E = encoding_from_json(j);
        write_json(g.out / "encoding.json", j);
        write_text(g.out / "encoding.dot", to_dot(E));
        std::cout << "encoding: " << E.graph.graph.size() << " vertices, " << E.graph.graph.edge_count()
                  << " edges, height " << E.height() << (j["collapsed"].get<bool>() ? ", collapsed" : "") << "\n";
        return exit_pass;
    }

    auto cmd_reduce(const Globals & g, const std::string & fwd, const std::string & bwd, const fs::path & encoding)
        -> int
    {
        auto enc = read_json(encoding);
        auto E = encoding_from_json(enc);
        if (! fwd.empty()) {
            auto [rewritten, structure] = encoded_instance(enc, instance_from_json(read_json(fwd)));
            auto M = forward_reduce(rewritten.instance, structure, E, g.fault_kind());
            auto j = mch_to_json(M);
            j["offset"] = to_string(rewritten.offset);
            write_json(g.out / "mch.json", j);
            std::cout << "forward: " << M.graph.size() << " vertices, " << M.W.size() << " weighted\n";
        }
        else {
            auto M = mch_from_json(read_json(bwd));
            auto result = backward_reduce(M, E, g.fault_kind());
            auto j = backward_to_json(result);
            write_json(g.out / "reduced.json", j);
            std::cout << "backward: " << j["result"].get<std::string>() << "\n";
        }
        return exit_pass;
    }

    auto cmd_solve(const Globals & g, const std::string & vcsp, const std::string & mch, const fs::path & other)
        -> int
    {
        Json j;
        if (! vcsp.empty()) {
            auto wA = structure_from_json(read_json(other));
            auto inst = instance_from_json(read_json(vcsp));
            auto r = brute_force_vcsp(inst, wA, g.search_budget());
            j["cost"] = r.cost.str();
            if (r.assignment) {
                Json a = Json::object();
                for (std::size_t v = 0; v < inst.variables.size(); ++v)
                    a[inst.variables[v]] = wA.domain()[(*r.assignment)[v]];
                j["assignment"] = a;
            }
        }
        else {
            auto E = encoding_from_json(read_json(other));
            auto M = mch_from_json(read_json(mch));
            auto r = brute_force_mch(M.graph, M.W, E.graph.graph, E.u, g.search_budget());
            j["cost"] = r.cost.str();
            if (r.hom) {
                Json h = Json::object();
                for (int v = 0; v < M.graph.size(); ++v)
                    h[M.graph.label(v)] = E.graph.graph.label((*r.hom)[v]);
                j["hom"] = h;
            }
        }
        write_json(g.out / "solution.json", j);
        std::cout << j.dump() << "\n";
        return exit_pass;
    }

    auto cmd_verify(const Globals & g, const std::string & direction, int count, int threads) -> int
    {
        CorpusConfig config{g.seed, count, g.search_budget(), g.fault_kind(), threads};
        auto report = direction == "fwd" ? verify_forward_corpus(config) : verify_backward_corpus(config);
        std::string lines;
        for (auto & r : report.records)
            lines += record_line(r) + "\n";
        write_text(g.out / ("report-" + direction + ".jsonl"), lines);
        for (auto & [id, text] : report.counterexamples)
            write_text(g.out / ("counterexample-" + direction + "-" + std::to_string(id) + ".json"), text + "\n");

        int failures = report.failures(), budget = report.budget_hits();
        std::cout << direction << ": " << report.records.size() - failures - budget << " pass, " << failures
                  << " fail, " << budget << " over budget\n";
        if (budget > 0)
            std::cerr << "BudgetExceeded on " << budget << " instance(s)\n";
        return failures == 0 && budget == 0 ? exit_pass : exit_fail;
    }

    auto unary_report(const std::vector<Operation> & unary, const Domain & domain) -> std::string
    {
        if (is_rigid_core(unary))
            return "rigid core";
        std::string out = is_core(unary) ? "core, not rigid" : "not a core";
        for (auto & f : unary)
            if (! f.is_identity()) {
                out += "; witness";
                for (std::size_t x = 0; x < domain.size(); ++x)
                    out += " " + domain[x] + "->" + domain[f.unary_table()[x]];
                break;
            }
        return out;
    }

    auto cmd_algebra(const Globals & g, const std::vector<std::string> & check, const std::vector<std::string> & extend,
        const std::string & core) -> int
    {
        if (! core.empty()) {
            auto wA = structure_from_json(read_json(core));
            std::cout << unary_report(unary_polymorphisms(wA), wA.domain()) << "\n";
            return exit_pass;
        }
        if (! check.empty()) {
            auto wA = structure_from_json(read_json(check[1]));
            auto wos = wos_from_json(read_json(check[0]), wA.domain());
            if (auto bad = check_weight_conditions(wos, static_cast<int>(wA.domain().size()))) {
                std::cout << "fail: " << bad->what << "\n";
                return exit_fail;
            }
            for (auto & [name, rho] : wA.relations())
                if (auto bad = is_weighted_polymorphism(wos, rho)) {
                    std::cout << "fail on " << name << ": " << bad->what;
                    for (auto & t : bad->arguments)
                        std::cout << " " << tuple_label(wA.domain(), t);
                    std::cout << "\n";
                    return exit_fail;
                }
            std::cout << "pass: weighted polymorphism of every relation\n";
            return exit_pass;
        }

        auto enc = read_json(extend[1]);
        auto E = encoding_from_json(enc);
        auto wos = wos_from_json(read_json(extend[0]), E.rho.domain());
        try {
            auto report = transfer_weighted_polymorphism(wos, E, build_vertex_order(E));
            write_json(g.out / "transferred.json", wos_to_json(report.result, E.graph.graph.labels()));
            Json summary = {{"verified", true}, {"preserved", report.preserved}};
            write_json(g.out / "transfer-report.json", summary);
            std::cout << "pass: transferred set verified";
            for (auto & p : report.preserved)
                std::cout << ", " << p << " kept";
            std::cout << "\n";
            return exit_pass;
        }
        catch (const TransferVerificationFailed & e) {
            write_json(g.out / "transfer-report.json", {{"verified", false}, {"reason", e.what()}});
            std::cout << "fail: " << e.what() << "\n";
            return exit_fail;
        }
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{"Encodes valued CSPs as minimum cost homomorphism problems and checks the reductions."};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Seed for generated corpora");
    app.add_option("--budget", g.budget, "Search node limit for the exhaustive solvers")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Output directory");
    app.add_option("--fault-inject", g.fault, "Break a reduction on purpose (testing only)")
        ->check(CLI::IsMember({"none", "drop-gadget-edge", "drop-weighted"}));

    fs::path structure_file;
    auto * build = app.add_subcommand("build", "Build the digraph encoding of a structure");
    build->add_option("structure", structure_file, "Structure JSON")->required()->check(CLI::ExistingFile);

    std::string fwd, bwd;
    fs::path encoding;
    auto * reduce = app.add_subcommand("reduce", "Run the forward or backward reduction");
    auto * fwd_opt = reduce->add_option("--fwd", fwd, "VCSP instance JSON")->check(CLI::ExistingFile);
    auto * bwd_opt = reduce->add_option("--bwd", bwd, "MCH instance JSON")->check(CLI::ExistingFile);
    fwd_opt->excludes(bwd_opt);
    reduce->add_option("encoding", encoding, "Encoding JSON from build")->required()->check(CLI::ExistingFile);

    std::string vcsp, mch;
    fs::path other;
    auto * solve = app.add_subcommand("solve", "Solve an instance exhaustively");
    auto * vcsp_opt = solve->add_option("--vcsp", vcsp, "VCSP instance JSON")->check(CLI::ExistingFile);
    auto * mch_opt = solve->add_option("--mch", mch, "MCH instance JSON")->check(CLI::ExistingFile);
    vcsp_opt->excludes(mch_opt);
    solve->add_option("context", other, "Structure JSON (--vcsp) or encoding JSON (--mch)")
        ->required()
        ->check(CLI::ExistingFile);

    std::string direction;
    int count = 100, threads = 0;
    auto * verify = app.add_subcommand("verify", "Check a seeded random corpus against the oracles");
    verify->add_option("--roundtrip", direction, "fwd or bwd")->required()->check(CLI::IsMember({"fwd", "bwd"}));
    verify->add_option("--count", count, "Corpus size")->check(CLI::PositiveNumber);
    verify->add_option("--threads", threads, "Worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);

    std::vector<std::string> check_wpol, extend;
    std::string core;
    auto * algebra = app.add_subcommand("algebra", "Weighted polymorphism checks and transfer");
    auto * c1 = algebra->add_option("--check-wpol", check_wpol, "wos.json structure.json")->expected(2);
    auto * c2 = algebra->add_option("--extend", extend, "wos.json encoding.json")->expected(2);
    auto * c3 = algebra->add_option("--core", core, "structure.json")->check(CLI::ExistingFile);
    c1->excludes(c2)->excludes(c3);
    c2->excludes(c3);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        if (build->parsed())
            return cmd_build(g, structure_file);
        if (reduce->parsed()) {
            if (fwd.empty() == bwd.empty())
                throw CLI::RequiredError{"exactly one of --fwd and --bwd"};
            return cmd_reduce(g, fwd, bwd, encoding);
        }
        if (solve->parsed()) {
            if (vcsp.empty() == mch.empty())
                throw CLI::RequiredError{"exactly one of --vcsp and --mch"};
            return cmd_solve(g, vcsp, mch, other);
        }
        if (verify->parsed())
            return cmd_verify(g, direction, count, threads);
        if (check_wpol.empty() && extend.empty() && core.empty())
            throw CLI::RequiredError{"one of --check-wpol, --extend, --core"};
        return cmd_algebra(g, check_wpol, extend, core);
    }
    catch (const CLI::Error & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const ParseError & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const StructuralError & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const BudgetExceeded & e) {
        std::cerr << "BudgetExceeded: " << e.what() << "\n";
        return exit_fail;
    }
    catch (const std::exception & e) {
        std::cerr << "failure: " << e.what() << "\n";
        return exit_fail;
    }
}
