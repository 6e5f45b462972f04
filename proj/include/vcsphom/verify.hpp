#ifndef VCSPHOM_VERIFY_HPP
#define VCSPHOM_VERIFY_HPP

#include <vcsphom/encoding.hpp>
#include <vcsphom/oracles.hpp>
#include <vcsphom/reductions.hpp>
#include <vcsphom/structure.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcsphom {

/// One checked (problem, reduced problem) pair. `status` is "pass", "fail"
/// or "budget" when an oracle ran out of nodes.
struct EquivalenceRecord
{
    int id = 0;
    std::string status = "pass";
    Cost lhs;
    Cost rhs;
    Rational offset{0};
    std::string note;
};

/// Single JSON object on one line, keys in a fixed order.
auto record_line(const EquivalenceRecord & rec) -> std::string;

/// Optimum of the VCSP side: forward checks compare it with the MCH side,
/// backward checks add the offset.
auto check_forward(const VCSPInstance & inst, const WeightedStructure & wA, const EncodedDigraph & E,
        const SearchBudget & budget = {}, Fault fault = Fault::None, bool cost_sets = false) -> EquivalenceRecord;

auto check_backward(const MinCostHomInstance & M, const EncodedDigraph & E, const SearchBudget & budget = {},
        Fault fault = Fault::None, bool cost_sets = false) -> EquivalenceRecord;

/// Distinct finite costs of all assignments, or of all homomorphisms.
auto vcsp_cost_set(const VCSPInstance & inst, const WeightedStructure & wA, const SearchBudget & budget = {})
    -> std::set<Rational>;
auto mch_cost_set(const MinCostHomInstance & M, const EncodedDigraph & E, const SearchBudget & budget = {})
    -> std::set<Rational>;

/// Greedy single-element deletion until no deletion keeps the failure.
auto shrink_forward(VCSPInstance inst, const WeightedStructure & wA, const EncodedDigraph & E,
        const SearchBudget & budget = {}, Fault fault = Fault::None) -> VCSPInstance;
auto shrink_backward(MinCostHomInstance M, const EncodedDigraph & E, const SearchBudget & budget = {},
        Fault fault = Fault::None) -> MinCostHomInstance;

class EquivalenceViolation : public std::runtime_error {
public:
    EquivalenceViolation(EquivalenceRecord record, std::string counterexample);

    EquivalenceRecord record;
    /// JSON of the shrunk input.
    std::string counterexample;
};

/// check_forward / check_backward that throw EquivalenceViolation, with a
/// shrunk counterexample, instead of returning a failing record.
auto verify_forward_pair(const VCSPInstance & inst, const WeightedStructure & wA, const EncodedDigraph & E,
        const SearchBudget & budget = {}, Fault fault = Fault::None) -> EquivalenceRecord;
auto verify_backward_pair(const MinCostHomInstance & M, const EncodedDigraph & E, const SearchBudget & budget = {},
        Fault fault = Fault::None) -> EquivalenceRecord;

struct CorpusConfig
{
    std::uint64_t seed = 1;
    int count = 100;
    SearchBudget budget;
    Fault fault = Fault::None;
    int threads = 0;
};

struct CorpusReport
{
    std::vector<EquivalenceRecord> records;
    /// Counterexample JSON per failing record id, already shrunk.
    std::map<int, std::string> counterexamples;

    auto failures() const -> int;
    auto budget_hits() const -> int;
};

/// Seeded random single-relation languages and instances.
auto verify_forward_corpus(const CorpusConfig & config) -> CorpusReport;
/// Seeded random MCH instances over encodings of seeded random relations.
auto verify_backward_corpus(const CorpusConfig & config) -> CorpusReport;

/// The relation corpus shared by the size, rigidity and backward checks.
auto relation_corpus(std::uint64_t seed, int count) -> std::vector<WeightedRelation>;

/// Inclusion-minimal index sets S with H -> Q_S, found by exhaustive
/// homomorphism search over all 2^n subsets.
auto brute_force_minimal_sets(const Digraph & H, int n, const SearchBudget & budget = {})
    -> std::vector<IndexSet>;

} // namespace vcsphom

#endif
