#ifndef VCSPHOM_IO_HPP
#define VCSPHOM_IO_HPP

#include <vcsphom/algebra.hpp>
#include <vcsphom/encoding.hpp>
#include <vcsphom/reductions.hpp>
#include <vcsphom/structure.hpp>

#include <json.hpp>

#include <filesystem>
#include <string>

namespace vcsphom {

using Json = nlohmann::ordered_json;

/// Malformed file contents; the message names the offending field.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

auto read_json(const std::filesystem::path & file) -> Json;
/// Two-space indented, trailing newline.
void write_json(const std::filesystem::path & file, const Json & j);
void write_text(const std::filesystem::path & file, const std::string & text);

auto structure_to_json(const WeightedStructure & wA) -> Json;
auto structure_from_json(const Json & j) -> WeightedStructure;

/// { "variables": [...], "constraints": [ { "relation", "scope": [variable names], "weight" } ] }
auto instance_to_json(const VCSPInstance & inst) -> Json;
auto instance_from_json(const Json & j) -> VCSPInstance;

auto digraph_to_json(const Digraph & g) -> Json;
auto digraph_from_json(const Json & j) -> Digraph;

auto mch_to_json(const MinCostHomInstance & M) -> Json;
auto mch_from_json(const Json & j) -> MinCostHomInstance;

/// Graph, levels, roles and u, plus the relation it was built from.
auto encoding_to_json(const EncodedDigraph & E) -> Json;
/// Rebuilds from the stored relation and checks the stored graph matches.
auto encoding_from_json(const Json & j) -> EncodedDigraph;

auto backward_to_json(const BackwardResult & result) -> Json;

/// { "arity": k, "table": { "x1,...,xk": "y" } } with domain labels.
auto operation_to_json(const Operation & f, const Domain & domain) -> Json;
auto operation_from_json(const Json & j, const Domain & domain) -> Operation;
/// { "arity", "operations": [...], "weights": { index: "p/q" } }
auto wos_to_json(const WeightedOperationSet & wos, const Domain & domain) -> Json;
auto wos_from_json(const Json & j, const Domain & domain) -> WeightedOperationSet;

/// Levels as ranks with level 0 at the bottom.
auto to_dot(const LeveledDigraph & g, const std::string & name = "G") -> std::string;
/// Base and tuple vertices filled, u printed where it is nonzero.
auto to_dot(const EncodedDigraph & E) -> std::string;

} // namespace vcsphom

#endif
