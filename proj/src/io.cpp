#include <vcsphom/io.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace vcsphom {

namespace
{
    auto field(const Json & j, const char * key, const std::string & where) -> const Json &
    {
        if (! j.is_object() || ! j.contains(key))
            throw ParseError{where + ": missing field '" + key + "'"};
        return j.at(key);
    }

    auto rational_field(const Json & j, const std::string & where) -> Rational
    {
        if (j.is_number_integer())
            return Rational{j.get<std::int64_t>()};
        if (! j.is_string())
            throw ParseError{where + ": expected a \"p/q\" string"};
        try {
            return parse_rational(j.get<std::string>());
        }
        catch (const StructuralError & e) {
            throw ParseError{where + ": " + e.what()};
        }
    }

    auto label_index(const Domain & domain, const std::string & label, const std::string & where) -> int
    {
        for (std::size_t i = 0; i < domain.size(); ++i)
            if (domain[i] == label)
                return static_cast<int>(i);
        throw ParseError{where + ": unknown label '" + label + "'"};
    }

    auto quoted(const std::string & s) -> std::string
    {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\')
                out += '\\';
            out += c;
        }
        return out + "\"";
    }

    auto role_name(RoleKind k) -> const char *
    {
        switch (k) {
        case RoleKind::Base: return "base";
        case RoleKind::Tuple: return "tuple";
        case RoleKind::Path: return "path";
        }
        return "?";
    }
}

auto read_json(const std::filesystem::path & file) -> Json
{
    std::ifstream in{file};
    if (! in)
        throw ParseError{"cannot open " + file.string()};
    try {
        return Json::parse(in);
    }
    catch (const nlohmann::json::parse_error & e) {
        throw ParseError{file.string() + ": " + e.what()};
    }
}

void write_json(const std::filesystem::path & file, const Json & j)
{
    write_text(file, j.dump(2) + "\n");
}

void write_text(const std::filesystem::path & file, const std::string & text)
{
    if (file.has_parent_path())
        std::filesystem::create_directories(file.parent_path());
    std::ofstream out{file, std::ios::binary};
    if (! out)
        throw std::runtime_error{"cannot write " + file.string()};
    out << text;
}

auto structure_to_json(const WeightedStructure & wA) -> Json
{
    Json j;
    j["domain"] = wA.domain();
    j["relations"] = Json::object();
    for (auto & [name, rho] : wA.relations()) {
        Json entries = Json::array();
        for (auto & [t, w] : rho.entries()) {
            Json tuple = Json::array();
            for (int x : t)
                tuple.push_back(wA.domain()[x]);
            entries.push_back({{"tuple", tuple}, {"weight", to_string(w)}});
        }
        j["relations"][name] = {{"arity", rho.arity()}, {"entries", entries}};
    }
    return j;
}

auto structure_from_json(const Json & j) -> WeightedStructure
{
    auto & dom = field(j, "domain", "structure");
    if (! dom.is_array())
        throw ParseError{"structure.domain: expected an array of strings"};
    Domain domain;
    for (auto & d : dom) {
        if (! d.is_string())
            throw ParseError{"structure.domain: expected an array of strings"};
        domain.push_back(d.get<std::string>());
    }
    auto & rels = field(j, "relations", "structure");
    if (! rels.is_object())
        throw ParseError{"structure.relations: expected an object"};

    std::vector<NamedRelation> relations;
    for (auto & [name, body] : rels.items()) {
        std::string where = "structure.relations." + name;
        auto & arity_j = field(body, "arity", where);
        if (! arity_j.is_number_integer())
            throw ParseError{where + ".arity: expected an integer"};
        int arity = arity_j.get<int>();
        std::map<Tuple, Rational> entries;
        auto & list = field(body, "entries", where);
        if (! list.is_array())
            throw ParseError{where + ".entries: expected an array"};
        for (std::size_t k = 0; k < list.size(); ++k) {
            std::string at = where + ".entries[" + std::to_string(k) + "]";
            auto & tj = field(list[k], "tuple", at);
            if (! tj.is_array())
                throw ParseError{at + ".tuple: expected an array"};
            Tuple t;
            for (auto & x : tj) {
                if (! x.is_string())
                    throw ParseError{at + ".tuple: expected domain labels"};
                t.push_back(label_index(domain, x.get<std::string>(), at + ".tuple"));
            }
            auto & wj = field(list[k], "weight", at);
            if (wj.is_string() && wj.get<std::string>() == "inf")
                throw ParseError{at + ".weight: 'inf' is not allowed inside a relation"};
            if (! entries.emplace(t, rational_field(wj, at + ".weight")).second)
                throw ParseError{at + ": duplicate tuple"};
        }
        try {
            relations.push_back({name, WeightedRelation{domain, arity, entries}});
        }
        catch (const StructuralError & e) {
            throw ParseError{where + ": " + e.what()};
        }
    }
    try {
        return WeightedStructure{domain, relations};
    }
    catch (const StructuralError & e) {
        throw ParseError{std::string{"structure: "} + e.what()};
    }
}

auto instance_to_json(const VCSPInstance & inst) -> Json
{
    Json cons = Json::array();
    for (auto & c : inst.constraints) {
        Json scope = Json::array();
        for (int v : c.scope)
            scope.push_back(inst.variables.at(v));
        cons.push_back({{"relation", c.relation}, {"scope", scope}, {"weight", to_string(c.weight)}});
    }
    return {{"variables", inst.variables}, {"constraints", cons}};
}

auto instance_from_json(const Json & j) -> VCSPInstance
{
    VCSPInstance inst;
    auto & vars = field(j, "variables", "instance");
    if (! vars.is_array())
        throw ParseError{"instance.variables: expected an array"};
    for (auto & v : vars) {
        if (! v.is_string())
            throw ParseError{"instance.variables: expected strings"};
        inst.variables.push_back(v.get<std::string>());
    }
    auto & cons = field(j, "constraints", "instance");
    if (! cons.is_array())
        throw ParseError{"instance.constraints: expected an array"};
    for (std::size_t k = 0; k < cons.size(); ++k) {
        std::string at = "instance.constraints[" + std::to_string(k) + "]";
        Constraint c;
        auto & rel = field(cons[k], "relation", at);
        if (! rel.is_string())
            throw ParseError{at + ".relation: expected a name"};
        c.relation = rel.get<std::string>();
        auto & scope = field(cons[k], "scope", at);
        if (! scope.is_array())
            throw ParseError{at + ".scope: expected an array"};
        for (auto & s : scope) {
            if (! s.is_string())
                throw ParseError{at + ".scope: expected variable names"};
            c.scope.push_back(label_index(inst.variables, s.get<std::string>(), at + ".scope"));
        }
        c.weight = cons[k].contains("weight") ? rational_field(cons[k]["weight"], at + ".weight") : Rational{1};
        inst.constraints.push_back(std::move(c));
    }
    return inst;
}

auto digraph_to_json(const Digraph & g) -> Json
{
    Json edges = Json::array();
    for (auto & [a, b] : g.edges())
        edges.push_back({g.label(a), g.label(b)});
    return {{"vertices", g.labels()}, {"edges", edges}};
}

auto digraph_from_json(const Json & j) -> Digraph
{
    Digraph g;
    auto & verts = field(j, "vertices", "graph");
    if (! verts.is_array())
        throw ParseError{"graph.vertices: expected an array"};
    for (auto & v : verts) {
        if (! v.is_string())
            throw ParseError{"graph.vertices: expected strings"};
        if (g.index(v.get<std::string>()))
            throw ParseError{"graph.vertices: duplicate label '" + v.get<std::string>() + "'"};
        g.add_vertex(v.get<std::string>());
    }
    auto & edges = field(j, "edges", "graph");
    if (! edges.is_array())
        throw ParseError{"graph.edges: expected an array"};
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto & e = edges[k];
        std::string at = "graph.edges[" + std::to_string(k) + "]";
        if (! e.is_array() || e.size() != 2 || ! e[0].is_string() || ! e[1].is_string())
            throw ParseError{at + ": expected a pair of labels"};
        auto a = g.index(e[0].get<std::string>()), b = g.index(e[1].get<std::string>());
        if (! a || ! b)
            throw ParseError{at + ": unknown vertex"};
        g.add_edge(*a, *b);
    }
    return g;
}

auto mch_to_json(const MinCostHomInstance & M) -> Json
{
    Json w = Json::object();
    for (auto & [v, x] : M.W)
        w[M.graph.label(v)] = to_string(x);
    return {{"graph", digraph_to_json(M.graph)}, {"W", w}};
}

auto mch_from_json(const Json & j) -> MinCostHomInstance
{
    MinCostHomInstance M;
    M.graph = digraph_from_json(field(j, "graph", "mch"));
    if (j.contains("W")) {
        if (! j["W"].is_object())
            throw ParseError{"mch.W: expected an object"};
        for (auto & [label, w] : j["W"].items()) {
            auto v = M.graph.index(label);
            if (! v)
                throw ParseError{"mch.W: unknown vertex '" + label + "'"};
            auto x = rational_field(w, "mch.W." + label);
            if (x < 0)
                throw ParseError{"mch.W." + label + ": negative weight"};
            M.W[*v] = x;
        }
    }
    return M;
}

auto encoding_to_json(const EncodedDigraph & E) -> Json
{
    auto & g = E.graph.graph;
    Json roles = Json::object();
    Json u = Json::object();
    Json levels = Json::object();
    for (int v = 0; v < g.size(); ++v) {
        auto & r = E.roles[v];
        Json role = {{"kind", role_name(r.kind)}};
        if (r.d >= 0)
            role["d"] = E.rho.domain()[r.d];
        if (r.r >= 0)
            role["r"] = tuple_label(E.rho.domain(), E.tuples[r.r]);
        if (r.kind == RoleKind::Path) {
            role["block"] = r.block;
            role["position"] = r.position;
        }
        roles[g.label(v)] = role;
        levels[g.label(v)] = E.graph.level[v];
        if (E.u[v] != Rational{0})
            u[g.label(v)] = to_string(E.u[v]);
    }
    WeightedStructure wA{E.rho.domain(), {{"rho", E.rho}}};
    return {{"n", E.n},
        {"structure", structure_to_json(wA)},
        {"height", E.height()},
        {"graph", digraph_to_json(g)},
        {"levels", levels},
        {"roles", roles},
        {"u", u}};
}

auto encoding_from_json(const Json & j) -> EncodedDigraph
{
    auto wA = structure_from_json(field(j, "structure", "encoding"));
    if (wA.relations().size() != 1)
        throw ParseError{"encoding.structure: expected a single relation"};
    auto E = build_encoding(wA.relations().front().relation);
    if (j.contains("graph") && ! (digraph_from_json(j["graph"]) == E.graph.graph))
        throw ParseError{"encoding.graph: does not match the encoding of its relation"};
    return E;
}

auto backward_to_json(const BackwardResult & result) -> Json
{
    if (auto * no = std::get_if<FixedNo>(&result))
        return {{"result", "fixed-no"}, {"reason", no->reason}};
    if (auto * yes = std::get_if<FixedYes>(&result))
        return {{"result", "fixed-yes"}, {"offset", to_string(yes->offset)}};
    auto & r = std::get<ReducedVCSP>(result);
    Json classes = Json::object();
    for (std::size_t v = 0; v < r.classes.size(); ++v)
        classes[r.instance.variables[v]] = r.classes[v];
    return {{"result", "instance"},
        {"offset", to_string(r.offset)},
        {"structure", structure_to_json(r.structure)},
        {"instance", instance_to_json(r.instance)},
        {"classes", classes}};
}

auto operation_to_json(const Operation & f, const Domain & domain) -> Json
{
    Json table = Json::object();
    for (std::size_t i = 0; i < f.table().size(); ++i) {
        std::string key;
        for (int x : f.arguments(i))
            key += (key.empty() ? "" : ",") + domain[x];
        table[key] = domain[f.table()[i]];
    }
    return {{"arity", f.arity()}, {"table", table}};
}

auto operation_from_json(const Json & j, const Domain & domain) -> Operation
{
    auto & aj = field(j, "arity", "operation");
    if (! aj.is_number_integer() || aj.get<int>() < 1)
        throw ParseError{"operation.arity: expected a positive integer"};
    int arity = aj.get<int>();
    int size = static_cast<int>(domain.size());
    std::vector<int> table(table_size(arity, size), -1);
    Operation probe{arity, size, std::vector<int>(table.size(), 0)};
    auto & tj = field(j, "table", "operation");
    if (! tj.is_object())
        throw ParseError{"operation.table: expected an object"};
    for (auto & [key, value] : tj.items()) {
        std::vector<int> args;
        std::stringstream ss{key};
        std::string part;
        while (std::getline(ss, part, ','))
            args.push_back(label_index(domain, part, "operation.table"));
        if (static_cast<int>(args.size()) != arity || ! value.is_string())
            throw ParseError{"operation.table: bad entry '" + key + "'"};
        table[probe.index(args)] = label_index(domain, value.get<std::string>(), "operation.table");
    }
    for (int y : table)
        if (y < 0)
            throw ParseError{"operation.table: not total"};
    return Operation{arity, size, table};
}

auto wos_to_json(const WeightedOperationSet & wos, const Domain & domain) -> Json
{
    Json ops = Json::array();
    Json weights = Json::object();
    for (std::size_t i = 0; i < wos.operations.size(); ++i) {
        ops.push_back(operation_to_json(wos.operations[i], domain));
        weights[std::to_string(i)] = to_string(wos.weights.at(i));
    }
    int arity = wos.operations.empty() ? 0 : wos.operations.front().arity();
    return {{"arity", arity}, {"operations", ops}, {"weights", weights}};
}

auto wos_from_json(const Json & j, const Domain & domain) -> WeightedOperationSet
{
    WeightedOperationSet wos;
    auto & ops = field(j, "operations", "wos");
    if (! ops.is_array())
        throw ParseError{"wos.operations: expected an array"};
    for (auto & o : ops)
        wos.operations.push_back(operation_from_json(o, domain));
    auto & ws = field(j, "weights", "wos");
    wos.weights.assign(wos.operations.size(), Rational{0});
    for (auto & [key, w] : ws.items()) {
        std::size_t i;
        try {
            i = std::stoul(key);
        }
        catch (const std::exception &) {
            throw ParseError{"wos.weights: bad index '" + key + "'"};
        }
        if (i >= wos.operations.size())
            throw ParseError{"wos.weights: index out of range"};
        wos.weights[i] = rational_field(w, "wos.weights." + key);
    }
    return wos;
}

namespace
{
    auto dot_body(const LeveledDigraph & g, const std::function<std::string (int)> & attrs) -> std::string
    {
        std::ostringstream out;
        out << "  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
        std::vector<std::vector<int>> by_level(g.height + 1);
        for (int v = 0; v < g.graph.size(); ++v)
            by_level[g.level[v]].push_back(v);
        for (std::size_t l = 0; l < by_level.size(); ++l) {
            if (by_level[l].empty())
                continue;
            out << "  { rank=same;";
            for (int v : by_level[l])
                out << " " << quoted(g.graph.label(v)) << ";";
            out << " }\n";
        }
        for (int v = 0; v < g.graph.size(); ++v) {
            auto a = attrs(v);
            if (! a.empty())
                out << "  " << quoted(g.graph.label(v)) << " [" << a << "];\n";
        }
        for (auto & [a, b] : g.graph.edges())
            out << "  " << quoted(g.graph.label(a)) << " -> " << quoted(g.graph.label(b)) << ";\n";
        return out.str();
    }
}

auto to_dot(const LeveledDigraph & g, const std::string & name) -> std::string
{
    return "digraph " + quoted(name) + " {\n" + dot_body(g, [] (int) { return std::string{}; }) + "}\n";
}

auto to_dot(const EncodedDigraph & E) -> std::string
{
    auto attrs = [&] (int v) -> std::string {
        switch (E.roles[v].kind) {
        case RoleKind::Base:
            return "style=filled, fillcolor=gray75";
        case RoleKind::Tuple:
            if (E.u[v] == Rational{0})
                return "style=filled, fillcolor=gray75";
            return "style=filled, fillcolor=gray75, xlabel=" + quoted("u=" + to_string(E.u[v]));
        case RoleKind::Path:
            return "label=\"\", width=0.15";
        }
        return "";
    };
    return "digraph \"D\" {\n" + dot_body(E.graph, attrs) + "}\n";
}

} // namespace vcsphom
