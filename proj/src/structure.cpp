#include <vcsphom/structure.hpp>

#include <algorithm>

namespace vcsphom {

auto tuple_label(const Domain & domain, const Tuple & t) -> std::string
{
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i)
            out += ",";
        out += domain.at(t[i]);
    }
    return out + ")";
}

WeightedRelation::WeightedRelation(Domain domain, int arity, std::map<Tuple, Rational> entries) :
    _domain(std::move(domain)),
    _arity(arity),
    _entries(std::move(entries))
{
    if (_arity < 1)
        throw StructuralError{"relation arity must be positive"};
    if (_entries.empty())
        throw StructuralError{"relation must contain at least one tuple"};
    for (auto & [t, w] : _entries) {
        if (static_cast<int>(t.size()) != _arity)
            throw StructuralError{"tuple of length " + std::to_string(t.size()) + " in relation of arity " + std::to_string(_arity)};
        for (int v : t)
            if (v < 0 || v >= static_cast<int>(_domain.size()))
                throw StructuralError{"tuple component outside the domain"};
        if (w < 0)
            throw StructuralError{"negative weight " + to_string(w) + " in relation"};
    }
}

auto WeightedRelation::cost(const Tuple & t) const -> Cost
{
    auto it = _entries.find(t);
    if (it == _entries.end())
        return Cost::infinite();
    return Cost{it->second};
}

auto WeightedRelation::zero_weighted() const -> WeightedRelation
{
    std::map<Tuple, Rational> zeros;
    for (auto & [t, w] : _entries)
        zeros.emplace(t, Rational{0});
    return WeightedRelation{_domain, _arity, std::move(zeros)};
}

auto feas(const WeightedRelation & rho) -> Relation
{
    Relation r;
    for (auto & [t, w] : rho.entries())
        r.insert(t);
    return r;
}

auto direct_product(const std::vector<WeightedRelation> & rhos) -> WeightedRelation
{
    if (rhos.empty())
        throw StructuralError{"direct product of an empty list"};
    for (auto & r : rhos)
        if (r.domain() != rhos.front().domain())
            throw StructuralError{"direct product of relations over different domains"};

    std::map<Tuple, Rational> acc{{Tuple{}, Rational{0}}};
    int arity = 0;
    for (auto & r : rhos) {
        std::map<Tuple, Rational> next;
        for (auto & [prefix, pw] : acc)
            for (auto & [t, w] : r.entries()) {
                Tuple joined = prefix;
                joined.insert(joined.end(), t.begin(), t.end());
                next.emplace(std::move(joined), pw + w);
            }
        acc = std::move(next);
        arity += r.arity();
    }
    return WeightedRelation{rhos.front().domain(), arity, std::move(acc)};
}

WeightedStructure::WeightedStructure(Domain domain, std::vector<NamedRelation> relations) :
    _domain(std::move(domain)),
    _relations(std::move(relations))
{
    if (_domain.empty())
        throw StructuralError{"empty domain"};
    std::set<std::string> labels(_domain.begin(), _domain.end());
    if (labels.size() != _domain.size())
        throw StructuralError{"duplicate domain label"};
    std::set<std::string> names;
    for (auto & r : _relations) {
        if (! names.insert(r.name).second)
            throw StructuralError{"duplicate relation name '" + r.name + "'"};
        if (r.relation.domain() != _domain)
            throw StructuralError{"relation '" + r.name + "' is over a different domain"};
    }
}

auto WeightedStructure::find(const std::string & name) const -> const WeightedRelation *
{
    for (auto & r : _relations)
        if (r.name == name)
            return &r.relation;
    return nullptr;
}

auto WeightedStructure::get(const std::string & name) const -> const WeightedRelation &
{
    if (auto r = find(name))
        return *r;
    throw StructuralError{"unknown relation '" + name + "'"};
}

auto WeightedStructure::domain_index(const std::string & label) const -> int
{
    auto it = std::find(_domain.begin(), _domain.end(), label);
    if (it == _domain.end())
        throw StructuralError{"unknown domain label '" + label + "'"};
    return static_cast<int>(it - _domain.begin());
}

void validate_instance(const VCSPInstance & inst, const WeightedStructure & wA)
{
    auto nvars = static_cast<int>(inst.variables.size());
    for (auto & c : inst.constraints) {
        auto & rel = wA.get(c.relation);
        if (static_cast<int>(c.scope.size()) != rel.arity())
            throw StructuralError{"constraint on '" + c.relation + "' has scope of length "
                + std::to_string(c.scope.size()) + ", arity is " + std::to_string(rel.arity())};
        for (int v : c.scope)
            if (v < 0 || v >= nvars)
                throw StructuralError{"constraint scope refers to unknown variable"};
        if (c.weight < 0)
            throw StructuralError{"negative constraint weight"};
    }
}

auto eval_instance(const VCSPInstance & inst, const WeightedStructure & wA, const Assignment & h) -> Cost
{
    validate_instance(inst, wA);
    if (h.size() != inst.variables.size())
        throw StructuralError{"assignment is not total"};
    for (int d : h)
        if (d < 0 || d >= static_cast<int>(wA.domain().size()))
            throw StructuralError{"assignment value outside the domain"};

    Cost total;
    Tuple image;
    for (auto & c : inst.constraints) {
        image.clear();
        for (int v : c.scope)
            image.push_back(h[v]);
        total += c.weight * wA.get(c.relation).cost(image);
    }
    return total;
}

auto collapse_to_single_relation(const WeightedStructure & wA) -> CollapsedStructure
{
    if (wA.relations().empty())
        throw StructuralError{"structure has no relations"};

    std::vector<ScopeBlock> blocks;
    int offset = 0;
    for (auto & [name, rel] : wA.relations()) {
        Rational lowest = rel.entries().begin()->second;
        for (auto & [t, w] : rel.entries())
            lowest = std::min(lowest, w);
        blocks.push_back(ScopeBlock{name, offset, rel.arity(), lowest});
        offset += rel.arity();
    }

    if (wA.relations().size() == 1)
        return CollapsedStructure{wA, std::move(blocks), false};

    std::vector<WeightedRelation> parts;
    std::string name;
    for (auto & r : wA.relations()) {
        parts.push_back(r.relation);
        name += (name.empty() ? "" : "*") + r.name;
    }
    WeightedStructure single{wA.domain(), {NamedRelation{name, direct_product(parts)}}};
    return CollapsedStructure{std::move(single), std::move(blocks), true};
}

auto rewrite_instance(const VCSPInstance & inst, const CollapsedStructure & collapsed) -> RewrittenInstance
{
    auto & [pname, product] = collapsed.structure.relations().front();
    if (! collapsed.collapsed)
        return RewrittenInstance{inst, Rational{0}};

    RewrittenInstance out;
    out.instance.variables = inst.variables;
    for (std::size_t ci = 0; ci < inst.constraints.size(); ++ci) {
        auto & c = inst.constraints[ci];
        auto block = std::find_if(collapsed.scope_map.begin(), collapsed.scope_map.end(),
                [&] (const ScopeBlock & b) { return b.name == c.relation; });
        if (block == collapsed.scope_map.end())
            throw StructuralError{"unknown relation '" + c.relation + "'"};
        if (static_cast<int>(c.scope.size()) != block->arity)
            throw StructuralError{"constraint on '" + c.relation + "' has the wrong arity"};

        Constraint rewritten{pname, {}, c.weight};
        for (auto & b : collapsed.scope_map) {
            if (&b == &*block) {
                rewritten.scope.insert(rewritten.scope.end(), c.scope.begin(), c.scope.end());
                continue;
            }
            for (int k = 0; k < b.arity; ++k) {
                rewritten.scope.push_back(static_cast<int>(out.instance.variables.size()));
                out.instance.variables.push_back("_pad" + std::to_string(ci) + "_" + b.name + "_" + std::to_string(k));
            }
            out.offset += c.weight * b.min_weight;
        }
        out.instance.constraints.push_back(std::move(rewritten));
    }
    return out;
}

} // namespace vcsphom
