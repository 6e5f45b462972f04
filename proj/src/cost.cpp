#include <vcsphom/cost.hpp>

#include <charconv>

namespace vcsphom {

namespace
{
    auto parse_int(std::string_view text, std::string_view whole) -> std::int64_t
    {
        std::int64_t v = 0;
        auto first = text.data(), last = text.data() + text.size();
        if (! text.empty() && text.front() == '+')
            ++first;
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc{} || ptr != last || first == last)
            throw StructuralError{"bad rational literal '" + std::string{whole} + "'"};
        return v;
    }
}

auto parse_rational(std::string_view text) -> Rational
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational{parse_int(text, text)};
    auto num = parse_int(text.substr(0, slash), text);
    auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0)
        throw StructuralError{"zero denominator in '" + std::string{text} + "'"};
    return Rational{num, den};
}

auto to_string(const Rational & r) -> std::string
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Cost::Cost(const Rational & v) : _value(v)
{
    if (v < 0)
        throw StructuralError{"negative cost " + to_string(v)};
}

auto Cost::infinite() -> Cost
{
    Cost c;
    c._infinite = true;
    return c;
}

auto Cost::value() const -> const Rational &
{
    if (_infinite)
        throw std::logic_error{"value() of infinite cost"};
    return _value;
}

auto Cost::operator+=(const Cost & other) -> Cost &
{
    if (_infinite || other._infinite) {
        _infinite = true;
        _value = 0;
    }
    else
        _value += other._value;
    return *this;
}

auto operator*(const Rational & w, const Cost & c) -> Cost
{
    if (w < 0)
        throw StructuralError{"negative scale factor " + to_string(w)};
    if (c._infinite)
        return c;
    return Cost{w * c._value};
}

auto operator==(const Cost & a, const Cost & b) -> bool
{
    if (a._infinite || b._infinite)
        return a._infinite == b._infinite;
    return a._value == b._value;
}

auto operator<=>(const Cost & a, const Cost & b) -> std::strong_ordering
{
    if (a._infinite || b._infinite)
        return a._infinite <=> b._infinite;
    if (a._value < b._value)
        return std::strong_ordering::less;
    if (b._value < a._value)
        return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

auto Cost::str() const -> std::string
{
    return _infinite ? std::string{"inf"} : to_string(_value);
}

auto Cost::parse(std::string_view text, bool allow_infinite) -> Cost
{
    if (text == "inf") {
        if (! allow_infinite)
            throw StructuralError{"'inf' is not a legal weight here"};
        return infinite();
    }
    return Cost{parse_rational(text)};
}

auto operator<<(std::ostream & s, const Cost & c) -> std::ostream &
{
    return s << c.str();
}

} // namespace vcsphom
