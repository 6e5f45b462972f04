#ifndef VCSPHOM_COST_HPP
#define VCSPHOM_COST_HPP

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vcsphom {

/// Signed exact rational. Weighted polymorphisms need negative weights;
/// everything else goes through Cost.
using Rational = boost::rational<std::int64_t>;

/// Raised for malformed inputs: unknown relations, arity mismatches,
/// bad weight literals. Distinct from an infinite cost.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p" (optionally signed). Throws StructuralError.
auto parse_rational(std::string_view text) -> Rational;

/// "p" when the denominator is 1, else "p/q".
auto to_string(const Rational & r) -> std::string;

/**
 * Non-negative rational extended with +infinity.
 *
 * Finite values are always canonical (boost::rational normalises) and
 * non-negative. Every finite value compares below infinity.
 */
class Cost {
public:
    Cost() = default;
    Cost(std::int64_t v) : Cost(Rational{v}) {}
    explicit Cost(const Rational & v);

    static auto infinite() -> Cost;
    static auto zero() -> Cost { return Cost{}; }

    auto is_infinite() const -> bool { return _infinite; }
    auto is_finite() const -> bool { return ! _infinite; }

    /// Precondition: is_finite().
    auto value() const -> const Rational &;

    auto operator+=(const Cost & other) -> Cost &;
    friend auto operator+(Cost a, const Cost & b) -> Cost { return a += b; }

    /// Scaling by a non-negative weight. Infinity stays infinite even for
    /// weight 0: a zero-weighted constraint still enforces feasibility.
    friend auto operator*(const Rational & w, const Cost & c) -> Cost;

    friend auto operator==(const Cost & a, const Cost & b) -> bool;
    friend auto operator<=>(const Cost & a, const Cost & b) -> std::strong_ordering;

    /// "inf", "p" or "p/q".
    auto str() const -> std::string;

    /// Inverse of str(); accepts "inf" only when allow_infinite is set.
    static auto parse(std::string_view text, bool allow_infinite = false) -> Cost;

private:
    Rational _value{0};
    bool _infinite = false;
};

auto operator<<(std::ostream & s, const Cost & c) -> std::ostream &;

} // namespace vcsphom

#endif
