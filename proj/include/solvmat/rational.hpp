#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace solvmat {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown by operations whose preconditions exclude zero.
struct ZeroArgument : std::domain_error {
    ZeroArgument() : std::domain_error("operation undefined for zero argument") {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "num/den" or "num" (decimal, optional leading '-').
Rational parse_rational(const std::string& text);

/// Canonical form: "num/den", or just "num" when den = 1.
std::string format_rational(const Rational& x);

/// Exact floor (towards minus infinity, not truncation).
Int real_floor(const Rational& x);

/// Fractional part in [0, 1): x - real_floor(x).
Rational real_frac(const Rational& x);

/// v_p(x) for x != 0; nullopt encodes v_p(0) = +infinity.
std::optional<long> padic_valuation(const Rational& x, const Int& p);

/// Exponent e = max(0, -v_p(x)), so that ln+|x|_p = e * ln(p). Throws ZeroArgument on x = 0.
long ln_plus_padic_exponent(const Rational& x, const Int& p);

/// p^e for integer e of either sign.
Rational pow_rational(const Int& p, long e);

}  // namespace solvmat
