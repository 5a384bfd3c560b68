#include "solvmat/rational.hpp"

namespace solvmat {

Rational parse_rational(const std::string& text) {
    auto bad = [&] { throw ParseError("malformed rational: '" + text + "'"); };
    if (text.empty()) bad();
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den <= 0) bad();
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rational();  // unreachable
}

std::string format_rational(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

Int real_floor(const Rational& x) {
    Int q = numerator(x) / denominator(x);
    // cpp_int division truncates towards zero; adjust for negative non-integers.
    if (x < 0 && q * denominator(x) != numerator(x)) --q;
    return q;
}

Rational real_frac(const Rational& x) { return x - Rational(real_floor(x)); }

std::optional<long> padic_valuation(const Rational& x, const Int& p) {
    if (x == 0) return std::nullopt;
    long v = 0;
    Int n = abs(numerator(x));
    if (n % p == 0) {
        while (n % p == 0) {
            n /= p;
            ++v;
        }
        return v;
    }
    Int d = denominator(x);
    while (d % p == 0) {
        d /= p;
        --v;
    }
    return v;
}

long ln_plus_padic_exponent(const Rational& x, const Int& p) {
    if (x == 0) throw ZeroArgument();
    long v = *padic_valuation(x, p);
    return v < 0 ? -v : 0;
}

Rational pow_rational(const Int& p, long e) {
    Int num = 1;
    for (long i = 0; i < (e < 0 ? -e : e); ++i) num *= p;
    return e >= 0 ? Rational(num) : Rational(Int(1), num);
}

}  // namespace solvmat
