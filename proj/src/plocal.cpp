#include "solvmat/plocal.hpp"

namespace solvmat {

PLocalNumber::PLocalNumber(Rational value, PrimeSet primes)
    : value_(std::move(value)), primes_(std::move(primes)) {
    Int den = denominator(value_);
    for (const Int& p : primes_.primes())
        while (den % p == 0) den /= p;
    if (den != 1)
        throw NonRepresentable("denominator of " + format_rational(value_) +
                               " has a prime factor outside the prime set");
}

namespace {

std::vector<Int> prime_factors_of_base(const Int& b, const PrimeSet& primes) {
    if (b < 2) throw NonRepresentable("base must be at least 2");
    Int rest = b;
    std::vector<Int> factors;
    for (const Int& p : primes.primes()) {
        if (rest % p == 0) {
            rest /= p;
            if (rest % p == 0)
                throw NonRepresentable("base " + b.str() + " is not squarefree");
            factors.push_back(p);
        }
    }
    if (rest != 1)
        throw NonRepresentable("base " + b.str() + " has a prime factor outside the prime set");
    return factors;
}

}  // namespace

DigitSpan digit_span(const PLocalNumber& x, const Int& b) {
    auto factors = prime_factors_of_base(b, x.primes());
    const Rational& v = x.value();
    {
        // The denominator must be representable in base b specifically.
        Int den = denominator(v);
        for (const Int& p : factors)
            while (den % p == 0) den /= p;
        if (den != 1)
            throw NonRepresentable("denominator of " + format_rational(v) +
                                   " has a prime factor not dividing base " + b.str());
    }
    if (v == 0) return DigitSpan{};

    DigitSpan out;
    bool first = true;
    for (const Int& p : factors) {
        long val = *padic_valuation(v, p);
        if (first || val < out.d_minus) out.d_minus = val;
        first = false;
    }

    // d_plus: exact comparison of |x| against powers of b, no floating logs.
    Rational mag = abs(v);
    long k = 0;
    Rational power = 1;
    if (mag >= 1) {
        while (power * b <= mag) {
            power *= b;
            ++k;
        }
    } else {
        while (power > mag) {
            power /= b;
            --k;
        }
    }
    out.d_plus = k;
    out.span = 1 + std::max(out.d_minus < 0 ? -out.d_minus : out.d_minus,
                            out.d_plus < 0 ? -out.d_plus : out.d_plus);
    return out;
}

Rational padic_frac(const Rational& x, const Int& p) {
    Int den = denominator(x);
    long k = 0;
    Int pk = 1;
    while (den % p == 0) {
        den /= p;
        pk *= p;
        ++k;
    }
    if (den != 1)
        throw NonRepresentable("value " + format_rational(x) + " is not in Z[1/" + p.str() + "]");
    if (k == 0) return Rational(0);
    Int a = numerator(x) % pk;  // x = a / p^k with a possibly negative
    if (a < 0) a += pk;
    return Rational(a, pk);
}

}  // namespace solvmat
