#pragma once

#include "solvmat/prime_set.hpp"
#include "solvmat/rational.hpp"

namespace solvmat {

struct NonRepresentable : std::domain_error {
    explicit NonRepresentable(const std::string& what) : std::domain_error(what) {}
};

/// An element of Z[1/bP]: a rational whose denominator only involves primes
/// of the attached prime set. Such numbers are exactly those with a finite
/// base-bP expansion.
class PLocalNumber {
public:
    PLocalNumber(Rational value, PrimeSet primes);

    const Rational& value() const { return value_; }
    const PrimeSet& primes() const { return primes_; }

private:
    Rational value_;
    PrimeSet primes_;
};

/// Lowest/highest nonzero digit indices of the base-b expansion, and the
/// span <x>_b = 1 + max(|d_minus|, |d_plus|). Zero has span 0 and no indices.
struct DigitSpan {
    long d_minus = 0;
    long d_plus = 0;
    long span = 0;  // 0 iff x = 0
    bool is_zero() const { return span == 0; }
};

/// Digit indices of x in base b. Requires b >= 2 squarefree with all prime
/// factors in x's prime set. Indices are computed from |x|; d_minus is the
/// minimum per-prime valuation over the primes dividing b, d_plus the unique
/// k with b^k <= |x| < b^(k+1).
DigitSpan digit_span(const PLocalNumber& x, const Int& b);

/// Span in base bP = product of the full prime set.
inline long span(const PLocalNumber& x) { return digit_span(x, x.primes().product()).span; }

/// Fractional p-part: the unique y in [0,1) with denominator a power of p
/// and x - y an integer. Requires x in Z[1/p].
Rational padic_frac(const Rational& x, const Int& p);

}  // namespace solvmat
