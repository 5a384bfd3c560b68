#include "solvmat/fg.hpp"

namespace solvmat {

namespace {

// Strips all powers of p from x by repeated exact division, returning the
// signed exponent. x must be nonzero.
long strip_prime(Rational& x, const Int& p) {
    long e = 0;
    Int num = boost::multiprecision::numerator(x);
    Int den = boost::multiprecision::denominator(x);
    while (num % p == 0) {
        num /= p;
        ++e;
    }
    while (den % p == 0) {
        den /= p;
        --e;
    }
    x = Rational(num, den);
    return e;
}

}  // namespace

FGElement::FGElement(TriangularMatrix m, PrimeSet P)
    : matrix_(std::move(m)), primes_(std::move(P)) {
    const int n = matrix_.n();
    const std::size_t k = primes_.size();
    exponents_.assign(static_cast<std::size_t>(n) * n, std::vector<long>(k, 0));
    residues_.assign(static_cast<std::size_t>(n) * n, Int(0));

    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const Rational& entry = matrix_.at(i, j);
            if (entry == 0) continue;
            Rational rest = entry;
            for (std::size_t r = 0; r < k; ++r)
                exponents_[index(i, j)][r] = strip_prime(rest, primes_[r]);
            if (boost::multiprecision::denominator(rest) != 1)
                throw NotMember(i, j, "denominator has a prime factor outside the prime set: " +
                                          format_rational(entry));
            Int residue = boost::multiprecision::numerator(rest);
            if (i == j && residue != 1)
                throw NotMember(i, j, "diagonal entry is not a pure positive power of the prime "
                                      "set: " + format_rational(entry));
            residues_[index(i, j)] = std::move(residue);
        }
    }
}

FGElement fg_certify(const TriangularMatrix& m, const PrimeSet& P) { return FGElement(m, P); }

}  // namespace solvmat
