#pragma once

#include "solvmat/fg.hpp"
#include "solvmat/semidirect.hpp"

#include <map>

namespace solvmat {

/// Entrywise word-length estimate: sum of |diagonal exponents| plus the
/// base-bP digit span of every off-diagonal entry.
long length_estimate(const FGElement& f);

/// Gauge on the semidirect form: sum |x_i| + sum of base-p spans of f_ij.
long sd_length_estimate(const SemiDirectElement& a);

/// p-adic operator norm of a matrix on (Q_p^n, sup norm): the max entry
/// norm, returned as its exact exponent e with norm = p^e.
long opnorm_padic_exponent(const TriangularMatrix& m, const Int& p);

/// Real spectral norm by power iteration on m^T m, with the max-norm
/// bracket [max|m_ij|, n * max|m_ij|] as a certificate.
struct RealNorm {
    double value = 0.0;
    bool converged = false;
    double lower = 0.0;  // max-norm bracket
    double upper = 0.0;
    int iterations = 0;
};
RealNorm opnorm_real(const TriangularMatrix& m, double tol = 1e-12);

/// Per-place breakdown of the adelic length: exact exponents at the primes
/// of P, numeric values at the real place. Places outside P provably
/// contribute nothing; foreign_checked records spot-checked primes.
struct LengthReport {
    long estimate_l = 0;
    struct PrimePart {
        long forward_exponent = 0;  // ln+||f||_p = exponent * ln p
        long inverse_exponent = 0;
    };
    std::map<Int, PrimePart> per_prime;
    double real_forward = 0.0;  // ln+||f||_inf
    double real_inverse = 0.0;
    double adelic = 0.0;  // total, numeric
    std::vector<Int> foreign_checked;  // primes outside P verified to vanish

    double padic_part() const;
};

/// Adelic length of f: sum over p in P and the real place of
/// ln+||f||_p + ln+||f^{-1}||_p, plus a vanishing check at foreign primes.
LengthReport adelic_length(const FGElement& f, int foreign_samples = 20, double tol = 1e-12);

/// The explicit equivalence constants assembled from the estimates'
/// derivations: (1/J) l(f) <= |f| <= J l(f) and
/// Q + R l^a(f) <= |f| <= S + T l^a(f). Q is non-positive (both bounds must
/// hold at the identity); all others are positive.
struct SandwichConstants {
    double J = 0.0;
    Int A_n = 0;  // constructive factorization constant 6^(n-1)(k+1)^(n-1)
    double Q = 0.0;
    double R = 0.0;
    double S = 0.0;
    double T = 0.0;
};
SandwichConstants sandwich_constants(int n, const PrimeSet& P);

}  // namespace solvmat
