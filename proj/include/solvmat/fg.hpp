#pragma once

#include "solvmat/matrix.hpp"
#include "solvmat/prime_set.hpp"

#include <vector>

namespace solvmat {

/// Raised when a matrix fails membership certification; carries the
/// offending entry and a human-readable reason.
struct NotMember : std::runtime_error {
    NotMember(int i, int j, const std::string& reason)
        : std::runtime_error("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             "): " + reason),
          row(i), col(j) {}
    int row;
    int col;
};

/// A certified group element: an upper triangular matrix together with the
/// factorization of every entry as r_ij * prod_r p_r^{c_ij^r} with r_ij an
/// integer coprime to the prime set. Diagonal entries are pure positive
/// powers (r_ii = 1); zero entries carry r_ij = 0 and all exponents zero.
class FGElement {
public:
    FGElement(TriangularMatrix m, PrimeSet P);  // certifies on construction

    const TriangularMatrix& matrix() const { return matrix_; }
    const PrimeSet& primes() const { return primes_; }
    int n() const { return matrix_.n(); }

    /// Exponent c_ij^r of the r-th prime at entry (i, j), i <= j.
    long exponent(int i, int j, std::size_t r) const { return exponents_[index(i, j)][r]; }
    /// Residue r_ij (1 on the diagonal, 0 for zero entries).
    const Int& residue(int i, int j) const { return residues_[index(i, j)]; }

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * matrix_.n() + j; }

    TriangularMatrix matrix_;
    PrimeSet primes_;
    std::vector<std::vector<long>> exponents_;
    std::vector<Int> residues_;
};

/// Certifies membership, factoring every entry. Throws NotMember when a
/// diagonal entry is not a pure positive power of the prime set or an
/// off-diagonal denominator involves a foreign prime.
FGElement fg_certify(const TriangularMatrix& m, const PrimeSet& P);

}  // namespace solvmat
