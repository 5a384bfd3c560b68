#pragma once

#include "solvmat/fg.hpp"
#include "solvmat/matrix.hpp"

#include <vector>

namespace solvmat {

struct MultiPrime : std::invalid_argument {
    MultiPrime() : std::invalid_argument("semidirect form requires a single-prime set") {}
};

struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

/// An element (x, f) of Z^n ⋉ UT_n(Z[1/p]): an integer vector x encoding the
/// diagonal p-powers, acting by conjugation zeta_x on the unitriangular part
/// f. Corresponds to the matrix f * diag(p^{x_i}).
class SemiDirectElement {
public:
    SemiDirectElement(std::vector<long> x, Int p, TriangularMatrix f);

    static SemiDirectElement identity(int n, Int p);

    const std::vector<long>& x() const { return x_; }
    const Int& p() const { return p_; }
    const TriangularMatrix& f() const { return f_; }
    int n() const { return f_.n(); }

    bool operator==(const SemiDirectElement& other) const = default;

private:
    std::vector<long> x_;
    Int p_;
    TriangularMatrix f_;
};

/// The conjugation action: zeta_x(g)_ij = g_ij * p^(x_i - x_j).
TriangularMatrix zeta(const std::vector<long>& x, const Int& p, const TriangularMatrix& g);

/// Group law (x, f)(y, g) = (x + y, f * zeta_x(g)).
SemiDirectElement sd_multiply(const SemiDirectElement& a, const SemiDirectElement& b);

/// Inverse (-x, zeta_{-x}(f^{-1})).
SemiDirectElement sd_inverse(const SemiDirectElement& a);

/// Decomposition of a certified matrix with |P| = 1: x_i = diagonal exponent,
/// f_ij = m_ij / p^{x_j}.
SemiDirectElement sd_from_matrix(const FGElement& f);

/// Inverse of sd_from_matrix: the matrix f * diag(p^{x_i}), certified.
FGElement sd_to_matrix(const SemiDirectElement& a);

/// All strictly increasing integer sequences from 0 to r.
std::vector<std::vector<int>> enumerate_mfi(int r);

/// Entry (i, i+r) of the product of the increments, computed by the
/// combinatorial expansion over strictly increasing index sequences rather
/// than by iterated multiplication. Zero-based row i; requires
/// 1 <= r <= m = increments.size() and i + r < n.
Rational product_expansion(const std::vector<SemiDirectElement>& increments, int i, int r);

}  // namespace solvmat
