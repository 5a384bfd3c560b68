#pragma once

#include "solvmat/rational.hpp"

#include <vector>

namespace solvmat {

struct Singular : std::domain_error {
    Singular() : std::domain_error("matrix has a zero diagonal entry") {}
};

struct DimensionMismatch : std::invalid_argument {
    DimensionMismatch() : std::invalid_argument("matrix dimensions do not match") {}
};

/// Invertible upper triangular matrix over Q. Entries below the diagonal are
/// zero by construction; diagonal entries must be nonzero.
class TriangularMatrix {
public:
    explicit TriangularMatrix(int n);  // identity
    TriangularMatrix(int n, std::vector<Rational> row_major_entries);

    int n() const { return n_; }
    const Rational& at(int i, int j) const { return entries_[i * n_ + j]; }
    void set(int i, int j, Rational value);

    bool is_identity() const;
    bool is_unitriangular() const;

    /// Canonical serialization of all entries; usable as an exact map key.
    std::string key() const;

    friend TriangularMatrix operator*(const TriangularMatrix& a, const TriangularMatrix& b);
    bool operator==(const TriangularMatrix& other) const = default;

private:
    int n_;
    std::vector<Rational> entries_;
};

/// Exact inverse via the signed increasing-path expansion: for f = g*u with g
/// the diagonal part and u unitriangular, u^{-1}_{i,i+s} sums over sequences
/// 0 = h_0 < ... < h_l = s the products of u's entries along the path with
/// sign (-1)^l; then f^{-1} = u^{-1} g^{-1}.
TriangularMatrix tri_inverse(const TriangularMatrix& m);

/// Inverse of a unitriangular matrix through the Neumann form
/// (I + g)^{-1} = sum_{k=0}^{n-1} (-g)^k, valid since g is nilpotent.
TriangularMatrix ut_inverse_neumann(const TriangularMatrix& m);

}  // namespace solvmat
