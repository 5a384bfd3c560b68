#include "solvmat/matrix.hpp"

#include <sstream>

namespace solvmat {

TriangularMatrix::TriangularMatrix(int n) : n_(n), entries_(n * n, Rational(0)) {
    if (n < 1) throw std::invalid_argument("dimension must be at least 1");
    for (int i = 0; i < n; ++i) entries_[i * n + i] = 1;
}

TriangularMatrix::TriangularMatrix(int n, std::vector<Rational> row_major_entries)
    : n_(n), entries_(std::move(row_major_entries)) {
    if (n < 1 || entries_.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("entry count does not match dimension");
    for (int i = 0; i < n; ++i) {
        if (at(i, i) == 0) throw Singular();
        for (int j = 0; j < i; ++j)
            if (at(i, j) != 0)
                throw std::invalid_argument("matrix is not upper triangular");
    }
}

void TriangularMatrix::set(int i, int j, Rational value) {
    if (i > j && value != 0) throw std::invalid_argument("below-diagonal entry must be zero");
    if (i == j && value == 0) throw Singular();
    entries_[i * n_ + j] = std::move(value);
}

bool TriangularMatrix::is_identity() const { return *this == TriangularMatrix(n_); }

bool TriangularMatrix::is_unitriangular() const {
    for (int i = 0; i < n_; ++i)
        if (at(i, i) != 1) return false;
    return true;
}

std::string TriangularMatrix::key() const {
    std::ostringstream out;
    out << n_;
    for (const Rational& e : entries_) out << '|' << format_rational(e);
    return out.str();
}

TriangularMatrix operator*(const TriangularMatrix& a, const TriangularMatrix& b) {
    if (a.n_ != b.n_) throw DimensionMismatch();
    TriangularMatrix out(a.n_);
    for (int i = 0; i < a.n_; ++i)
        for (int j = i; j < a.n_; ++j) {
            Rational sum = 0;
            for (int k = i; k <= j; ++k) sum += a.at(i, k) * b.at(k, j);
            out.entries_[i * a.n_ + j] = std::move(sum);
        }
    return out;
}

TriangularMatrix tri_inverse(const TriangularMatrix& m) {
    const int n = m.n();
    // Unitriangular part u = g^{-1} f, so u_ij = f_ij / f_ii.
    TriangularMatrix inv(n);
    for (int i = 0; i < n; ++i) inv.set(i, i, 1 / m.at(i, i));
    for (int i = 0; i < n; ++i) {
        for (int s = 1; i + s < n; ++s) {
            // Sum over increasing paths 0 = h_0 < h_1 < ... < h_l = s, encoded by
            // the subset of interior points {1, ..., s-1}.
            Rational total = 0;
            const int interior = s - 1;
            for (unsigned mask = 0; mask < (1u << interior); ++mask) {
                std::vector<int> path{0};
                for (int t = 0; t < interior; ++t)
                    if (mask & (1u << t)) path.push_back(t + 1);
                path.push_back(s);
                // Sign is (-1)^(number of edges).
                Rational term = (path.size() % 2 == 0) ? Rational(-1) : Rational(1);
                for (std::size_t e = 0; e + 1 < path.size(); ++e) {
                    int a = i + path[e];
                    int b = i + path[e + 1];
                    term *= m.at(a, b) / m.at(a, a);
                }
                total += term;
            }
            inv.set(i, i + s, total / m.at(i + s, i + s));
        }
    }
    return inv;
}

TriangularMatrix ut_inverse_neumann(const TriangularMatrix& m) {
    const int n = m.n();
    if (!m.is_unitriangular())
        throw std::invalid_argument("Neumann inverse requires a unitriangular matrix");
    // g = m - I is nilpotent; accumulate sum of (-g)^k for k < n.
    std::vector<Rational> neg_g(n * n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) neg_g[i * n + j] = -m.at(i, j);
    std::vector<Rational> acc(n * n, Rational(0));
    std::vector<Rational> power(n * n, Rational(0));
    for (int i = 0; i < n; ++i) power[i * n + i] = 1;  // (-g)^0
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n * n; ++i) acc[i] += power[i];
        std::vector<Rational> next(n * n, Rational(0));
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Rational sum = 0;
                for (int t = i; t <= j; ++t) sum += power[i * n + t] * neg_g[t * n + j];
                next[i * n + j] = std::move(sum);
            }
        power = std::move(next);
    }
    return TriangularMatrix(n, std::move(acc));
}

}  // namespace solvmat
