#include "solvmat/semidirect.hpp"

namespace solvmat {

SemiDirectElement::SemiDirectElement(std::vector<long> x, Int p, TriangularMatrix f)
    : x_(std::move(x)), p_(std::move(p)), f_(std::move(f)) {
    if (x_.size() != static_cast<std::size_t>(f_.n()))
        throw DimensionMismatch();
    if (!f_.is_unitriangular())
        throw std::invalid_argument("semidirect matrix part must be unitriangular");
    if (p_ < 2 || !is_prime(p_))
        throw InvalidPrimeSet("semidirect prime must be prime");
}

SemiDirectElement SemiDirectElement::identity(int n, Int p) {
    return SemiDirectElement(std::vector<long>(n, 0), std::move(p), TriangularMatrix(n));
}

TriangularMatrix zeta(const std::vector<long>& x, const Int& p, const TriangularMatrix& g) {
    const int n = g.n();
    if (x.size() != static_cast<std::size_t>(n)) throw DimensionMismatch();
    TriangularMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            out.set(i, j, g.at(i, j) * pow_rational(p, x[i] - x[j]));
    return out;
}

SemiDirectElement sd_multiply(const SemiDirectElement& a, const SemiDirectElement& b) {
    if (a.n() != b.n() || a.p() != b.p()) throw DimensionMismatch();
    std::vector<long> x(a.x());
    for (int i = 0; i < a.n(); ++i) x[i] += b.x()[i];
    return SemiDirectElement(std::move(x), a.p(), a.f() * zeta(a.x(), a.p(), b.f()));
}

SemiDirectElement sd_inverse(const SemiDirectElement& a) {
    std::vector<long> neg(a.x());
    for (long& v : neg) v = -v;
    TriangularMatrix inv = zeta(neg, a.p(), ut_inverse_neumann(a.f()));
    return SemiDirectElement(std::move(neg), a.p(), std::move(inv));
}

SemiDirectElement sd_from_matrix(const FGElement& f) {
    if (f.primes().size() != 1) throw MultiPrime();
    const Int& p = f.primes()[0];
    const int n = f.n();
    std::vector<long> x(n);
    for (int i = 0; i < n; ++i) x[i] = f.exponent(i, i, 0);
    TriangularMatrix g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            g.set(i, j, f.matrix().at(i, j) * pow_rational(p, -x[j]));
    return SemiDirectElement(std::move(x), p, std::move(g));
}

FGElement sd_to_matrix(const SemiDirectElement& a) {
    const int n = a.n();
    TriangularMatrix m(n);
    for (int i = 0; i < n; ++i) {
        m.set(i, i, pow_rational(a.p(), a.x()[i]));
        for (int j = i + 1; j < n; ++j)
            m.set(i, j, a.f().at(i, j) * pow_rational(a.p(), a.x()[j]));
    }
    return fg_certify(m, PrimeSet({a.p()}));
}

std::vector<std::vector<int>> enumerate_mfi(int r) {
    // Interior points form an arbitrary subset of {1, ..., r-1}, kept sorted.
    std::vector<std::vector<int>> out;
    const int interior = r - 1;
    for (unsigned mask = 0; mask < (1u << interior); ++mask) {
        std::vector<int> a{0};
        for (int t = 0; t < interior; ++t)
            if (mask & (1u << t)) a.push_back(t + 1);
        a.push_back(r);
        out.push_back(std::move(a));
    }
    return out;
}

namespace {

// Sums, over 0 <= b_1 < ... < b_{L-1} < m, the products of increment entries
// along the jump sequence a, weighted by conjugation powers from the partial
// sums y^{(b)}.
void accumulate(const std::vector<SemiDirectElement>& inc,
                const std::vector<std::vector<long>>& y, const Int& p, int i,
                const std::vector<int>& a, std::size_t edge, int b_min, Rational term,
                Rational& total) {
    const int m = static_cast<int>(inc.size());
    if (edge + 1 == a.size()) {
        total += term;
        return;
    }
    const int from = i + a[edge];
    const int to = i + a[edge + 1];
    for (int b = b_min; b < m; ++b) {
        const Rational& entry = inc[b].f().at(from, to);
        if (entry == 0) continue;
        Rational next = term * entry * pow_rational(p, y[b][from] - y[b][to]);
        accumulate(inc, y, p, i, a, edge + 1, b + 1, std::move(next), total);
    }
}

}  // namespace

Rational product_expansion(const std::vector<SemiDirectElement>& increments, int i, int r) {
    if (increments.empty()) throw IndexOutOfRange("no increments");
    const int n = increments.front().n();
    const int m = static_cast<int>(increments.size());
    if (r < 1 || r > m || i < 0 || i + r >= n)
        throw IndexOutOfRange("entry (" + std::to_string(i) + ", " + std::to_string(i + r) +
                              ") not covered for m = " + std::to_string(m));
    const Int& p = increments.front().p();

    // y[l] = partial sum of the first l increment vectors (y[0] = 0).
    std::vector<std::vector<long>> y(m, std::vector<long>(n, 0));
    for (int l = 1; l < m; ++l)
        for (int c = 0; c < n; ++c) y[l][c] = y[l - 1][c] + increments[l - 1].x()[c];

    Rational total = 0;
    for (const std::vector<int>& a : enumerate_mfi(r))
        accumulate(increments, y, p, i, a, 0, 0, Rational(1), total);
    return total;
}

}  // namespace solvmat
