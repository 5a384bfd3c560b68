#include "solvmat/word.hpp"
#include "solvmat/plocal.hpp"

#include <sstream>
#include <unordered_map>

namespace solvmat {

std::string GenSymbol::token() const {
    std::ostringstream out;
    if (diagonal)
        out << "d:" << (r + 1) << ':' << p;
    else
        out << "t:" << (r + 1) << ':' << (s + 1);
    out << ':' << (sign > 0 ? "+1" : "-1");
    return out.str();
}

GenSymbol GenSymbol::parse(const std::string& token) {
    std::istringstream in(token);
    std::string kind, a, b, sg;
    if (!std::getline(in, kind, ':') || !std::getline(in, a, ':') || !std::getline(in, b, ':') ||
        !std::getline(in, sg, ':'))
        throw ParseError("bad generator token: " + token);
    int sign = (sg == "+1") ? 1 : (sg == "-1") ? -1 : 0;
    if (sign == 0) throw ParseError("bad generator sign: " + token);
    if (kind == "t") return theta(std::stoi(a) - 1, std::stoi(b) - 1, sign);
    if (kind == "d") return delta(std::stoi(a) - 1, Int(b), sign);
    throw ParseError("bad generator kind: " + token);
}

TriangularMatrix GenSymbol::matrix(int n) const {
    TriangularMatrix m(n);
    if (diagonal)
        m.set(r, r, sign > 0 ? Rational(p) : Rational(1, p));
    else
        m.set(r, s, Rational(sign));
    return m;
}

FGElement word_evaluate(const GeneratorWord& w, int n, const PrimeSet& P) {
    TriangularMatrix acc(n);
    for (const GenSymbol& g : w) acc = acc * g.matrix(n);
    return fg_certify(acc, P);
}

namespace {

// Balanced base-b digits of a nonzero integer u (least significant first),
// each in [-b/2, b/2]; the leading digit keeps u's residue so the expansion
// is exact and the first digit is nonzero when b does not divide u.
std::vector<Int> balanced_digits(Int u, const Int& b) {
    std::vector<Int> digits;
    while (u != 0) {
        Int r = u % b;
        if (r < 0) r += b;
        if (2 * r > b || (2 * r == b && u < 0)) r -= b;
        digits.push_back(r);
        u = (u - r) / b;
    }
    return digits;
}

void append_delta_block(GeneratorWord& out, int row, const PrimeSet& P, long power) {
    const int sign = power >= 0 ? 1 : -1;
    for (long c = 0; c < (power >= 0 ? power : -power); ++c)
        for (std::size_t r = 0; r < P.size(); ++r)
            out.push_back(GenSymbol::delta(row, P[r], sign));
}

// Word for theta_ij(x), x != 0 in Z[1/bP]: conjugate single-digit theta
// blocks by powers of the full diagonal generator, one digit per scale.
void append_theta_word(GeneratorWord& out, int i, int j, const Rational& x, const PrimeSet& P) {
    long d_minus = 0;
    bool first = true;
    for (std::size_t r = 0; r < P.size(); ++r) {
        long v = *padic_valuation(x, P[r]);
        if (first || v < d_minus) d_minus = v;
        first = false;
    }
    Rational unit = x / pow_rational(Int(1) * P.product(), d_minus);
    std::vector<Int> digits = balanced_digits(boost::multiprecision::numerator(unit), P.product());

    append_delta_block(out, i, P, d_minus);
    for (std::size_t t = 0; t < digits.size(); ++t) {
        if (t > 0) append_delta_block(out, i, P, 1);
        const int sign = digits[t] >= 0 ? 1 : -1;
        for (Int c = 0; c < (digits[t] >= 0 ? digits[t] : -digits[t]); ++c)
            out.push_back(GenSymbol::theta(i, j, sign));
    }
    append_delta_block(out, i, P, -(d_minus + static_cast<long>(digits.size()) - 1));
}

}  // namespace

GeneratorWord factorize(const FGElement& f) {
    const int n = f.n();
    const PrimeSet& P = f.primes();
    GeneratorWord out;
    // Rows are peeled so the bottom row's word comes first: f = g * h with g
    // carrying the lower rows and h the current top row.
    for (int i = n - 1; i >= 0; --i) {
        GeneratorWord row;
        for (int j = n - 1; j > i; --j)
            if (f.matrix().at(i, j) != 0) append_theta_word(row, i, j, f.matrix().at(i, j), P);
        for (std::size_t r = 0; r < P.size(); ++r) {
            const long c = f.exponent(i, i, r);
            for (long t = 0; t < (c >= 0 ? c : -c); ++t)
                row.push_back(GenSymbol::delta(i, P[r], c >= 0 ? 1 : -1));
        }
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

std::vector<GenSymbol> generator_set(int n, const PrimeSet& P) {
    std::vector<GenSymbol> gens;
    for (int r = 0; r < n; ++r)
        for (int s = r + 1; s < n; ++s)
            for (int sign : {1, -1}) gens.push_back(GenSymbol::theta(r, s, sign));
    for (int r = 0; r < n; ++r)
        for (std::size_t q = 0; q < P.size(); ++q)
            for (int sign : {1, -1}) gens.push_back(GenSymbol::delta(r, P[q], sign));
    return gens;
}

std::vector<std::pair<TriangularMatrix, int>> bfs_enumerate(int n, const PrimeSet& P, int radius) {
    std::vector<GenSymbol> gens = generator_set(n, P);
    std::vector<TriangularMatrix> gen_matrices;
    for (const GenSymbol& g : gens) gen_matrices.push_back(g.matrix(n));

    std::vector<std::pair<TriangularMatrix, int>> found;
    std::unordered_map<std::string, int> seen;
    std::vector<TriangularMatrix> frontier{TriangularMatrix(n)};
    seen.emplace(frontier.front().key(), 0);
    found.emplace_back(frontier.front(), 0);

    for (int depth = 1; depth <= radius; ++depth) {
        std::vector<TriangularMatrix> next;
        for (const TriangularMatrix& m : frontier)
            for (const TriangularMatrix& g : gen_matrices) {
                TriangularMatrix candidate = m * g;
                auto [it, inserted] = seen.emplace(candidate.key(), depth);
                if (inserted) {
                    found.emplace_back(candidate, depth);
                    next.push_back(std::move(candidate));
                }
            }
        frontier = std::move(next);
    }
    return found;
}

int bfs_word_length(const FGElement& f, int radius) {
    const std::string target = f.matrix().key();
    if (target == TriangularMatrix(f.n()).key()) return 0;
    std::vector<GenSymbol> gens = generator_set(f.n(), f.primes());
    std::vector<TriangularMatrix> gen_matrices;
    for (const GenSymbol& g : gens) gen_matrices.push_back(g.matrix(f.n()));

    std::unordered_map<std::string, int> seen;
    std::vector<TriangularMatrix> frontier{TriangularMatrix(f.n())};
    seen.emplace(frontier.front().key(), 0);
    for (int depth = 1; depth <= radius; ++depth) {
        std::vector<TriangularMatrix> next;
        for (const TriangularMatrix& m : frontier)
            for (const TriangularMatrix& g : gen_matrices) {
                TriangularMatrix candidate = m * g;
                std::string key = candidate.key();
                if (key == target) return depth;
                if (seen.emplace(std::move(key), depth).second)
                    next.push_back(std::move(candidate));
            }
        frontier = std::move(next);
    }
    throw NotWithinRadius(radius);
}

}  // namespace solvmat
