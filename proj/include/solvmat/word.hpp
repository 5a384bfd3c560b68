#pragma once

#include "solvmat/fg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace solvmat {

struct NotWithinRadius : std::runtime_error {
    explicit NotWithinRadius(int radius)
        : std::runtime_error("element not found within word-length radius " +
                             std::to_string(radius)) {}
};

/// One occurrence of a generator: theta_rs(1)^{sign} for r < s, or the
/// diagonal generator delta_r(p)^{sign}. Indices are zero-based internally;
/// tokens are one-based ("t:r:s:+1" / "d:r:p:-1").
struct GenSymbol {
    bool diagonal = false;
    int r = 0;
    int s = 0;    // column for theta; unused for delta
    Int p = 0;    // prime for delta; unused for theta
    int sign = 1; // +1 or -1

    static GenSymbol theta(int r, int s, int sign) { return {false, r, s, Int(0), sign}; }
    static GenSymbol delta(int r, Int p, int sign) { return {true, r, 0, std::move(p), sign}; }

    std::string token() const;
    static GenSymbol parse(const std::string& token);

    /// The generator as a matrix in dimension n.
    TriangularMatrix matrix(int n) const;

    bool operator==(const GenSymbol& other) const = default;
};

using GeneratorWord = std::vector<GenSymbol>;

/// Left-to-right product of the word's generators, certified.
FGElement word_evaluate(const GeneratorWord& w, int n, const PrimeSet& P);

/// Constructive factorization into generators: peels rows top-down, writing
/// each diagonal entry as a product of delta generators and each off-diagonal
/// entry through a telescoping word over its balanced base-bP digits. The
/// resulting word re-evaluates to f exactly with length at most
/// 6^(n-1)(k+1)^(n-1) times the entrywise length estimate.
GeneratorWord factorize(const FGElement& f);

/// All full generators of dimension n over P (each with both signs).
std::vector<GenSymbol> generator_set(int n, const PrimeSet& P);

/// Exact word length by breadth-first search of the Cayley graph from the
/// identity. Throws NotWithinRadius if the element is farther than radius.
int bfs_word_length(const FGElement& f, int radius);

/// Every element of word length <= radius, with its exact length.
std::vector<std::pair<TriangularMatrix, int>> bfs_enumerate(int n, const PrimeSet& P, int radius);

}  // namespace solvmat
