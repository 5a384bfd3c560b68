#pragma once

#include "solvmat/semidirect.hpp"

#include <optional>

namespace solvmat {

struct InvalidMeasure : std::invalid_argument {
    explicit InvalidMeasure(const std::string& what) : std::invalid_argument(what) {}
};

/// A finitely supported probability measure on Z^n ⋉ UT_n(Z[1/p]) with
/// exact rational weights summing to 1.
class MeasureSpec {
public:
    struct Atom {
        SemiDirectElement g;
        Rational prob;
    };

    MeasureSpec(int n, Int p, std::vector<Atom> support);

    int n() const { return n_; }
    const Int& p() const { return p_; }
    const std::vector<Atom>& support() const { return support_; }

    /// Exact mean of the i-th diagonal-exponent marginal.
    Rational coordinate_mean(int i) const;

private:
    int n_;
    Int p_;
    std::vector<Atom> support_;
};

/// D_ij = mean(mu_{x_i}) - mean(mu_{x_j}) on the strict upper triangle, with
/// the sign-pattern classification flags.
struct DisplacementMatrix {
    int n = 0;
    std::vector<Rational> means;
    std::vector<Rational> entries;  // row-major n*n, strict upper part used
    bool non_zero = false;          // every superdiagonal entry nonzero
    bool row_homogeneous = false;
    bool column_homogeneous = false;
    bool homogeneous = false;

    const Rational& at(int i, int j) const { return entries[i * n + j]; }
    int sign(int i, int j) const {
        const Rational& d = at(i, j);
        return d > 0 ? 1 : d < 0 ? -1 : 0;
    }
    /// Column-consistency hypothesis at (i, j): every D_kj with i < k < j
    /// shares the sign of D_ij.
    bool column_consistent_at(int i, int j) const;
};

DisplacementMatrix displacement(const MeasureSpec& mu);

/// The reflected measure: support mapped through sd_inverse, weights kept.
/// Its displacement is the entrywise negation of the original's.
MeasureSpec reflect(const MeasureSpec& mu);

/// Boundary triviality classification. The boundary is trivial exactly when
/// every strictly-upper pair (p, q) has zero displacement or a (p, q)-entry
/// that vanishes across the whole support. Strict mode additionally demands
/// that the full block p <= i < j <= q vanishes wherever the entrywise
/// condition was used; both verdicts are reported when they differ.
struct TrivialityVerdict {
    bool trivial = false;
    bool strict_trivial = false;
    bool abelian_support = false;       // shortcut: support generates an abelian group
    bool zero_displacement = false;     // shortcut: D vanishes entirely
    std::optional<std::pair<int, int>> witness_entry;  // failing (p, q), zero-based
    std::optional<std::size_t> witness_atom;           // support index with f_pq != 0
};

TrivialityVerdict check_triviality(const MeasureSpec& mu);

}  // namespace solvmat
