#pragma once

#include "solvmat/measure.hpp"
#include "solvmat/padic_trunc.hpp"

#include <cstdint>

namespace solvmat {

/// State of the right random walk at step m: the exact product (y, phi) of
/// the first m increments, plus O(1)-size shadows of the strictly upper
/// entries (double precision and p-adic truncation) for convergence
/// monitoring.
struct WalkState {
    long m = 0;
    std::vector<long> y;
    TriangularMatrix phi{1};
    std::vector<double> shadow_real;        // row-major n*n, strict upper used
    std::vector<PAdicTrunc> shadow_padic;   // same layout

    double real_shadow(int i, int j) const { return shadow_real[i * phi.n() + j]; }
    const PAdicTrunc& padic_shadow(int i, int j) const { return shadow_padic[i * phi.n() + j]; }
};

/// Identity string of the pinned generator, recorded in output headers.
const char* rng_identity();

/// Exact-vs-shadow audit cadence: SOLVMAT_AUDIT_EVERY when set, else 500.
long default_audit_every();

/// Runs the walk for `steps` steps with the given seed, recording the state
/// at each checkpoint (strictly increasing, each <= steps). Increments are
/// sampled by exact cumulative rational thresholds against 64-bit draws from
/// mt19937_64. Every audit_every steps the shadows are checked against the
/// exact state and resynchronized. Identical seeds give identical
/// trajectories bit for bit.
std::vector<WalkState> run_walk(const MeasureSpec& mu, long steps, std::uint64_t seed,
                                const std::vector<long>& checkpoints,
                                long audit_every = 500);

struct TagMismatch : std::runtime_error {
    explicit TagMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NotConverged : std::runtime_error {
    NotConverged(int i, int j, const std::string& diagnostics)
        : std::runtime_error("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             ") not converged: " + diagnostics),
          row(i), col(j) {}
    int row;
    int col;
};

/// A detected limit of the walk in mixed coordinates: real limits where the
/// displacement is negative, p-adic limits where it is positive. `value` is
/// the exact final-checkpoint coordinate, used for exact downstream algebra;
/// real_value and padic carry the display-precision views.
struct BoundaryEntry {
    enum class Tag { Real, PAdic, Undefined };
    Tag tag = Tag::Undefined;
    bool hypothesis_ok = true;  // column-consistency hypothesis at this entry
    double real_value = 0.0;
    double cauchy_bound = 0.0;  // observed window difference (real entries)
    Rational value = 0;
    std::optional<PAdicTrunc> padic;
};

struct BoundaryPoint {
    int n = 0;
    Int p = 0;
    std::vector<BoundaryEntry> entries;  // row-major n*n, strict upper used

    const BoundaryEntry& at(int i, int j) const { return entries[i * n + j]; }
    BoundaryEntry& at(int i, int j) { return entries[i * n + j]; }
};

/// Reads limits off a trajectory: a real entry must move by less than
/// real_tol between the final checkpoint and the latest checkpoint at least
/// `window` steps earlier; a p-adic entry must agree to padic_digits
/// certified digits over the same window. Entries with zero displacement or
/// a failed column-consistency hypothesis are left Undefined.
BoundaryPoint detect_boundary(const std::vector<WalkState>& trajectory,
                              const DisplacementMatrix& D, const Int& p,
                              double real_tol = 1e-9, long padic_digits = 30,
                              long window = 100);

/// The boundary action (x, f) . b = f zeta_x(b), computed entrywise in the
/// appropriate completion on the exact representatives. Throws TagMismatch
/// if the sum for an entry mixes tags.
BoundaryPoint gamma_action(const SemiDirectElement& g, const BoundaryPoint& b);

/// The ray approximation Pi^(m)(b) = (t^(m), T^(m)(b)) with
/// t_i = floor(m * mean_i) and entrywise p-power truncations of b. For n = 3
/// with homogeneous displacement the corrected T_13 with its cross term is
/// selected automatically; otherwise the generic entrywise map is used, with
/// generic_fallback set when a mixed-sign pattern without a corrected
/// variant forced it.
struct Approximation {
    SemiDirectElement g;
    bool generic_fallback = false;
};
Approximation approx_map(const BoundaryPoint& b, const MeasureSpec& mu, long m);

/// The gauge of Pi^(m)(b)^{-1} (y^(m), phi^(m)) at each trajectory
/// checkpoint: the word-length scale of the approximation error.
struct ErrorSeries {
    std::vector<std::pair<long, long>> points;  // (m, estimate)
    bool generic_fallback = false;
};
ErrorSeries error_series(const std::vector<WalkState>& trajectory, const BoundaryPoint& b,
                         const MeasureSpec& mu);

}  // namespace solvmat
