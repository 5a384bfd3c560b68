#include "solvmat/walk.hpp"
#include "solvmat/metrics.hpp"
#include "solvmat/plocal.hpp"

#include <cmath>
#include <cstdlib>
#include <random>

namespace solvmat {

const char* rng_identity() { return "std::mt19937_64 (C++ standard 64-bit Mersenne Twister)"; }

long default_audit_every() {
    if (const char* env = std::getenv("SOLVMAT_AUDIT_EVERY")) {
        long v = std::atol(env);
        if (v > 0) return v;
    }
    return 500;
}

namespace {

std::vector<double> real_shadows_of(const TriangularMatrix& phi) {
    const int n = phi.n();
    std::vector<double> out(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out[i * n + j] = static_cast<double>(phi.at(i, j));
    return out;
}

std::vector<PAdicTrunc> padic_shadows_of(const TriangularMatrix& phi, const Int& p) {
    const int n = phi.n();
    std::vector<PAdicTrunc> out;
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.push_back(j > i ? PAdicTrunc::from_rational(phi.at(i, j), p)
                                : PAdicTrunc::zero(p));
    return out;
}

}  // namespace

std::vector<WalkState> run_walk(const MeasureSpec& mu, long steps, std::uint64_t seed,
                                const std::vector<long>& checkpoints, long audit_every) {
    if (steps < 1) throw std::invalid_argument("steps must be at least 1");
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        if (checkpoints[c] < 0 || checkpoints[c] > steps)
            throw std::invalid_argument("checkpoint outside [0, steps]");
        if (c > 0 && checkpoints[c] <= checkpoints[c - 1])
            throw std::invalid_argument("checkpoints must be strictly increasing");
    }
    const int n = mu.n();
    const Int& p = mu.p();

    // Exact sampling thresholds: atom i is drawn when the 64-bit draw falls
    // below floor(cumulative_i * 2^64); bias is below 2^-64 per draw.
    const Int two64 = Int(1) << 64;
    std::vector<Int> thresholds;
    Rational cumulative = 0;
    for (const MeasureSpec::Atom& a : mu.support()) {
        cumulative += a.prob;
        thresholds.push_back(boost::multiprecision::numerator(cumulative) * two64 /
                             boost::multiprecision::denominator(cumulative));
    }

    // Increment entries in gcd-free form: value = coeff * p^exp with coeff an
    // integer. Exact rational arithmetic normalizes with a gcd on every
    // operation, which dominates the step cost once entries reach thousands
    // of bits; this representation needs no normalization in the hot loop.
    struct Scaled {
        Int coeff = 0;
        long exp = 0;
    };
    auto to_scaled = [&p](const Rational& x) {
        Scaled s;
        if (x == 0) return s;
        s.exp = *padic_valuation(x, p);
        Rational unit = x * pow_rational(p, -s.exp);
        s.coeff = boost::multiprecision::numerator(unit);  // p-power denominator is gone
        return s;
    };
    auto scaled_add = [&p](Scaled a, const Scaled& b) {
        if (b.coeff == 0) return a;
        if (a.coeff == 0) return b;
        const long e = std::min(a.exp, b.exp);
        Int total = a.coeff * boost::multiprecision::pow(p, static_cast<unsigned>(a.exp - e)) +
                    b.coeff * boost::multiprecision::pow(p, static_cast<unsigned>(b.exp - e));
        return Scaled{std::move(total), e};
    };

    std::vector<std::vector<Scaled>> atom_entries(mu.support().size());
    for (std::size_t a = 0; a < mu.support().size(); ++a) {
        atom_entries[a].resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                atom_entries[a][i * n + j] = to_scaled(mu.support()[a].g.f().at(i, j));
    }

    std::mt19937_64 rng(seed);
    std::vector<long> y(n, 0);
    std::vector<Scaled> phi(static_cast<std::size_t>(n) * n);
    TriangularMatrix identity(n);
    std::vector<double> shadow_real = real_shadows_of(identity);
    std::vector<PAdicTrunc> shadow_padic = padic_shadows_of(identity, p);
    const double ln_p = std::log(static_cast<double>(p));

    auto exact_phi = [&]() {
        TriangularMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const Scaled& s = phi[i * n + j];
                if (s.coeff != 0) m.set(i, j, Rational(s.coeff) * pow_rational(p, s.exp));
            }
        return m;
    };

    std::vector<WalkState> out;
    std::size_t next_checkpoint = 0;
    auto record = [&](long m) {
        while (next_checkpoint < checkpoints.size() && checkpoints[next_checkpoint] == m) {
            out.push_back({m, y, exact_phi(), shadow_real, shadow_padic});
            ++next_checkpoint;
        }
    };
    record(0);

    for (long m = 1; m <= steps; ++m) {
        Int draw = rng();
        std::size_t pick = 0;
        while (pick + 1 < thresholds.size() && draw >= thresholds[pick]) ++pick;
        const std::vector<Scaled>& inc = atom_entries[pick];
        const std::vector<long>& xinc = mu.support()[pick].g.x();

        // phi' = phi zeta_y(f) with the pre-step y, entrywise
        // phi'_ij = phi_ij + sum_k phi_ik f_kj p^(y_k - y_j).
        std::vector<Scaled> next_phi = phi;
        std::vector<double> next_real = shadow_real;
        std::vector<PAdicTrunc> next_padic = shadow_padic;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                Scaled acc = phi[i * n + j];
                double acc_r = shadow_real[i * n + j];
                PAdicTrunc acc_p = shadow_padic[i * n + j];
                for (int k = i; k < j; ++k) {
                    const Scaled& fkj = inc[k * n + j];
                    if (fkj.coeff == 0) continue;
                    const long e = y[k] - y[j];
                    Scaled term{fkj.coeff, fkj.exp + e};
                    if (k > i) {
                        const Scaled& left = phi[i * n + k];
                        if (left.coeff == 0) continue;
                        term.coeff *= left.coeff;
                        term.exp += left.exp;
                    }
                    acc = scaled_add(std::move(acc), term);
                    const double w =
                        static_cast<double>(fkj.coeff) * std::exp((fkj.exp + e) * ln_p);
                    acc_r += (k == i ? 1.0 : shadow_real[i * n + k]) * w;
                    PAdicTrunc wp =
                        PAdicTrunc::from_rational(Rational(fkj.coeff), p).shifted(fkj.exp + e);
                    acc_p = trunc_add(acc_p, k == i ? wp
                                                    : trunc_mul(shadow_padic[i * n + k], wp));
                }
                next_phi[i * n + j] = std::move(acc);
                next_real[i * n + j] = acc_r;
                next_padic[i * n + j] = acc_p;
            }
        phi = std::move(next_phi);
        shadow_real = std::move(next_real);
        shadow_padic = std::move(next_padic);
        for (int i = 0; i < n; ++i) y[i] += xinc[i];

        if (audit_every > 0 && m % audit_every == 0) {
            for (Scaled& s : phi)
                while (s.coeff != 0 && s.coeff % p == 0) {
                    s.coeff /= p;
                    ++s.exp;
                }
            TriangularMatrix exact = exact_phi();
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    const double ed = static_cast<double>(exact.at(i, j));
                    const double shadow = shadow_real[i * n + j];
                    if (std::isfinite(ed) && std::isfinite(shadow) && std::fabs(ed) < 1e100 &&
                        std::fabs(shadow - ed) > 1e-3 * std::max(1.0, std::fabs(ed)))
                        throw std::logic_error("shadow drifted from exact state at audit");
                }
            shadow_real = real_shadows_of(exact);
            shadow_padic = padic_shadows_of(exact, p);
        }
        record(m);
    }
    return out;
}

BoundaryPoint detect_boundary(const std::vector<WalkState>& trajectory,
                              const DisplacementMatrix& D, const Int& p, double real_tol,
                              long padic_digits, long window) {
    if (trajectory.size() < 2) throw std::invalid_argument("trajectory has too few checkpoints");
    const WalkState& last = trajectory.back();
    const WalkState* prev = nullptr;
    for (const WalkState& s : trajectory)
        if (s.m <= last.m - window) prev = &s;
    if (!prev)
        throw std::invalid_argument("no checkpoint at least `window` steps before the last");

    const int n = D.n;
    BoundaryPoint b;
    b.n = n;
    b.p = p;
    b.entries.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            BoundaryEntry& e = b.at(i, j);
            e.hypothesis_ok = D.column_consistent_at(i, j);
            if (D.at(i, j) == 0 || !e.hypothesis_ok) continue;
            const Rational& cur = last.phi.at(i, j);
            const Rational& old = prev->phi.at(i, j);
            if (D.at(i, j) < 0) {
                const double dc = static_cast<double>(cur), dp = static_cast<double>(old);
                e.cauchy_bound = std::fabs(dc - dp);
                if (!(e.cauchy_bound < real_tol))
                    throw NotConverged(i, j, "real window difference " +
                                                 std::to_string(e.cauchy_bound) +
                                                 " at m = " + std::to_string(last.m));
                e.tag = BoundaryEntry::Tag::Real;
                e.real_value = dc;
                // The exact coordinate at the final checkpoint is already in
                // Z[1/p] and agrees with the limit to the observed Cauchy
                // bound. Rounding through a double instead would cap the
                // representative at 53 bits of precision, which the
                // p^(-M_ij) scaling in the shadowing maps amplifies into an
                // error term that grows linearly with m.
                e.value = cur;
            } else {
                auto v = padic_valuation(cur - old, p);
                if (v && *v < padic_digits)
                    throw NotConverged(i, j, "p-adic tail valuation " + std::to_string(*v) +
                                                 " < " + std::to_string(padic_digits) +
                                                 " at m = " + std::to_string(last.m));
                e.tag = BoundaryEntry::Tag::PAdic;
                e.padic = PAdicTrunc::from_rational(cur, p, static_cast<int>(padic_digits));
                // Same as the real case: keep the exact final-checkpoint
                // coordinate, not the display truncation.
                e.value = cur;
            }
        }
    return b;
}

BoundaryPoint gamma_action(const SemiDirectElement& g, const BoundaryPoint& b) {
    if (g.n() != b.n || g.p() != b.p) throw DimensionMismatch();
    const int n = b.n;
    BoundaryPoint out = b;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            BoundaryEntry& e = out.at(i, j);
            // (f zeta_x(b))_ij = sum_k f_ik b_kj p^(x_k - x_j), b_jj = 1.
            Rational acc = g.f().at(i, j);
            for (int k = i; k < j; ++k) {
                const Rational coeff = (k == i) ? Rational(1) : g.f().at(i, k);
                if (coeff == 0) continue;
                const BoundaryEntry& src = b.at(k, j);
                if (src.tag == BoundaryEntry::Tag::Undefined) {
                    if (src.value != 0)
                        throw TagMismatch("undefined boundary entry feeds a defined one");
                    continue;
                }
                if (e.tag != BoundaryEntry::Tag::Undefined && src.tag != e.tag)
                    throw TagMismatch("boundary action mixes real and p-adic coordinates");
                acc += coeff * src.value * pow_rational(g.p(), g.x()[k] - g.x()[j]);
            }
            if (e.tag == BoundaryEntry::Tag::Undefined) {
                if (acc != 0)
                    throw TagMismatch("boundary action writes to an undefined coordinate");
                continue;
            }
            e.value = acc;
            if (e.tag == BoundaryEntry::Tag::Real)
                e.real_value = static_cast<double>(acc);
            else
                e.padic = PAdicTrunc::from_rational(acc, b.p,
                                                    e.padic ? e.padic->precision()
                                                            : PAdicTrunc::kDefaultPrecision);
        }
    return out;
}

namespace {

// p-adic integer part: y minus its fractional p-part.
Rational padic_floor(const Rational& y, const Int& p) { return y - padic_frac(y, p); }

}  // namespace

Approximation approx_map(const BoundaryPoint& b, const MeasureSpec& mu, long m) {
    const int n = mu.n();
    const Int& p = mu.p();
    DisplacementMatrix D = displacement(mu);

    std::vector<long> t(n);
    for (int i = 0; i < n; ++i)
        t[i] = static_cast<long>(real_floor(Rational(m) * D.means[i]));
    auto M = [&t](int i, int j) { return t[i] - t[j]; };

    auto require_defined = [&b](int i, int j) -> const Rational& {
        if (b.at(i, j).tag == BoundaryEntry::Tag::Undefined)
            throw TagMismatch("approximation needs boundary entry (" + std::to_string(i + 1) +
                              "," + std::to_string(j + 1) + ")");
        return b.at(i, j).value;
    };

    TriangularMatrix T(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (D.at(i, j) == 0) continue;
            const Rational scaled = pow_rational(p, -M(i, j)) * require_defined(i, j);
            const Rational trunc = (D.at(i, j) < 0) ? Rational(real_floor(scaled))
                                                    : padic_frac(scaled, p);
            T.set(i, j, pow_rational(p, M(i, j)) * trunc);
        }

    Approximation out{SemiDirectElement(t, p, T), false};
    if (n == 3 && D.homogeneous && D.non_zero) {
        // Corrected (1,3) truncation with the cross term.
        const Rational b12 = pow_rational(p, -M(0, 1)) * require_defined(0, 1);
        const Rational b23 = pow_rational(p, -M(1, 2)) * require_defined(1, 2);
        const Rational b13 = pow_rational(p, -M(0, 2)) * require_defined(0, 2);
        // The cross term keeps the truncated early factor (1,2) and the
        // discarded tail of the late factor (2,3): the (1,3) coordinate's
        // composite sums put the (1,2) increments at the earlier time index,
        // so only that split cancels the composite tail of the limit.
        Rational t13;
        if (D.at(0, 1) < 0)
            t13 = Rational(real_floor(b13)) -
                  Rational(real_floor(Rational(real_floor(b12)) * real_frac(b23)));
        else
            t13 = padic_frac(b13, p) - padic_frac(padic_frac(b12, p) * padic_floor(b23, p), p);
        TriangularMatrix Tc = out.g.f();
        Tc.set(0, 2, pow_rational(p, M(0, 2)) * t13);
        out.g = SemiDirectElement(t, p, std::move(Tc));
    } else if (n >= 3 && !D.homogeneous) {
        out.generic_fallback = true;
    }
    return out;
}

ErrorSeries error_series(const std::vector<WalkState>& trajectory, const BoundaryPoint& b,
                         const MeasureSpec& mu) {
    ErrorSeries series;
    for (const WalkState& s : trajectory) {
        Approximation pi = approx_map(b, mu, s.m);
        series.generic_fallback = series.generic_fallback || pi.generic_fallback;
        SemiDirectElement walk_elem(s.y, mu.p(), s.phi);
        SemiDirectElement err = sd_multiply(sd_inverse(pi.g), walk_elem);
        series.points.emplace_back(s.m, sd_length_estimate(err));
    }
    return series;
}

}  // namespace solvmat
