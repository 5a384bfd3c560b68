#include "solvmat/metrics.hpp"
#include "solvmat/plocal.hpp"

#include <cmath>

namespace solvmat {

long length_estimate(const FGElement& f) {
    long total = 0;
    for (int i = 0; i < f.n(); ++i)
        for (std::size_t r = 0; r < f.primes().size(); ++r)
            total += std::labs(f.exponent(i, i, r));
    for (int i = 0; i < f.n(); ++i)
        for (int j = i + 1; j < f.n(); ++j)
            total += span(PLocalNumber(f.matrix().at(i, j), f.primes()));
    return total;
}

long sd_length_estimate(const SemiDirectElement& a) {
    long total = 0;
    for (long xi : a.x()) total += std::labs(xi);
    PrimeSet P({a.p()});
    for (int i = 0; i < a.n(); ++i)
        for (int j = i + 1; j < a.n(); ++j)
            total += span(PLocalNumber(a.f().at(i, j), P));
    return total;
}

long opnorm_padic_exponent(const TriangularMatrix& m, const Int& p) {
    bool any = false;
    long best = 0;
    for (int i = 0; i < m.n(); ++i)
        for (int j = i; j < m.n(); ++j) {
            auto v = padic_valuation(m.at(i, j), p);
            if (!v) continue;
            if (!any || -*v > best) best = -*v;
            any = true;
        }
    return any ? best : 0;
}

RealNorm opnorm_real(const TriangularMatrix& m, double tol) {
    const int n = m.n();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    double max_abs = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            a[i][j] = static_cast<double>(m.at(i, j));
            max_abs = std::max(max_abs, std::fabs(a[i][j]));
        }

    RealNorm out;
    out.lower = max_abs;
    out.upper = n * max_abs;

    // Power iteration on b = a^T a.
    std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) b[i][j] += a[k][i] * a[k][j];

    std::vector<double> v(n, 1.0);
    double lambda = 0.0;
    const int cap = 10000;
    for (int it = 1; it <= cap; ++it) {
        std::vector<double> w(n, 0.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) w[i] += b[i][j] * v[j];
        double norm = 0.0;
        for (double x : w) norm = std::max(norm, std::fabs(x));
        if (norm == 0.0) {  // m^T m annihilated v; cannot happen for invertible m
            lambda = 0.0;
            out.iterations = it;
            break;
        }
        for (double& x : w) x /= norm;
        double rayleigh_num = 0.0, rayleigh_den = 0.0;
        for (int i = 0; i < n; ++i) {
            double bw = 0.0;
            for (int j = 0; j < n; ++j) bw += b[i][j] * w[j];
            rayleigh_num += w[i] * bw;
            rayleigh_den += w[i] * w[i];
        }
        double next = rayleigh_num / rayleigh_den;
        out.iterations = it;
        if (it > 1 && std::fabs(next - lambda) <= tol * std::fabs(next)) {
            lambda = next;
            out.converged = true;
            break;
        }
        lambda = next;
        v = std::move(w);
    }
    out.value = std::sqrt(lambda);
    // The bracket is a hard certificate; clamp rounding drift into it.
    out.value = std::min(std::max(out.value, out.lower), out.upper);
    return out;
}

double LengthReport::padic_part() const {
    double total = 0.0;
    for (const auto& [p, part] : per_prime)
        total += (part.forward_exponent + part.inverse_exponent) *
                 std::log(static_cast<double>(p));
    return total;
}

LengthReport adelic_length(const FGElement& f, int foreign_samples, double tol) {
    LengthReport report;
    report.estimate_l = length_estimate(f);
    TriangularMatrix inv = tri_inverse(f.matrix());

    for (std::size_t r = 0; r < f.primes().size(); ++r) {
        const Int& p = f.primes()[r];
        LengthReport::PrimePart part;
        part.forward_exponent = std::max(0L, opnorm_padic_exponent(f.matrix(), p));
        part.inverse_exponent = std::max(0L, opnorm_padic_exponent(inv, p));
        report.per_prime.emplace(p, part);
    }

    report.real_forward = std::max(0.0, std::log(opnorm_real(f.matrix(), tol).value));
    report.real_inverse = std::max(0.0, std::log(opnorm_real(inv, tol).value));
    report.adelic = report.padic_part() + report.real_forward + report.real_inverse;

    // Foreign primes provably contribute nothing; spot-check the first few
    // outside P and record them.
    Int q = 2;
    while (static_cast<int>(report.foreign_checked.size()) < foreign_samples) {
        if (is_prime(q) && !f.primes().contains(q)) {
            if (opnorm_padic_exponent(f.matrix(), q) > 0 || opnorm_padic_exponent(inv, q) > 0)
                throw std::logic_error("foreign prime contributes to the adelic length");
            report.foreign_checked.push_back(q);
        }
        ++q;
    }
    return report;
}

SandwichConstants sandwich_constants(int n, const PrimeSet& P) {
    SandwichConstants c;
    const double bP = static_cast<double>(P.product());

    c.A_n = 1;
    for (int t = 1; t < n; ++t) c.A_n *= 6 * (Int(P.size()) + 1);
    // For n = 1 the estimate is exact, so J = 1; otherwise the max of the
    // lower-bound and upper-bound constants from the word-metric proof.
    c.J = (n == 1) ? 1.0
                   : std::max(static_cast<double>(n) * (n - 1), static_cast<double>(c.A_n));

    const double off_entries = n * (n - 1) / 2.0;
    const double log_bP_e = 1.0 / std::log(bP);

    // Upper bound |f| <= S + T l^a: each of the n diagonal sums is bounded
    // through the exponent-sum estimate, each of the n(n-1)/2 off-diagonal
    // spans through the digit-span-vs-norm estimate with
    // K = 1 + log_bP(e)(1 + ln sqrt(n)) and M = log_bP(e).
    const double K_up = 1.0 + log_bP_e * (1.0 + 0.5 * std::log(static_cast<double>(n)));
    const double M_up = log_bP_e;
    c.S = c.J * (n * 3.0 * std::log(static_cast<double>(n)) / (2.0 * std::log(2.0)) +
                 off_entries * K_up);
    // For n = 1 both assembled terms vanish; extra additive slack only
    // loosens the upper bound, so keep S positive.
    c.S = std::max(c.S, 1.0);
    c.T = c.J * (n * 3.0 / std::log(2.0) + off_entries * M_up);

    // Lower bound Q + R l^a <= |f|: from l^a <= L + (K_low + M_low) l and
    // l <= J |f|, so R = 1/((K_low + M_low) J) and Q = -L R. Q must be
    // non-positive since l^a > 0 for some elements of word length 1.
    double sum_ln_p = 0.0;
    for (std::size_t r = 0; r < P.size(); ++r)
        sum_ln_p += std::log(static_cast<double>(P[r]));
    const double K_low = sum_ln_p * (1.0 + c.J * c.J);
    const double M_low = 1.0 + c.J * c.J;
    const double L = std::log(static_cast<double>(n)) + 2.0 * std::log(bP);
    c.R = 1.0 / ((K_low + M_low) * c.J);
    c.Q = -L * c.R;
    return c;
}

}  // namespace solvmat
