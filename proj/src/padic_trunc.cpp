#include "solvmat/padic_trunc.hpp"

#include <algorithm>
#include <limits>

namespace solvmat {

namespace {

Int pow_int(const Int& p, long e) {
    Int out = 1;
    for (long i = 0; i < e; ++i) out *= p;
    return out;
}

// a^{-1} mod m via extended Euclid; a must be a unit mod m.
Int mod_inverse(Int a, const Int& m) {
    Int old_r = a % m, r = m;
    if (old_r < 0) old_r += m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::domain_error("not invertible");
    if (old_s < 0) old_s += m;
    return old_s;
}

}  // namespace

PAdicTrunc PAdicTrunc::zero(Int p) {
    return PAdicTrunc(Kind::ExactZero, std::move(p), 0, 0, kDefaultPrecision);
}

PAdicTrunc PAdicTrunc::certified_zero(Int p, long certified_exponent) {
    return PAdicTrunc(Kind::CertifiedZero, std::move(p), certified_exponent, 0, 0);
}

PAdicTrunc PAdicTrunc::from_rational(const Rational& x, const Int& p, int precision) {
    if (x == 0) return zero(p);
    long v = *padic_valuation(x, p);
    // x = p^v * a/c with p coprime to a and c.
    Rational unit = x * pow_rational(p, -v);
    Int pk = pow_int(p, precision);
    Int a = numerator(unit) % pk;
    if (a < 0) a += pk;
    Int digits = a * mod_inverse(denominator(unit), pk) % pk;
    return PAdicTrunc(Kind::Nonzero, p, v, digits, precision);
}

Rational PAdicTrunc::to_rational() const {
    if (is_zero()) return Rational(0);
    return Rational(unit_) * pow_rational(p_, valuation_);
}

PAdicTrunc PAdicTrunc::normalized(const Int& p, long base_valuation, Int digits,
                                  long certified_abs_exponent) {
    // Value is digits * p^base_valuation, certified modulo p^certified_abs_exponent.
    long window = certified_abs_exponent - base_valuation;
    if (window <= 0) return certified_zero(p, certified_abs_exponent);
    Int pk = pow_int(p, window);
    digits %= pk;
    if (digits < 0) digits += pk;
    if (digits == 0) return certified_zero(p, certified_abs_exponent);
    long shift = 0;
    while (digits % p == 0) {
        digits /= p;
        ++shift;
    }
    long v = base_valuation + shift;
    return PAdicTrunc(Kind::Nonzero, p, v, digits,
                      static_cast<int>(certified_abs_exponent - v));
}

PAdicTrunc trunc_add(const PAdicTrunc& a, const PAdicTrunc& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("prime mismatch");
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    long abs_a = a.is_zero() ? a.valuation_ : a.valuation_ + a.precision_;
    long abs_b = b.is_zero() ? b.valuation_ : b.valuation_ + b.precision_;
    long certified = std::min(abs_a, abs_b);
    if (a.is_zero() && b.is_zero()) return PAdicTrunc::certified_zero(a.p_, certified);
    if (a.is_zero()) return PAdicTrunc::normalized(b.p_, b.valuation_, b.unit_, certified);
    if (b.is_zero()) return PAdicTrunc::normalized(a.p_, a.valuation_, a.unit_, certified);
    long base = std::min(a.valuation_, b.valuation_);
    Int digits = a.unit_ * pow_int(a.p_, a.valuation_ - base) +
                 b.unit_ * pow_int(b.p_, b.valuation_ - base);
    return PAdicTrunc::normalized(a.p_, base, std::move(digits), certified);
}

PAdicTrunc trunc_mul(const PAdicTrunc& a, const PAdicTrunc& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("prime mismatch");
    if (a.is_exact_zero() || b.is_exact_zero()) return PAdicTrunc::zero(a.p_);
    if (a.is_zero() || b.is_zero()) {
        // |ab| <= p^-(A + v_other) where the nonzero factor contributes its valuation.
        long va = a.is_zero() ? a.valuation_ : a.valuation_;
        long vb = b.is_zero() ? b.valuation_ : b.valuation_;
        return PAdicTrunc::certified_zero(a.p_, va + vb);
    }
    long v = a.valuation_ + b.valuation_;
    int prec = std::min(a.precision_, b.precision_);
    Int digits = a.unit_ * b.unit_;
    return PAdicTrunc::normalized(a.p_, v, std::move(digits), v + prec);
}

PAdicTrunc trunc_neg(const PAdicTrunc& a) {
    if (a.is_zero()) return a;
    Int pk = 1;
    for (int i = 0; i < a.precision_; ++i) pk *= a.p_;
    return PAdicTrunc(PAdicTrunc::Kind::Nonzero, a.p_, a.valuation_, pk - a.unit_, a.precision_);
}

PAdicTrunc PAdicTrunc::shifted(long delta) const {
    if (kind_ == Kind::ExactZero) return *this;
    PAdicTrunc out = *this;
    out.valuation_ += delta;
    return out;
}

long trunc_difference_valuation(const PAdicTrunc& a, const PAdicTrunc& b) {
    PAdicTrunc d = trunc_add(a, trunc_neg(b));
    if (d.is_zero()) return d.is_exact_zero() ? std::numeric_limits<long>::max()
                                              : d.certified_zero_exponent();
    return d.valuation();
}

}  // namespace solvmat
