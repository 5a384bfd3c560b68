#pragma once

#include "solvmat/rational.hpp"

namespace solvmat {

/// Finite approximation of a p-adic number: p^valuation * unit_digits with
/// unit_digits a unit mod p^precision. The reported precision is a sound
/// lower bound: the true value agrees with the represented one modulo
/// p^(valuation + precision).
///
/// Two zero-like states exist: exact zero, and a "certified zero" produced
/// when cancellation consumed every certified digit (|x| <= p^-certified).
class PAdicTrunc {
public:
    static constexpr int kDefaultPrecision = 64;

    static PAdicTrunc zero(Int p);
    static PAdicTrunc certified_zero(Int p, long certified_exponent);
    static PAdicTrunc from_rational(const Rational& x, const Int& p,
                                    int precision = kDefaultPrecision);

    const Int& prime() const { return p_; }
    long valuation() const { return valuation_; }
    const Int& unit_digits() const { return unit_; }
    int precision() const { return precision_; }

    bool is_zero() const { return kind_ != Kind::Nonzero; }
    bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
    /// True when cancellation exhausted the certified digits.
    bool precision_exhausted() const { return kind_ == Kind::CertifiedZero; }
    /// For a certified zero, the exponent A with |x| <= p^-A.
    long certified_zero_exponent() const { return valuation_; }

    /// The represented value p^v * unit as an exact rational.
    Rational to_rational() const;

    /// The value scaled by p^delta: an exact valuation shift.
    PAdicTrunc shifted(long delta) const;

    friend PAdicTrunc trunc_add(const PAdicTrunc& a, const PAdicTrunc& b);
    friend PAdicTrunc trunc_mul(const PAdicTrunc& a, const PAdicTrunc& b);
    friend PAdicTrunc trunc_neg(const PAdicTrunc& a);

    /// v_p(a - b), saturated at the common certified precision.
    friend long trunc_difference_valuation(const PAdicTrunc& a, const PAdicTrunc& b);

private:
    enum class Kind { ExactZero, CertifiedZero, Nonzero };

    PAdicTrunc(Kind kind, Int p, long valuation, Int unit, int precision)
        : kind_(kind), p_(std::move(p)), valuation_(valuation), unit_(std::move(unit)),
          precision_(precision) {}

    static PAdicTrunc normalized(const Int& p, long base_valuation, Int digits,
                                 long certified_abs_exponent);

    Kind kind_;
    Int p_;
    long valuation_;
    Int unit_;
    int precision_;
};

}  // namespace solvmat
