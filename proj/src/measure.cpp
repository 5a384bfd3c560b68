#include "solvmat/measure.hpp"

#include <algorithm>

namespace solvmat {

MeasureSpec::MeasureSpec(int n, Int p, std::vector<Atom> support)
    : n_(n), p_(std::move(p)), support_(std::move(support)) {
    if (support_.empty()) throw InvalidMeasure("support is empty");
    Rational total = 0;
    for (const Atom& a : support_) {
        if (a.g.n() != n_ || a.g.p() != p_)
            throw InvalidMeasure("support element does not match the measure's n and p");
        if (a.prob <= 0) throw InvalidMeasure("probabilities must be positive");
        total += a.prob;
    }
    if (total != 1) throw InvalidMeasure("probabilities must sum to exactly 1");
    for (std::size_t i = 0; i < support_.size(); ++i)
        for (std::size_t j = i + 1; j < support_.size(); ++j)
            if (support_[i].g == support_[j].g)
                throw InvalidMeasure("support elements must be distinct");
}

Rational MeasureSpec::coordinate_mean(int i) const {
    Rational mean = 0;
    for (const Atom& a : support_) mean += a.prob * a.g.x()[i];
    return mean;
}

bool DisplacementMatrix::column_consistent_at(int i, int j) const {
    for (int k = i + 1; k < j; ++k)
        if (sign(k, j) != sign(i, j)) return false;
    return true;
}

DisplacementMatrix displacement(const MeasureSpec& mu) {
    DisplacementMatrix d;
    d.n = mu.n();
    d.means.resize(d.n);
    for (int i = 0; i < d.n; ++i) d.means[i] = mu.coordinate_mean(i);
    d.entries.assign(static_cast<std::size_t>(d.n) * d.n, Rational(0));
    for (int i = 0; i < d.n; ++i)
        for (int j = i + 1; j < d.n; ++j) d.entries[i * d.n + j] = d.means[i] - d.means[j];

    d.non_zero = true;
    for (int i = 0; i + 1 < d.n; ++i)
        if (d.at(i, i + 1) == 0) d.non_zero = false;

    auto same_sign = [](int a, int b) { return a == b; };
    d.column_homogeneous = d.row_homogeneous = true;
    for (int j = 1; j < d.n; ++j)
        for (int i = 0; i + 1 < j; ++i)
            if (!same_sign(d.sign(i, j), d.sign(i + 1, j))) d.column_homogeneous = false;
    for (int i = 0; i + 1 < d.n; ++i)
        for (int j = i + 2; j < d.n; ++j)
            if (!same_sign(d.sign(i, j), d.sign(i, j - 1))) d.row_homogeneous = false;
    d.homogeneous = true;
    int first = d.n > 1 ? d.sign(0, 1) : 0;
    for (int i = 0; i < d.n; ++i)
        for (int j = i + 1; j < d.n; ++j)
            if (d.sign(i, j) != first) d.homogeneous = false;
    return d;
}

MeasureSpec reflect(const MeasureSpec& mu) {
    std::vector<MeasureSpec::Atom> support;
    for (const MeasureSpec::Atom& a : mu.support())
        support.push_back({sd_inverse(a.g), a.prob});
    return MeasureSpec(mu.n(), mu.p(), std::move(support));
}

TrivialityVerdict check_triviality(const MeasureSpec& mu) {
    TrivialityVerdict v;
    DisplacementMatrix d = displacement(mu);

    v.zero_displacement = true;
    for (int i = 0; i < d.n; ++i)
        for (int j = i + 1; j < d.n; ++j)
            if (d.at(i, j) != 0) v.zero_displacement = false;

    v.abelian_support = true;
    for (std::size_t a = 0; a < mu.support().size() && v.abelian_support; ++a)
        for (std::size_t b = a + 1; b < mu.support().size(); ++b) {
            const SemiDirectElement &g = mu.support()[a].g, &h = mu.support()[b].g;
            if (!(sd_multiply(g, h) == sd_multiply(h, g))) {
                v.abelian_support = false;
                break;
            }
        }

    auto entry_vanishes = [&mu](int p, int q) {
        for (const MeasureSpec::Atom& a : mu.support())
            if (a.g.f().at(p, q) != 0) return false;
        return true;
    };

    v.trivial = true;
    v.strict_trivial = true;
    for (int p = 0; p < d.n; ++p)
        for (int q = p + 1; q < d.n; ++q) {
            if (d.at(p, q) == 0) continue;
            if (!entry_vanishes(p, q)) {
                if (v.trivial) {
                    v.trivial = false;
                    v.strict_trivial = false;
                    v.witness_entry = {p, q};
                    for (std::size_t a = 0; a < mu.support().size(); ++a)
                        if (mu.support()[a].g.f().at(p, q) != 0) {
                            v.witness_atom = a;
                            break;
                        }
                }
                continue;
            }
            // Entrywise condition held; strict mode wants the whole block.
            for (int i = p; i < q && v.strict_trivial; ++i)
                for (int j = i + 1; j <= q; ++j)
                    if (!entry_vanishes(i, j)) {
                        v.strict_trivial = false;
                        break;
                    }
        }
    return v;
}

}  // namespace solvmat
