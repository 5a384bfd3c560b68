#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "solvmat/measure.hpp"
#include "solvmat/metrics.hpp"
#include "solvmat/walk.hpp"

#include <cmath>
#include <random>

using namespace solvmat;

namespace {

TriangularMatrix theta12(int n, Rational c) {
    TriangularMatrix m(n);
    m.set(0, 1, std::move(c));
    return m;
}

SemiDirectElement sd(std::vector<long> x, Int p, TriangularMatrix f) {
    return SemiDirectElement(std::move(x), std::move(p), std::move(f));
}

MeasureSpec point_mass(const SemiDirectElement& g) {
    return MeasureSpec(g.n(), g.p(), {{g, Rational(1)}});
}

std::vector<long> range_checkpoints(long from, long to, long stride) {
    std::vector<long> c;
    for (long m = from; m <= to; m += stride) c.push_back(m);
    return c;
}

}  // namespace

TEST_CASE("measure validation rejects malformed support") {
    const SemiDirectElement a = sd({1, 0}, 2, TriangularMatrix(2));
    const SemiDirectElement b = sd({0, 1}, 2, TriangularMatrix(2));
    CHECK_THROWS_AS(MeasureSpec(2, 2, {{a, Rational(1, 2)}}), InvalidMeasure);
    CHECK_THROWS_AS(MeasureSpec(2, 2, {{a, Rational(1, 2)}, {b, Rational(1, 3)}}),
                    InvalidMeasure);
    CHECK_THROWS_AS(MeasureSpec(2, 2, {{a, Rational(0)}, {b, Rational(1)}}), InvalidMeasure);
    CHECK_THROWS_AS(MeasureSpec(2, 2, {{a, Rational(1, 2)}, {a, Rational(1, 2)}}),
                    InvalidMeasure);
    CHECK_THROWS_AS(MeasureSpec(2, 2, {}), InvalidMeasure);
    const MeasureSpec ok(2, 2, {{a, Rational(1, 2)}, {b, Rational(1, 2)}});
    CHECK(ok.coordinate_mean(0) == Rational(1, 2));
    CHECK(ok.coordinate_mean(1) == Rational(1, 2));
}

TEST_CASE("displacement: worked examples and reflection negation") {
    // Symmetric shifts: zero displacement.
    const MeasureSpec sym(2, 2,
                          {{sd({1, 0}, 2, TriangularMatrix(2)), Rational(1, 2)},
                           {sd({0, 1}, 2, TriangularMatrix(2)), Rational(1, 2)}});
    const DisplacementMatrix ds = displacement(sym);
    CHECK(ds.at(0, 1) == 0);
    CHECK_FALSE(ds.non_zero);

    // Point mass: deterministic mean.
    const DisplacementMatrix dp = displacement(point_mass(sd({1, 0}, 2, theta12(2, 1))));
    CHECK(dp.at(0, 1) == 1);
    CHECK(dp.non_zero);
    CHECK(dp.homogeneous);

    // n=3 with means (0,1,2): homogeneous negative, additive D_13 = D_12 + D_23.
    const MeasureSpec m3(3, 2,
                         {{sd({0, 1, 2}, 2, TriangularMatrix(3)), Rational(1, 2)},
                          {sd({0, 1, 2}, 2, theta12(3, 1)), Rational(1, 2)}});
    const DisplacementMatrix d3 = displacement(m3);
    CHECK(d3.at(0, 1) == -1);
    CHECK(d3.at(1, 2) == -1);
    CHECK(d3.at(0, 2) == -2);
    CHECK(d3.at(0, 2) == d3.at(0, 1) + d3.at(1, 2));
    CHECK(d3.homogeneous);

    // Reflection negates displacement exactly, on a lopsided random measure.
    std::mt19937_64 rng(7);
    std::vector<MeasureSpec::Atom> atoms;
    Rational total = 0;
    for (int a = 0; a < 4; ++a) {
        TriangularMatrix f(3);
        f.set(0, 1, Rational(static_cast<long>(rng() % 7) - 3));
        f.set(1, 2, Rational(static_cast<long>(rng() % 7) - 3, 2));
        std::vector<long> x = {static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2,
                               static_cast<long>(rng() % 5) - 2};
        const Rational w = a == 3 ? 1 - total : Rational(1, 4 + a);
        total += w;
        atoms.push_back({sd(std::move(x), 2, std::move(f)), w});
    }
    const MeasureSpec mu(3, 2, atoms);
    const DisplacementMatrix d = displacement(mu);
    const DisplacementMatrix dr = displacement(reflect(mu));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) CHECK(dr.at(i, j) == -d.at(i, j));
}

TEST_CASE("deterministic walk: exact geometric-sum entries and reproducibility") {
    const std::vector<long> cps = range_checkpoints(1, 12, 1);

    // Positive shift: phi12 at step m is 2^m - 1.
    const MeasureSpec pos = point_mass(sd({1, 0}, 2, theta12(2, 1)));
    const std::vector<WalkState> tp = run_walk(pos, 12, 42, cps, 4);
    for (const WalkState& s : tp) {
        CHECK(s.phi.at(0, 1) == pow_rational(2, s.m) - 1);
        CHECK(s.y[0] == s.m);
        CHECK(s.y[1] == 0);
    }

    // Negative shift: phi12 at step m is 2 - 2^(1-m).
    const MeasureSpec neg = point_mass(sd({-1, 0}, 2, theta12(2, 1)));
    const std::vector<WalkState> tn = run_walk(neg, 12, 42, cps, 4);
    for (const WalkState& s : tn)
        CHECK(s.phi.at(0, 1) == 2 - pow_rational(2, 1 - s.m));

    // Point mass at g gives g^m exactly.
    SemiDirectElement g = sd({1, -1}, 3, theta12(2, Rational(2, 3)));
    SemiDirectElement acc = SemiDirectElement::identity(2, 3);
    const std::vector<WalkState> tg = run_walk(point_mass(g), 6, 0, range_checkpoints(1, 6, 1));
    for (const WalkState& s : tg) {
        acc = sd_multiply(acc, g);
        CHECK(s.phi == acc.f());
        CHECK(s.y == acc.x());
    }

    // Identical seeds reproduce identical states; shadows track the exact entry.
    const std::vector<WalkState> tp2 = run_walk(pos, 12, 42, cps, 4);
    for (std::size_t k = 0; k < tp.size(); ++k) {
        CHECK(tp[k].phi == tp2[k].phi);
        CHECK(tp[k].y == tp2[k].y);
        CHECK(tn[k].real_shadow(0, 1) ==
              doctest::Approx(static_cast<double>(tn[k].phi.at(0, 1))).epsilon(1e-12));
    }
}

TEST_CASE("walk sampling matches an independent replay of the pinned generator") {
    // Three atoms with probabilities 1/2, 1/3, 1/6: replay the thresholded
    // mt19937_64 draws and the group law by hand, compare checkpoint states.
    const std::vector<SemiDirectElement> atoms = {
        sd({1, 0}, 2, theta12(2, 1)),
        sd({-1, 1}, 2, theta12(2, Rational(-1, 2))),
        sd({0, 0}, 2, theta12(2, 3)),
    };
    const MeasureSpec mu(2, 2,
                         {{atoms[0], Rational(1, 2)},
                          {atoms[1], Rational(1, 3)},
                          {atoms[2], Rational(1, 6)}});
    const std::uint64_t seed = 20250826;
    const long steps = 300;
    const std::vector<long> cps = range_checkpoints(50, steps, 50);
    const std::vector<WalkState> traj = run_walk(mu, steps, seed, cps, 100);

    const Int two64 = Int(1) << 64;
    std::vector<Int> thresholds;
    Rational cumulative = 0;
    for (const MeasureSpec::Atom& a : mu.support()) {
        cumulative += a.prob;
        thresholds.push_back(boost::multiprecision::numerator(cumulative) * two64 /
                             boost::multiprecision::denominator(cumulative));
    }
    std::mt19937_64 rng(seed);
    SemiDirectElement state = SemiDirectElement::identity(2, 2);
    std::size_t next = 0;
    for (long m = 1; m <= steps && next < traj.size(); ++m) {
        const Int draw = Int(rng());
        std::size_t pick = 0;
        while (pick + 1 < thresholds.size() && draw >= thresholds[pick]) ++pick;
        state = sd_multiply(state, atoms[pick]);
        if (m == traj[next].m) {
            CHECK(traj[next].y == state.x());
            CHECK(traj[next].phi == state.f());
            ++next;
        }
    }
    CHECK(next == traj.size());
}

TEST_CASE("boundary detection on the deterministic walks") {
    const std::vector<long> cps = range_checkpoints(10, 200, 10);

    // Positive displacement: phi12 = 2^m - 1 converges 2-adically to -1.
    const MeasureSpec pos = point_mass(sd({1, 0}, 2, theta12(2, 1)));
    const std::vector<WalkState> tp = run_walk(pos, 200, 1, cps);
    const BoundaryPoint bp = detect_boundary(tp, displacement(pos), 2, 1e-9, 30, 50);
    REQUIRE(bp.at(0, 1).tag == BoundaryEntry::Tag::PAdic);
    REQUIRE(bp.at(0, 1).padic.has_value());
    // Representative agrees with -1 to the certified digits: v_2(b + 1) >= 30.
    const Rational diff = bp.at(0, 1).value + 1;
    REQUIRE(diff != 0);
    CHECK(*padic_valuation(diff, 2) >= 30);
    CHECK(trunc_difference_valuation(*bp.at(0, 1).padic,
                                     PAdicTrunc::from_rational(-1, 2, 30)) >= 30);

    // Negative displacement: phi12 -> 2 in R.
    const MeasureSpec neg = point_mass(sd({-1, 0}, 2, theta12(2, 1)));
    const std::vector<WalkState> tn = run_walk(neg, 200, 1, cps);
    const BoundaryPoint bn = detect_boundary(tn, displacement(neg), 2, 1e-9, 30, 50);
    REQUIRE(bn.at(0, 1).tag == BoundaryEntry::Tag::Real);
    CHECK(std::abs(bn.at(0, 1).real_value - 2.0) < 1e-9);
    CHECK(bn.at(0, 1).cauchy_bound < 1e-9);
    // The exact representative is the final checkpoint value 2 - 2^(1-200).
    CHECK(bn.at(0, 1).value == 2 - pow_rational(2, 1 - 200));

    // Zero displacement: entry left Undefined.
    const MeasureSpec sym(2, 2,
                          {{sd({1, 0}, 2, TriangularMatrix(2)), Rational(1, 2)},
                           {sd({0, 1}, 2, TriangularMatrix(2)), Rational(1, 2)}});
    const std::vector<WalkState> ts = run_walk(sym, 200, 1, cps);
    const BoundaryPoint bs = detect_boundary(ts, displacement(sym), 2, 1e-9, 30, 50);
    CHECK(bs.at(0, 1).tag == BoundaryEntry::Tag::Undefined);

    // Too few steps for the p-adic digit requirement: NotConverged.
    const std::vector<long> early = range_checkpoints(2, 20, 2);
    const std::vector<WalkState> tshort = run_walk(pos, 20, 1, early);
    CHECK_THROWS_AS(detect_boundary(tshort, displacement(pos), 2, 1e-9, 30, 10), NotConverged);
}

TEST_CASE("gamma action: identity, shear, and equivariance") {
    const MeasureSpec neg = point_mass(sd({-1, 0}, 2, theta12(2, 1)));
    const std::vector<WalkState> tn = run_walk(neg, 200, 1, range_checkpoints(10, 200, 10));
    const BoundaryPoint b = detect_boundary(tn, displacement(neg), 2, 1e-9, 30, 50);

    const BoundaryPoint same = gamma_action(SemiDirectElement::identity(2, 2), b);
    CHECK(same.at(0, 1).value == b.at(0, 1).value);
    CHECK(same.at(0, 1).tag == b.at(0, 1).tag);

    // ((0,0), theta12(1)) shifts the (1,2) coordinate by 1.
    const BoundaryPoint shifted = gamma_action(sd({0, 0}, 2, theta12(2, 1)), b);
    CHECK(shifted.at(0, 1).value == b.at(0, 1).value + 1);
    CHECK(shifted.at(0, 1).real_value == doctest::Approx(b.at(0, 1).real_value + 1));

    // (g h) . b = g . (h . b) exactly on random compatible elements.
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto rnd = [&rng]() {
            return Rational(static_cast<long>(rng() % 9) - 4) *
                   pow_rational(2, static_cast<long>(rng() % 5) - 2);
        };
        const SemiDirectElement g =
            sd({static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2}, 2,
               theta12(2, rnd()));
        const SemiDirectElement h =
            sd({static_cast<long>(rng() % 5) - 2, static_cast<long>(rng() % 5) - 2}, 2,
               theta12(2, rnd()));
        const BoundaryPoint lhs = gamma_action(sd_multiply(g, h), b);
        const BoundaryPoint rhs = gamma_action(g, gamma_action(h, b));
        CHECK(lhs.at(0, 1).value == rhs.at(0, 1).value);
    }
}

TEST_CASE("approximation map and error series on the deterministic walk") {
    const long steps = 60;
    const MeasureSpec neg = point_mass(sd({-1, 0}, 2, theta12(2, 1)));
    const std::vector<long> cps = range_checkpoints(5, steps, 5);
    const std::vector<WalkState> traj = run_walk(neg, steps, 9, cps);
    const BoundaryPoint b = detect_boundary(traj, displacement(neg), 2, 1e-9, 30, 20);

    // t = floor(m * mean) and the dyadic truncation of the representative:
    // with b12 = 2 - 2^(1-steps), T12 at scale m < steps is 2 - 2^|t1 - t2|... clamp:
    // T12 = 2^(-m) * floor(2^m * b12) = 2 - 2^(-m).
    for (long m : {5L, 20L, 40L}) {
        const Approximation pi = approx_map(b, neg, m);
        CHECK_FALSE(pi.generic_fallback);
        CHECK(pi.g.x() == std::vector<long>{-m, 0});
        CHECK(pi.g.f().at(0, 1) == 2 - pow_rational(2, -m));
    }
    const Approximation pi0 = approx_map(b, neg, 0);
    CHECK(pi0.g.x() == std::vector<long>{0, 0});

    // Error gauge is the constant 1 before the detection endpoint: the error
    // element is ((0,0), -2^(-m) scaled to the -1 unit), span 1. At the final
    // checkpoint the representative equals the state and the gauge is 0.
    const ErrorSeries es = error_series(traj, b, neg);
    REQUIRE(es.points.size() == cps.size());
    for (std::size_t k = 0; k + 1 < es.points.size(); ++k) {
        CHECK(es.points[k].first == cps[k]);
        CHECK(es.points[k].second == 1);
    }
    CHECK(es.points.back().second == 0);
}

TEST_CASE("triviality classifier: shortcuts and witness") {
    // Diagonal-only support: abelian, trivial.
    const MeasureSpec diag(2, 2,
                           {{sd({1, 0}, 2, TriangularMatrix(2)), Rational(1, 2)},
                            {sd({0, 1}, 2, TriangularMatrix(2)), Rational(1, 2)}});
    const TrivialityVerdict va = check_triviality(diag);
    CHECK(va.trivial);
    CHECK(va.abelian_support);

    // Zero displacement with non-commuting shears: still trivial.
    const MeasureSpec zero(2, 2,
                           {{sd({0, 0}, 2, theta12(2, 1)), Rational(1, 2)},
                            {sd({0, 0}, 2, theta12(2, -1)), Rational(1, 2)}});
    const TrivialityVerdict vz = check_triviality(zero);
    CHECK(vz.trivial);
    CHECK(vz.zero_displacement);

    // D12 = 1 with a support shear f12 = 1: non-trivial with witness (1,2).
    const MeasureSpec wit = point_mass(sd({1, 0}, 2, theta12(2, 1)));
    const TrivialityVerdict vw = check_triviality(wit);
    CHECK_FALSE(vw.trivial);
    REQUIRE(vw.witness_entry.has_value());
    CHECK(*vw.witness_entry == std::pair<int, int>{0, 1});
    REQUIRE(vw.witness_atom.has_value());
    CHECK(wit.support()[*vw.witness_atom].g.f().at(0, 1) != 0);
}

TEST_CASE("strong law of large numbers for the shift marginals (small scale)") {
    // n=3 benchmark-style measure: x = (0,1,2), shears in {0,1}, uniform.
    std::vector<MeasureSpec::Atom> atoms;
    for (int mask = 0; mask < 8; ++mask) {
        TriangularMatrix f(3);
        f.set(0, 1, Rational(mask & 1));
        f.set(1, 2, Rational((mask >> 1) & 1));
        f.set(0, 2, Rational((mask >> 2) & 1));
        atoms.push_back({sd({0, 1, 2}, 2, std::move(f)), Rational(1, 8)});
    }
    const MeasureSpec mu(3, 2, atoms);
    const long m = 4000;
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const std::vector<WalkState> t = run_walk(mu, m, seed, {m});
        for (int i = 0; i < 3; ++i) {
            const double mean = static_cast<double>(mu.coordinate_mean(i));
            CHECK(std::abs(static_cast<double>(t.back().y[i]) / m - mean) < 0.1);
        }
    }
}
