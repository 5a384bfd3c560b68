#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "solvmat/metrics.hpp"
#include "solvmat/semidirect.hpp"
#include "solvmat/word.hpp"

#include <random>

using namespace solvmat;

namespace {

SemiDirectElement random_sd(std::mt19937_64& rng, int n, const Int& p) {
    std::uniform_int_distribution<long> xs(-2, 2);
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> exp(0, 2);
    std::vector<long> x(n);
    for (long& v : x) v = xs(rng);
    TriangularMatrix f(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            f.set(i, j, Rational(num(rng)) * pow_rational(p, -exp(rng)));
    return SemiDirectElement(std::move(x), p, std::move(f));
}

FGElement random_fg(std::mt19937_64& rng, int n, const PrimeSet& P, int word_len) {
    std::vector<GenSymbol> gens = generator_set(n, P);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    GeneratorWord w;
    for (int i = 0; i < word_len; ++i) w.push_back(gens[pick(rng)]);
    return word_evaluate(w, n, P);
}

}  // namespace

TEST_CASE("membership certification") {
    PrimeSet P2({2});
    TriangularMatrix ok(2, {Rational(2), Rational(3, 4), Rational(0), Rational(1, 8)});
    FGElement f = fg_certify(ok, P2);
    CHECK(f.exponent(0, 0, 0) == 1);
    CHECK(f.exponent(1, 1, 0) == -3);

    TriangularMatrix bad_diag(2, {Rational(3), Rational(0), Rational(0), Rational(1)});
    CHECK_THROWS_AS(fg_certify(bad_diag, P2), NotMember);
    TriangularMatrix bad_denom(2, {Rational(1), Rational(1, 5), Rational(0), Rational(1)});
    CHECK_THROWS_AS(fg_certify(bad_denom, P2), NotMember);
}

TEST_CASE("semidirect group axioms") {
    std::mt19937_64 rng(11);
    const Int p(2);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        SemiDirectElement a = random_sd(rng, n, p), b = random_sd(rng, n, p),
                          c = random_sd(rng, n, p);
        CHECK(sd_multiply(sd_multiply(a, b), c) == sd_multiply(a, sd_multiply(b, c)));
        SemiDirectElement e = SemiDirectElement::identity(n, p);
        CHECK(sd_multiply(a, sd_inverse(a)) == e);
        CHECK(sd_multiply(sd_inverse(a), a) == e);
        CHECK(sd_multiply(a, e) == a);
    }
}

TEST_CASE("matrix form round trip") {
    std::mt19937_64 rng(22);
    const Int p(3);
    PrimeSet P({3});
    for (int trial = 0; trial < 100; ++trial) {
        SemiDirectElement a = random_sd(rng, 3, p);
        FGElement m = sd_to_matrix(a);
        CHECK(sd_from_matrix(m) == a);
        CHECK(m.primes() == P);
    }
}

TEST_CASE("increasing-sequence catalog") {
    auto mfi2 = enumerate_mfi(2);
    REQUIRE(mfi2.size() == 2);
    CHECK(mfi2[0] == std::vector<int>{0, 2});
    CHECK(mfi2[1] == std::vector<int>{0, 1, 2});
    CHECK(enumerate_mfi(3).size() == 4);
    CHECK(enumerate_mfi(5).size() == 16);
}

TEST_CASE("combinatorial expansion equals iterated multiplication") {
    std::mt19937_64 rng(33);
    const Int p(2);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        int m = 1 + static_cast<int>(rng() % 8);
        std::vector<SemiDirectElement> incs;
        for (int k = 0; k < m; ++k) incs.push_back(random_sd(rng, n, p));
        SemiDirectElement prod = incs[0];
        for (int k = 1; k < m; ++k) prod = sd_multiply(prod, incs[k]);
        for (int i = 0; i < n; ++i)
            for (int r = 1; i + r < n && r <= m; ++r)
                CHECK(product_expansion(incs, i, r) == prod.f().at(i, i + r));
    }
}

TEST_CASE("triangular inverse agrees along three routes") {
    std::mt19937_64 rng(44);
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> dexp(-2, 2);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 2 + static_cast<int>(rng() % 4);
        TriangularMatrix m(n);
        bool unitriangular = trial % 2 == 0;
        for (int i = 0; i < n; ++i) {
            if (!unitriangular) m.set(i, i, pow_rational(2, dexp(rng)));
            for (int j = i + 1; j < n; ++j) m.set(i, j, Rational(num(rng), 2));
        }
        TriangularMatrix inv = tri_inverse(m);
        CHECK((m * inv).is_identity());
        CHECK((inv * m).is_identity());
        if (unitriangular) {
            TriangularMatrix neumann = ut_inverse_neumann(m);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) CHECK(neumann.at(i, j) == inv.at(i, j));
        }
    }
}

TEST_CASE("factorization re-evaluates exactly within the length bound") {
    std::mt19937_64 rng(55);
    std::vector<PrimeSet> sets = {PrimeSet({2}), PrimeSet({2, 3})};
    for (int trial = 0; trial < 500; ++trial) {
        const PrimeSet& P = sets[trial % 2];
        int n = 2 + static_cast<int>(rng() % 2);
        FGElement f = random_fg(rng, n, P, 1 + static_cast<int>(rng() % 30));
        GeneratorWord w = factorize(f);
        FGElement back = word_evaluate(w, n, P);
        CHECK(back.matrix().key() == f.matrix().key());
        SandwichConstants c = sandwich_constants(n, P);
        CHECK(Int(w.size()) <= c.A_n * Int(length_estimate(f)));
    }
}

TEST_CASE("generator tokens parse back") {
    PrimeSet P({2, 3});
    for (const GenSymbol& g : generator_set(3, P)) CHECK(GenSymbol::parse(g.token()) == g);
}

TEST_CASE("exact word length by breadth-first search") {
    PrimeSet P2({2});
    TriangularMatrix th2(2, {Rational(1), Rational(2), Rational(0), Rational(1)});
    CHECK(bfs_word_length(fg_certify(th2, P2), 4) == 2);
    TriangularMatrix id(2);
    CHECK(bfs_word_length(fg_certify(id, P2), 1) == 0);
    TriangularMatrix far(2, {Rational(1), Rational(1024), Rational(0), Rational(1)});
    CHECK_THROWS_AS(bfs_word_length(fg_certify(far, P2), 3), NotWithinRadius);
}
