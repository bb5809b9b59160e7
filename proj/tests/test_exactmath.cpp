#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hmskit/exactmath.hpp"

#include <random>

using namespace hmskit;

namespace {

BigRational rand_q(std::mt19937_64 &rng, int bound = 9) {
    std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
    BigRational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

QPoly rand_qpoly(std::mt19937_64 &rng, int deg) {
    std::vector<BigRational> c;
    for (int i = 0; i <= deg; ++i) c.push_back(rand_q(rng));
    if (sgn(c.back()) == 0) c.back() = 1;
    return QPoly(c);
}

FFElem rand_ff(std::mt19937_64 &rng, const FiniteField &F) {
    return F.element(std::uniform_int_distribution<uint64_t>(0, F.order() - 1)(rng));
}

} // namespace

TEST_CASE("parse_rational accepts canonical and signed forms") {
    CHECK(parse_rational("3/6") == BigRational(1, 2));
    CHECK(parse_rational("-4/2") == BigRational(-2));
    CHECK(parse_rational(" +7 ") == BigRational(7));
    CHECK(parse_rational("0/5") == BigRational(0));
    CHECK(to_string(parse_rational("10/4")) == "5/2");
}

TEST_CASE("parse_rational rejects malformed input") {
    for (const char *bad : {"", "1/0", "abc", "1//2", "1/-2", "1.5", "2e3", "/3", "3/"})
        CHECK_THROWS_AS(parse_rational(bad), ParseError);
}

TEST_CASE("rational squares and squarefree integers") {
    CHECK(is_rational_square(BigRational(9, 4)).value() == BigRational(3, 2));
    CHECK(is_rational_square(BigRational(0)).value() == 0);
    CHECK_FALSE(is_rational_square(BigRational(2)));
    CHECK_FALSE(is_rational_square(BigRational(-4)));
    CHECK_FALSE(is_rational_square(BigRational(4, 3)));
    CHECK(is_squarefree(BigInt(-30)));
    CHECK(is_squarefree(BigInt(1)));
    CHECK_FALSE(is_squarefree(BigInt(12)));
    CHECK_FALSE(is_squarefree(BigInt(0)));
}

TEST_CASE("finite field axioms hold on random elements") {
    std::mt19937_64 rng(20240501);
    for (uint32_t p : {3u, 5u, 7u, 11u, 13u, 101u}) {
        for (int deg : {1, 2}) {
            FiniteField F(p, deg);
            CHECK(quadratic_character(F.elem(F.nonresidue())) == (deg == 1 ? -1 : 1));
            for (int it = 0; it < 200; ++it) {
                FFElem x = rand_ff(rng, F), y = rand_ff(rng, F), z = rand_ff(rng, F);
                CHECK((x + y) + z == x + (y + z));
                CHECK((x * y) * z == x * (y * z));
                CHECK(x * (y + z) == x * y + x * z);
                CHECK(x + y == y + x);
                CHECK(x * y == y * x);
                CHECK(x - x == F.zero());
                CHECK(x * F.one() == x);
                if (!x.is_zero()) {
                    CHECK(x * x.inv() == F.one());
                    CHECK(x.pow(F.order() - 1) == F.one());
                }
                CHECK((x * y).norm() == uint32_t(uint64_t(x.norm()) * y.norm() % p));
            }
        }
    }
}

TEST_CASE("quadratic character is multiplicative") {
    std::mt19937_64 rng(7);
    for (uint32_t p : {3u, 7u, 13u, 31u}) {
        for (int deg : {1, 2}) {
            FiniteField F(p, deg);
            int squares = 0;
            for (uint64_t i = 1; i < F.order(); ++i) squares += quadratic_character(F.element(i)) == 1;
            CHECK(uint64_t(squares) == (F.order() - 1) / 2);
            for (int it = 0; it < 200; ++it) {
                FFElem x = rand_ff(rng, F), y = rand_ff(rng, F);
                CHECK(quadratic_character(x * y) == quadratic_character(x) * quadratic_character(y));
            }
        }
    }
}

TEST_CASE("reduction of rationals mod p") {
    FiniteField F(7, 1);
    CHECK(F.reduce(BigRational(1, 2)) * F.elem(2) == F.one());
    CHECK(F.reduce(BigRational(-3)) == F.elem(4));
    CHECK_THROWS(F.reduce(BigRational(1, 7)));
}

TEST_CASE("polynomial division and gcd") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 100; ++it) {
        QPoly f = rand_qpoly(rng, 5), g = rand_qpoly(rng, 3);
        auto [q, r] = QPoly::divmod(f, g);
        CHECK(q * g + r == f);
        CHECK(r.degree() < g.degree());
        QPoly h = rand_qpoly(rng, 2);
        QPoly d = QPoly::gcd(f * h, g * h);
        CHECK((d % h.monic()).is_zero() == true);
    }
    CHECK_THROWS(QPoly::divmod(QPoly::constant(1), QPoly()));
}

TEST_CASE("resultant and discriminant laws over Q") {
    std::mt19937_64 rng(12345);
    for (int it = 0; it < 60; ++it) {
        QPoly f = rand_qpoly(rng, 1 + it % 4), g = rand_qpoly(rng, 1 + it % 3), h = rand_qpoly(rng, 2);
        CHECK(resultant(f, g * h) == resultant(f, g) * resultant(f, h));
        int m = f.degree(), n = g.degree();
        BigRational sign = (m * n) % 2 ? BigRational(-1) : BigRational(1);
        CHECK(resultant(g, f) == sign * resultant(f, g));
        BigRational rfg = resultant(f, g);
        CHECK(discriminant(f * g) == discriminant(f) * discriminant(g) * rfg * rfg);
    }
    // disc(x^2 + b x + c) = b^2 - 4c
    CHECK(discriminant(QPoly(std::vector<BigRational>{3, 5, 1})) == BigRational(13));
    // disc(x^3 + a x + b) = -4a^3 - 27b^2
    CHECK(discriminant(QPoly(std::vector<BigRational>{2, -1, 0, 1})) == BigRational(-4 * -1 - 27 * 4));
    CHECK_THROWS_AS(resultant(QPoly(), QPoly()), UndefinedError);
}

TEST_CASE("resultant over F_p matches reduction of the rational resultant") {
    std::mt19937_64 rng(99);
    FiniteField F(101, 1);
    for (int it = 0; it < 50; ++it) {
        std::vector<BigRational> a, b;
        std::uniform_int_distribution<int> d(-20, 20);
        for (int i = 0; i < 4; ++i) a.push_back(d(rng));
        for (int i = 0; i < 3; ++i) b.push_back(d(rng));
        a.back() = 1;
        b.back() = 1;
        QPoly f(a), g(b);
        std::vector<FFElem> fa, gb;
        for (auto &x : a) fa.push_back(F.reduce(x));
        for (auto &x : b) gb.push_back(F.reduce(x));
        CHECK(resultant(FPoly(fa), FPoly(gb)) == F.reduce(resultant(f, g)));
    }
}

TEST_CASE("squarefree factorization reconstructs the input") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 30; ++it) {
        QPoly a = rand_qpoly(rng, 1), b = rand_qpoly(rng, 2);
        QPoly f = a * a * a * b;
        auto parts = squarefree_factor(f);
        QPoly prod = QPoly::constant(f.lc());
        for (auto &[q, e] : parts) prod = prod * q.pow(e);
        CHECK(prod == f);
        CHECK(valuation(f, a) >= 3);
    }
}

TEST_CASE("coprime base refines overlapping factors") {
    QPoly x(std::vector<BigRational>{0, 1}), x1(std::vector<BigRational>{1, 1});
    auto base = coprime_base({x * x1, x1});
    CHECK(base.size() == 2);
    for (size_t i = 0; i < base.size(); ++i)
        for (size_t j = i + 1; j < base.size(); ++j) CHECK(QPoly::gcd(base[i], base[j]).degree() == 0);
}

TEST_CASE("bivariate polynomials") {
    BiPoly r = BiPoly::var_r(), s = BiPoly::var_s();
    BiPoly f = r * r + s * BigRational(3) - BiPoly::constant(1);
    CHECK(f(BigRational(2), BigRational(1, 3)) == BigRational(4));
    CHECK((f * f)(BigRational(1), BigRational(1)) == BigRational(9));
    CHECK(f.degree_r() == 2);
    CHECK(f.degree_s() == 1);
    BiPoly g = f * BigRational(6, 5);
    CHECK(g.content() == BigRational(6, 5));
    // s^2 - r == 0 reduces s^3 to r s
    BiPoly rel = s * s - r;
    CHECK((s.pow(3) - r * s).reduce_mod_monic_quadratic_s(rel).is_zero());
    CHECK_THROWS(s.reduce_mod_monic_quadratic_s(s * BigRational(2)));
    FiniteField F(7, 1);
    CHECK(f.eval(F.elem(2), F.reduce(BigRational(1, 3))) == F.elem(4));
    CHECK(BiPoly(f.to_terms()) == f);
}

TEST_CASE("rational functions") {
    RationalFunction t = RationalFunction::variable();
    RationalFunction one = RationalFunction::constant(1);
    RationalFunction a = one / (t + one), b = t / (t + one);
    CHECK(a + b == one);
    CHECK((a * (t + one)) == one);
    CHECK(a(BigRational(1)) == BigRational(1, 2));
    CHECK((t.pow(3) / t) == t * t);
    CHECK_THROWS(one / RationalFunction());
}
