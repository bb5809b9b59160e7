#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hmskit/ellsurf.hpp"

#include <map>
#include <random>

using namespace hmskit;

namespace {

QPoly P(std::vector<BigRational> c) { return QPoly(std::move(c)); }
const QPoly T = P({0, 1});

WeierstrassQt short_model(const QPoly &a4, const QPoly &a6) { return {QPoly(), QPoly(), QPoly(), a4, a6}; }

int euler_number(const std::string &type) {
    if (type == "II") return 2;
    if (type == "III") return 3;
    if (type == "IV") return 4;
    if (type == "IV*") return 8;
    if (type == "III*") return 9;
    if (type == "II*") return 10;
    bool star = type.back() == '*';
    int n = std::stoi(type.substr(1, type.size() - 1 - (star ? 1 : 0)));
    return star ? n + 6 : n;
}

QPoly rand_poly(std::mt19937_64 &rng, int deg) {
    std::uniform_int_distribution<int> d(-5, 5);
    std::vector<BigRational> c;
    for (int i = 0; i <= deg; ++i) c.push_back(d(rng));
    return QPoly(c);
}

} // namespace

TEST_CASE("Kodaira table on minimal valuations") {
    CHECK(kodaira_type(0, 0, 0) == "I0");
    CHECK(kodaira_type(0, 0, 5) == "I5");
    CHECK(kodaira_type(1, 1, 2) == "II");
    CHECK(kodaira_type(-1, 1, 2) == "II");
    CHECK(kodaira_type(1, 2, 3) == "III");
    CHECK(kodaira_type(2, 2, 4) == "IV");
    CHECK(kodaira_type(2, 3, 6) == "I0*");
    CHECK(kodaira_type(2, 3, 9) == "I3*");
    CHECK(kodaira_type(3, 4, 8) == "IV*");
    CHECK(kodaira_type(3, 5, 9) == "III*");
    CHECK(kodaira_type(4, 5, 10) == "II*");
    CHECK(kodaira_type(-1, 5, 10) == "II*");
    CHECK_THROWS(kodaira_type(4, 6, 12));
}

TEST_CASE("root lattices and their discriminants") {
    CHECK(root_lattice("I1") == "");
    CHECK(root_lattice("I6") == "A5");
    CHECK(root_lattice("I2*") == "D6");
    CHECK(root_lattice("IV") == "A2");
    CHECK(root_lattice("II*") == "E8");
    CHECK(lattice_rank("A5") == 5);
    CHECK(lattice_rank("E7") == 7);
    CHECK(lattice_discriminant("A5") == 6);
    CHECK(lattice_discriminant("D6") == 4);
    CHECK(lattice_discriminant("E6") == 3);
    CHECK(lattice_discriminant("E7") == 2);
    CHECK(lattice_discriminant("E8") == 1);
    CHECK_THROWS(lattice_discriminant("F4"));
    CHECK_THROWS(lattice_discriminant("E9"));
}

TEST_CASE("classification of y^2 = x^3 + t^5") {
    FiberTable tb = kodaira_classify(short_model(QPoly(), T.pow(5)));
    CHECK(tb.chi == 1);
    std::map<std::string, std::string> seen;
    for (const auto &f : tb.fibers) seen[f.at_infinity ? "inf" : to_string(f.place)] = f.type;
    CHECK(seen["t"] == "II*");
    CHECK(seen["inf"] == "II");
}

TEST_CASE("Euler numbers add up to 12 chi on random rational and K3 surfaces") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 40; ++it) {
        int k = 1 + it % 2;
        WeierstrassQt w = short_model(rand_poly(rng, 4 * k), rand_poly(rng, 6 * k));
        FiberTable tb;
        try {
            tb = kodaira_classify(w);
        } catch (const SingularFibration &) {
            continue;
        } catch (const std::domain_error &) {
            continue;
        }
        int sum = 0;
        for (const auto &f : tb.fibers) sum += euler_number(f.type) * f.places();
        CHECK(sum == 12 * tb.chi);
    }
}

TEST_CASE("non-minimal models are minimized before classification") {
    // u^2-twist by t^2 of a smooth fiber: a4 t^4, a6 t^6 at t = 0 is I0 after minimization.
    FiberTable tb = kodaira_classify(short_model(T.pow(4) * P({1, 1}), T.pow(6) * P({2, 0, 1})));
    for (const auto &f : tb.fibers)
        if (!f.at_infinity) CHECK(QPoly::gcd(f.place, T).degree() == 0);
    CHECK_THROWS_AS(kodaira_classify(short_model(QPoly(), QPoly())), SingularFibration);
}

TEST_CASE("c4, c6 and discriminant of a general Weierstrass model") {
    // y^2 + xy = x^3 - x: c4 = b2^2 - 24 b4, Delta from b2, b4, b6, b8.
    WeierstrassQt w{P({1}), QPoly(), QPoly(), P({-1}), QPoly()};
    Invariants inv = c4_c6_delta(w);
    CHECK(inv.c4 == P({49}));
    CHECK(inv.c6 == P({-73}));
    CHECK(inv.delta == P({65}));
    CHECK(inv.c4.pow(3) - inv.c6.pow(2) == inv.delta * QPoly::constant(1728));
    CHECK(j_invariant(w) == RationalFunction::constant(make_rational(117649, 65)));
    CHECK(j_invariant(short_model(P({1}), QPoly())) == RationalFunction::constant(1728));
}

TEST_CASE("section verification") {
    // y^2 = x^3 + x + t^2 has the section (0, t).
    WeierstrassQt w = short_model(P({1}), T * T);
    CHECK(verify_section(w, {RationalFunction(), RationalFunction(T)}));
    CHECK_FALSE(verify_section(w, {RationalFunction::constant(1), RationalFunction(T)}));
    std::mt19937_64 rng(4);
    BiPoly g = BiPoly::var_r();
    FamilySection good{{}, {{2, g * g}}, {}, {{1, g}}};
    CHECK(verify_family_section(good, 5, rng));
    FamilySection bad{{}, {{2, g * g}}, {}, {{1, g + BiPoly::constant(1)}}};
    CHECK_FALSE(verify_family_section(bad, 5, rng));
}

TEST_CASE("quartic Jacobian is invariant under translation and scaling") {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 20; ++it) {
        std::vector<BigRational> c;
        std::uniform_int_distribution<int> d(-6, 6);
        for (int i = 0; i < 5; ++i) c.push_back(d(rng));
        if (sgn(c[4]) == 0) c[4] = 1;
        QPoly q(c);
        if (sgn(discriminant(q)) == 0) continue;
        // q(x + 1) and 4 q(x)
        QPoly shifted;
        QPoly xp1 = P({1, 1});
        for (int i = 0; i <= 4; ++i) shifted = shifted + xp1.pow(i) * QPoly::constant(c[i]);
        auto wrap = [](const QPoly &p) {
            std::vector<QPoly> out;
            for (int i = 0; i <= 4; ++i) out.push_back(QPoly::constant(i <= p.degree() ? p[i] : BigRational(0)));
            return out;
        };
        RationalFunction j0 = j_invariant(jacobian_of_quartic(wrap(q)));
        CHECK(j_invariant(jacobian_of_quartic(wrap(shifted))) == j0);
        CHECK(j_invariant(jacobian_of_quartic(wrap(q * QPoly::constant(4)))) == j0);
    }
}

TEST_CASE("section heights") {
    CHECK(section_height(2, 0, {make_rational(3, 2)}) == make_rational(5, 2));
    CHECK(section_height(2, 3, {make_rational(7, 8)}) == make_rational(73, 8));
    CHECK(fiber_contribution("A7", 1) == make_rational(7, 8));
    CHECK(fiber_contribution("A4", 2) == make_rational(6, 5));
    CHECK(fiber_contribution("A3", 2) == 1);
    CHECK(fiber_contribution("D6", 1) == 1);
    CHECK(fiber_contribution("D6", 3) == make_rational(3, 2));
    CHECK(fiber_contribution("E6", 1) == make_rational(4, 3));
    CHECK(fiber_contribution("E7", 1) == make_rational(3, 2));
    CHECK(fiber_contribution("A2", 0) == 0);
    CHECK_THROWS(fiber_contribution("A2", 3));
    CHECK_THROWS(fiber_contribution("E8", 1));
    CHECK_THROWS(section_height(0, 0, {}));
}

TEST_CASE("determinants and Shioda-Tate discriminants") {
    LatticeGram m{{2, 1, 0}, {1, 2, 1}, {0, 1, 2}};
    CHECK(determinant(m) == 4);
    CHECK(determinant(LatticeGram{}) == 1);
    CHECK_THROWS(determinant(LatticeGram{{1, 2}}));
    CHECK(abs(shioda_tate_disc({"E8", "E8"}, {}, 1)) == 1);
    CHECK(abs(shioda_tate_disc({"A1"}, {{make_rational(1, 2)}}, 1)) == 1);
    CHECK(abs(shioda_tate_disc({"A2", "A2"}, {}, 3)) == 1);
    CHECK(shioda_tate_disc_from_det({"A1", "E7"}, make_rational(3, 2), 1) == 6);
}

TEST_CASE("fundamental discriminants and the O_D Gram matrix") {
    for (long D : {5L, 8L, 12L, 13L, 21L, 24L, 28L, 40L, 44L, 97L}) {
        CHECK(is_fundamental_discriminant(D));
        CHECK(determinant(od_gram(D)) == -D);
    }
    for (long D : {1L, 4L, 9L, 16L, 20L, 25L, 45L, 2L, 3L, 7L})
        CHECK_FALSE(is_fundamental_discriminant(D));
    CHECK_THROWS(od_gram(20));
}
