#pragma once

#include "hmskit/bipoly.hpp"
#include "hmskit/ratfunc.hpp"
#include "hmskit/unipoly.hpp"

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmskit {

// y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q(t).
struct WeierstrassQt {
    QPoly a1, a2, a3, a4, a6;
};

struct Invariants {
    QPoly c4, c6, delta;
};

class SingularFibration : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

Invariants c4_c6_delta(const WeierstrassQt &w);

struct KodairaFiber {
    bool at_infinity = false;
    QPoly place;             // monic squarefree; empty at infinity
    std::string type;        // I1, I2, ..., II, III, IV, I0*, I1*, ..., IV*, III*, II*
    int v_c4 = 0, v_c6 = 0, v_delta = 0; // -1 stands for an identically zero invariant
    std::string lattice;     // A_n / D_n / E_n label, empty when trivial
    int lattice_disc = 1;
    int places() const { return at_infinity ? 1 : place.degree(); }
};

struct FiberTable {
    std::vector<KodairaFiber> fibers;
    int deg_delta_min = 0;
    int chi = 0;
};

FiberTable kodaira_classify(const WeierstrassQt &w);
// Char-0 table lookup on minimal valuations; v = -1 means infinite.
std::string kodaira_type(int v_c4, int v_c6, int v_delta);
std::string root_lattice(const std::string &type);
int lattice_rank(const std::string &lattice);
int lattice_discriminant(const std::string &lattice);

struct SectionQt {
    RationalFunction x, y;
};

// Exact identity check in Q(t).
bool verify_section(const WeierstrassQt &w, const SectionQt &s);

// Coefficients in Q[g, h] of a polynomial in t: list of (t-degree, coefficient).
using FamilyPoly = std::vector<std::pair<int, BiPoly>>;
QPoly specialize(const FamilyPoly &f, const BigRational &g, const BigRational &h);

struct FamilySection {
    FamilyPoly a4, a6, x, y; // short model y^2 = x^3 + a4 x + a6
};

// Exact checks at `specializations` random rational parameter points.
bool verify_family_section(const FamilySection &s, int specializations, std::mt19937_64 &rng);

// Binary quartic a x^4 + b x^3 + c x^2 + d x + e, coefficients ascending [e, d, c, b, a].
struct QuarticInvariants {
    QPoly I, J;
};
QuarticInvariants quartic_invariants(const std::vector<QPoly> &q);
WeierstrassQt jacobian_of_quartic(const std::vector<QPoly> &q);
RationalFunction j_invariant(const WeierstrassQt &w);

BigRational fiber_contribution(const std::string &lattice, int component);
BigRational section_height(int chi, int po, const std::vector<BigRational> &contributions);

using LatticeGram = std::vector<std::vector<BigRational>>;
BigRational determinant(const LatticeGram &m);
BigRational shioda_tate_disc(const std::vector<std::string> &fiber_lattices, const LatticeGram &height_gram,
                             int torsion_order);
BigRational shioda_tate_disc_from_det(const std::vector<std::string> &fiber_lattices, const BigRational &det_h,
                                      int torsion_order);

bool is_fundamental_discriminant(long D);
LatticeGram od_gram(long D);

} // namespace hmskit
