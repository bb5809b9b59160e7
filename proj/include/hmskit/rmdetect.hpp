#pragma once

#include "hmskit/finite_field.hpp"
#include "hmskit/igusa.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hmskit {

// y^2 = f(x) over F_p, f given by residues f0..f6.
struct CurveFF {
    uint32_t p = 0;
    std::array<uint32_t, 7> f{};

    static CurveFF from_sextic(const SexticForm &f, uint32_t p);
    SexticFormFF sextic(const FiniteField &F) const;
    int degree() const;
    // y^2 = n f(x) with n the field's fixed nonresidue.
    CurveFF twist() const;
    std::string to_string() const;
};

class BadReduction : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

bool has_good_reduction(const CurveFF &c);
// Points on the smooth projective model over F_{p^degree}.
int64_t count_points(const CurveFF &c, int degree);
// Exhaustive (x, y) enumeration; reference for count_points.
int64_t count_points_naive(const CurveFF &c, int degree);

// P(T) = T^4 - a T^3 + b T^2 - p a T + p^2, Q(X) = X^2 - a X + (b - 2p).
struct WeilData {
    int64_t n1 = 0, n2 = 0, p = 0, a = 0, b = 0;
    int64_t disc_q() const { return a * a - 4 * b + 8 * p; }
};

WeilData weil_data(int64_t n1, int64_t n2, int64_t p);
WeilData weil_data(const CurveFF &c);
bool is_P_irreducible(const WeilData &w);

struct RMVerdict {
    enum class Kind { RM_over_Fp, RM_over_Fp2_only, NoRM_evidence, Inconclusive };
    Kind kind = Kind::Inconclusive;
    int64_t conductor = 0;      // c with disc(Q) = c^2 D
    bool a_zero_ambiguity = false;
    std::string reason;
    std::string to_string() const;
};

RMVerdict rm_test(const WeilData &w, long D, bool P_irreducible);
inline RMVerdict rm_test(const WeilData &w, long D) { return rm_test(w, D, is_P_irreducible(w)); }

} // namespace hmskit
