#pragma once

#include "hmskit/finite_field.hpp"
#include "hmskit/rational.hpp"
#include "hmskit/unipoly.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmskit {

// f(x) = f[0] + f[1] x + ... + f[6] x^6.
template <class T> using SexticFormT = std::array<T, 7>;
using SexticForm = SexticFormT<BigRational>;
using SexticFormFF = SexticFormT<FFElem>;

template <class T> struct IgusaClebschT {
    T I2, I4, I6, I10;
    std::array<T, 4> coords() const { return {I2, I4, I6, I10}; }
    friend bool operator==(const IgusaClebschT &a, const IgusaClebschT &b) {
        return a.I2 == b.I2 && a.I4 == b.I4 && a.I6 == b.I6 && a.I10 == b.I10;
    }
};
using IgusaClebsch = IgusaClebschT<BigRational>;
using IgusaClebschFF = IgusaClebschT<FFElem>;

inline constexpr std::array<int, 4> kIgusaWeights{1, 2, 3, 5};

class SingularModel : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Multipliers applied to the transvectant invariants (I2, I4, I6, I10).
// Fixed by matching three D=5 table rows against the D=5 invariant map;
// the match needs no correction, so all four are 1.
inline const std::array<long, 4> kCalibration{1, 1, 1, 1};

int sextic_degree(const SexticForm &f);
// Discriminant of the binary sextic; for a quintic this is f5^2 disc(f).
BigRational binary_sextic_disc(const SexticForm &f);
FFElem binary_sextic_disc(const SexticFormFF &f);

IgusaClebsch igusa_clebsch(const SexticForm &f);
IgusaClebschFF igusa_clebsch(const SexticFormFF &f);
// Non-throwing variant for hot loops over F_p; absent when singular or degree < 5.
std::optional<IgusaClebschFF> try_igusa_clebsch(const SexticFormFF &f);

// Uncalibrated invariants from the Clebsch transvectants; no degree or disc checks.
IgusaClebsch raw_igusa_clebsch(const SexticForm &f);

template <class T> IgusaClebschT<T> weighted_scale(const IgusaClebschT<T> &a, const T &l) {
    T l2 = l * l, l3 = l2 * l, l5 = l3 * l2;
    return {a.I2 * l, a.I4 * l2, a.I6 * l3, a.I10 * l5};
}

template <class T> T int_pow(const T &x, int e) {
    T r = scalar_like(x, 1);
    for (int i = 0; i < e; ++i) r = r * x;
    return r;
}

// b = lambda o a for some nonzero lambda over the algebraic closure; division free.
template <class T> bool weighted_equal(const IgusaClebschT<T> &a, const IgusaClebschT<T> &b) {
    auto A = a.coords();
    auto B = b.coords();
    for (int i = 0; i < 4; ++i)
        if (is_zero(A[i]) != is_zero(B[i])) return false;
    for (int i = 0; i < 4; ++i) {
        if (is_zero(A[i])) continue;
        for (int j = i + 1; j < 4; ++j) {
            if (is_zero(A[j])) continue;
            int wi = kIgusaWeights[i], wj = kIgusaWeights[j];
            if (!(int_pow(A[i], wj) * int_pow(B[j], wi) == int_pow(B[i], wj) * int_pow(A[j], wi))) return false;
        }
    }
    return true;
}

// Lexicographically least rescaling over F_p; equal exactly on weighted_equal classes.
IgusaClebschFF canonical_rep(const IgusaClebschFF &a);
uint64_t pack_key(const IgusaClebschFF &a);
IgusaClebschFF unpack_key(uint64_t key, const FiniteField &F);

// Multipliers (1, m4, m6, m10) making computed invariants weighted-equal to the
// target values on every pair; absent when the pairs are inconsistent.
std::optional<std::array<BigRational, 4>>
calibrate_multipliers(const std::vector<std::pair<IgusaClebsch, IgusaClebsch>> &pairs);

IgusaClebsch apply_multipliers(const IgusaClebsch &a, const std::array<BigRational, 4> &m);

SexticForm sextic_from_strings(const std::vector<std::string> &coeffs);
SexticFormFF reduce_sextic(const SexticForm &f, const FiniteField &F);
// "f6,...,f0" (descending, comma separated).
SexticForm parse_sextic_desc(const std::string &text);

} // namespace hmskit
