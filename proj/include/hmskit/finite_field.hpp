#pragma once

#include "hmskit/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace hmskit {

// F_p (degree 1) or F_{p^2} = F_p(w), w^2 = n with n the smallest nonresidue.
class FiniteField {
  public:
    FiniteField(uint32_t p, int degree);

    uint32_t p() const { return p_; }
    uint32_t nonresidue() const { return n_; }
    int degree() const { return degree_; }
    uint64_t order() const { return degree_ == 1 ? uint64_t(p_) : uint64_t(p_) * p_; }

    struct Elem;
    Elem zero() const;
    Elem one() const;
    Elem elem(int64_t a, int64_t b = 0) const;
    // i-th element in a fixed enumeration (a + b w with i = a + p b).
    Elem element(uint64_t i) const;
    Elem reduce(const BigRational &q) const;

  private:
    uint32_t p_;
    uint32_t n_;
    int degree_;
};

bool is_odd_prime(uint64_t p);
uint32_t smallest_nonresidue(uint32_t p);
uint64_t powmod(uint64_t b, uint64_t e, uint64_t m);

struct FiniteField::Elem {
    uint32_t p = 0;
    uint32_t n = 0;
    uint32_t a = 0;
    uint32_t b = 0;
    uint8_t deg = 1;

    friend Elem operator+(Elem x, const Elem &y) {
        x.a = uint32_t((uint64_t(x.a) + y.a) % x.p);
        x.b = uint32_t((uint64_t(x.b) + y.b) % x.p);
        return x;
    }
    friend Elem operator-(Elem x, const Elem &y) {
        x.a = uint32_t((uint64_t(x.a) + x.p - y.a) % x.p);
        x.b = uint32_t((uint64_t(x.b) + x.p - y.b) % x.p);
        return x;
    }
    friend Elem operator-(Elem x) {
        x.a = x.a ? x.p - x.a : 0;
        x.b = x.b ? x.p - x.b : 0;
        return x;
    }
    friend Elem operator*(const Elem &x, const Elem &y) {
        Elem r = x;
        uint64_t p = x.p;
        if (x.deg == 1) {
            r.a = uint32_t(uint64_t(x.a) * y.a % p);
            return r;
        }
        uint64_t ac = uint64_t(x.a) * y.a % p, bd = uint64_t(x.b) * y.b % p;
        r.a = uint32_t((ac + bd * x.n) % p);
        r.b = uint32_t((uint64_t(x.a) * y.b + uint64_t(x.b) * y.a) % p);
        return r;
    }
    friend Elem operator*(const Elem &x, long k) {
        int64_t m = k % int64_t(x.p);
        if (m < 0) m += x.p;
        Elem r = x;
        r.a = uint32_t(uint64_t(x.a) * uint64_t(m) % x.p);
        r.b = uint32_t(uint64_t(x.b) * uint64_t(m) % x.p);
        return r;
    }
    friend Elem operator/(const Elem &x, const Elem &y) { return x * y.inv(); }
    Elem &operator+=(const Elem &y) { return *this = *this + y; }
    Elem &operator-=(const Elem &y) { return *this = *this - y; }
    Elem &operator*=(const Elem &y) { return *this = *this * y; }
    Elem &operator/=(const Elem &y) { return *this = *this / y; }
    friend bool operator==(const Elem &x, const Elem &y) { return x.a == y.a && x.b == y.b; }

    bool is_zero() const { return a == 0 && b == 0; }
    uint32_t norm() const;
    Elem inv() const;
    Elem pow(uint64_t e) const;
};

using FFElem = FiniteField::Elem;

inline bool is_zero(const FFElem &x) { return x.is_zero(); }
inline FFElem scalar_like(const FFElem &like, long n) {
    FFElem r = like;
    r.a = 1;
    r.b = 0;
    return r * n;
}
inline FFElem inverse(const FFElem &x) { return x.inv(); }

// +1, -1, or 0 by Euler's criterion in the element's own field.
int quadratic_character(const FFElem &x);

} // namespace hmskit
