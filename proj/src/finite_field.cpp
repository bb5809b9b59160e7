#include "hmskit/finite_field.hpp"

#include <string>

namespace hmskit {

uint64_t powmod(uint64_t b, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

bool is_odd_prime(uint64_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

uint32_t smallest_nonresidue(uint32_t p) {
    for (uint32_t n = 2; n < p; ++n)
        if (powmod(n, (p - 1) / 2, p) == p - 1) return n;
    throw std::invalid_argument("no quadratic nonresidue");
}

FiniteField::FiniteField(uint32_t p, int degree) : p_(p), n_(0), degree_(degree) {
    if (!is_odd_prime(p) || p >= (1u << 31)) throw std::invalid_argument("field characteristic must be an odd prime < 2^31, got " + std::to_string(p));
    if (degree != 1 && degree != 2) throw std::invalid_argument("field degree must be 1 or 2");
    n_ = smallest_nonresidue(p);
}

FiniteField::Elem FiniteField::elem(int64_t a, int64_t b) const {
    Elem e;
    e.p = p_;
    e.n = n_;
    e.deg = uint8_t(degree_);
    int64_t am = a % int64_t(p_), bm = b % int64_t(p_);
    if (am < 0) am += p_;
    if (bm < 0) bm += p_;
    if (degree_ == 1 && bm != 0) throw std::invalid_argument("element outside prime field");
    e.a = uint32_t(am);
    e.b = uint32_t(bm);
    return e;
}

FiniteField::Elem FiniteField::zero() const { return elem(0); }
FiniteField::Elem FiniteField::one() const { return elem(1); }

FiniteField::Elem FiniteField::element(uint64_t i) const {
    return elem(int64_t(i % p_), degree_ == 2 ? int64_t(i / p_) : 0);
}

FiniteField::Elem FiniteField::reduce(const BigRational &q) const {
    BigInt n = q.get_num() % p_, d = q.get_den() % p_;
    if (d == 0) throw std::domain_error("denominator divisible by " + std::to_string(p_));
    return elem(n.get_si()) / elem(d.get_si());
}

uint32_t FFElem::norm() const {
    uint64_t q = p;
    uint64_t aa = uint64_t(a) * a % q, bb = uint64_t(b) * b % q * n % q;
    return uint32_t((aa + q - bb) % q);
}

FFElem FFElem::inv() const {
    if (is_zero()) throw std::domain_error("division by zero in finite field");
    FFElem r = *this;
    if (deg == 1) {
        r.a = uint32_t(powmod(a, p - 2, p));
        return r;
    }
    uint64_t ninv = powmod(norm(), p - 2, p);
    r.a = uint32_t(uint64_t(a) * ninv % p);
    r.b = uint32_t((uint64_t(p) - b) % p * ninv % p);
    return r;
}

FFElem FFElem::pow(uint64_t e) const {
    FFElem r = *this, b = *this;
    r.a = 1;
    r.b = 0;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

int quadratic_character(const FFElem &x) {
    if (x.is_zero()) return 0;
    uint64_t q = x.deg == 1 ? uint64_t(x.p) : uint64_t(x.p) * x.p;
    FFElem r = x.pow((q - 1) / 2);
    return (r.a == 1 && r.b == 0) ? 1 : -1;
}

} // namespace hmskit
