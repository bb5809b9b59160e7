#include "hmskit/rmdetect.hpp"

#include "hmskit/ellsurf.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace hmskit {

CurveFF CurveFF::from_sextic(const SexticForm &f, uint32_t p) {
    FiniteField F(p, 1);
    CurveFF c;
    c.p = p;
    for (int i = 0; i < 7; ++i) c.f[i] = F.reduce(f[i]).a;
    return c;
}

SexticFormFF CurveFF::sextic(const FiniteField &F) const {
    SexticFormFF g;
    for (int i = 0; i < 7; ++i) g[i] = F.elem(f[i]);
    return g;
}

int CurveFF::degree() const {
    for (int i = 6; i >= 0; --i)
        if (f[i]) return i;
    return -1;
}

CurveFF CurveFF::twist() const {
    CurveFF c = *this;
    uint64_t n = smallest_nonresidue(p);
    for (auto &x : c.f) x = uint32_t(uint64_t(x) * n % p);
    return c;
}

std::string CurveFF::to_string() const {
    std::ostringstream os;
    os << "y^2 = ";
    bool first = true;
    for (int i = 6; i >= 0; --i) {
        if (!f[i]) continue;
        if (!first) os << " + ";
        first = false;
        os << f[i];
        if (i >= 1) os << "*x";
        if (i >= 2) os << "^" << i;
    }
    if (first) os << "0";
    os << " over F_" << p;
    return os.str();
}

bool has_good_reduction(const CurveFF &c) {
    if (c.p == 2 || c.degree() < 5) return false;
    FiniteField F(c.p, 1);
    return !binary_sextic_disc(c.sextic(F)).is_zero();
}

namespace {

int points_at_infinity(const CurveFF &c, int degree) {
    if (c.degree() == 5) return 1;
    if (degree == 2) return 2;
    return powmod(c.f[6], (c.p - 1) / 2, c.p) == 1 ? 2 : 0;
}

void require_good(const CurveFF &c, int degree) {
    if (degree != 1 && degree != 2) throw std::invalid_argument("extension degree must be 1 or 2");
    if (!has_good_reduction(c)) throw BadReduction("bad reduction");
}

} // namespace

int64_t count_points(const CurveFF &c, int degree) {
    require_good(c, degree);
    FiniteField F(c.p, degree);
    const uint32_t p = c.p;
    std::vector<int8_t> chi(p, -1);
    chi[0] = 0;
    for (uint64_t y = 1; y < p; ++y) chi[y * y % p] = 1;
    SexticFormFF f = c.sextic(F);
    int d = c.degree();
    int64_t total = 0;
    for (uint64_t i = 0; i < F.order(); ++i) {
        FFElem x = F.element(i);
        FFElem v = f[d];
        for (int k = d - 1; k >= 0; --k) v = v * x + f[k];
        // chi over F_{p^2} is chi over F_p of the norm.
        uint32_t r = degree == 1 ? v.a : v.norm();
        total += 1 + chi[r];
    }
    return total + points_at_infinity(c, degree);
}

int64_t count_points_naive(const CurveFF &c, int degree) {
    require_good(c, degree);
    FiniteField F(c.p, degree);
    SexticFormFF f = c.sextic(F);
    int64_t total = 0;
    for (uint64_t i = 0; i < F.order(); ++i) {
        FFElem x = F.element(i);
        FFElem v = F.zero();
        for (int k = 6; k >= 0; --k) v = v * x + f[k];
        for (uint64_t j = 0; j < F.order(); ++j) {
            FFElem y = F.element(j);
            if (y * y == v) ++total;
        }
    }
    return total + points_at_infinity(c, degree);
}

WeilData weil_data(int64_t n1, int64_t n2, int64_t p) {
    WeilData w;
    w.n1 = n1;
    w.n2 = n2;
    w.p = p;
    w.a = p + 1 - n1;
    int64_t s2 = p * p + 1 - n2;
    int64_t twice_b = w.a * w.a - s2;
    if (twice_b % 2 != 0) throw std::domain_error("inconsistent counts");
    w.b = twice_b / 2;
    if (w.a * w.a > 16 * p || std::llabs(w.b) > 6 * p) throw std::domain_error("inconsistent counts");
    return w;
}

WeilData weil_data(const CurveFF &c) { return weil_data(count_points(c, 1), count_points(c, 2), c.p); }

bool is_P_irreducible(const WeilData &w) {
    using i128 = __int128;
    const i128 p = w.p, a = w.a, b = w.b;
    // P(T) = T^4 - a T^3 + b T^2 - p a T + p^2
    auto P = [&](i128 t) { return (((t - a) * t + b) * t - p * a) * t + p * p; };
    const i128 divisors[] = {1, p, p * p};
    for (i128 d : divisors)
        if (P(d) == 0 || P(-d) == 0) return false;
    i128 bound = 4 * p + (a < 0 ? -a : a) + (b < 0 ? -b : b) + 4;
    for (i128 d : divisors) {
        for (i128 v : {d, -d}) {
            i128 v2 = p * p / v;
            for (i128 u = -bound; u <= bound; ++u) {
                i128 u2 = -a - u;
                if (v + v2 + u * u2 == b && u * v2 + u2 * v == -p * a) return false;
            }
        }
    }
    return true;
}

namespace {

bool is_square_int(int64_t n, int64_t &root) {
    if (n < 0) return false;
    int64_t r = int64_t(std::llround(std::sqrt(double(n))));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    root = r;
    return r * r == n;
}

} // namespace

RMVerdict rm_test(const WeilData &w, long D, bool P_irreducible) {
    if (!is_fundamental_discriminant(D)) throw std::invalid_argument("D is not a fundamental discriminant");
    RMVerdict v;
    if (!P_irreducible) {
        v.kind = RMVerdict::Kind::Inconclusive;
        v.reason = "P(T) reducible over Q";
        return v;
    }
    int64_t dq = w.disc_q();
    int64_t c = 0;
    if (dq > 0 && dq % D == 0 && is_square_int(dq / D, c) && c > 0) {
        v.kind = RMVerdict::Kind::RM_over_Fp;
        v.conductor = c;
        v.a_zero_ambiguity = w.a == 0;
        if (v.a_zero_ambiguity) v.reason = "a = 0: Q(X) = X^2 - c^2 D cannot separate F_p from F_{p^2} RM";
        return v;
    }
    if (w.a == 0) {
        v.kind = RMVerdict::Kind::RM_over_Fp2_only;
        v.reason = "Q(X) = X^2 - n with n not c^2 D: consistent with RM defined only over F_{p^2}";
        return v;
    }
    v.kind = RMVerdict::Kind::NoRM_evidence;
    v.reason = "disc(Q) not of the form c^2 D";
    return v;
}

std::string RMVerdict::to_string() const {
    switch (kind) {
    case Kind::RM_over_Fp:
        return "RM_over_Fp(" + std::to_string(conductor) + ")" + (a_zero_ambiguity ? " [a=0 ambiguity]" : "");
    case Kind::RM_over_Fp2_only:
        return "RM_over_Fp2_only";
    case Kind::NoRM_evidence:
        return "NoRM_evidence";
    case Kind::Inconclusive:
        return "Inconclusive(" + reason + ")";
    }
    return "?";
}

} // namespace hmskit
