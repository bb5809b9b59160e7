#include "hmskit/igusa.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hmskit {

namespace {

// Binary form sum c[i] X^i Y^(n-i), n <= 6.
template <class T> struct Form {
    std::array<T, 7> c;
    int n = 0;
};

constexpr long falling(int x, int k) {
    long r = 1;
    for (int i = 0; i < k; ++i) r *= x - i;
    return r;
}

// d^hx/dX^hx d^hy/dY^hy in one pass: X^i Y^(n-i) picks up falling(i, hx) falling(n-i, hy).
template <class T> Form<T> derive(const Form<T> &f, int hx, int hy) {
    Form<T> r;
    r.n = f.n - hx - hy;
    for (int j = 0; j <= r.n; ++j) {
        int i = j + hx;
        r.c[j] = f.c[i] * (falling(i, hx) * falling(f.n - i, hy));
    }
    return r;
}

constexpr long kFact[] = {1, 1, 2, 6, 24, 120, 720};
constexpr long kBinom[7][7] = {{1}, {1, 1}, {1, 2, 1}, {1, 3, 3, 1}, {1, 4, 6, 4, 1}, {1, 5, 10, 10, 5, 1}, {1, 6, 15, 20, 15, 6, 1}};

// h-th transvectant with the (m-h)!(n-h)!/(m! n!) normalization.
template <class T> Form<T> transvectant(const Form<T> &f, const Form<T> &g, int h) {
    const T zero = scalar_like(f.c[0], 0);
    Form<T> r;
    r.n = f.n + g.n - 2 * h;
    for (int i = 0; i <= r.n; ++i) r.c[i] = zero;
    for (int k = 0; k <= h; ++k) {
        Form<T> F = derive(f, h - k, k);
        Form<T> G = derive(g, k, h - k);
        long coef = (k % 2 ? -1 : 1) * kBinom[h][k];
        for (int i = 0; i <= F.n; ++i) {
            if (is_zero(F.c[i])) continue;
            T Fi = F.c[i] * coef;
            for (int j = 0; j <= G.n; ++j) r.c[i + j] = r.c[i + j] + Fi * G.c[j];
        }
    }
    T num = scalar_like(zero, kFact[f.n - h] * kFact[g.n - h]);
    T den = scalar_like(zero, kFact[f.n] * kFact[g.n]);
    T scale = num * inverse(den);
    for (int i = 0; i <= r.n; ++i) r.c[i] = r.c[i] * scale;
    return r;
}

template <class T> IgusaClebschT<T> transvectant_invariants(const SexticFormT<T> &coef) {
    Form<T> f;
    f.n = 6;
    for (int i = 0; i < 7; ++i) f.c[i] = coef[i];
    Form<T> i2 = transvectant(f, f, 4);
    Form<T> delta = transvectant(i2, i2, 2);
    Form<T> y1 = transvectant(f, i2, 4);
    Form<T> y2 = transvectant(i2, y1, 2);
    Form<T> y3 = transvectant(i2, y2, 2);
    T A = transvectant(f, f, 6).c[0];
    T B = transvectant(i2, i2, 4).c[0];
    T C = transvectant(i2, delta, 4).c[0];
    T D = transvectant(y3, y1, 2).c[0];
    T A2 = A * A, A3 = A2 * A, A5 = A3 * A2, B2 = B * B;
    IgusaClebschT<T> r;
    r.I2 = A * -120L;
    r.I4 = A2 * -720L + B * 6750L;
    r.I6 = A3 * 8640L + A * B * -108000L + C * 202500L;
    r.I10 = A5 * -62208L + A3 * B * 972000L + A2 * C * 1620000L + A * B2 * -3037500L + B * C * -6075000L +
            D * -4556250L;
    r.I2 = r.I2 * kCalibration[0];
    r.I4 = r.I4 * kCalibration[1];
    r.I6 = r.I6 * kCalibration[2];
    r.I10 = r.I10 * kCalibration[3];
    return r;
}

template <class T> int degree_of(const SexticFormT<T> &f) {
    for (int i = 6; i >= 0; --i)
        if (!is_zero(f[i])) return i;
    return -1;
}

} // namespace

int sextic_degree(const SexticForm &f) { return degree_of(f); }

BigRational binary_sextic_disc(const SexticForm &f) {
    int d = degree_of(f);
    if (d < 5) throw std::invalid_argument("genus-2 model needs degree 5 or 6");
    QPoly g(std::vector<BigRational>(f.begin(), f.begin() + d + 1));
    BigRational r = discriminant(g);
    return d == 6 ? r : r * f[5] * f[5];
}

FFElem binary_sextic_disc(const SexticFormFF &f) {
    int d = degree_of(f);
    if (d < 5) throw std::invalid_argument("genus-2 model needs degree 5 or 6");
    FPoly g(std::vector<FFElem>(f.begin(), f.begin() + d + 1));
    FFElem r = discriminant(g);
    return d == 6 ? r : r * f[5] * f[5];
}

IgusaClebsch raw_igusa_clebsch(const SexticForm &f) { return transvectant_invariants(f); }

IgusaClebsch igusa_clebsch(const SexticForm &f) {
    if (degree_of(f) < 5) throw std::invalid_argument("genus-2 model needs degree 5 or 6");
    IgusaClebsch r = transvectant_invariants(f);
    if (sgn(r.I10) == 0) throw SingularModel("singular model");
    return r;
}

std::optional<IgusaClebschFF> try_igusa_clebsch(const SexticFormFF &f) {
    if (degree_of(f) < 5) return std::nullopt;
    const uint32_t p = f[0].p;
    IgusaClebschFF r;
    if (p <= 5) {
        // The transvectant normalization divides by 2, 3 and 5: work over Z, then reduce.
        if (f[0].deg != 1) throw std::invalid_argument("degree-2 fields need p > 5 for invariants");
        SexticForm g;
        for (int i = 0; i < 7; ++i) g[i] = BigRational(long(f[i].a));
        IgusaClebsch q = transvectant_invariants(g);
        FiniteField F(p, 1);
        r = {F.reduce(q.I2), F.reduce(q.I4), F.reduce(q.I6), F.reduce(q.I10)};
    } else {
        r = transvectant_invariants(f);
    }
    if (r.I10.is_zero()) return std::nullopt;
    return r;
}

IgusaClebschFF igusa_clebsch(const SexticFormFF &f) {
    if (degree_of(f) < 5) throw std::invalid_argument("genus-2 model needs degree 5 or 6");
    auto r = try_igusa_clebsch(f);
    if (!r) throw SingularModel("singular model");
    return *r;
}

IgusaClebschFF canonical_rep(const IgusaClebschFF &a) {
    auto c = a.coords();
    int g = 0;
    for (int i = 0; i < 4; ++i)
        if (!c[i].is_zero()) g = std::gcd(g, kIgusaWeights[i]);
    if (g == 0) throw std::invalid_argument("canonical_rep of the zero point");
    if (c[0].deg != 1) throw std::invalid_argument("canonical_rep needs a prime field");
    const uint32_t p = c[0].p;
    std::array<uint32_t, 4> best{};
    bool have = false;
    FiniteField F(p, 1);
    for (uint32_t m = 1; m < p; ++m) {
        FFElem mu = F.elem(m);
        std::array<uint32_t, 4> cand;
        for (int i = 0; i < 4; ++i) cand[i] = (c[i] * mu.pow(kIgusaWeights[i] / g)).a;
        if (!have || cand < best) {
            best = cand;
            have = true;
        }
    }
    return {F.elem(best[0]), F.elem(best[1]), F.elem(best[2]), F.elem(best[3])};
}

uint64_t pack_key(const IgusaClebschFF &a) {
    return (uint64_t(a.I2.a) << 48) | (uint64_t(a.I4.a) << 32) | (uint64_t(a.I6.a) << 16) | uint64_t(a.I10.a);
}

IgusaClebschFF unpack_key(uint64_t key, const FiniteField &F) {
    return {F.elem(int64_t((key >> 48) & 0xffff)), F.elem(int64_t((key >> 32) & 0xffff)),
            F.elem(int64_t((key >> 16) & 0xffff)), F.elem(int64_t(key & 0xffff))};
}

std::optional<std::array<BigRational, 4>>
calibrate_multipliers(const std::vector<std::pair<IgusaClebsch, IgusaClebsch>> &pairs) {
    std::array<std::optional<BigRational>, 4> m;
    m[0] = BigRational(1);
    for (const auto &[computed, target] : pairs) {
        auto c = computed.coords();
        auto t = target.coords();
        for (int i = 0; i < 4; ++i)
            if ((sgn(c[i]) == 0) != (sgn(t[i]) == 0)) return std::nullopt;
        if (sgn(c[0]) == 0) continue;
        BigRational lambda = t[0] / c[0];
        for (int i = 1; i < 4; ++i) {
            if (sgn(c[i]) == 0) continue;
            BigRational v = t[i] / (int_pow(lambda, kIgusaWeights[i]) * c[i]);
            if (m[i] && *m[i] != v) return std::nullopt;
            m[i] = v;
        }
    }
    std::array<BigRational, 4> out;
    for (int i = 0; i < 4; ++i) {
        if (!m[i]) return std::nullopt;
        out[i] = *m[i];
    }
    for (const auto &[computed, target] : pairs)
        if (!weighted_equal(apply_multipliers(computed, out), target)) return std::nullopt;
    return out;
}

IgusaClebsch apply_multipliers(const IgusaClebsch &a, const std::array<BigRational, 4> &m) {
    return {a.I2 * m[0], a.I4 * m[1], a.I6 * m[2], a.I10 * m[3]};
}

SexticForm sextic_from_strings(const std::vector<std::string> &coeffs) {
    if (coeffs.size() != 7) throw ParseError("sextic needs 7 coefficients");
    SexticForm f;
    for (int i = 0; i < 7; ++i) f[i] = parse_rational(coeffs[i]);
    return f;
}

SexticFormFF reduce_sextic(const SexticForm &f, const FiniteField &F) {
    SexticFormFF g;
    for (int i = 0; i < 7; ++i) g[i] = F.reduce(f[i]);
    return g;
}

SexticForm parse_sextic_desc(const std::string &text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 7) throw ParseError("curve needs 7 comma-separated coefficients f6,...,f0");
    SexticForm f;
    for (int k = 0; k < 7; ++k) f[6 - k] = parse_rational(parts[k]);
    return f;
}

} // namespace hmskit
