#pragma once

#include "hmskit/finite_field.hpp"
#include "hmskit/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace hmskit {

// Dense univariate polynomial, coefficients ascending by degree.
template <class T> class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(std::vector<T> c) : c_(std::move(c)) { trim(); }
    static UniPoly constant(const T &a) { return UniPoly(std::vector<T>{a}); }
    static UniPoly monomial(const T &a, int k) {
        std::vector<T> c(k + 1, scalar_like(a, 0));
        c[k] = a;
        return UniPoly(std::move(c));
    }

    // Zero polynomial has degree -1.
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T> &coeffs() const { return c_; }
    const T &operator[](int i) const { return c_[i]; }
    T coeff(int i, const T &like) const { return i >= 0 && i <= degree() ? c_[i] : scalar_like(like, 0); }
    const T &lc() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    T operator()(const T &x) const {
        if (c_.empty()) return scalar_like(x, 0);
        T r = c_.back();
        for (int i = degree() - 1; i >= 0; --i) r = r * x + c_[i];
        return r;
    }

    UniPoly derivative() const {
        std::vector<T> d;
        for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * long(i));
        return UniPoly(std::move(d));
    }

    UniPoly monic() const {
        if (c_.empty()) return *this;
        T inv = inverse(lc());
        std::vector<T> d = c_;
        for (auto &x : d) x = x * inv;
        return UniPoly(std::move(d));
    }

    friend UniPoly operator+(const UniPoly &f, const UniPoly &g) {
        const UniPoly &big = f.degree() >= g.degree() ? f : g;
        const UniPoly &small = f.degree() >= g.degree() ? g : f;
        std::vector<T> c = big.c_;
        for (int i = 0; i <= small.degree(); ++i) c[i] = c[i] + small.c_[i];
        return UniPoly(std::move(c));
    }
    friend UniPoly operator-(const UniPoly &f) {
        std::vector<T> c = f.c_;
        for (auto &x : c) x = -x;
        return UniPoly(std::move(c));
    }
    friend UniPoly operator-(const UniPoly &f, const UniPoly &g) { return f + (-g); }
    friend UniPoly operator*(const UniPoly &f, const UniPoly &g) {
        if (f.is_zero() || g.is_zero()) return UniPoly();
        std::vector<T> c(f.c_.size() + g.c_.size() - 1, scalar_like(f.c_[0], 0));
        for (size_t i = 0; i < f.c_.size(); ++i) {
            if (hmskit::is_zero(f.c_[i])) continue;
            for (size_t j = 0; j < g.c_.size(); ++j) c[i + j] = c[i + j] + f.c_[i] * g.c_[j];
        }
        return UniPoly(std::move(c));
    }
    friend UniPoly operator*(const UniPoly &f, const T &a) {
        std::vector<T> c = f.c_;
        for (auto &x : c) x = x * a;
        return UniPoly(std::move(c));
    }
    UniPoly &operator+=(const UniPoly &g) { return *this = *this + g; }
    UniPoly &operator-=(const UniPoly &g) { return *this = *this - g; }
    UniPoly &operator*=(const UniPoly &g) { return *this = *this * g; }
    friend bool operator==(const UniPoly &f, const UniPoly &g) { return f.c_ == g.c_; }

    UniPoly pow(unsigned e) const {
        UniPoly r = constant(scalar_like(c_.empty() ? T() : c_[0], 1));
        UniPoly b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    // Euclidean division over a field.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly &f, const UniPoly &g) {
        if (g.is_zero()) throw std::domain_error("polynomial division by zero");
        if (f.degree() < g.degree()) return {UniPoly(), f};
        std::vector<T> r = f.c_;
        std::vector<T> q(f.degree() - g.degree() + 1, scalar_like(f.c_[0], 0));
        T inv = inverse(g.lc());
        for (int k = f.degree() - g.degree(); k >= 0; --k) {
            T t = r[k + g.degree()] * inv;
            q[k] = t;
            if (hmskit::is_zero(t)) continue;
            for (int j = 0; j <= g.degree(); ++j) r[k + j] = r[k + j] - t * g.c_[j];
        }
        r.resize(g.degree());
        return {UniPoly(std::move(q)), UniPoly(std::move(r))};
    }
    friend UniPoly operator/(const UniPoly &f, const UniPoly &g) { return divmod(f, g).first; }
    friend UniPoly operator%(const UniPoly &f, const UniPoly &g) { return divmod(f, g).second; }

    // Monic gcd; gcd(0, 0) = 0.
    static UniPoly gcd(UniPoly a, UniPoly b) {
        while (!b.is_zero()) {
            UniPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

  private:
    void trim() {
        while (!c_.empty() && hmskit::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

using QPoly = UniPoly<BigRational>;
using FPoly = UniPoly<FFElem>;

class UndefinedError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// Res(f, g) by the Euclidean recursion; exact over Q and F_q.
template <class T> T resultant(const UniPoly<T> &f, const UniPoly<T> &g) {
    if (f.is_zero() && g.is_zero()) throw UndefinedError("undefined resultant");
    if (f.is_zero() || g.is_zero()) {
        const UniPoly<T> &h = f.is_zero() ? g : f;
        if (h.degree() == 0) throw UndefinedError("undefined resultant");
        return scalar_like(h.lc(), 0);
    }
    T acc = scalar_like(f.lc(), 1);
    UniPoly<T> a = f, b = g;
    while (true) {
        int da = a.degree(), db = b.degree();
        if (db == 0) {
            T r = acc;
            for (int i = 0; i < da; ++i) r = r * b.lc();
            return r;
        }
        if (da == 0) {
            T r = acc;
            for (int i = 0; i < db; ++i) r = r * a.lc();
            return r;
        }
        UniPoly<T> r = a % b;
        if (r.is_zero()) return scalar_like(f.lc(), 0);
        if ((da % 2 == 1) && (db % 2 == 1)) acc = -acc;
        for (int i = 0; i < da - r.degree(); ++i) acc = acc * b.lc();
        a = std::move(b);
        b = std::move(r);
    }
}

template <class T> T discriminant(const UniPoly<T> &f) {
    int d = f.degree();
    if (d < 1) throw std::invalid_argument("discriminant of a constant polynomial");
    T r = resultant(f, f.derivative()) / f.lc();
    if ((long(d) * (d - 1) / 2) % 2) r = -r;
    return r;
}

// Yun's algorithm: pairwise coprime monic squarefree factors with multiplicities.
std::vector<std::pair<QPoly, int>> squarefree_factor(const QPoly &f);

// Largest k with q^k | f (q nonconstant, f nonzero).
int valuation(QPoly f, const QPoly &q);

// Coprime refinement of a set of squarefree polynomials into monic pieces.
std::vector<QPoly> coprime_base(const std::vector<QPoly> &polys);

QPoly qpoly_from_strings(const std::vector<std::string> &coeffs);
std::string to_string(const QPoly &f, const std::string &var = "t");

} // namespace hmskit
