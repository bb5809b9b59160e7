#include "hmskit/bipoly.hpp"

#include <algorithm>
#include <sstream>

namespace hmskit {

BiPoly::BiPoly(const std::vector<Term> &terms) {
    for (const auto &[i, j, c] : terms) add_term(i, j, c);
}

BiPoly BiPoly::constant(const BigRational &c) { return BiPoly({{0, 0, c}}); }
BiPoly BiPoly::var_r() { return BiPoly({{1, 0, BigRational(1)}}); }
BiPoly BiPoly::var_s() { return BiPoly({{0, 1, BigRational(1)}}); }

void BiPoly::add_term(int i, int j, const BigRational &c) {
    if (i < 0 || j < 0) throw std::invalid_argument("negative exponent");
    if (sgn(c) == 0) return;
    auto it = t_.find({i, j});
    if (it == t_.end()) {
        t_.emplace(Key{i, j}, c);
        return;
    }
    it->second += c;
    if (sgn(it->second) == 0) t_.erase(it);
}

int BiPoly::degree_r() const {
    int d = -1;
    for (const auto &[k, c] : t_) d = std::max(d, k.first);
    return d;
}

int BiPoly::degree_s() const {
    int d = -1;
    for (const auto &[k, c] : t_) d = std::max(d, k.second);
    return d;
}

int BiPoly::total_degree() const {
    int d = -1;
    for (const auto &[k, c] : t_) d = std::max(d, k.first + k.second);
    return d;
}

BigRational BiPoly::coeff(int i, int j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? BigRational(0) : it->second;
}

BigRational BiPoly::operator()(const BigRational &r, const BigRational &s) const {
    std::vector<BigRational> rp{1}, sp{1};
    for (int i = 1; i <= degree_r(); ++i) rp.push_back(rp.back() * r);
    for (int j = 1; j <= degree_s(); ++j) sp.push_back(sp.back() * s);
    BigRational v = 0;
    for (const auto &[k, c] : t_) v += c * rp[k.first] * sp[k.second];
    return v;
}

FFElem BiPoly::eval(const FFElem &r, const FFElem &s) const {
    FiniteField F(r.p, r.deg);
    std::vector<FFElem> rp{F.one()}, sp{F.one()};
    for (int i = 1; i <= degree_r(); ++i) rp.push_back(rp.back() * r);
    for (int j = 1; j <= degree_s(); ++j) sp.push_back(sp.back() * s);
    FFElem v = F.zero();
    for (const auto &[k, c] : t_) v += F.reduce(c) * rp[k.first] * sp[k.second];
    return v;
}

std::vector<std::tuple<int, int, FFElem>> BiPoly::reduce(const FiniteField &F) const {
    std::vector<std::tuple<int, int, FFElem>> out;
    for (const auto &[k, c] : t_) out.emplace_back(k.first, k.second, F.reduce(c));
    return out;
}

QPoly BiPoly::in_s(const BigRational &r) const {
    std::vector<BigRational> c(std::max(0, degree_s() + 1), BigRational(0));
    for (const auto &[k, v] : t_) {
        BigRational rp;
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), r.get_num_mpz_t(), k.first);
        mpz_pow_ui(den.get_mpz_t(), r.get_den_mpz_t(), k.first);
        rp = BigRational(num, den);
        c[k.second] += v * rp;
    }
    return QPoly(std::move(c));
}

QPoly BiPoly::in_r(const BigRational &s) const {
    std::vector<BigRational> c(std::max(0, degree_r() + 1), BigRational(0));
    for (const auto &[k, v] : t_) {
        mpz_class num, den;
        mpz_pow_ui(num.get_mpz_t(), s.get_num_mpz_t(), k.second);
        mpz_pow_ui(den.get_mpz_t(), s.get_den_mpz_t(), k.second);
        c[k.first] += v * BigRational(num, den);
    }
    return QPoly(std::move(c));
}

QPoly BiPoly::s_coeff(int j) const {
    std::vector<BigRational> c(std::max(0, degree_r() + 1), BigRational(0));
    for (const auto &[k, v] : t_)
        if (k.second == j) c[k.first] += v;
    return QPoly(std::move(c));
}

BiPoly operator+(const BiPoly &a, const BiPoly &b) {
    BiPoly r = a;
    for (const auto &[k, c] : b.t_) r.add_term(k.first, k.second, c);
    return r;
}

BiPoly operator-(const BiPoly &a) {
    BiPoly r;
    for (const auto &[k, c] : a.t_) r.t_.emplace(k, -c);
    return r;
}

BiPoly operator-(const BiPoly &a, const BiPoly &b) { return a + (-b); }

BiPoly operator*(const BiPoly &a, const BiPoly &b) {
    BiPoly r;
    for (const auto &[ka, ca] : a.t_)
        for (const auto &[kb, cb] : b.t_) r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
}

BiPoly operator*(const BiPoly &a, const BigRational &c) {
    BiPoly r;
    if (sgn(c) == 0) return r;
    for (const auto &[k, v] : a.t_) r.t_.emplace(k, v * c);
    return r;
}

BiPoly BiPoly::pow(unsigned e) const {
    BiPoly r = constant(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

BiPoly BiPoly::reduce_mod_monic_quadratic_s(const BiPoly &m) const {
    if (m.degree_s() != 2 || m.s_coeff(2) != QPoly::constant(1))
        throw std::invalid_argument("curve relation must be monic quadratic in the second variable");
    // s^2 = -(c1 s + c0)
    BiPoly tail;
    for (const auto &[k, c] : m.t_)
        if (k.second < 2) tail.add_term(k.first, k.second, -c);
    BiPoly r = *this;
    while (r.degree_s() >= 2) {
        int top = r.degree_s();
        BiPoly lead, rest;
        for (const auto &[k, c] : r.t_) {
            if (k.second == top)
                lead.add_term(k.first, k.second - 2, c);
            else
                rest.add_term(k.first, k.second, c);
        }
        r = rest + lead * tail;
    }
    return r;
}

BigRational BiPoly::content() const {
    if (t_.empty()) return 0;
    BigInt g = 0, l = 1;
    for (const auto &[k, c] : t_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    BigRational q(g, l);
    q.canonicalize();
    return q;
}

std::vector<BiPoly::Term> BiPoly::to_terms() const {
    std::vector<Term> out;
    for (const auto &[k, c] : t_) out.emplace_back(k.first, k.second, c);
    return out;
}

std::string BiPoly::to_string(const std::string &r, const std::string &s) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        auto [i, j] = it->first;
        BigRational c = it->second;
        if (sgn(c) < 0) {
            os << (first ? "-" : " - ");
            c = -c;
        } else if (!first) {
            os << " + ";
        }
        first = false;
        bool mono = i > 0 || j > 0;
        if (!mono || c != 1) os << c.get_str() << (mono ? "*" : "");
        if (i > 0) os << r << (i > 1 ? "^" + std::to_string(i) : "");
        if (i > 0 && j > 0) os << "*";
        if (j > 0) os << s << (j > 1 ? "^" + std::to_string(j) : "");
    }
    return os.str();
}

} // namespace hmskit
