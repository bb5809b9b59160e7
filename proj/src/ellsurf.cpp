#include "hmskit/ellsurf.hpp"

#include <algorithm>
#include <climits>

namespace hmskit {

namespace {

int ceil_div(int a, int b) { return a <= 0 ? 0 : (a + b - 1) / b; }

std::pair<char, int> parse_lattice(const std::string &l) {
    if (l.size() < 2 || (l[0] != 'A' && l[0] != 'D' && l[0] != 'E'))
        throw std::invalid_argument("unknown root lattice '" + l + "'");
    int n = 0;
    for (size_t i = 1; i < l.size(); ++i) {
        if (l[i] < '0' || l[i] > '9') throw std::invalid_argument("unknown root lattice '" + l + "'");
        n = n * 10 + (l[i] - '0');
    }
    bool ok = (l[0] == 'A' && n >= 1) || (l[0] == 'D' && n >= 4) || (l[0] == 'E' && n >= 6 && n <= 8);
    if (!ok) throw std::invalid_argument("unknown root lattice '" + l + "'");
    return {l[0], n};
}

} // namespace

Invariants c4_c6_delta(const WeierstrassQt &w) {
    const QPoly &a1 = w.a1, &a2 = w.a2, &a3 = w.a3, &a4 = w.a4, &a6 = w.a6;
    auto k = [](long c) { return QPoly::constant(BigRational(c)); };
    QPoly b2 = a1 * a1 + k(4) * a2;
    QPoly b4 = k(2) * a4 + a1 * a3;
    QPoly b6 = a3 * a3 + k(4) * a6;
    QPoly b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    Invariants r;
    r.c4 = b2 * b2 - k(24) * b4;
    r.c6 = -(b2 * b2 * b2) + k(36) * b2 * b4 - k(216) * b6;
    r.delta = -(b2 * b2 * b8) - k(8) * b4 * b4 * b4 - k(27) * b6 * b6 + k(9) * b2 * b4 * b6;
    if (r.delta.is_zero()) throw SingularFibration("singular fibration");
    return r;
}

std::string kodaira_type(int v4, int v6, int vd) {
    (void)v6;
    const int inf = INT_MAX / 4;
    int c4 = v4 < 0 ? inf : v4;
    if (vd < 0) throw std::invalid_argument("negative discriminant valuation");
    if (vd == 0) return "I0";
    if (c4 == 0) return "I" + std::to_string(vd);
    if (c4 == 2 && vd >= 7) return "I" + std::to_string(vd - 6) + "*";
    if (vd == 2) return "II";
    if (vd == 3) return "III";
    if (vd == 4 && c4 >= 2) return "IV";
    if (vd == 6 && c4 >= 2) return "I0*";
    if (vd == 8 && c4 >= 3) return "IV*";
    if (vd == 9 && c4 == 3) return "III*";
    if (vd == 10 && c4 >= 4) return "II*";
    throw std::domain_error("not an elliptic surface model");
}

std::string root_lattice(const std::string &type) {
    if (type == "II" || type == "I0" || type == "I1") return "";
    if (type == "III") return "A1";
    if (type == "IV") return "A2";
    if (type == "IV*") return "E6";
    if (type == "III*") return "E7";
    if (type == "II*") return "E8";
    if (type.size() >= 2 && type[0] == 'I') {
        bool star = type.back() == '*';
        int n = std::stoi(type.substr(1, type.size() - 1 - (star ? 1 : 0)));
        if (star) return "D" + std::to_string(n + 4);
        return "A" + std::to_string(n - 1);
    }
    throw std::invalid_argument("unknown fiber type '" + type + "'");
}

int lattice_rank(const std::string &lattice) {
    if (lattice.empty()) return 0;
    return parse_lattice(lattice).second;
}

int lattice_discriminant(const std::string &lattice) {
    if (lattice.empty()) return 1;
    auto [kind, n] = parse_lattice(lattice);
    if (kind == 'A') return n + 1;
    if (kind == 'D') return 4;
    return 9 - n; // E6 -> 3, E7 -> 2, E8 -> 1
}

FiberTable kodaira_classify(const WeierstrassQt &w) {
    Invariants inv = c4_c6_delta(w);
    std::vector<QPoly> pieces;
    for (const QPoly *f : {&inv.c4, &inv.c6, &inv.delta}) {
        if (f->is_zero()) continue;
        for (auto &[q, m] : squarefree_factor(*f)) pieces.push_back(q);
    }
    std::vector<QPoly> base = coprime_base(pieces);

    struct Place {
        QPoly q;
        int v4, v6, vd;
    };
    std::vector<Place> places;
    QPoly u = QPoly::constant(1);
    for (const auto &q : base) {
        int vd = valuation(inv.delta, q);
        if (vd == 0) continue;
        int v4 = inv.c4.is_zero() ? -1 : valuation(inv.c4, q);
        int v6 = inv.c6.is_zero() ? -1 : valuation(inv.c6, q);
        int e = std::min(v4 < 0 ? INT_MAX : v4 / 4, v6 < 0 ? INT_MAX : v6 / 6);
        e = std::min(e, vd / 12);
        if (e > 0) {
            u *= q.pow(unsigned(e));
            if (v4 >= 0) v4 -= 4 * e;
            if (v6 >= 0) v6 -= 6 * e;
            vd -= 12 * e;
        }
        if (v4 >= 4 && v6 >= 6) throw std::domain_error("not an elliptic surface model");
        places.push_back({q, v4, v6, vd});
    }
    QPoly c4 = inv.c4.is_zero() ? QPoly() : inv.c4 / u.pow(4);
    QPoly c6 = inv.c6.is_zero() ? QPoly() : inv.c6 / u.pow(6);
    QPoly dm = inv.delta / u.pow(12);

    FiberTable out;
    int total = 0;
    for (const auto &pl : places) {
        if (pl.vd == 0) continue;
        KodairaFiber f;
        f.place = pl.q;
        f.v_c4 = pl.v4;
        f.v_c6 = pl.v6;
        f.v_delta = pl.vd;
        f.type = kodaira_type(pl.v4, pl.v6, pl.vd);
        f.lattice = root_lattice(f.type);
        f.lattice_disc = lattice_discriminant(f.lattice);
        total += pl.vd * pl.q.degree();
        out.fibers.push_back(f);
    }
    int k = std::max({1, ceil_div(c4.degree(), 4), ceil_div(c6.degree(), 6), ceil_div(dm.degree(), 12)});
    KodairaFiber inf;
    inf.at_infinity = true;
    inf.v_c4 = c4.is_zero() ? -1 : 4 * k - c4.degree();
    inf.v_c6 = c6.is_zero() ? -1 : 6 * k - c6.degree();
    inf.v_delta = 12 * k - dm.degree();
    if (inf.v_delta > 0) {
        inf.type = kodaira_type(inf.v_c4, inf.v_c6, inf.v_delta);
        inf.lattice = root_lattice(inf.type);
        inf.lattice_disc = lattice_discriminant(inf.lattice);
        total += inf.v_delta;
        out.fibers.push_back(inf);
    }
    out.chi = k;
    out.deg_delta_min = total;
    if (total != 12 * k) throw std::logic_error("discriminant degree bookkeeping mismatch");
    return out;
}

bool verify_section(const WeierstrassQt &w, const SectionQt &s) {
    RationalFunction a1(w.a1), a2(w.a2), a3(w.a3), a4(w.a4), a6(w.a6);
    const RationalFunction &x = s.x, &y = s.y;
    RationalFunction lhs = y * y + a1 * x * y + a3 * y;
    RationalFunction rhs = x * x * x + a2 * x * x + a4 * x + a6;
    return lhs == rhs;
}

QPoly specialize(const FamilyPoly &f, const BigRational &g, const BigRational &h) {
    QPoly r;
    for (const auto &[d, c] : f) r += QPoly::monomial(c(g, h), d);
    return r;
}

bool verify_family_section(const FamilySection &s, int specializations, std::mt19937_64 &rng) {
    std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
    for (int i = 0; i < specializations; ++i) {
        BigRational g(num(rng), den(rng)), h(num(rng), den(rng));
        g.canonicalize();
        h.canonicalize();
        QPoly a4 = specialize(s.a4, g, h), a6 = specialize(s.a6, g, h);
        QPoly x = specialize(s.x, g, h), y = specialize(s.y, g, h);
        if (!(y * y == x * x * x + a4 * x + a6)) return false;
    }
    return true;
}

QuarticInvariants quartic_invariants(const std::vector<QPoly> &q) {
    if (q.size() < 4 || q.size() > 5) throw std::invalid_argument("quartic needs 4 or 5 coefficients");
    QPoly e = q[0], d = q[1], c = q[2], b = q[3], a = q.size() == 5 ? q[4] : QPoly();
    auto k = [](long v) { return QPoly::constant(BigRational(v)); };
    QuarticInvariants r;
    r.I = k(12) * a * e - k(3) * b * d + c * c;
    r.J = k(72) * a * c * e + k(9) * b * c * d - k(27) * a * d * d - k(27) * e * b * b - k(2) * c * c * c;
    return r;
}

WeierstrassQt jacobian_of_quartic(const std::vector<QPoly> &q) {
    std::vector<QPoly> c = q;
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    if (c.size() != 4 && c.size() != 5) throw std::invalid_argument("quartic must have degree 3 or 4");
    auto [I, J] = quartic_invariants(c);
    QPoly disc = QPoly::constant(4) * I * I * I - J * J;
    if (disc.is_zero()) throw std::invalid_argument("quartic is not squarefree");
    WeierstrassQt w;
    w.a4 = I * QPoly::constant(-27);
    w.a6 = J * QPoly::constant(-27);
    return w;
}

RationalFunction j_invariant(const WeierstrassQt &w) {
    Invariants inv = c4_c6_delta(w);
    return RationalFunction(inv.c4 * inv.c4 * inv.c4, inv.delta);
}

BigRational fiber_contribution(const std::string &lattice, int component) {
    auto [kind, n] = parse_lattice(lattice);
    if (component == 0) return 0;
    if (component < 0) throw std::invalid_argument("invalid component index");
    if (kind == 'A') {
        if (component > n) throw std::invalid_argument("invalid component index");
        return make_rational(long(component) * (n + 1 - component), n + 1);
    }
    if (kind == 'D') {
        if (component == 1) return 1;
        if (component <= 3) return make_rational(n, 4);
        throw std::invalid_argument("invalid component index");
    }
    if (n == 6 && component <= 2) return BigRational(4, 3);
    if (n == 7 && component == 1) return BigRational(3, 2);
    throw std::invalid_argument("invalid component index");
}

BigRational section_height(int chi, int po, const std::vector<BigRational> &contributions) {
    if (chi < 1 || po < 0) throw std::invalid_argument("section_height needs chi >= 1 and P.O >= 0");
    BigRational h = 2 * chi + 2 * po;
    for (const auto &c : contributions) h -= c;
    return h;
}

BigRational determinant(const LatticeGram &m) {
    size_t n = m.size();
    for (const auto &row : m)
        if (row.size() != n) throw std::invalid_argument("matrix is not square");
    LatticeGram a = m;
    BigRational det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && sgn(a[piv][c]) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (size_t r = c + 1; r < n; ++r) {
            if (sgn(a[r][c]) == 0) continue;
            BigRational f = a[r][c] / a[c][c];
            for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

BigRational shioda_tate_disc_from_det(const std::vector<std::string> &fiber_lattices, const BigRational &det_h,
                                      int torsion_order) {
    if (torsion_order < 1) throw std::invalid_argument("torsion order must be positive");
    BigRational d = det_h;
    for (const auto &l : fiber_lattices) d *= lattice_discriminant(l);
    d /= BigRational(long(torsion_order) * torsion_order);
    return abs(d);
}

BigRational shioda_tate_disc(const std::vector<std::string> &fiber_lattices, const LatticeGram &height_gram,
                             int torsion_order) {
    BigRational det = height_gram.empty() ? BigRational(1) : determinant(height_gram);
    return shioda_tate_disc_from_det(fiber_lattices, det, torsion_order);
}

bool is_fundamental_discriminant(long D) {
    if (D == 1 || D == 0) return false;
    long m = ((D % 4) + 4) % 4;
    if (m == 1) return is_squarefree(BigInt(D));
    if (m != 0) return false;
    long k = D / 4;
    long km = ((k % 4) + 4) % 4;
    return (km == 2 || km == 3) && is_squarefree(BigInt(k));
}

LatticeGram od_gram(long D) {
    if (D <= 0 || !is_fundamental_discriminant(D)) throw std::invalid_argument("not a positive fundamental discriminant");
    return {{BigRational(2), BigRational(D)}, {BigRational(D), BigRational((D * D - D) / 2)}};
}

} // namespace hmskit
