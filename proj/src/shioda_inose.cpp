#include "hmskit/shioda_inose.hpp"

#include "hmskit/ellsurf.hpp"

namespace hmskit {

K3Model k3_from_ic(const IgusaClebsch &ic) {
    if (sgn(ic.I10) == 0) throw DegenerateError("degenerate abelian surface");
    K3Model m;
    m.a = -ic.I4 / 12;
    m.a1 = -1;
    m.b2 = ic.I10 / 4;
    m.b = (ic.I2 * ic.I4 - 3 * ic.I6) / 108;
    m.b1 = ic.I2 / 24;
    return m;
}

K3Model rescale(const K3Model &m, const BigRational &l, const BigRational &mu) {
    if (sgn(l) == 0 || sgn(mu) == 0) throw std::invalid_argument("rescaling by zero");
    K3Model r;
    BigRational l4 = int_pow(l, 4), l6 = int_pow(l, 6);
    r.a = m.a * int_pow(mu, 4) / l4;
    r.a1 = m.a1 * int_pow(mu, 3) / l4;
    r.b2 = m.b2 * int_pow(mu, 7) / l6;
    r.b = m.b * int_pow(mu, 6) / l6;
    r.b1 = m.b1 * int_pow(mu, 5) / l6;
    return r;
}

IgusaClebsch ic_from_k3(const K3Model &m) {
    if (sgn(m.a1) == 0) throw DegenerateError("product case; use inose_j_pair");
    // l = a', mu = -a' sends a' to -1.
    K3Model n = rescale(m, m.a1, -m.a1);
    IgusaClebsch ic;
    ic.I2 = 24 * n.b1;
    ic.I4 = -12 * n.a;
    ic.I10 = 4 * n.b2;
    ic.I6 = (ic.I2 * ic.I4 - 108 * n.b) / 3;
    return ic;
}

QPoly inose_j_pair(const K3Model &m) {
    if (sgn(m.b1) == 0 || sgn(m.b2) == 0) throw DegenerateError("inose_j_pair needs b' b'' != 0");
    if (sgn(m.a1) != 0) throw DegenerateError("inose_j_pair needs a' = 0");
    BigRational bb = m.b1 * m.b2;
    BigRational pi = -int_pow(m.a, 3) / (27 * bb);
    BigRational sigma = 1 + pi - m.b * m.b / (4 * bb);
    return QPoly(std::vector<BigRational>{pi, -sigma, 1});
}

WeierstrassQt to_weierstrass(const K3Model &m) {
    WeierstrassQt w;
    w.a4 = QPoly(std::vector<BigRational>{0, 0, 0, m.a1, m.a});
    w.a6 = QPoly(std::vector<BigRational>{0, 0, 0, 0, 0, m.b1, m.b, m.b2});
    return w;
}

} // namespace hmskit
