#include "hmskit/unipoly.hpp"

#include <sstream>

namespace hmskit {

std::vector<std::pair<QPoly, int>> squarefree_factor(const QPoly &f) {
    if (f.is_zero()) throw std::invalid_argument("squarefree_factor of zero polynomial");
    std::vector<std::pair<QPoly, int>> out;
    if (f.degree() == 0) return out;
    QPoly g = f.monic();
    QPoly a = QPoly::gcd(g, g.derivative());
    QPoly b = g / a;
    QPoly c = g.derivative() / a;
    QPoly d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        QPoly ai = QPoly::gcd(b, d);
        b = b / ai;
        c = d / ai;
        d = c - b.derivative();
        if (ai.degree() > 0) out.emplace_back(ai, i);
    }
    return out;
}

int valuation(QPoly f, const QPoly &q) {
    if (q.degree() < 1) throw std::invalid_argument("valuation at a constant");
    if (f.is_zero()) throw std::invalid_argument("valuation of zero polynomial");
    int k = 0;
    while (true) {
        auto [quo, rem] = QPoly::divmod(f, q);
        if (!rem.is_zero()) return k;
        f = std::move(quo);
        ++k;
    }
}

std::vector<QPoly> coprime_base(const std::vector<QPoly> &polys) {
    std::vector<QPoly> base;
    for (const auto &p : polys)
        if (p.degree() > 0) base.push_back(p.monic());
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < base.size() && !changed; ++i) {
            for (size_t j = i + 1; j < base.size() && !changed; ++j) {
                QPoly g = QPoly::gcd(base[i], base[j]);
                if (g.degree() < 1) continue;
                std::vector<QPoly> parts{base[i] / g, g, base[j] / g};
                base.erase(base.begin() + j);
                base.erase(base.begin() + i);
                for (auto &p : parts)
                    if (p.degree() > 0) base.push_back(p.monic());
                changed = true;
            }
        }
    }
    return base;
}

QPoly qpoly_from_strings(const std::vector<std::string> &coeffs) {
    std::vector<BigRational> c;
    for (const auto &s : coeffs) c.push_back(parse_rational(s));
    return QPoly(std::move(c));
}

std::string to_string(const QPoly &f, const std::string &var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        BigRational c = f[i];
        if (sgn(c) == 0) continue;
        if (sgn(c) < 0) {
            os << (first ? "-" : " - ");
            c = -c;
        } else if (!first) {
            os << " + ";
        }
        first = false;
        if (i == 0 || c != 1) {
            os << c.get_str();
            if (i > 0) os << "*";
        }
        if (i >= 1) os << var;
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

} // namespace hmskit
