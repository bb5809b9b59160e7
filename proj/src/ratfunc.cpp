#include "hmskit/ratfunc.hpp"

namespace hmskit {

RationalFunction::RationalFunction(QPoly num, QPoly den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
        num_ = QPoly();
        den_ = QPoly::constant(1);
        return;
    }
    QPoly g = QPoly::gcd(num, den);
    num = num / g;
    den = den / g;
    BigRational l = den.lc();
    num_ = num * (BigRational(1) / l);
    den_ = den.monic();
}

BigRational RationalFunction::operator()(const BigRational &x) const {
    BigRational d = den_(x);
    if (sgn(d) == 0) throw std::domain_error("pole");
    return num_(x) / d;
}

RationalFunction operator+(const RationalFunction &a, const RationalFunction &b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction &a) {
    RationalFunction r = a;
    r.num_ = -r.num_;
    return r;
}

RationalFunction operator-(const RationalFunction &a, const RationalFunction &b) { return a + (-b); }

RationalFunction operator*(const RationalFunction &a, const RationalFunction &b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction &a, const RationalFunction &b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RationalFunction &a, const RationalFunction &b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
}

RationalFunction RationalFunction::pow(unsigned e) const { return RationalFunction(num_.pow(e), den_.pow(e)); }

std::string RationalFunction::to_string(const std::string &var) const {
    if (den_.degree() == 0) return hmskit::to_string(num_, var);
    return "(" + hmskit::to_string(num_, var) + ")/(" + hmskit::to_string(den_, var) + ")";
}

} // namespace hmskit
