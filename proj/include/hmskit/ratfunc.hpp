#pragma once

#include "hmskit/unipoly.hpp"

#include <string>

namespace hmskit {

// num/den over Q, reduced with monic denominator.
class RationalFunction {
  public:
    RationalFunction() : num_(), den_(QPoly::constant(1)) {}
    RationalFunction(QPoly num, QPoly den);
    explicit RationalFunction(QPoly num) : RationalFunction(std::move(num), QPoly::constant(1)) {}
    static RationalFunction constant(const BigRational &c) { return RationalFunction(QPoly::constant(c)); }
    static RationalFunction variable() { return RationalFunction(QPoly(std::vector<BigRational>{0, 1})); }

    const QPoly &num() const { return num_; }
    const QPoly &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    BigRational operator()(const BigRational &x) const;

    friend RationalFunction operator+(const RationalFunction &a, const RationalFunction &b);
    friend RationalFunction operator-(const RationalFunction &a, const RationalFunction &b);
    friend RationalFunction operator-(const RationalFunction &a);
    friend RationalFunction operator*(const RationalFunction &a, const RationalFunction &b);
    friend RationalFunction operator/(const RationalFunction &a, const RationalFunction &b);
    friend bool operator==(const RationalFunction &a, const RationalFunction &b);
    RationalFunction pow(unsigned e) const;

    std::string to_string(const std::string &var = "t") const;

  private:
    QPoly num_, den_;
};

} // namespace hmskit
