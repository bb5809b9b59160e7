#pragma once

#include "hmskit/finite_field.hpp"
#include "hmskit/rational.hpp"
#include "hmskit/unipoly.hpp"

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace hmskit {

// Sparse polynomial in two variables: (i, j) -> coefficient of r^i s^j.
class BiPoly {
  public:
    using Key = std::pair<int, int>;
    using Term = std::tuple<int, int, BigRational>;

    BiPoly() = default;
    explicit BiPoly(const std::vector<Term> &terms);
    static BiPoly constant(const BigRational &c);
    static BiPoly var_r();
    static BiPoly var_s();

    const std::map<Key, BigRational> &terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    int degree_r() const;
    int degree_s() const;
    int total_degree() const;
    BigRational coeff(int i, int j) const;

    BigRational operator()(const BigRational &r, const BigRational &s) const;
    FFElem eval(const FFElem &r, const FFElem &s) const;
    // Reduction of coefficients into F (denominators must be units).
    std::vector<std::tuple<int, int, FFElem>> reduce(const FiniteField &F) const;

    // Univariate in s with r specialized, and vice versa.
    QPoly in_s(const BigRational &r) const;
    QPoly in_r(const BigRational &s) const;
    // Coefficient of s^j as a polynomial in r.
    QPoly s_coeff(int j) const;

    friend BiPoly operator+(const BiPoly &a, const BiPoly &b);
    friend BiPoly operator-(const BiPoly &a, const BiPoly &b);
    friend BiPoly operator-(const BiPoly &a);
    friend BiPoly operator*(const BiPoly &a, const BiPoly &b);
    friend BiPoly operator*(const BiPoly &a, const BigRational &c);
    friend bool operator==(const BiPoly &a, const BiPoly &b) { return a.t_ == b.t_; }
    BiPoly pow(unsigned e) const;

    // Remainder modulo s^2 + c1(r) s + c0(r); m must be monic of degree 2 in s.
    BiPoly reduce_mod_monic_quadratic_s(const BiPoly &m) const;

    // gcd of numerators over lcm of denominators, i.e. the rational content.
    BigRational content() const;

    std::vector<Term> to_terms() const;
    std::string to_string(const std::string &r = "r", const std::string &s = "s") const;

  private:
    void add_term(int i, int j, const BigRational &c);
    std::map<Key, BigRational> t_;
};

} // namespace hmskit
