#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hmskit {

using BigInt = mpz_class;
using BigRational = mpq_class;

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Accepts "n" or "n/d" with optional sign; result is canonical.
BigRational parse_rational(std::string_view text);
std::string to_string(const BigRational &q);
std::string to_string(const BigInt &z);

// Nonnegative rational square root when q is a square, absent otherwise.
std::optional<BigRational> is_rational_square(const BigRational &q);

// Squarefree test for a nonzero integer by trial division of square factors.
bool is_squarefree(const BigInt &n);

// n/d in lowest terms; mpq_class(n, d) alone does not canonicalize.
inline BigRational make_rational(long n, long d) {
    BigRational q(n, d);
    q.canonicalize();
    return q;
}

// Scalar helpers shared by the polynomial templates.
inline bool is_zero(const BigRational &x) { return sgn(x) == 0; }
inline BigRational scalar_like(const BigRational &, long n) { return BigRational(n); }
inline BigRational inverse(const BigRational &x) {
    if (is_zero(x)) throw std::domain_error("division by zero");
    return BigRational(1) / x;
}

} // namespace hmskit
