#include "hmskit/rational.hpp"

#include <cctype>

namespace hmskit {

namespace {

bool valid_integer(std::string_view s) {
    size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string strip_plus(std::string_view s) {
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return std::string(s);
}

} // namespace

BigRational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    auto slash = s.find('/');
    std::string_view ns = slash == std::string_view::npos ? s : trim(s.substr(0, slash));
    std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
    if (!valid_integer(ns) || !valid_integer(ds) || ds[0] == '-' || ds[0] == '+')
        throw ParseError("malformed rational '" + std::string(text) + "'");
    BigInt n{strip_plus(ns)}, d{std::string(ds)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    BigRational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const BigRational &q) { return q.get_str(); }
std::string to_string(const BigInt &z) { return z.get_str(); }

std::optional<BigRational> is_rational_square(const BigRational &q) {
    if (sgn(q) < 0) return std::nullopt;
    if (sgn(q) == 0) return BigRational(0);
    const BigInt &n = q.get_num();
    const BigInt &d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    BigInt rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    BigRational r(rn, rd);
    r.canonicalize();
    return r;
}

bool is_squarefree(const BigInt &n) {
    BigInt m = abs(n);
    if (m == 0) return false;
    for (BigInt k = 2; k * k <= m; ++k) {
        if (m % k == 0) {
            m /= k;
            if (m % k == 0) return false;
        }
    }
    return true;
}

} // namespace hmskit
