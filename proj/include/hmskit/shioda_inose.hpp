#pragma once

#include "hmskit/igusa.hpp"
#include "hmskit/unipoly.hpp"

#include <stdexcept>

namespace hmskit {

struct WeierstrassQt;

// y^2 = x^3 + t^3 (a t + a1) x + t^5 (b2 t^2 + b t + b1), with a1 = a', b1 = b', b2 = b''.
struct K3Model {
    BigRational a, a1, b2, b, b1;
    friend bool operator==(const K3Model &x, const K3Model &y) {
        return x.a == y.a && x.a1 == y.a1 && x.b2 == y.b2 && x.b == y.b && x.b1 == y.b1;
    }
};

class DegenerateError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

K3Model k3_from_ic(const IgusaClebsch &ic);
IgusaClebsch ic_from_k3(const K3Model &m);
// X^2 - sigma X + pi with roots the two j-invariants of the product case.
QPoly inose_j_pair(const K3Model &m);

// (x, y, t) -> (l^2 x, l^3 y, mu t), renormalized to the same shape.
K3Model rescale(const K3Model &m, const BigRational &l, const BigRational &mu);
WeierstrassQt to_weierstrass(const K3Model &m);

} // namespace hmskit
